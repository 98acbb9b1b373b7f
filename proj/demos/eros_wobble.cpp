// Free wobble of asteroid 433 Eros. Builds the theory for the catalog
// inertia ratios, reports the secular periods of the two angles, and tracks
// the polar motion of the rotation axis over one wobble period against a
// direct numerical integration of the exact equations.

#include <cstdio>

#include "samrot/oracle.hpp"
#include "samrot/samrot.hpp"

int main() {
    using namespace samrot;

    const BodyRecord& eros = find_body("eros");
    const InertiaParams p = body_params(eros);
    std::printf("Eros: A/C = %.6f, B/C = %.6f  ->  alpha = %.6f, beta = %.6f\n",
                eros.AoverC, eros.BoverC, p.alpha, p.beta);

    // the observed inclination of the momentum axis sets the wobble amplitude
    const double J = arcsec2rad(eros.J0arcsec);
    std::printf("momentum axis inclination J = %g arcsec, delta = %.3e\n", eros.J0arcsec,
                delta_from_inclination(J));

    const AndoyerState s0 = make_state(0, 0, 0.3, 0, 1.0, std::cos(J));
    const SamTheory theory; // default truncation order

    const ActionAngleState a0 = to_action_angle(s0, p.beta);
    const MeanElements mean = theory.osculating_to_mean(a0, p.beta);
    const Frequencies f = theory.secular_frequencies(mean, p);
    std::printf("secular rates (units of M/C): n_l = %.12g, n_g = %.12g\n", f.nl, f.ng);
    std::printf("wobble period %.6g, rotation period %.6g\n\n", two_pi / f.nl,
                two_pi / f.ng);

    // one full wobble period, series against the integrated truth
    const double T = two_pi / f.nl;
    const int samples = 8;
    std::vector<double> times(samples + 1);
    for (int i = 0; i <= samples; ++i) times[i] = T * i / samples;
    const auto truth = integrate_trajectory(s0, p, times, 1e-13);

    std::printf("%10s  %22s  %22s  %10s\n", "t/T", "N/M (series)", "N/M (integrated)",
                "|diff|");
    for (int i = 0; i <= samples; ++i) {
        const AndoyerState s = theory.propagate(s0, p, times[i]).state;
        std::printf("%10.3f  %22.16f  %22.16f  %10.2e\n", times[i] / T, s.N / s.M,
                    truth[i].state.N / truth[i].state.M,
                    std::abs(s.N - truth[i].state.N));
    }
    return 0;
}
