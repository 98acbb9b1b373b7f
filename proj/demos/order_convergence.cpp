// How fast the series closes in on the exact motion. For a strongly
// triaxial body the propagation error at a fixed time is measured against
// a high-order numerical integration, once per truncation order, and then
// again with the inclination halved: each extra order buys roughly a
// factor delta' ~ J^2/2, so halving J divides the order-n error by about
// 2^(2(n+1)).

#include <cmath>
#include <cstdio>
#include <vector>

#include "samrot/oracle.hpp"
#include "samrot/samrot.hpp"

namespace {

double worst_error(const samrot::SamTheory& theory, const samrot::AndoyerState& s0,
                   const samrot::InertiaParams& p, double tEnd, int order) {
    std::vector<double> times;
    for (int i = 0; i <= 8; ++i) times.push_back(tEnd * i / 8);
    const auto truth = samrot::integrate_trajectory(s0, p, times, 1e-13);
    double worst = 0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const auto got = theory.propagate(s0, p, times[i], order).state;
        worst = std::max({worst,
                          std::abs(samrot::angle_diff(got.mu, truth[i].state.mu)),
                          std::abs(samrot::angle_diff(got.nu, truth[i].state.nu)),
                          std::abs(got.N - truth[i].state.N)});
    }
    return worst;
}

} // namespace

int main() {
    using namespace samrot;

    const InertiaParams p = inertia_from_shape(1.0, 0.8);
    const double tEnd = 100.0;
    const SamTheory theory(6);

    auto state_at = [](double Jdeg) {
        return make_state(0, 0.3, 0.7, 0, 1.0, std::cos(deg2rad(Jdeg)));
    };

    std::printf("beta = %.2f, t = %g, errors against RKF78 at tolerance 1e-13\n\n",
                p.beta, tEnd);
    std::printf("%6s  %14s  %14s  %12s  %12s\n", "order", "error (J=5deg)",
                "error (J=2.5deg)", "drop", "2^(2(n+1))");
    for (int order = 1; order <= 6; ++order) {
        const double e1 = worst_error(theory, state_at(5.0), p, tEnd, order);
        const double e2 = worst_error(theory, state_at(2.5), p, tEnd, order);
        std::printf("%6d  %14.3e  %14.3e  %12.1f  %12.0f\n", order, e1, e2, e1 / e2,
                    std::pow(2.0, 2.0 * (order + 1)));
    }
    std::printf("\n(the drop saturates once the halved-J error reaches the error "
                "floor of the reference integration itself)\n");
    return 0;
}
