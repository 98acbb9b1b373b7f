#pragma once
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "action_angle.hpp"
#include "rigid_core.hpp"

// High-order numerical integration of the full torque-free equations in
// Andoyer variables, used as the ground truth the series solution is
// measured against. Only (mu, nu, N) evolve: lambda, Lambda and M are
// exact constants of the motion and are carried through untouched.

namespace samrot {

inline constexpr double oracle_tol_min = 1e-14;
inline constexpr double oracle_tol_max = 1e-6;

// dmu/dt = M/C + (alpha/C) M (1 - beta cos 2nu)
// dnu/dt = -(alpha/C) N (1 - beta cos 2nu)
// dN/dt  = -(alpha beta/C) (M^2 - N^2) sin 2nu
inline std::array<double, 3> hamilton_rhs(double nu, double N, double M,
                                          const InertiaParams& p) {
    const double c2 = std::cos(2 * nu), s2 = std::sin(2 * nu);
    const double u = 1 - p.beta * c2;
    return {M / p.C + (p.alpha / p.C) * M * u,
            -(p.alpha / p.C) * N * u,
            -(p.alpha * p.beta / p.C) * (M * M - N * N) * s2};
}

struct TrajectorySample {
    double t;
    AndoyerState state;
    double energy;
};

// Integrate from s0 (taken at times.front()) and report the state at every
// requested time. Times must be strictly monotonic; decreasing times run
// the integration backwards.
inline std::vector<TrajectorySample> integrate_trajectory(const AndoyerState& s0,
                                                          const InertiaParams& p,
                                                          std::span<const double> times,
                                                          double tol = 1e-12) {
    namespace ode = boost::numeric::odeint;
    if (!(tol >= oracle_tol_min && tol <= oracle_tol_max))
        throw InvalidInput("oracle tolerance must lie in [1e-14, 1e-6]");
    if (times.empty())
        throw InvalidInput("no sample times requested");
    const bool forward = times.back() >= times.front();
    for (std::size_t i = 1; i < times.size(); ++i) {
        const bool ok = forward ? times[i] > times[i - 1] : times[i] < times[i - 1];
        if (!ok) throw InvalidInput("sample times must be strictly monotonic");
    }

    using State = std::array<double, 3>; // mu, nu, N; nu kept unwrapped
    State y{s0.mu, s0.nu, s0.N};
    const double M = s0.M;

    auto sys = [&](const State& x, State& dxdt, double) {
        dxdt = hamilton_rhs(x[1], x[2], M, p);
    };
    std::vector<TrajectorySample> out;
    out.reserve(times.size());
    auto observe = [&](const State& x, double t) {
        AndoyerState s = make_state(s0.lambda, x[0], x[1], s0.Lambda, M, x[2]);
        out.push_back({t, s, hamiltonian(s, p)});
    };

    if (times.size() == 1) {
        observe(y, times.front());
        return out;
    }
    const double span = times.back() - times.front();
    const double dt0 = (forward ? 1 : -1) * std::min(std::abs(span) / 100, 0.1);
    auto stepper = ode::make_controlled(tol, tol,
                                        ode::runge_kutta_fehlberg78<State>());
    ode::integrate_times(stepper, sys, y, times.begin(), times.end(), dt0, observe);
    return out;
}

inline std::vector<TrajectorySample> integrate_trajectory(const AndoyerState& s0,
                                                          const InertiaParams& p,
                                                          double tEnd, int samples,
                                                          double tol = 1e-12) {
    if (samples < 1) throw InvalidInput("need at least one sample");
    std::vector<double> times(samples + 1);
    for (int i = 0; i <= samples; ++i) times[i] = tEnd * i / samples;
    return integrate_trajectory(s0, p, times, tol);
}

// CSV rows: t,mu,nu,M,N,l,g,L,G,energy with full 17 digit round trip. The
// action-angle columns are nan for states outside the N > 0 chart.
inline void write_samples_csv(std::ostream& os, std::span<const TrajectorySample> samples,
                              const InertiaParams& p) {
    os << "t,mu,nu,M,N,l,g,L,G,energy\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
        os << buf;
    };
    for (const auto& smp : samples) {
        double l = std::nan(""), g = std::nan(""), L = std::nan("");
        if (smp.state.N > 0) {
            const ActionAngleState a = to_action_angle(smp.state, p.beta);
            l = a.l;
            g = a.g;
            L = a.L;
        }
        put(smp.t, ',');
        put(smp.state.mu, ',');
        put(smp.state.nu, ',');
        put(smp.state.M, ',');
        put(smp.state.N, ',');
        put(l, ',');
        put(g, ',');
        put(L, ',');
        put(smp.state.M, ',');
        put(smp.energy, '\n');
    }
}

} // namespace samrot
