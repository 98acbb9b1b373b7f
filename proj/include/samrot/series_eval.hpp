#pragma once
#include <cmath>

#include "poisson_series.hpp"
#include "tables.hpp"

// Floating-point evaluation of the exact series. Deliberately a separate
// header: poisson_series.hpp itself must stay free of doubles.

namespace samrot::series {

inline double factorial(int n) {
    double r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// substitute numbers for beta, sigma, L, G and the angle l
inline double evaluate(const PoissonSeries& s, double beta, double L, double G, double l) {
    const double sigma = std::sqrt((1 - beta) * (1 + beta));
    double total = 0;
    for (const auto& [m, c] : s.terms()) {
        double v = to_double(c) * std::pow(beta, m.betaPow) * std::pow(sigma, m.sigmaPow) *
                   std::pow(L, m.lPow) * std::pow(G, m.gPow);
        if (m.kind == Trig::cos)
            v *= std::cos(2 * m.harmonic * l);
        else if (m.kind == Trig::sin)
            v *= std::sin(2 * m.harmonic * l);
        total += v;
    }
    return total;
}

// Horner evaluation in beta^2
inline double evaluate_poly(const BetaPoly& p, double beta) {
    const double b2 = beta * beta;
    double r = 0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) r = r * b2 + to_double(*it);
    return r;
}

} // namespace samrot::series
