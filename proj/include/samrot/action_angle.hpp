#pragma once
#include <cmath>

#include "angles.hpp"
#include "errors.hpp"
#include "rigid_core.hpp"

// Exact transformation between Andoyer variables and the action-angle set
// (l, g, L, G) of the short-axis main problem. The map is closed form:
// no series are involved, it is canonical for every beta in [0, 1), and it
// turns the dominant part of the Hamiltonian into a function of L, G only.

namespace samrot {

// sigma = sqrt(1 - beta^2) enters every denominator; past this threshold
// the transformation is numerically meaningless (prolate limit)
inline constexpr double prolate_guard = 1e-12;

struct ActionAngleState {
    double l = 0, g = 0; // angles conjugate to L, G
    double L = 0;        // wobble action, O(delta) for small inclination
    double G = 1;        // total angular momentum (same number as M)
};

inline double checked_sigma(double beta) {
    if (!(beta >= 0 && beta <= 1))
        throw InvalidInput("beta must lie in [0, 1]");
    const double s2 = (1 - beta) * (1 + beta);
    if (s2 < prolate_guard)
        throw ProlateSingularity("beta too close to 1 for the action-angle chart");
    return std::sqrt(s2);
}

inline ActionAngleState to_action_angle(const AndoyerState& s, double beta) {
    const double sigma = checked_sigma(beta);
    if (s.N <= 0)
        throw SymmetryError("action-angle chart covers N > 0 only; mirror the state first");
    ActionAngleState a;
    a.l = wrap_two_pi(std::atan2(-std::sqrt(1 + beta) * std::sin(s.nu),
                                 std::sqrt(1 - beta) * std::cos(s.nu)));
    a.g = wrap_two_pi(s.mu + s.nu);
    a.L = (s.M - s.N) * (1 - beta * std::cos(2 * s.nu)) / sigma;
    a.G = s.M;
    return a;
}

// lambda and Lambda ride along untouched; pass them in if the caller needs
// the full six-component state back
inline AndoyerState from_action_angle(const ActionAngleState& a, double beta,
                                      double lambda = 0, double Lambda = 0) {
    const double sigma = checked_sigma(beta);
    if (a.G <= 0)
        throw InvalidInput("G must be positive");
    if (a.L < 0)
        throw InvalidInput("wobble action L cannot be negative");
    const double nu = std::atan2(-std::sqrt(1 - beta) * std::sin(a.l),
                                 std::sqrt(1 + beta) * std::cos(a.l));
    const double N = a.G - a.L * (1 + beta * std::cos(2 * a.l)) / sigma;
    if (N <= 0)
        throw InvalidInput("requested action-angle state leaves the N > 0 hemisphere");
    return make_state(lambda, a.g - nu, nu, Lambda, a.G, N);
}

// delta = 1 - N/M expressed in the new chart
inline double delta_aa(const ActionAngleState& a, double beta) {
    const double sigma = checked_sigma(beta);
    return (a.L / a.G) * (1 + beta * std::cos(2 * a.l)) / sigma;
}

// Auxiliary angle u with tan nu = sqrt((1-beta)/(1+beta)) tan u, picked in
// the quadrant of nu. It rectifies the nu circulation: dnu/du equals
// sigma/(1 + beta cos 2u), and u == -l on the unit sphere of the chart.
inline double u_from_nu(double nu, double beta) {
    checked_sigma(beta);
    return wrap_two_pi(std::atan2(std::sin(nu) / std::sqrt(1 - beta),
                                  std::cos(nu) / std::sqrt(1 + beta)));
}

inline double nu_from_u(double u, double beta) {
    checked_sigma(beta);
    return wrap_two_pi(std::atan2(std::sqrt(1 - beta) * std::sin(u),
                                  std::sqrt(1 + beta) * std::cos(u)));
}

// main-problem energy, a function of the momenta alone in this chart
inline double reduced_hamiltonian(double L, double G, const InertiaParams& p) {
    const double sigma = checked_sigma(p.beta);
    return G * G / (2 * p.C) + p.alpha * sigma * L * G / p.C;
}

// full energy in the new chart: reduced part plus the wobble perturbation,
// identical to hamiltonian() composed with from_action_angle()
inline double full_hamiltonian(const ActionAngleState& a, const InertiaParams& p) {
    const double sigma = checked_sigma(p.beta);
    return a.G * a.G / (2 * p.C) +
           (p.alpha / p.C) * (sigma * a.L * a.G -
                              0.5 * a.L * a.L * (1 + p.beta * std::cos(2 * a.l)));
}

} // namespace samrot
