#pragma once
#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <span>
#include <string>

#include "angles.hpp"
#include "errors.hpp"

// Core state and parameter types for torque-free rigid-body rotation in
// Andoyer variables, plus the exact energy splits the perturbation theory
// is built on. Everything here is plain double arithmetic; the exact
// series algebra lives in poisson_series.hpp / deprit.hpp.

namespace samrot {

// beta values within this distance of an endpoint are snapped onto it, so
// that almost-symmetric bodies take the exact axisymmetric code paths
inline constexpr double beta_snap = 1e-15;

// Triaxiality shape of the inertia tensor. With principal moments
// A <= B <= C the two derived quantities are
//   alpha = (C/A + C/B)/2 - 1   (flattening against the short axis)
//   beta  = (C/A - C/B)/(2*alpha)   in [0, 1]
// C itself is kept as the overall scale (time unit of the rotation).
struct InertiaParams {
    double alpha = 0;
    double beta = 0;
    double C = 1;

    double sigma() const { return std::sqrt((1.0 - beta) * (1.0 + beta)); }
};

inline InertiaParams inertia_from_shape(double alpha, double beta, double C = 1.0) {
    if (!(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(C)))
        throw InvalidInput("inertia parameters must be finite");
    if (alpha <= 0)
        throw InvalidInput("alpha must be positive (spherical bodies have no figure axis)");
    if (C <= 0)
        throw InvalidInput("largest moment of inertia must be positive");
    if (beta < -beta_snap || beta > 1 + beta_snap)
        throw InvalidInput("beta must lie in [0, 1]");
    if (std::abs(beta) < beta_snap) beta = 0;
    if (std::abs(1 - beta) < beta_snap) beta = 1;
    return {alpha, beta, C};
}

struct Moments {
    double A, B, C;
};

// Moments must come in ascending order; we do not silently relabel axes
// because that would turn a long-axis problem into a short-axis one.
inline InertiaParams inertia_from_moments(double A, double B, double C) {
    if (!(std::isfinite(A) && std::isfinite(B) && std::isfinite(C)) || A <= 0)
        throw InvalidInput("principal moments must be finite and positive");
    if (A > B || B > C)
        throw OrderingError("principal moments must satisfy A <= B <= C");
    const double ca = C / A - 1, cb = C / B - 1;
    const double alpha = 0.5 * (ca + cb);
    if (alpha == 0)
        throw InvalidInput("spherical body: rotation axis is arbitrary");
    double beta = (ca - cb) / (2 * alpha);
    if (std::abs(beta) < beta_snap) beta = 0;
    if (std::abs(1 - beta) < beta_snap) beta = 1;
    return {alpha, beta, C};
}

inline Moments moments_from_params(const InertiaParams& p) {
    return {p.C / (1 + p.alpha * (1 + p.beta)),
            p.C / (1 + p.alpha * (1 - p.beta)),
            p.C};
}

// Andoyer canonical set: angles (lambda, mu, nu) conjugate to the momenta
// (Lambda, M, N). M is the magnitude of the angular momentum vector, N its
// projection on the body z axis, Lambda its projection on the inertial Z
// axis. Angles are stored normalized to [0, 2*pi).
struct AndoyerState {
    double lambda = 0, mu = 0, nu = 0;
    double Lambda = 0, M = 1, N = 1;
};

inline AndoyerState make_state(double lambda, double mu, double nu,
                               double Lambda, double M, double N) {
    if (!(std::isfinite(lambda) && std::isfinite(mu) && std::isfinite(nu) &&
          std::isfinite(Lambda) && std::isfinite(M) && std::isfinite(N)))
        throw InvalidInput("state components must be finite");
    if (M <= 0)
        throw InvalidInput("total angular momentum M must be positive");
    if (std::abs(N) > M * (1 + 1e-12) || std::abs(Lambda) > M * (1 + 1e-12))
        throw InvalidInput("|N| and |Lambda| cannot exceed M");
    return {wrap_two_pi(lambda), wrap_two_pi(mu), wrap_two_pi(nu),
            std::clamp(Lambda, -M, M), M, std::clamp(N, -M, M)};
}

// free rotation energy straight from the principal moments
inline double rotation_energy(const AndoyerState& s, double A, double B, double C) {
    if (A <= 0 || A > B || B > C)
        throw OrderingError("principal moments must satisfy 0 < A <= B <= C");
    const double sn = std::sin(s.nu), cn = std::cos(s.nu);
    return 0.5 * (sn * sn / A + cn * cn / B) * (s.M * s.M - s.N * s.N) +
           0.5 * s.N * s.N / C;
}

// the same energy written through (alpha, beta); agrees with
// rotation_energy(...) to roundoff when the parameters match the moments
inline double hamiltonian(const AndoyerState& s, const InertiaParams& p) {
    const double x = s.N / s.M;
    const double f = 1 - x * x;
    return (s.M * s.M / (2 * p.C)) *
           (1 + p.alpha * f - p.alpha * p.beta * f * std::cos(2 * s.nu));
}

// Short-axis-mode split H = main + pert where the perturbation carries the
// square of delta = 1 - N/M. Only defined on the N > 0 hemisphere; use
// mirror_n() first for the other one.
struct SamSplit {
    double main;
    double pert;
};

inline SamSplit sam_split(const AndoyerState& s, const InertiaParams& p) {
    if (s.N <= 0)
        throw SymmetryError("short-axis split needs N > 0; mirror the state first");
    const double delta = 1 - s.N / s.M;
    const double u = 1 - p.beta * std::cos(2 * s.nu);
    const double scale = s.M * s.M / (2 * p.C);
    return {scale * (1 + 2 * p.alpha * delta * u),
            -scale * p.alpha * delta * delta * u};
}

// the flow is symmetric under (nu, N) -> (-nu, -N) with everything else
// fixed, which maps the N < 0 hemisphere onto the SAM domain
inline AndoyerState mirror_n(const AndoyerState& s) {
    AndoyerState r = s;
    r.nu = wrap_two_pi(-s.nu);
    r.N = -s.N;
    return r;
}

struct Inclination {
    double J;     // angle between angular momentum and body z axis
    double delta; // 1 - N/M = 2 sin^2(J/2)
};

inline Inclination inclination_and_delta(const AndoyerState& s) {
    const double delta = 1 - s.N / s.M;
    if (delta < 0 || delta > 2)
        throw InvalidInput("N/M outside [-1, 1]");
    return {2 * std::asin(std::sqrt(0.5 * delta)), delta};
}

inline double delta_from_inclination(double J) {
    if (!(J >= 0 && J <= std::numbers::pi))
        throw InvalidInput("inclination must lie in [0, pi]");
    const double s = std::sin(0.5 * J);
    return 2 * s * s;
}

// Contour diagnostics on the (nu, N/M) cylinder. Subtracting the free
// rotation term M^2/(2C) and dividing by alpha*M^2/(2C) leaves two scaled
// energies that depend only on x = N/M and nu:
//   full Hamiltonian:  (1 - x)(1 + x) (1 - beta cos 2 nu)
//   averaged main part: 2 (1 - x) (1 - beta cos 2 nu)
// They differ by (1 - x)^2 (1 - beta cos 2 nu), quadratic in delta.
struct ScaledEnergies {
    double full;
    double mean;
};

inline ScaledEnergies scaled_energies(double nu, double n_over_m, const InertiaParams& p) {
    if (p.alpha <= 0)
        throw DegenerateScaling("energy scaling divides by alpha");
    if (std::abs(n_over_m) > 1 + 1e-12)
        throw InvalidInput("N/M outside [-1, 1]");
    const double x = n_over_m;
    const double u = 1 - p.beta * std::cos(2 * nu);
    return {(1 - x) * (1 + x) * u, 2 * (1 - x) * u};
}

// Long-axis-mode chart parameters, obtained by relabeling axes so that the
// smallest moment takes the reference role. betaStar obeys the closed form
// (1 - beta)/(1 + 3 beta) exactly. The starred angles are chart angles of a
// particular state, not properties of the body, so they start at zero.
struct LamParams {
    double alphaStar;
    double betaStar;
    double JStar = 0;
    double nuStar = 0;
};

inline LamParams lam_params(const InertiaParams& p) {
    const Moments m = moments_from_params(p);
    const double ac = m.A / m.C - 1, ab = m.A / m.B - 1;
    const double alphaStar = 0.5 * (ac + ab);
    if (alphaStar == 0)
        throw DegenerateScaling("axisymmetric prolate relabeling is singular");
    return {alphaStar, (ac - ab) / (2 * alphaStar)};
}

// Reference bodies with observed inertia ratios and wobble amplitudes.
// J0 is the observed inclination of the angular momentum axis in arcsec.
struct BodyRecord {
    const char* name;
    double AoverC;
    double BoverC;
    double beta;
    double J0arcsec;
};

inline std::span<const BodyRecord> body_catalog() {
    static const std::array<BodyRecord, 4> bodies{{
        {"mars", 0.9942917, 0.9949813, 0.0646316, 0.1},
        {"earth", 0.9967200, 0.9967222, 0.0003366, 1.0},
        {"moon", 0.999368, 0.999601, 0.226105, 6.2},
        {"eros", 0.229427, 0.963754, 0.977853, 55.0},
    }};
    return bodies;
}

inline const BodyRecord& find_body(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(c)));
    for (const auto& b : body_catalog())
        if (lower == b.name) return b;
    throw InvalidInput("unknown body: " + name);
}

inline InertiaParams body_params(const BodyRecord& b) {
    return inertia_from_moments(b.AoverC, b.BoverC, 1.0);
}

inline double body_delta(const BodyRecord& b) {
    return delta_from_inclination(arcsec2rad(b.J0arcsec));
}

} // namespace samrot
