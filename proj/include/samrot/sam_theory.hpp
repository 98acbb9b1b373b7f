#pragma once
#include <cmath>
#include <vector>

#include "action_angle.hpp"
#include "angles.hpp"
#include "deprit.hpp"
#include "errors.hpp"
#include "rigid_core.hpp"
#include "series_eval.hpp"
#include "tables.hpp"

// Numeric front end of the normalized wobble theory. A SamTheory instance
// runs the exact normalization once at construction and then evaluates the
// averaged Hamiltonian, the secular frequencies and the near-identity maps
// between mean and osculating action-angle variables at any order up to the
// one it was built with (the series are triangular, so lower orders come
// for free).
//
// Scaling: the engine works in units alpha = C = 1. Every perturbed order
// carries exactly one physical power of alpha/C, so the maps need no
// rescaling at all, while energies and frequencies pick up alpha/C against
// the G^2/(2C) rotor term, which is handled explicitly below.

namespace samrot {

struct MeanElements {
    double l = 0, g = 0; // mean angles, advance linearly in time
    double L = 0, G = 1; // constants of the averaged flow
};

struct Frequencies {
    double nl, ng;
};

struct PropagationResult {
    AndoyerState state;
    double deltaPrime = 0;     // L'/(sigma G') at the mean elements
    bool guardExceeded = false; // deltaPrime beyond the trust region
};

// differences against the classical small-inclination closed forms; all
// four should shrink as j^4 once j is small
struct KinoshitaResiduals {
    double j;        // minimum inclination of the exact solution
    double nl;       // wobble frequency residual
    double ng;       // precession frequency residual
    double combined; // residual of the (ng + nl) combination
    double wobble;   // residual of the osculating N expansion
};

inline constexpr int default_order = 9;
inline constexpr double delta_prime_guard = 0.5;
inline constexpr double inversion_tolerance = 1e-13;
inline constexpr int inversion_max_iterations = 50;

inline double delta_prime(const MeanElements& m, double beta) {
    const double sigma = checked_sigma(beta);
    if (m.G <= 0) throw InvalidInput("G must be positive");
    if (m.L < 0) throw InvalidInput("wobble action L cannot be negative");
    return (m.L / m.G) / sigma;
}

// small-inclination estimate j^2/2 = (1 - beta) delta'
inline double kinoshita_j_small(double deltaPrime, double beta) {
    checked_sigma(beta);
    if (deltaPrime < 0) throw InvalidInput("delta' cannot be negative");
    return std::sqrt(2 * (1 - beta) * deltaPrime);
}

// exact inversion of 1 - cos j = (1 - beta) delta'
inline double kinoshita_j_exact(double deltaPrime, double beta) {
    checked_sigma(beta);
    const double c = 1 - (1 - beta) * deltaPrime;
    if (c < -1 || deltaPrime < 0) throw InvalidInput("delta' outside the SAM domain");
    return std::acos(std::min(c, 1.0));
}

class SamTheory {
public:
    explicit SamTheory(int order = default_order)
        : dep_(series::deprit_normalize(series::sam_main_term() + series::sam_perturbation(),
                                        order)),
          tables_(series::extract_tables(dep_)) {
        for (const auto& h : dep_.averaged) {
            dKdL_.push_back(partial_L(h));
            dKdG_.push_back(partial_G(h));
        }
    }

    int order() const { return dep_.order; }
    const series::DepritResult& normalization() const { return dep_; }
    const series::SamTables& tables() const { return tables_; }

    // K' = G^2/(2C) + (alpha/C) (averaged engine series minus its rotor part)
    double averaged_hamiltonian(const MeanElements& m, const InertiaParams& p,
                                int order = -1) const {
        const int n = resolve(order);
        double acc = 0;
        for (int k = 0; k <= n + 1; ++k)
            acc += series::evaluate(dep_.averaged[k], p.beta, m.L, m.G, m.l) /
                   series::factorial(k);
        const double rotor = 0.5 * m.G * m.G;
        return rotor / p.C + (p.alpha / p.C) * (acc - rotor);
    }

    Frequencies secular_frequencies(const MeanElements& m, const InertiaParams& p,
                                    int order = -1) const {
        const int n = resolve(order);
        checked_sigma(p.beta);
        double nl = 0, ng = 0;
        for (int k = 0; k <= n + 1; ++k) {
            const double fk = series::factorial(k);
            nl += series::evaluate(dKdL_[k], p.beta, m.L, m.G, m.l) / fk;
            ng += series::evaluate(dKdG_[k], p.beta, m.L, m.G, m.l) / fk;
        }
        return {(p.alpha / p.C) * nl, m.G / p.C + (p.alpha / p.C) * (ng - m.G)};
    }

    ActionAngleState mean_to_osculating(const MeanElements& m, double beta,
                                        int order = -1) const {
        const int n = resolve(order);
        checked_sigma(beta);
        double l = m.l, g = m.g, L = m.L;
        for (int k = 1; k <= n; ++k) {
            const double fk = series::factorial(k);
            l += series::evaluate(dep_.direct[0][k - 1], beta, m.L, m.G, m.l) / fk;
            g += series::evaluate(dep_.direct[1][k - 1], beta, m.L, m.G, m.l) / fk;
            L += series::evaluate(dep_.direct[2][k - 1], beta, m.L, m.G, m.l) / fk;
        }
        return {wrap_two_pi(l), wrap_two_pi(g), L, m.G};
    }

    // fixed point of the direct map; the inverse series would do as well,
    // but iterating the direct map keeps the pair exactly consistent
    MeanElements osculating_to_mean(const ActionAngleState& a, double beta,
                                    int order = -1) const {
        const int n = resolve(order);
        checked_sigma(beta);
        MeanElements m{a.l, a.g, a.L, a.G};
        for (int it = 0; it < inversion_max_iterations; ++it) {
            const ActionAngleState trial = mean_to_osculating(m, beta, n);
            const double dl = angle_diff(a.l, trial.l);
            const double dg = angle_diff(a.g, trial.g);
            const double dL = a.L - trial.L;
            m.l += dl;
            m.g += dg;
            m.L += dL;
            if (std::max({std::abs(dl), std::abs(dg), std::abs(dL)}) < inversion_tolerance)
                return m;
        }
        throw InversionError("osculating-to-mean fixed point did not converge");
    }

    PropagationResult propagate(const AndoyerState& s0, const InertiaParams& p, double t,
                                int order = -1) const {
        const int n = resolve(order);
        const ActionAngleState a0 = to_action_angle(s0, p.beta);
        MeanElements m = osculating_to_mean(a0, p.beta, n);
        PropagationResult res;
        res.deltaPrime = delta_prime(m, p.beta);
        res.guardExceeded = res.deltaPrime > delta_prime_guard;
        const Frequencies fr = secular_frequencies(m, p, n);
        m.l += fr.nl * t;
        m.g += fr.ng * t;
        const ActionAngleState at = mean_to_osculating(m, p.beta, n);
        res.state = from_action_angle(at, p.beta, s0.lambda, s0.Lambda);
        return res;
    }

    KinoshitaResiduals kinoshita_residuals(const MeanElements& m, const InertiaParams& p,
                                           int order = -1) const {
        const int n = resolve(order);
        const double beta = p.beta, sigma = checked_sigma(beta);
        const double dp = delta_prime(m, beta);
        const double j = kinoshita_j_exact(dp, beta);
        const double j2 = j * j, j4 = j2 * j2;
        const double GC = m.G / p.C;

        const Frequencies th = secular_frequencies(m, p, n);
        const double nlK = GC * p.alpha * sigma *
                           (1 - j2 / (2 * (1 - beta)) -
                            3 * beta * beta * j4 / (16 * (1 - beta) * (1 - beta)));
        const double ngK =
            GC * (1 + 0.5 * p.alpha * (1 + beta) * j2 +
                  p.alpha / 32 * (1 + beta) * beta * beta / ((1 - beta) * (1 - beta)) *
                      j4 * j2);
        const double combK =
            GC + GC * p.alpha *
                     (1 - (1 - sigma) * (1 + 0.5 * std::sqrt((1 + beta) / (1 - beta)) * j2));
        const double cl = std::cos(m.l);
        const double NK = m.G * (1 - 0.5 * j2 - beta / (1 - beta) * j2 * cl * cl);

        const AndoyerState osc = from_action_angle(mean_to_osculating(m, beta, n), beta);
        return {j, th.nl - nlK, th.ng - ngK, th.nl + th.ng - combK, osc.N - NK};
    }

private:
    int resolve(int order) const {
        if (order == -1) return dep_.order;
        if (order < 0) throw InvalidInput("order cannot be negative");
        if (order > dep_.order)
            throw CapacityError("theory was built at order " + std::to_string(dep_.order));
        return order;
    }

    series::DepritResult dep_;
    series::SamTables tables_;
    std::vector<series::PoissonSeries> dKdL_, dKdG_;
};

} // namespace samrot
