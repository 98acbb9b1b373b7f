#pragma once
#include <array>
#include <vector>

#include "errors.hpp"
#include "poisson_series.hpp"

// Lie-transform normalization of the wobble Hamiltonian, exact in the
// rational ring of poisson_series.hpp.
//
// The input is K = H0 + P with H0 = G^2/2 + sigma L G (engine units,
// alpha = C = 1; every perturbed order carries exactly one net power of
// alpha/C in physical units, so the transformation series produced here
// are scale free and the caller only rescales energies and frequencies).
// The generator W = sum eps^n/n! W_{n+1} removes the angle l order by
// order: each antidiagonal of the Deprit triangle
//
//   H_i^(j) = H_{i+1}^(j-1) + sum_{k=0..i} C(i,k) {H_{i-k}^(j-1), W_{k+1}}
//
// is first evaluated with the not yet known W_n treated as zero, which
// leaves T_n := H_0^(n) missing exactly the single bracket {H0, W_n}.
// Choosing {H0, W_n} = <T_n> - T_n kills the oscillating part, W_n follows
// from the homological equation -n0 dW_n/dl = <T_n> - T_n, and the same
// correction is then added to every cell of the antidiagonal, because
// {H0, W_n} enters all of them additively through the recursion.
//
// Coordinate transformations need their own full triangles seeded with the
// bare coordinate (f_0^(0) = x, f_i^(0) = 0 for i >= 1). Collapsing that
// triangle into a single chain of brackets is only correct through order 2;
// from order 3 on the mixed terms L1 L2 and L2 L1 carry different binomial
// weights, so the two index recursion is spelled out in full here.

namespace samrot::series {

inline constexpr int max_order = 12;

// binomial coefficients as exact rationals
inline Rat binom(int n, int k) {
    Rat r(1);
    for (int j = 1; j <= k; ++j) r *= Rat(n - j + 1, j);
    return r;
}

// G^2/2 + sigma L G
inline PoissonSeries sam_main_term() {
    PoissonSeries s;
    s.add_term({.gPow = 2}, Rat(1, 2));
    s.add_term({.sigmaPow = 1, .lPow = 1, .gPow = 1}, Rat(1));
    return s;
}

// -(L^2/2)(1 + beta cos 2l)
inline PoissonSeries sam_perturbation() {
    PoissonSeries s;
    s.add_term({.lPow = 2}, Rat(-1, 2));
    s.add_term({.betaPow = 1, .lPow = 2, .harmonic = 1, .kind = Trig::cos}, Rat(-1, 2));
    return s;
}

enum class Coord { l = 0, g = 1, L = 2 };

struct DepritResult {
    int order = 0;
    // averaged[n] is the angle-free Hamiltonian at epsilon order n, for
    // n = 0 .. order+1; divide by n! when summing the physical series
    std::vector<PoissonSeries> averaged;
    // generator[n-1] is W_n, n = 1 .. order+1
    std::vector<PoissonSeries> generator;
    // direct[c][n-1] is the order n term of the mean-to-osculating map of
    // coordinate c (divide by n!); inverse[c] likewise for the other way
    std::array<std::vector<PoissonSeries>, 3> direct;
    std::array<std::vector<PoissonSeries>, 3> inverse;
};

namespace detail {

// bracket of a bare coordinate with a series: {l, s} = s_L, {g, s} = s_G,
// {L, s} = -s_l (and {G, s} = 0, which is why G has no map)
inline PoissonSeries coord_bracket(Coord x, const PoissonSeries& s) {
    switch (x) {
        case Coord::l: return partial_L(s);
        case Coord::g: return partial_G(s);
        default: return -partial_l(s);
    }
}

// Full Deprit triangle for an epsilon-independent seed. When `coord` is
// set the seed is that bare coordinate and the first bracket of each cell
// goes through coord_bracket; otherwise `seed` is a plain series. Returns
// f_0^(n) for n = 0 .. depth.
inline std::vector<PoissonSeries> lie_triangle(const PoissonSeries* seed, const Coord* coord,
                                               const std::vector<PoissonSeries>& W, int depth) {
    // cell (i, j) lives at index i*(depth+1)+j; only j <= depth-i is used
    std::vector<PoissonSeries> tri((depth + 1) * (depth + 1));
    std::vector<bool> isSeed((depth + 1) * (depth + 1), false);
    auto at = [&](int i, int j) -> PoissonSeries& { return tri[i * (depth + 1) + j]; };
    if (seed) at(0, 0) = *seed;
    isSeed[0] = (seed == nullptr); // bare coordinate marker

    std::vector<PoissonSeries> out(depth + 1);
    if (seed) out[0] = *seed;
    for (int n = 1; n <= depth; ++n) {
        for (int j = 1; j <= n; ++j) {
            const int i = n - j;
            PoissonSeries e = at(i + 1, j - 1);
            for (int k = 0; k <= i; ++k) {
                const PoissonSeries& w = W[k]; // W_{k+1}
                PoissonSeries b;
                if (isSeed[(i - k) * (depth + 1) + (j - 1)])
                    b = coord_bracket(*coord, w);
                else
                    b = poisson_bracket(at(i - k, j - 1), w);
                e += binom(i, k) * b;
            }
            at(i, j) = std::move(e);
        }
        out[n] = at(0, n);
    }
    return out;
}

} // namespace detail

// order n piece of the forward operator applied to a plain series
inline PoissonSeries apply_direct(const PoissonSeries& s, int n,
                                  const std::vector<PoissonSeries>& W) {
    return detail::lie_triangle(&s, nullptr, W, n)[n];
}

inline DepritResult deprit_normalize(const PoissonSeries& K, int order) {
    if (order < 0)
        throw InvalidInput("normalization order cannot be negative");
    if (order > max_order)
        throw CapacityError("normalization order exceeds the engine capacity of 12");

    // split the input by power of L and validate its shape
    PoissonSeries H0, P;
    for (const auto& [m, c] : K.terms()) {
        if (m.lPow <= 1) {
            if (m.kind != Trig::none)
                throw ShapeError("unperturbed part must not depend on the angle l");
            H0.add_term(m, c);
        } else if (m.lPow == 2) {
            P.add_term(m, c);
        } else {
            throw ShapeError("perturbation must be exactly quadratic in L");
        }
    }
    const PoissonSeries n0 = partial_L(H0);
    if (n0.size() != 1)
        throw ShapeError("dH0/dL must be a single monomial frequency");
    const auto& [n0Mon, n0Coeff] = *n0.terms().begin();
    if (n0Mon.lPow != 0)
        throw ShapeError("unperturbed frequency must not depend on L");

    const int depth = order + 1;
    DepritResult res;
    res.order = order;
    res.averaged.resize(depth + 1);
    res.averaged[0] = H0;
    res.generator.reserve(depth);

    // Hamiltonian triangle; cell (i, j) at i*(depth+1)+j
    std::vector<PoissonSeries> tri((depth + 1) * (depth + 1));
    auto at = [&](int i, int j) -> PoissonSeries& { return tri[i * (depth + 1) + j]; };
    at(0, 0) = H0;
    at(1, 0) = P;

    for (int n = 1; n <= depth; ++n) {
        for (int j = 1; j <= n; ++j) {
            const int i = n - j;
            PoissonSeries e = at(i + 1, j - 1);
            for (int k = 0; k <= i; ++k) {
                if (k < static_cast<int>(res.generator.size()))
                    e += binom(i, k) * poisson_bracket(at(i - k, j - 1), res.generator[k]);
                // k == i on the j == 1 row is {H0, W_n}, not known yet
            }
            at(i, j) = std::move(e);
        }
        const PoissonSeries& Tn = at(0, n);
        const PoissonSeries tilde = average_part(Tn) - Tn;
        res.generator.push_back(solve_homological(tilde, n0Mon, n0Coeff));
        // settle {H0, W_n} = tilde into the whole antidiagonal
        for (int j = 1; j <= n; ++j) at(n - j, j) += tilde;
        res.averaged[n] = at(0, n);
    }

    // transformation triangles use W_1 .. W_order only
    for (int c = 0; c < 3; ++c) {
        const Coord coord = static_cast<Coord>(c);
        auto rows = detail::lie_triangle(nullptr, &coord, res.generator, order);
        res.direct[c].assign(rows.begin() + 1, rows.end());
    }

    // inverse operator: Tbar_0 = id, Tbar_n s = -sum_{k=1..n} C(n,k) T_k(Tbar_{n-k} s)
    for (int c = 0; c < 3; ++c) {
        std::vector<PoissonSeries> inv(order);
        for (int n = 1; n <= order; ++n) {
            PoissonSeries e;
            for (int k = 1; k <= n; ++k) {
                PoissonSeries tk = (n - k == 0)
                                       ? res.direct[c][k - 1]
                                       : apply_direct(inv[n - k - 1], k, res.generator);
                e -= binom(n, k) * tk;
            }
            inv[n - 1] = std::move(e);
        }
        res.inverse[c] = std::move(inv);
    }
    return res;
}

} // namespace samrot::series
