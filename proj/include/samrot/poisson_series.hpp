#pragma once
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

// Exact Poisson series over the coefficient ring Q[beta, sigma, sigma^-1].
// A term is
//
//     c * beta^betaPow * sigma^sigmaPow * L^lPow * G^gPow * trig(2 m l)
//
// with c rational and trig one of {1, cos, sin}. The angle g never shows
// up: the ring is closed under every operation the normalization needs, and
// that closure is what lets the whole computation stay rational. beta and
// sigma = sqrt(1 - beta^2) are kept as independent symbols on purpose; the
// relation between them is only imposed at evaluation time, so homogeneity
// in sigma survives as a structural checksum of the algebra.
//
// No floating point exists in this header.

namespace samrot::series {

enum class Trig : unsigned char { none, cos, sin };

struct Monomial {
    int betaPow = 0;
    int sigmaPow = 0;
    int lPow = 0;
    int gPow = 0;
    int harmonic = 0; // m in trig(2 m l)
    Trig kind = Trig::none;

    auto operator<=>(const Monomial&) const = default;
};

inline void check_monomial(const Monomial& m) {
    if (m.betaPow < 0 || m.lPow < 0)
        throw InvalidInput("beta and L exponents must be nonnegative");
    if (m.harmonic < 0)
        throw InvalidInput("harmonic index must be nonnegative");
    if ((m.harmonic == 0) != (m.kind == Trig::none))
        throw InvalidInput("harmonic 0 must pair with the constant trig kind");
}

class PoissonSeries {
public:
    using TermMap = std::map<Monomial, Rat>;

    PoissonSeries() = default;

    static PoissonSeries term(const Monomial& m, const Rat& c) {
        PoissonSeries s;
        s.add_term(m, c);
        return s;
    }

    void add_term(const Monomial& m, const Rat& c) {
        check_monomial(m);
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    PoissonSeries& operator+=(const PoissonSeries& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    PoissonSeries& operator-=(const PoissonSeries& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    PoissonSeries& operator*=(const Rat& k) {
        if (k == 0) { terms_.clear(); return *this; }
        for (auto& [m, c] : terms_) c *= k;
        return *this;
    }

    friend PoissonSeries operator+(PoissonSeries a, const PoissonSeries& b) { return a += b; }
    friend PoissonSeries operator-(PoissonSeries a, const PoissonSeries& b) { return a -= b; }
    friend PoissonSeries operator*(PoissonSeries a, const Rat& k) { return a *= k; }
    friend PoissonSeries operator*(const Rat& k, PoissonSeries a) { return a *= k; }
    friend PoissonSeries operator-(PoissonSeries a) { return a *= Rat(-1); }
    friend bool operator==(const PoissonSeries& a, const PoissonSeries& b) {
        return a.terms_ == b.terms_;
    }

    friend PoissonSeries operator*(const PoissonSeries& a, const PoissonSeries& b);

private:
    TermMap terms_;
};

// product of two terms; trig products split into sum and difference
// harmonics with weight 1/2
inline PoissonSeries operator*(const PoissonSeries& a, const PoissonSeries& b) {
    PoissonSeries out;
    const Rat half(1, 2);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m;
            m.betaPow = ma.betaPow + mb.betaPow;
            m.sigmaPow = ma.sigmaPow + mb.sigmaPow;
            m.lPow = ma.lPow + mb.lPow;
            m.gPow = ma.gPow + mb.gPow;
            const Rat c = ca * cb;

            auto emit = [&](int harmonic, Trig kind, const Rat& coeff) {
                Monomial t = m;
                if (harmonic < 0) {
                    // cos is even, sin is odd in its argument
                    t.harmonic = -harmonic;
                    t.kind = kind;
                    out.add_term(t, kind == Trig::sin ? -coeff : coeff);
                } else if (harmonic == 0) {
                    if (kind == Trig::sin) return; // sin 0 == 0
                    t.harmonic = 0;
                    t.kind = Trig::none;
                    out.add_term(t, coeff);
                } else {
                    t.harmonic = harmonic;
                    t.kind = kind;
                    out.add_term(t, coeff);
                }
            };

            if (ma.kind == Trig::none && mb.kind == Trig::none) {
                emit(0, Trig::none, c);
            } else if (ma.kind == Trig::none) {
                emit(mb.harmonic, mb.kind, c);
            } else if (mb.kind == Trig::none) {
                emit(ma.harmonic, ma.kind, c);
            } else if (ma.kind == Trig::cos && mb.kind == Trig::cos) {
                emit(ma.harmonic - mb.harmonic, Trig::cos, c * half);
                emit(ma.harmonic + mb.harmonic, Trig::cos, c * half);
            } else if (ma.kind == Trig::sin && mb.kind == Trig::sin) {
                emit(ma.harmonic - mb.harmonic, Trig::cos, c * half);
                emit(ma.harmonic + mb.harmonic, Trig::cos, -c * half);
            } else if (ma.kind == Trig::sin && mb.kind == Trig::cos) {
                emit(ma.harmonic + mb.harmonic, Trig::sin, c * half);
                emit(ma.harmonic - mb.harmonic, Trig::sin, c * half);
            } else { // cos * sin
                emit(ma.harmonic + mb.harmonic, Trig::sin, c * half);
                emit(ma.harmonic - mb.harmonic, Trig::sin, -c * half);
            }
        }
    }
    return out;
}

inline PoissonSeries partial_l(const PoissonSeries& s) {
    PoissonSeries out;
    for (const auto& [m, c] : s.terms()) {
        if (m.kind == Trig::none) continue;
        Monomial d = m;
        const Rat factor = Rat(2 * m.harmonic);
        if (m.kind == Trig::cos) {
            d.kind = Trig::sin;
            out.add_term(d, -c * factor);
        } else {
            d.kind = Trig::cos;
            out.add_term(d, c * factor);
        }
    }
    return out;
}

inline PoissonSeries partial_L(const PoissonSeries& s) {
    PoissonSeries out;
    for (const auto& [m, c] : s.terms()) {
        if (m.lPow == 0) continue;
        Monomial d = m;
        d.lPow -= 1;
        out.add_term(d, c * Rat(m.lPow));
    }
    return out;
}

inline PoissonSeries partial_G(const PoissonSeries& s) {
    PoissonSeries out;
    for (const auto& [m, c] : s.terms()) {
        if (m.gPow == 0) continue;
        Monomial d = m;
        d.gPow -= 1;
        out.add_term(d, c * Rat(m.gPow));
    }
    return out;
}

// {f, h} over the (l, L), (g, G) pairs; nothing in the ring carries g, so
// the g branch contributes f_g h_G - f_G h_g = -f_G * 0 + 0 * h_G = 0 and
// only the first pair survives
inline PoissonSeries poisson_bracket(const PoissonSeries& f, const PoissonSeries& h) {
    return partial_l(f) * partial_L(h) - partial_L(f) * partial_l(h);
}

inline PoissonSeries average_part(const PoissonSeries& s) {
    PoissonSeries out;
    for (const auto& [m, c] : s.terms())
        if (m.kind == Trig::none) out.add_term(m, c);
    return out;
}

inline PoissonSeries oscillating_part(const PoissonSeries& s) {
    PoissonSeries out;
    for (const auto& [m, c] : s.terms())
        if (m.kind != Trig::none) out.add_term(m, c);
    return out;
}

// Solve -n0 * dW/dl = rhs for W, where n0 is the single monomial frequency
// coefficient n0Coeff * monomial(n0Mon). Every term of the right-hand side
// must be purely oscillating; a constant cannot sit in the image of d/dl.
inline PoissonSeries solve_homological(const PoissonSeries& rhs,
                                       const Monomial& n0Mon, const Rat& n0Coeff) {
    if (n0Coeff == 0 || n0Mon.kind != Trig::none)
        throw HomologicalError("frequency must be a nonzero angle-free monomial");
    PoissonSeries w;
    for (const auto& [m, c] : rhs.terms()) {
        if (m.kind == Trig::none)
            throw HomologicalError("averaged part left in homological right-hand side");
        Monomial d = m;
        d.betaPow -= n0Mon.betaPow;
        d.sigmaPow -= n0Mon.sigmaPow;
        d.lPow -= n0Mon.lPow;
        d.gPow -= n0Mon.gPow;
        if (d.betaPow < 0 || d.lPow < 0)
            throw HomologicalError("frequency monomial does not divide the right-hand side");
        const Rat scaled = c / (n0Coeff * Rat(2 * m.harmonic));
        if (m.kind == Trig::cos) {
            d.kind = Trig::sin;
            w.add_term(d, -scaled);
        } else {
            d.kind = Trig::cos;
            w.add_term(d, scaled);
        }
    }
    return w;
}

// compact printable form, mostly for test failure messages
inline std::string to_string(const PoissonSeries& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << samrot::to_string(c) << ")";
        if (m.betaPow) os << "*beta^" << m.betaPow;
        if (m.sigmaPow) os << "*sigma^" << m.sigmaPow;
        if (m.lPow) os << "*L^" << m.lPow;
        if (m.gPow) os << "*G^" << m.gPow;
        if (m.kind == Trig::cos) os << "*cos(" << 2 * m.harmonic << "l)";
        if (m.kind == Trig::sin) os << "*sin(" << 2 * m.harmonic << "l)";
    }
    return os.str();
}

} // namespace samrot::series
