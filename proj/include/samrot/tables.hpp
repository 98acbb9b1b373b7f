#pragma once
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deprit.hpp"
#include "errors.hpp"
#include "rational.hpp"

// Coefficient tables of the normalized wobble theory in their customary
// printed layout, extracted from a DepritResult:
//
//   averaged energy   K' = G^2/(2C) + (alpha/C) [ sigma L G
//                        - (L^2/2) (1 + beta^2 sum_i q_i(beta^2) d^i) ]
//   angle maps        l = l' + sum_i d^i sum_m (-beta)^m l_{i,m}(beta^2) sin 2m l'
//                     g = g' - (L'/G') sum_i d^i sum_m (-beta)^m g_{i,m}(beta^2) sin 2m l'
//   action map        L = L' [1 + sum_i d^i ( beta^2 L_{i,0}(beta^2)
//                        - sum_{m>=1} (-beta)^m L_{i,m}(beta^2) cos 2m l' ) ]
//
// with d = L'/(sigma G'). Every named entry is a polynomial in beta^2 with
// rational coefficients. The reference set baked into this header is what
// the golden test regenerates from scratch.

namespace samrot::series {

// polynomial in beta^2: c[k] multiplies beta^(2k)
struct BetaPoly {
    std::vector<Rat> c;

    void set(int k, const Rat& v) {
        if (static_cast<int>(c.size()) <= k) c.resize(k + 1);
        c[k] = v;
    }
    void add(int k, const Rat& v) {
        if (static_cast<int>(c.size()) <= k) c.resize(k + 1);
        c[k] += v;
    }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const {
        for (const auto& v : c)
            if (v != 0) return false;
        return true;
    }
    friend bool operator==(const BetaPoly& a, const BetaPoly& b) {
        BetaPoly x = a, y = b;
        x.trim();
        y.trim();
        return x.c == y.c;
    }
};

inline std::string to_string(const BetaPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < p.c.size(); ++k) {
        if (p.c[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << samrot::to_string(p.c[k]);
        if (k) os << "*beta^" << 2 * k;
    }
    return os.str();
}

struct SamTables {
    std::map<int, BetaPoly> q;                     // q_i
    std::map<std::pair<int, int>, BetaPoly> g;     // g_{i,m}, m >= 1
    std::map<std::pair<int, int>, BetaPoly> l;     // l_{i,m}, m >= 1
    std::map<std::pair<int, int>, BetaPoly> L;     // L_{i,m}, m >= 0
};

// ---- extraction from a normalization run ----

namespace detail {

inline Rat factorial_rat(int n) {
    Rat r(1);
    for (int k = 2; k <= n; ++k) r *= Rat(k);
    return r;
}

[[noreturn]] inline void bad_shape(const char* what, int i, int m) {
    std::ostringstream os;
    os << "normalized series violate the expected structure: " << what
       << " at order " << i << ", harmonic " << m;
    throw ShapeError(os.str());
}

} // namespace detail

// Read the named coefficients off the series. The shape checks double as a
// checksum of the whole computation: homogeneity in sigma, the parity of
// beta against the harmonic index and the trig kind of each map are all
// consequences of the algebra that a sign slip anywhere would break.
inline SamTables extract_tables(const DepritResult& dep) {
    SamTables t;
    const int order = dep.order;

    for (int i = 1; i <= order; ++i) {
        const int n = i + 1; // q_i sits at epsilon order i+1
        const Rat nf = detail::factorial_rat(n);
        BetaPoly pol;
        for (const auto& [m, c] : dep.averaged[n].terms()) {
            if (m.kind != Trig::none) detail::bad_shape("angle left in averaged term", i, m.harmonic);
            if (m.lPow != i + 2 || m.gPow != -i || m.sigmaPow != -i)
                detail::bad_shape("averaged exponents", i, 0);
            if (m.betaPow < 2 || m.betaPow % 2) detail::bad_shape("averaged beta parity", i, m.betaPow);
            pol.add((m.betaPow - 2) / 2, c / nf * Rat(-2));
        }
        pol.trim();
        t.q.emplace(i, std::move(pol));
    }

    for (int i = 1; i <= order; ++i) {
        const Rat fi = detail::factorial_rat(i);
        for (int c3 = 0; c3 < 3; ++c3) {
            const auto coord = static_cast<Coord>(c3);
            for (const auto& [m, c] : dep.direct[c3][i - 1].terms()) {
                if (m.sigmaPow != -i) detail::bad_shape("map sigma power", i, m.harmonic);
                const Rat cc = c / fi;
                const int sign = (m.harmonic % 2) ? -1 : 1; // (-1)^m
                if (coord == Coord::g) {
                    if (m.kind != Trig::sin) detail::bad_shape("g map trig kind", i, m.harmonic);
                    if (m.lPow != i + 1 || m.gPow != -(i + 1)) detail::bad_shape("g map exponents", i, m.harmonic);
                    const int pw = m.betaPow - m.harmonic;
                    if (pw < 0 || pw % 2) detail::bad_shape("g map beta parity", i, m.harmonic);
                    t.g[{i, m.harmonic}].add(pw / 2, -cc * sign);
                } else if (coord == Coord::l) {
                    if (m.kind != Trig::sin) detail::bad_shape("l map trig kind", i, m.harmonic);
                    if (m.lPow != i || m.gPow != -i) detail::bad_shape("l map exponents", i, m.harmonic);
                    const int pw = m.betaPow - m.harmonic;
                    if (pw < 0 || pw % 2) detail::bad_shape("l map beta parity", i, m.harmonic);
                    t.l[{i, m.harmonic}].add(pw / 2, cc * sign);
                } else {
                    if (m.lPow != i + 1 || m.gPow != -i) detail::bad_shape("L map exponents", i, m.harmonic);
                    if (m.harmonic == 0) {
                        if (m.betaPow < 2 || m.betaPow % 2) detail::bad_shape("L map beta parity", i, m.betaPow);
                        t.L[{i, 0}].add((m.betaPow - 2) / 2, cc);
                    } else {
                        if (m.kind != Trig::cos) detail::bad_shape("L map trig kind", i, m.harmonic);
                        const int pw = m.betaPow - m.harmonic;
                        if (pw < 0 || pw % 2) detail::bad_shape("L map beta parity", i, m.harmonic);
                        t.L[{i, m.harmonic}].add(pw / 2, -cc * sign);
                    }
                }
            }
        }
        t.L.try_emplace({i, 0}); // the m = 0 column exists even when it vanishes
    }

    for (auto& [k, v] : t.g) v.trim();
    for (auto& [k, v] : t.l) v.trim();
    for (auto& [k, v] : t.L) v.trim();
    return t;
}

// ---- the baked reference set ----

namespace detail {

inline constexpr std::string_view baked_text = R"(q 1 | 1/2
q 2 | 5/8
q 3 | 3/4 9/32
q 4 | 7/8 35/32
q 5 | 1 177/64 45/128
q 6 | 9/8 2925/512 2385/1024
q 7 | 5/4 2675/256 9305/1024 4765/8192
q 8 | 11/8 9009/512 55583/2048 44825/8192
q 9 | 3/2 1785/64 70179/1024 237339/8192 36597/32768
q 10 | 13/8 10803/256 630357/4096 232505/2048 27937/2048
g 1 1 | 1/4
g 2 1 | 1/2
g 3 1 | 3/4 3/8
g 3 2 | 1/64
g 4 1 | 1 55/32
g 4 2 | 1/16 1/64
g 5 1 | 5/4 1251/256 765/1024
g 5 2 | 5/32 35/256
g 5 3 | 1/768 -1/3072
g 6 1 | 3/2 1413/128 175/32
g 6 2 | 5/16 79/128 1/16
g 6 3 | 1/128
g 7 1 | 7/4 5551/256 47367/2048 3471/2048
g 7 2 | 35/64 1025/512 2693/4096
g 7 3 | 7/256 29/2048 -1/2048
g 7 4 | 1/8192 -1/16384
g 8 1 | 2 1239/32 151301/2048 140383/8192
g 8 2 | 7/8 339/64 239/64 209/1024
g 8 3 | 7/96 19/192 61/8192
g 8 4 | 1/1024 -1/4096 -1/16384
g 9 1 | 9/4 8253/128 3236383/16384 3162705/32768 1084959/262144
g 9 2 | 21/16 195/16 62665/4096 43329/16384
g 9 3 | 21/128 1731/4096 7947/65536 81/65536
g 9 4 | 9/2048 15/16384 -51/65536
g 9 5 | 1/81920 -3/327680 1/1310720
l 1 1 | 1/2
l 2 1 | 3/4
l 2 2 | 1/16
l 3 1 | 1 15/32
l 3 2 | 3/16
l 3 3 | 1/96
l 4 1 | 5/4 129/64
l 4 2 | 25/64 1/8
l 4 3 | 3/64
l 4 4 | 1/512
l 5 1 | 3/2 705/128 415/512
l 5 2 | 11/16 93/128
l 5 3 | 17/128 1/32
l 5 4 | 3/256
l 5 5 | 1/2560
l 6 1 | 7/4 3101/256 5919/1024
l 6 2 | 35/32 649/256 1179/4096
l 6 3 | 77/256 117/512
l 6 4 | 43/1024 1/128
l 6 5 | 3/1024
l 6 6 | 1/12288
l 7 1 | 2 747/32 24575/1024 14021/8192
l 7 2 | 13/8 439/64 10191/4096
l 7 3 | 19/32 31/32 359/4096
l 7 4 | 119/1024 141/2048
l 7 5 | 13/1024 1/512
l 7 6 | 3/4096
l 7 7 | 1/57344
l 8 1 | 9/4 10521/256 154889/2048 279831/16384
l 8 2 | 147/64 8109/512 200025/16384 1465/2048
l 8 3 | 273/256 6363/2048 7281/8192
l 8 4 | 2241/8192 1407/4096 423/16384
l 8 5 | 85/2048 165/8192
l 8 6 | 61/16384 1/2048
l 8 7 | 3/16384
l 8 8 | 1/262144
l 9 1 | 5/2 4333/64 1639795/8192 3121345/32768 262085/65536
l 9 2 | 25/8 131/4 182765/4096 269247/32768
l 9 3 | 343/192 17095/2048 82345/16384 32245/131072
l 9 4 | 589/1024 10435/8192 4923/16384
l 9 5 | 929/8192 947/8192 487/65536
l 9 6 | 115/8192 189/32768
l 9 7 | 35/32768 1/8192
l 9 8 | 3/65536
l 9 9 | 1/1179648
L 1 0 | 0
L 2 0 | 1/4
L 3 0 | 5/8
L 4 0 | 9/8 27/64
L 5 0 | 7/4 35/16
L 6 0 | 5/2 885/128 225/256
L 7 0 | 27/8 8775/512 7155/1024
L 8 0 | 35/8 18725/512 65135/2048 33355/16384
L 9 0 | 11/2 9009/128 55583/512 44825/2048
L 1 1 | 1/2
L 2 1 | 1/2
L 3 1 | 1/2 3/8
L 3 2 | 1/16
L 4 1 | 1/2 21/16
L 4 2 | 3/16 1/16
L 5 1 | 1/2 387/128 297/512
L 5 2 | 3/8 7/16
L 5 3 | 1/128 -1/512
L 6 1 | 1/2 735/128 1835/512
L 6 2 | 5/8 53/32 13/64
L 6 3 | 5/128 1/512
L 7 1 | 1/2 1245/128 13425/1024 2307/2048
L 7 2 | 15/16 297/64 473/256
L 7 3 | 15/128 81/1024 -3/2048
L 7 4 | 1/1024 -1/2048
L 8 1 | 1/2 1953/128 295/8 41149/4096
L 8 2 | 21/16 693/64 9497/1024 599/1024
L 8 3 | 35/128 475/1024 205/4096
L 8 4 | 7/1024 -3/2048 -1/2048
L 9 1 | 1/2 1449/64 720999/8192 828675/16384 321543/131072
L 9 2 | 7/4 357/16 69863/2048 3487/512
L 9 3 | 35/64 3575/2048 20229/32768 45/4096
L 9 4 | 7/256 35/4096 -11/2048
L 9 5 | 1/8192 -3/32768 1/131072
)";

} // namespace detail

// one row per entry: "<table> <order> [<harmonic>] | c0 c2 c4 ..." with the
// coefficients listed by ascending even power of beta
inline SamTables parse_tables(std::string_view text) {
    SamTables t;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag, bar;
        int i = 0, m = 0;
        ls >> tag >> i;
        if (tag != "q") ls >> m;
        ls >> bar;
        if (ls.fail() || bar != "|" || i < 1 || m < 0)
            throw InvalidInput("malformed table row: " + line);
        BetaPoly pol;
        std::string tok;
        int k = 0;
        while (ls >> tok) pol.set(k++, parse_rational(tok));
        pol.trim();
        if (tag == "q") t.q[i] = std::move(pol);
        else if (tag == "g") t.g[{i, m}] = std::move(pol);
        else if (tag == "l") t.l[{i, m}] = std::move(pol);
        else if (tag == "L") t.L[{i, m}] = std::move(pol);
        else throw InvalidInput("unknown table tag: " + tag);
    }
    return t;
}

inline const SamTables& reference_tables() {
    static const SamTables t = parse_tables(detail::baked_text);
    return t;
}

// ---- comparison ----

struct TableDiff {
    bool match = true;
    std::string detail; // first mismatch, empty when match
};

namespace detail {

template <typename Map, typename Key>
inline BetaPoly lookup_or_zero(const Map& m, const Key& k) {
    auto it = m.find(k);
    return it == m.end() ? BetaPoly{} : it->second;
}

} // namespace detail

// every entry of `ref` must be reproduced in `got` (extra entries in `got`,
// e.g. rows above the reference order, are not a mismatch)
inline TableDiff diff_tables(const SamTables& got, const SamTables& ref) {
    auto report = [](const std::string& name, const BetaPoly& a, const BetaPoly& b) {
        return TableDiff{false, name + ": computed " + to_string(a) + ", reference " + to_string(b)};
    };
    for (const auto& [i, pol] : ref.q) {
        const BetaPoly mine = detail::lookup_or_zero(got.q, i);
        if (!(mine == pol)) return report("q[" + std::to_string(i) + "]", mine, pol);
    }
    auto check_map = [&](const char* tag, const auto& mine, const auto& theirs) -> TableDiff {
        for (const auto& [key, pol] : theirs) {
            const BetaPoly m2 = detail::lookup_or_zero(mine, key);
            if (!(m2 == pol))
                return report(std::string(tag) + "[" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + "]",
                              m2, pol);
        }
        return {};
    };
    if (auto d = check_map("g", got.g, ref.g); !d.match) return d;
    if (auto d = check_map("l", got.l, ref.l); !d.match) return d;
    if (auto d = check_map("L", got.L, ref.L); !d.match) return d;
    return {};
}

} // namespace samrot::series
