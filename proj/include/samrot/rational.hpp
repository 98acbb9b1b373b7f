#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>
#include <string_view>

#include "errors.hpp"

// Exact rational arithmetic used by the series engine. Backed by
// boost::multiprecision so coefficients never overflow or round.

namespace samrot {

using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// "p", "-p" or "p/q"; q must be positive after normalization
inline Rat parse_rational(std::string_view text) {
    std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(boost::multiprecision::cpp_int(s));
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw InvalidInput("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw InvalidInput("cannot parse rational: " + s);
    }
}

inline std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r; // boost prints "p" or "p/q" in lowest terms
    return os.str();
}

} // namespace samrot
