#pragma once
#include <string>

#include <json.hpp>

#include "tables.hpp"

// JSON serialization of the coefficient tables, kept out of tables.hpp so
// the core library does not depend on nlohmann/json.
//
// Layout: {"q": {"1": entry, ...}, "g": {"3,2": entry, ...}, "l": ..., "L": ...}
// where an entry is either a bare rational string for a single constant
// coefficient, or an array of {"betaPow": 2k, "coeff": "p/q"} objects.

namespace samrot::series {

namespace detail {

inline nlohmann::json poly_to_json(const BetaPoly& p) {
    BetaPoly t = p;
    t.trim();
    if (t.c.empty()) return "0";
    if (t.c.size() == 1) return samrot::to_string(t.c[0]);
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t k = 0; k < t.c.size(); ++k) {
        if (t.c[k] == 0) continue;
        arr.push_back({{"betaPow", 2 * k}, {"coeff", samrot::to_string(t.c[k])}});
    }
    return arr;
}

inline BetaPoly poly_from_json(const nlohmann::json& j) {
    BetaPoly p;
    if (j.is_string()) {
        p.set(0, parse_rational(j.get<std::string>()));
    } else if (j.is_array()) {
        for (const auto& e : j) {
            const int bp = e.at("betaPow").get<int>();
            if (bp < 0 || bp % 2) throw InvalidInput("table beta powers must be even");
            p.set(bp / 2, parse_rational(e.at("coeff").get<std::string>()));
        }
    } else {
        throw InvalidInput("table entry must be a rational string or an array");
    }
    p.trim();
    return p;
}

} // namespace detail

inline std::string tables_to_json(const SamTables& t) {
    nlohmann::json j;
    j["q"] = nlohmann::json::object();
    for (const auto& [i, pol] : t.q) j["q"][std::to_string(i)] = detail::poly_to_json(pol);
    auto dump_map = [](const auto& m) {
        nlohmann::json o = nlohmann::json::object();
        for (const auto& [key, pol] : m)
            o[std::to_string(key.first) + "," + std::to_string(key.second)] =
                detail::poly_to_json(pol);
        return o;
    };
    j["g"] = dump_map(t.g);
    j["l"] = dump_map(t.l);
    j["L"] = dump_map(t.L);
    return j.dump(2);
}

inline SamTables tables_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("cannot parse table JSON: ") + e.what());
    }
    SamTables t;
    try {
        // bind before iterating: json::value returns by value and items()
        // must not outlive its object
        const nlohmann::json qObj = j.value("q", nlohmann::json::object());
        for (const auto& [key, val] : qObj.items())
            t.q[std::stoi(key)] = detail::poly_from_json(val);
        auto load_map = [](const nlohmann::json& o, auto& m) {
            for (const auto& [key, val] : o.items()) {
                const auto comma = key.find(',');
                if (comma == std::string::npos)
                    throw InvalidInput("map table key must be \"order,harmonic\"");
                m[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] =
                    detail::poly_from_json(val);
            }
        };
        load_map(j.value("g", nlohmann::json::object()), t.g);
        load_map(j.value("l", nlohmann::json::object()), t.l);
        load_map(j.value("L", nlohmann::json::object()), t.L);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed table JSON: ") + e.what());
    }
    return t;
}

} // namespace samrot::series
