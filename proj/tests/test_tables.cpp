#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <random>

#include "samrot/angles.hpp"
#include "samrot/deprit.hpp"
#include "samrot/series_eval.hpp"
#include "samrot/tables.hpp"
#include "samrot/tables_json.hpp"

using namespace samrot;
using namespace samrot::series;
using Catch::Approx;

namespace {

// one full-depth run shared by the tests in this file
const DepritResult& full_run() {
    static const DepritResult dep =
        deprit_normalize(sam_main_term() + sam_perturbation(), 10);
    return dep;
}

} // namespace

TEST_CASE("baked reference set parses to the expected extent", "[tables]") {
    const SamTables& ref = reference_tables();
    CHECK(ref.q.size() == 10);
    CHECK(ref.l.size() == 45);
    CHECK(ref.g.size() == 25);
    CHECK(ref.L.size() == 34);
    CHECK(ref.q.at(1) == BetaPoly{{Rat(1, 2)}});
    CHECK(ref.L.at({1, 0}).is_zero());
    // the widest row: q_9 is a degree 4 polynomial in beta^2
    CHECK(ref.q.at(9).c.size() == 5);
}

TEST_CASE("normalization regenerates the full reference tables exactly", "[tables][golden]") {
    const auto t0 = std::chrono::steady_clock::now();
    const SamTables got = extract_tables(full_run());
    const TableDiff d = diff_tables(got, reference_tables());
    INFO(d.detail);
    CHECK(d.match);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    INFO("regeneration took " << secs << " s");
    CHECK(secs < 60.0);
}

TEST_CASE("table polynomials agree with the raw series numerically", "[tables]") {
    const DepritResult& dep = full_run();
    const SamTables t = extract_tables(dep);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> bs(0.05, 0.95), Ls(0.01, 0.4),
        Gs(0.8, 1.5), ls(0, two_pi);
    for (int rep = 0; rep < 30; ++rep) {
        const double beta = bs(rng), L = Ls(rng), G = Gs(rng), l = ls(rng);
        const double sigma = std::sqrt(1 - beta * beta);
        const double dp = L / (sigma * G);
        for (int i = 1; i <= 9; ++i) {
            const double fi = factorial(i);
            // averaged row i: -(L^2/2) beta^2 q_i(beta^2) d^i
            const double qi = evaluate_poly(t.q.at(i), beta);
            const double avg =
                evaluate(dep.averaged[i + 1], beta, L, G, l) / factorial(i + 1);
            CHECK(avg == Approx(-0.5 * L * L * beta * beta * qi * std::pow(dp, i))
                             .margin(1e-14));

            // assemble each map row from its printed polynomials
            double lSum = 0, gSum = 0, LSum = 0;
            for (int m = 1; m <= i; ++m) {
                const double bm = std::pow(-beta, m);
                if (auto it = t.l.find({i, m}); it != t.l.end())
                    lSum += bm * evaluate_poly(it->second, beta) * std::sin(2 * m * l);
                if (auto it = t.g.find({i, m}); it != t.g.end())
                    gSum += bm * evaluate_poly(it->second, beta) * std::sin(2 * m * l);
                if (auto it = t.L.find({i, m}); it != t.L.end())
                    LSum -= bm * evaluate_poly(it->second, beta) * std::cos(2 * m * l);
            }
            LSum += beta * beta * evaluate_poly(t.L.at({i, 0}), beta);
            const double di = std::pow(dp, i);
            CHECK(evaluate(dep.direct[0][i - 1], beta, L, G, l) / fi ==
                  Approx(di * lSum).margin(1e-14));
            CHECK(evaluate(dep.direct[1][i - 1], beta, L, G, l) / fi ==
                  Approx(-(L / G) * di * gSum).margin(1e-14));
            CHECK(evaluate(dep.direct[2][i - 1], beta, L, G, l) / fi ==
                  Approx(L * di * LSum).margin(1e-14));
        }
    }
}

TEST_CASE("JSON round trip preserves the tables", "[tables]") {
    const SamTables& ref = reference_tables();
    const std::string text = tables_to_json(ref);
    const SamTables back = tables_from_json(text);
    CHECK(diff_tables(back, ref).match);
    CHECK(diff_tables(ref, back).match);

    // spot-check the serialized layout
    const auto j = nlohmann::json::parse(text);
    CHECK(j["q"]["1"] == "1/2");
    CHECK(j["L"]["1,0"] == "0");
    REQUIRE(j["q"]["3"].is_array());
    CHECK(j["q"]["3"][0]["betaPow"] == 0);
    CHECK(j["q"]["3"][0]["coeff"] == "3/4");
    CHECK(j["q"]["3"][1]["betaPow"] == 2);
    CHECK(j["q"]["3"][1]["coeff"] == "9/32");
}

TEST_CASE("JSON parsing rejects malformed input", "[tables]") {
    CHECK_THROWS_AS(tables_from_json("not json"), InvalidInput);
    CHECK_THROWS_AS(tables_from_json(R"({"q": {"1": 0.5}})"), InvalidInput);
    CHECK_THROWS_AS(tables_from_json(R"({"q": {"1": [{"betaPow": 1, "coeff": "1/2"}]}})"),
                    InvalidInput);
    CHECK_THROWS_AS(tables_from_json(R"({"g": {"11": "1/2"}})"), InvalidInput);
}

TEST_CASE("diffs report the first mismatch", "[tables]") {
    SamTables a = reference_tables();
    a.g[{6, 3}].c[0] += Rat(1, 128); // perturb one reference coefficient
    const TableDiff d = diff_tables(a, reference_tables());
    CHECK_FALSE(d.match);
    CHECK(d.detail.find("g[6,3]") != std::string::npos);

    // entries missing from the computed set count as zero
    SamTables b = reference_tables();
    b.q.erase(4);
    CHECK_FALSE(diff_tables(b, reference_tables()).match);
    // but zero rows may be dropped without harm
    SamTables c = reference_tables();
    c.L.erase({1, 0});
    CHECK(diff_tables(c, reference_tables()).match);
}

TEST_CASE("plain text parser", "[tables]") {
    const SamTables t = parse_tables("q 2 | 5/8\nl 3 2 | 3/16\n# comment\n\nL 1 0 | 0\n");
    CHECK(t.q.at(2) == BetaPoly{{Rat(5, 8)}});
    CHECK(t.l.at({3, 2}) == BetaPoly{{Rat(3, 16)}});
    CHECK(t.L.at({1, 0}).is_zero());
    CHECK_THROWS_AS(parse_tables("q x | 1/2"), InvalidInput);
    CHECK_THROWS_AS(parse_tables("z 1 1 | 1/2"), InvalidInput);
}
