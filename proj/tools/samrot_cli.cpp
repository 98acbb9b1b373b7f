// Command line front end: series propagation, comparison against direct
// numerical integration, phase-space contours, coefficient tables, secular
// frequencies and the body catalog. All numeric output carries 17
// significant digits so values survive a text round trip bit for bit.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "samrot/oracle.hpp"
#include "samrot/samrot.hpp"
#include "samrot/tables_json.hpp"

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- option bundles shared between subcommands ----

struct InertiaOpts {
    std::string body;
    double A = 0, B = 0, C = 1;
    double alpha = 0, beta = 0;
    CLI::Option *oBody = nullptr, *oA = nullptr, *oAlpha = nullptr, *oC = nullptr;

    void attach(CLI::App* cmd) {
        oBody = cmd->add_option("--body", body, "named body from the catalog");
        oA = cmd->add_option("--A", A, "principal moment A (with --B and --C)");
        cmd->add_option("--B", B, "principal moment B")->needs(oA);
        oC = cmd->add_option("--C", C, "largest principal moment (default 1)");
        oAlpha = cmd->add_option("--alpha", alpha, "flattening coefficient (with --beta)");
        cmd->add_option("--beta", beta, "triaxiality coefficient")->needs(oAlpha);
    }

    samrot::InertiaParams resolve(const CLI::App* cmd) const {
        const int sources = (oBody->count() ? 1 : 0) + (oA->count() ? 1 : 0) +
                            (oAlpha->count() ? 1 : 0);
        if (sources != 1)
            throw CLI::ValidationError(
                "inertia", "give exactly one of --body, --A/--B/--C, --alpha/--beta");
        if (oBody->count()) return samrot::body_params(samrot::find_body(body));
        if (oA->count()) {
            if (!cmd->count("--B") || !oC->count())
                throw CLI::ValidationError("inertia", "--A needs --B and --C");
            return samrot::inertia_from_moments(A, B, C);
        }
        return samrot::inertia_from_shape(alpha, beta, C);
    }

    std::string meta(const samrot::InertiaParams& p) const {
        std::string s;
        if (oBody->count()) s += "body=" + body + " ";
        s += "alpha=" + fmt(p.alpha) + " beta=" + fmt(p.beta) + " C=" + fmt(p.C);
        return s;
    }
};

struct StateOpts {
    double Jdeg = 0, Jarcsec = 0, NoverM = 0;
    double mu0 = 0, nu0 = 0, M = 1;
    CLI::Option *oJd = nullptr, *oJa = nullptr, *oNM = nullptr;

    void attach(CLI::App* cmd) {
        oJd = cmd->add_option("--J-deg", Jdeg, "inclination of the momentum axis, degrees");
        oJa = cmd->add_option("--J-arcsec", Jarcsec, "inclination in arcsec");
        oNM = cmd->add_option("--N-over-M", NoverM, "axial projection N/M directly");
        oJd->excludes(oJa)->excludes(oNM);
        oJa->excludes(oNM);
        cmd->add_option("--mu0", mu0, "initial mu (default 0)");
        cmd->add_option("--nu0", nu0, "initial nu (default 0)");
        cmd->add_option("--M", M, "angular momentum magnitude (default 1)");
    }

    samrot::AndoyerState resolve(const InertiaOpts& inertia) const {
        double x;
        if (oJd->count())
            x = std::cos(samrot::deg2rad(Jdeg));
        else if (oJa->count())
            x = std::cos(samrot::arcsec2rad(Jarcsec));
        else if (oNM->count())
            x = NoverM;
        else if (inertia.oBody->count())
            x = std::cos(samrot::arcsec2rad(samrot::find_body(inertia.body).J0arcsec));
        else
            throw CLI::ValidationError(
                "state", "give one of --J-deg, --J-arcsec, --N-over-M (or use --body)");
        return samrot::make_state(0, mu0, nu0, 0, M, M * x);
    }
};

struct OutputOpts {
    std::string path;
    std::string format = "csv";

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", path, "output file (default stdout)");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    // keeps the stream alive for the duration of a subcommand
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw samrot::InvalidInput("cannot open output file: " + path);
        return *file;
    }
};

std::vector<double> linspace(double t0, double t1, int n) {
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = t0 + (t1 - t0) * i / n;
    return v;
}

json sample_to_json(const samrot::TrajectorySample& smp, const samrot::InertiaParams& p) {
    json j{{"t", smp.t},        {"mu", smp.state.mu}, {"nu", smp.state.nu},
           {"M", smp.state.M},  {"N", smp.state.N},   {"energy", smp.energy}};
    if (smp.state.N > 0) {
        const auto a = samrot::to_action_angle(smp.state, p.beta);
        j["l"] = a.l;
        j["g"] = a.g;
        j["L"] = a.L;
        j["G"] = a.G;
    }
    return j;
}

// ---- subcommand bodies ----

int run_propagate(const InertiaOpts& io, const StateOpts& so, OutputOpts& oo,
                  const CLI::App* cmd, double tEnd, int samples, int order) {
    const samrot::InertiaParams p = io.resolve(cmd);
    const samrot::AndoyerState s0 = so.resolve(io);
    const samrot::SamTheory theory(order);

    std::vector<samrot::TrajectorySample> traj;
    bool guard = false;
    double deltaPrime = 0;
    for (double t : linspace(0, tEnd, samples)) {
        const samrot::PropagationResult r = theory.propagate(s0, p, t);
        guard = guard || r.guardExceeded;
        deltaPrime = r.deltaPrime;
        traj.push_back({t, r.state, samrot::hamiltonian(r.state, p)});
    }
    if (guard)
        std::cerr << "warning: delta' = " << fmt(deltaPrime)
                  << " exceeds the trust region of the series (0.5)\n";

    std::ostream& os = oo.stream();
    if (oo.format == "json") {
        json out{{"meta",
                  {{"alpha", p.alpha},
                   {"beta", p.beta},
                   {"C", p.C},
                   {"order", order},
                   {"deltaPrime", deltaPrime},
                   {"guardExceeded", guard}}},
                 {"samples", json::array()}};
        for (const auto& smp : traj) out["samples"].push_back(sample_to_json(smp, p));
        os << out.dump(2) << "\n";
    } else {
        os << "# samrot propagate " << io.meta(p) << " order=" << order
           << " deltaPrime=" << fmt(deltaPrime) << "\n";
        samrot::write_samples_csv(os, traj, p);
    }
    return 0;
}

int run_compare(const InertiaOpts& io, const StateOpts& so, OutputOpts& oo,
                const CLI::App* cmd, double tEnd, int samples,
                const std::vector<int>& orders, double tol) {
    const samrot::InertiaParams p = io.resolve(cmd);
    const samrot::AndoyerState s0 = so.resolve(io);
    int maxOrder = 1;
    for (int o : orders) maxOrder = std::max(maxOrder, o);
    const samrot::SamTheory theory(maxOrder);

    const auto times = linspace(0, tEnd, samples);
    const auto ref = samrot::integrate_trajectory(s0, p, times, tol);

    struct Row {
        int order;
        double maxMu, maxNu, maxN, rms;
    };
    std::vector<Row> rows;
    for (int order : orders) {
        Row r{order, 0, 0, 0, 0};
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto got = theory.propagate(s0, p, times[i], order).state;
            const double dmu = std::abs(samrot::angle_diff(got.mu, ref[i].state.mu));
            const double dnu = std::abs(samrot::angle_diff(got.nu, ref[i].state.nu));
            const double dN = std::abs(got.N - ref[i].state.N);
            r.maxMu = std::max(r.maxMu, dmu);
            r.maxNu = std::max(r.maxNu, dnu);
            r.maxN = std::max(r.maxN, dN);
            r.rms += dmu * dmu + dnu * dnu + dN * dN;
        }
        r.rms = std::sqrt(r.rms / (3 * times.size()));
        rows.push_back(r);
    }

    std::ostream& os = oo.stream();
    if (oo.format == "json") {
        json out{{"meta", {{"alpha", p.alpha}, {"beta", p.beta}, {"C", p.C}, {"tol", tol}}},
                 {"rows", json::array()}};
        for (const auto& r : rows)
            out["rows"].push_back({{"order", r.order},
                                   {"max_err_mu", r.maxMu},
                                   {"max_err_nu", r.maxNu},
                                   {"max_err_N", r.maxN},
                                   {"rms_err", r.rms}});
        os << out.dump(2) << "\n";
    } else {
        os << "# samrot compare " << io.meta(p) << " tol=" << fmt(tol)
           << " tEnd=" << fmt(tEnd) << "\n";
        os << "order,max_err_mu,max_err_nu,max_err_N,rms_err\n";
        for (const auto& r : rows)
            os << r.order << "," << fmt(r.maxMu) << "," << fmt(r.maxNu) << ","
               << fmt(r.maxN) << "," << fmt(r.rms) << "\n";
    }
    return 0;
}

int run_contours(OutputOpts& oo, double beta, std::vector<double> levels, double nMin,
                 double nMax, int nuSamples) {
    if (levels.empty())
        levels = {0.002, 0.007, 0.015, 0.023, 0.035, 0.048,
                  0.08,  0.12,  0.18,  0.25,  0.32,  0.38};
    samrot::checked_sigma(beta); // validates the range
    if (nMin >= nMax || nuSamples < 2)
        throw samrot::InvalidInput("empty contour window");

    std::ostream& os = oo.stream();
    std::ostringstream rows;
    int count = 0;
    for (double q : levels) {
        for (int i = 0; i < nuSamples; ++i) {
            const double nu = samrot::two_pi * i / (nuSamples - 1);
            const double u = 1 - beta * std::cos(2 * nu);
            // full energy level: (1 - x)(1 + x) u = q
            const double x2 = 1 - q / u;
            if (x2 >= 0) {
                const double x = std::sqrt(x2);
                if (x >= nMin && x <= nMax) {
                    rows << "full," << fmt(q) << "," << fmt(nu) << "," << fmt(x) << "\n";
                    ++count;
                }
            }
            // averaged level: 2 (1 - x) u = q
            const double xa = 1 - 0.5 * q / u;
            if (xa >= nMin && xa <= nMax) {
                rows << "mean," << fmt(q) << "," << fmt(nu) << "," << fmt(xa) << "\n";
                ++count;
            }
        }
    }
    if (oo.format == "json") {
        json out{{"meta", {{"beta", beta}, {"levels", levels}}}, {"points", json::array()}};
        std::istringstream in(rows.str());
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string fam, qs, nus, xs;
            std::getline(ls, fam, ',');
            std::getline(ls, qs, ',');
            std::getline(ls, nus, ',');
            std::getline(ls, xs, ',');
            out["points"].push_back({{"family", fam},
                                     {"q", std::stod(qs)},
                                     {"nu", std::stod(nus)},
                                     {"N_over_M", std::stod(xs)}});
        }
        os << out.dump(2) << "\n";
    } else {
        os << "# samrot contours beta=" << fmt(beta) << " points=" << count << "\n";
        os << "family,q,nu,N_over_M\n";
        os << rows.str();
    }
    return 0;
}

int run_tables(OutputOpts& oo, int order, const std::string& referencePath) {
    const samrot::SamTheory theory(order);
    const samrot::series::SamTables& got = theory.tables();
    if (!referencePath.empty()) {
        std::ifstream in(referencePath);
        if (!in) throw samrot::InvalidInput("cannot read reference: " + referencePath);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto ref = samrot::series::tables_from_json(buf.str());
        const auto d = samrot::series::diff_tables(got, ref);
        if (!d.match) {
            std::cerr << "table mismatch: " << d.detail << "\n";
            return 3;
        }
        std::cout << "tables match the reference\n";
        return 0;
    }
    oo.stream() << samrot::series::tables_to_json(got) << "\n";
    return 0;
}

int run_frequencies(const InertiaOpts& io, const StateOpts& so, OutputOpts& oo,
                    const CLI::App* cmd, int order, bool kinoshita) {
    const samrot::InertiaParams p = io.resolve(cmd);
    const samrot::AndoyerState s0 = so.resolve(io);
    const samrot::SamTheory theory(order);
    const auto a0 = samrot::to_action_angle(s0, p.beta);
    const samrot::MeanElements m = theory.osculating_to_mean(a0, p.beta);
    const samrot::Frequencies f = theory.secular_frequencies(m, p);
    const double dp = samrot::delta_prime(m, p.beta);

    std::ostream& os = oo.stream();
    if (oo.format == "json") {
        json out{{"meta", {{"alpha", p.alpha}, {"beta", p.beta}, {"C", p.C}, {"order", order}}},
                 {"n_l", f.nl},
                 {"n_g", f.ng},
                 {"period_l", samrot::two_pi / f.nl},
                 {"period_g", samrot::two_pi / f.ng},
                 {"deltaPrime", dp}};
        if (kinoshita) {
            const auto r = theory.kinoshita_residuals(m, p);
            out["kinoshita"] = {{"j", r.j},
                                {"residual_nl", r.nl},
                                {"residual_ng", r.ng},
                                {"residual_combined", r.combined},
                                {"residual_N", r.wobble}};
        }
        os << out.dump(2) << "\n";
    } else {
        os << "# samrot frequencies " << io.meta(p) << " order=" << order
           << " deltaPrime=" << fmt(dp) << "\n";
        if (kinoshita) {
            const auto r = theory.kinoshita_residuals(m, p);
            os << "n_l,n_g,period_l,period_g,j,residual_nl,residual_ng,residual_combined,"
                  "residual_N\n";
            os << fmt(f.nl) << "," << fmt(f.ng) << "," << fmt(samrot::two_pi / f.nl) << ","
               << fmt(samrot::two_pi / f.ng) << "," << fmt(r.j) << "," << fmt(r.nl) << ","
               << fmt(r.ng) << "," << fmt(r.combined) << "," << fmt(r.wobble) << "\n";
        } else {
            os << "n_l,n_g,period_l,period_g\n";
            os << fmt(f.nl) << "," << fmt(f.ng) << "," << fmt(samrot::two_pi / f.nl) << ","
               << fmt(samrot::two_pi / f.ng) << "\n";
        }
    }
    return 0;
}

int run_bodies(OutputOpts& oo) {
    std::ostream& os = oo.stream();
    if (oo.format == "json") {
        json out = json::array();
        for (const auto& b : samrot::body_catalog()) {
            const auto p = samrot::body_params(b);
            out.push_back({{"name", b.name},
                           {"A_over_C", b.AoverC},
                           {"B_over_C", b.BoverC},
                           {"alpha", p.alpha},
                           {"beta", p.beta},
                           {"J0_arcsec", b.J0arcsec},
                           {"delta", samrot::body_delta(b)}});
        }
        os << out.dump(2) << "\n";
    } else {
        os << "name,A_over_C,B_over_C,alpha,beta,J0_arcsec,delta\n";
        for (const auto& b : samrot::body_catalog()) {
            const auto p = samrot::body_params(b);
            os << b.name << "," << fmt(b.AoverC) << "," << fmt(b.BoverC) << ","
               << fmt(p.alpha) << "," << fmt(p.beta) << "," << fmt(b.J0arcsec) << ","
               << fmt(samrot::body_delta(b)) << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"torque-free rotation in the short-axis mode: series "
                 "propagation, tables and diagnostics"};
    app.require_subcommand(1);

    // propagate
    auto* cProp = app.add_subcommand("propagate", "propagate a state with the series theory");
    InertiaOpts ioProp;
    StateOpts soProp;
    OutputOpts ooProp;
    ioProp.attach(cProp);
    soProp.attach(cProp);
    ooProp.attach(cProp);
    double tEnd = 0;
    int samples = 10, order = samrot::default_order;
    cProp->add_option("--t-end", tEnd, "propagation time")->required();
    cProp->add_option("--samples", samples, "number of output intervals (default 10)")
        ->check(CLI::PositiveNumber);
    cProp->add_option("--order", order, "truncation order (default 9)");

    // compare
    auto* cCmp = app.add_subcommand("compare", "series accuracy against direct integration");
    InertiaOpts ioCmp;
    StateOpts soCmp;
    OutputOpts ooCmp;
    ioCmp.attach(cCmp);
    soCmp.attach(cCmp);
    ooCmp.attach(cCmp);
    double cmpEnd = 0, cmpTol = 1e-12;
    int cmpSamples = 10;
    std::vector<int> cmpOrders{1, 2, 3, 4, 5};
    cCmp->add_option("--t-end", cmpEnd, "propagation time")->required();
    cCmp->add_option("--samples", cmpSamples, "comparison points (default 10)")
        ->check(CLI::PositiveNumber);
    cCmp->add_option("--orders", cmpOrders, "orders to test (default 1..5)");
    cCmp->add_option("--tol", cmpTol, "integrator tolerance (default 1e-12)");

    // contours
    auto* cCont = app.add_subcommand("contours", "energy level curves on the (nu, N/M) cylinder");
    OutputOpts ooCont;
    ooCont.attach(cCont);
    double contBeta = 0.8, nMin = 0.88, nMax = 1.0;
    int nuSamples = 721;
    std::vector<double> levels;
    cCont->add_option("--beta", contBeta, "triaxiality (default 0.8)");
    cCont->add_option("--levels", levels, "scaled energy levels (default set of 12)");
    cCont->add_option("--n-min", nMin, "lower N/M bound (default 0.88)");
    cCont->add_option("--n-max", nMax, "upper N/M bound (default 1.0)");
    cCont->add_option("--nu-samples", nuSamples, "points in nu (default 721)");

    // tables
    auto* cTab = app.add_subcommand("tables", "regenerate the coefficient tables");
    OutputOpts ooTab;
    ooTab.attach(cTab);
    int tabOrder = 10;
    std::string referencePath;
    cTab->add_option("--order", tabOrder, "table order (default 10)");
    cTab->add_option("--reference", referencePath, "JSON tables to verify against");

    // frequencies
    auto* cFreq = app.add_subcommand("frequencies", "secular rates of the mean angles");
    InertiaOpts ioFreq;
    StateOpts soFreq;
    OutputOpts ooFreq;
    ioFreq.attach(cFreq);
    soFreq.attach(cFreq);
    ooFreq.attach(cFreq);
    int freqOrder = samrot::default_order;
    bool kinoshita = false;
    cFreq->add_option("--order", freqOrder, "truncation order (default 9)");
    cFreq->add_flag("--kinoshita", kinoshita, "add residuals against the classical forms");

    // bodies
    auto* cBod = app.add_subcommand("bodies", "print the reference body catalog");
    OutputOpts ooBod;
    ooBod.attach(cBod);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cProp->parsed())
            return run_propagate(ioProp, soProp, ooProp, cProp, tEnd, samples, order);
        if (cCmp->parsed())
            return run_compare(ioCmp, soCmp, ooCmp, cCmp, cmpEnd, cmpSamples, cmpOrders,
                               cmpTol);
        if (cCont->parsed())
            return run_contours(ooCont, contBeta, levels, nMin, nMax, nuSamples);
        if (cTab->parsed()) return run_tables(ooTab, tabOrder, referencePath);
        if (cFreq->parsed())
            return run_frequencies(ioFreq, soFreq, ooFreq, cFreq, freqOrder, kinoshita);
        if (cBod->parsed()) return run_bodies(ooBod);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const samrot::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
