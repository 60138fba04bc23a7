#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqs/denseness.hpp"
#include "pqs/errors.hpp"
#include "pqs/oracle.hpp"
#include "pqs/padic.hpp"
#include "pqs/poly.hpp"
#include "pqs/waring.hpp"
#include "pqs/witness.hpp"

using nlohmann::json;

namespace {

pqs::Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return pqs::Rational(mpz_class(text));
        }
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        pqs::Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid rational '" + text + "'");
    }
}

json waring_to_json(const pqs::WaringResult& r, std::uint64_t n, std::uint64_t b, const char* name) {
    json out{{"kind", name}, {"n", n}, {"b", b}, {"cap", r.cap}};
    if (r.value) {
        out["value"] = *r.value;
        if (!r.certificate.empty()) out["certificate"] = r.certificate;
    } else {
        out["value"] = nullptr;
        json un = json::array();
        std::size_t shown = 0;
        for (std::uint64_t x : r.unreached) {
            if (shown++ == 64) break;
            un.push_back(x);
        }
        out["unreached"] = un;
        out["unreached_count"] = r.unreached.size();
    }
    return out;
}

std::string render_padic(const pqs::PAdicNumber& x, const pqs::PAdicContext& ctx) {
    return pqs::padic_to_string(x, ctx);
}

json witness_to_json(const pqs::ApproximationWitness& w, const pqs::PAdicContext& ctx) {
    json out{{"x1", w.x1.get_str()},
             {"x2", w.x2.get_str()},
             {"exact", w.exact},
             {"swapped", w.swapped},
             {"indices", {w.index1, w.index2}},
             {"k", {w.k1, w.k2}},
             {"h", {w.h1, w.h2}},
             {"scale", render_padic(w.scale, ctx)},
             {"cofactor_ratio", render_padic(w.cofactor_ratio, ctx)}};
    if (w.exact)
        out["achieved_exponent"] = nullptr;
    else
        out["achieved_exponent"] = w.achieved_exponent;
    return out;
}

json power_witness_to_json(const pqs::PowerSumWitness& w) {
    auto tuple_json = [](const std::vector<mpz_class>& t) {
        json a = json::array();
        for (const auto& x : t) a.push_back(x.get_str());
        return a;
    };
    json out{{"tuple1", tuple_json(w.tuple1)},
             {"tuple2", tuple_json(w.tuple2)},
             {"exact", w.exact},
             {"k", {w.k1, w.k2}},
             {"lifted_root", w.lifted_root.get_str()},
             {"base_tuple", w.base_tuple}};
    if (w.exact)
        out["achieved_exponent"] = nullptr;
    else
        out["achieved_exponent"] = w.achieved_exponent;
    return out;
}

void emit(const json& out, bool human, const std::string& prose) {
    if (human)
        std::cout << prose << "\n";
    else
        std::cout << out.dump() << "\n";
}

std::string verdict_prose(const pqs::Verdict& v) {
    std::string s = "verdict: " + pqs::to_string(v.status) + " (" + pqs::to_string(v.reason) + ", rule " + v.rule + ")";
    if (!v.certificate.is_null()) s += "\ncertificate: " + v.certificate.dump();
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"denseness of p-adic quotient sets: decisions, thresholds, witnesses"};
    app.require_subcommand(1);
    bool human = false;
    app.add_flag("--human", human, "prose output instead of JSON");

    // theta / gamma
    struct {
        std::uint64_t n = 0, b = 0, limit = pqs::default_waring_modulus_limit;
        unsigned cap = 0;
        bool certificate = false;
    } th, ga;
    auto* theta_cmd = app.add_subcommand("theta", "smallest unit-led count of n-th powers summing to 0 mod b");
    theta_cmd->add_option("-n", th.n, "exponent")->required();
    theta_cmd->add_option("-b", th.b, "modulus")->required();
    theta_cmd->add_option("--cap", th.cap, "search cap (default b)");
    theta_cmd->add_option("--limit", th.limit, "largest allowed modulus");
    theta_cmd->add_flag("--certificate", th.certificate, "reconstruct the witness tuple");

    auto* gamma_cmd = app.add_subcommand("gamma", "smallest count of n-th powers reaching every residue mod b");
    gamma_cmd->add_option("-n", ga.n, "exponent")->required();
    gamma_cmd->add_option("-b", ga.b, "modulus")->required();
    gamma_cmd->add_option("--cap", ga.cap, "search cap (default b)");
    gamma_cmd->add_option("--limit", ga.limit, "largest allowed modulus");

    // dense
    auto* dense_cmd = app.add_subcommand("dense", "denseness verdicts");
    dense_cmd->require_subcommand(1);
    struct {
        unsigned m = 0, n = 0;
        std::uint64_t p = 0;
    } dp;
    auto* dense_power = dense_cmd->add_subcommand("powersum", "m-term sums of n-th powers in Q_p");
    dense_power->add_option("-m", dp.m, "number of terms")->required();
    dense_power->add_option("-n", dp.n, "exponent")->required();
    dense_power->add_option("-p", dp.p, "prime")->required();

    struct {
        unsigned n = 0;
        std::uint64_t p = 0;
    } ds;
    auto* dense_s2 = dense_cmd->add_subcommand("s2", "two-term sums of n-th powers, decided via -1");
    dense_s2->add_option("-n", ds.n, "exponent")->required();
    dense_s2->add_option("-p", ds.p, "prime")->required();

    struct {
        std::string poly;
        std::uint64_t p = 0;
    } dq;
    auto* dense_poly = dense_cmd->add_subcommand("poly", "values of an integer polynomial");
    dense_poly->add_option("--poly", dq.poly, "polynomial text")->required();
    dense_poly->add_option("-p", dq.p, "prime")->required();

    // witness
    auto* witness_cmd = app.add_subcommand("witness", "explicit approximation witnesses");
    witness_cmd->require_subcommand(1);
    struct {
        std::string poly, target;
        std::size_t i = 0, j = 0;
        long u = 0;
        std::uint64_t p = 0;
        int precision = 64;
    } wp;
    auto* witness_poly = witness_cmd->add_subcommand("poly", "two points whose value ratio approximates r");
    witness_poly->add_option("--poly", wp.poly, "factored polynomial text")->required();
    witness_poly->add_option("-i", wp.i, "first root index")->required();
    witness_poly->add_option("-j", wp.j, "second root index")->required();
    witness_poly->add_option("-r", wp.target, "target rational")->required();
    witness_poly->add_option("-u", wp.u, "approximation order")->required();
    witness_poly->add_option("-p", wp.p, "prime")->required();
    witness_poly->add_option("--precision", wp.precision, "working digits (default 64)");

    struct {
        unsigned m = 0, n = 0;
        std::string target;
        long u = 0;
        std::uint64_t p = 0;
        int precision = 64;
    } ws;
    auto* witness_power = witness_cmd->add_subcommand("powersum", "two power-sum tuples whose ratio approximates r");
    witness_power->add_option("-m", ws.m, "number of terms")->required();
    witness_power->add_option("-n", ws.n, "exponent")->required();
    witness_power->add_option("-p", ws.p, "prime")->required();
    witness_power->add_option("-r", ws.target, "positive rational target")->required();
    witness_power->add_option("-u", ws.u, "approximation order")->required();
    witness_power->add_option("--precision", ws.precision, "working digits (default 64)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "independent brute-force checks");
    oracle_cmd->require_subcommand(1);
    struct {
        std::string poly;
        std::uint64_t p = 0, xmax = 10'000, modulus = 0;
    } os;
    auto* oracle_spec = oracle_cmd->add_subcommand("spectrum", "valuation histogram of polynomial values");
    oracle_spec->add_option("--poly", os.poly, "factored polynomial text")->required();
    oracle_spec->add_option("-p", os.p, "prime")->required();
    oracle_spec->add_option("--xmax", os.xmax, "scan bound (default 10000)");
    oracle_spec->add_option("--modulus", os.modulus, "reduce valuation differences mod this");

    struct {
        std::uint64_t n = 0, b = 0, nodes = pqs::oracle::default_node_budget;
        unsigned gmax = 0;
    } ot;
    auto* oracle_theta = oracle_cmd->add_subcommand("theta", "exhaustive tuple search for the theta threshold");
    oracle_theta->add_option("-n", ot.n, "exponent")->required();
    oracle_theta->add_option("-b", ot.b, "modulus")->required();
    oracle_theta->add_option("--gmax", ot.gmax, "largest tuple length to try (default b)");
    oracle_theta->add_option("--nodes", ot.nodes, "search node budget");

    // closure
    auto* closure_cmd = app.add_subcommand("closure", "2-adic power-sum closure membership");
    closure_cmd->require_subcommand(1);
    struct {
        unsigned m = 0, n = 0;
        std::string value;
        int precision = 64;
    } cm;
    auto* closure_member = closure_cmd->add_subcommand("member", "is the value in the closure T(m, n)?");
    closure_member->add_option("-m", cm.m, "number of terms")->required();
    closure_member->add_option("-n", cm.n, "exponent (4, 8 or 16)")->required();
    closure_member->add_option("--value", cm.value, "rational value")->required();
    closure_member->add_option("--precision", cm.precision, "working digits (default 64)");

    struct {
        unsigned m = 0, n = 0;
        std::string value;
    } cr;
    auto* closure_ratio = closure_cmd->add_subcommand("ratio", "is the value a ratio of closure members?");
    closure_ratio->add_option("-m", cr.m, "number of terms")->required();
    closure_ratio->add_option("-n", cr.n, "exponent (4, 8 or 16)")->required();
    closure_ratio->add_option("--value", cr.value, "rational value")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (theta_cmd->parsed()) {
            auto r = pqs::theta(th.n, th.b, th.cap, th.certificate, th.limit);
            json out = waring_to_json(r, th.n, th.b, "theta");
            std::string prose = r.value ? "theta(" + std::to_string(th.n) + ", " + std::to_string(th.b) + ") = " +
                                              std::to_string(*r.value)
                                        : "theta not found within cap " + std::to_string(r.cap);
            emit(out, human, prose);
        } else if (gamma_cmd->parsed()) {
            auto r = pqs::gamma(ga.n, ga.b, ga.cap, ga.limit);
            json out = waring_to_json(r, ga.n, ga.b, "gamma");
            std::string prose = r.value ? "gamma(" + std::to_string(ga.n) + ", " + std::to_string(ga.b) + ") = " +
                                              std::to_string(*r.value)
                                        : "gamma not found within cap " + std::to_string(r.cap) + " (" +
                                              std::to_string(r.unreached.size()) + " residues unreached)";
            emit(out, human, prose);
        } else if (dense_power->parsed()) {
            auto v = pqs::decide_power_sum(dp.m, dp.n, dp.p);
            emit(v.to_json(), human, verdict_prose(v));
        } else if (dense_s2->parsed()) {
            auto v = pqs::decide_s2(ds.n, ds.p);
            emit(v.to_json(), human, verdict_prose(v));
        } else if (dense_poly->parsed()) {
            auto parsed = pqs::parse_poly(dq.poly);
            pqs::Verdict v;
            if (std::holds_alternative<pqs::DensePoly>(parsed)) {
                v = pqs::decide_poly_deg_le2(std::get<pqs::DensePoly>(parsed), dq.p);
            } else {
                const auto& fp = std::get<pqs::FactoredPoly>(parsed);
                if (fp.degree() <= 2)
                    v = pqs::decide_poly_deg_le2(pqs::expand(fp), dq.p);
                else
                    v = pqs::decide_factored_poly(fp, dq.p);
            }
            emit(v.to_json(), human, verdict_prose(v));
        } else if (witness_poly->parsed()) {
            auto parsed = pqs::parse_poly(wp.poly);
            if (!std::holds_alternative<pqs::FactoredPoly>(parsed))
                throw std::invalid_argument("witness poly needs the factored polynomial form");
            pqs::PAdicContext ctx(wp.p, wp.precision);
            auto w = pqs::approximation_witness(std::get<pqs::FactoredPoly>(parsed), wp.i, wp.j,
                                                parse_rational(wp.target), wp.u, ctx);
            std::string prose = "x1 = " + w.x1.get_str() + "\nx2 = " + w.x2.get_str() + "\nachieved order " +
                                (w.exact ? std::string("infinite") : std::to_string(w.achieved_exponent));
            emit(witness_to_json(w, ctx), human, prose);
        } else if (witness_power->parsed()) {
            pqs::PAdicContext ctx(ws.p, ws.precision);
            auto w = pqs::power_sum_witness(ws.m, ws.n, ws.p, parse_rational(ws.target), ws.u, ctx);
            std::string prose = "achieved order " +
                                (w.exact ? std::string("infinite") : std::to_string(w.achieved_exponent));
            emit(power_witness_to_json(w), human, prose);
        } else if (oracle_spec->parsed()) {
            auto parsed = pqs::parse_poly(os.poly);
            if (!std::holds_alternative<pqs::FactoredPoly>(parsed))
                throw std::invalid_argument("oracle spectrum needs the factored polynomial form");
            auto rep = pqs::valuation_spectrum(std::get<pqs::FactoredPoly>(parsed), os.p, os.xmax, os.modulus);
            json hist = json::object();
            for (const auto& [v, c] : rep.counts.by_valuation) hist[std::to_string(v)] = c;
            json out{{"by_valuation", hist},
                     {"zero_values", rep.counts.zero_values},
                     {"distinct_valuations", rep.distinct_valuations}};
            if (os.modulus >= 1) {
                out["difference_classes"] = rep.difference_classes;
                out["modulus"] = rep.modulus;
            }
            emit(out, human,
                 "distinct valuations: " + std::to_string(rep.distinct_valuations.size()) + ", zero values: " +
                     std::to_string(rep.counts.zero_values));
        } else if (oracle_theta->parsed()) {
            unsigned gmax = ot.gmax == 0 ? static_cast<unsigned>(ot.b) : ot.gmax;
            auto r = pqs::oracle::brute_force_theta(ot.n, ot.b, gmax, ot.nodes);
            const char* outcome = r.outcome == pqs::oracle::BruteForceTheta::Outcome::Found ? "found"
                                  : r.outcome == pqs::oracle::BruteForceTheta::Outcome::NotFound ? "not-found"
                                                                                                 : "budget-exceeded";
            json out{{"outcome", outcome}, {"nodes", r.nodes}};
            if (r.outcome == pqs::oracle::BruteForceTheta::Outcome::Found) {
                out["value"] = r.value;
                out["tuple"] = r.tuple;
            }
            emit(out, human, std::string("outcome: ") + outcome);
        } else if (closure_member->parsed()) {
            pqs::PAdicContext ctx(2, cm.precision);
            auto value = pqs::padic_from_rational(parse_rational(cm.value), ctx);
            bool member = pqs::t_closure_membership(value, ctx, cm.m, cm.n);
            json out{{"member", member}, {"m", cm.m}, {"n", cm.n}, {"value", cm.value}};
            emit(out, human, std::string("member: ") + (member ? "yes" : "no"));
        } else if (closure_ratio->parsed()) {
            bool member = pqs::t_ratio_membership(parse_rational(cr.value), cr.m, cr.n);
            json out{{"member", member}, {"m", cr.m}, {"n", cr.n}, {"value", cr.value}};
            emit(out, human, std::string("member: ") + (member ? "yes" : "no"));
        }
    } catch (const pqs::budget_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "budget"}}.dump() << "\n";
        return 2;
    } catch (const pqs::precision_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "precision"}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
        return 1;
    }
    return 0;
}
