#pragma once

// JSON reports. Rationals are "p/q" strings; integer count arrays are JSON
// numbers while they fit in 64 bits. Keys are sorted by the json library, so
// equal inputs give byte-identical dumps.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "apps.hpp"
#include "classify.hpp"
#include "dynamics.hpp"
#include "funceq.hpp"
#include "parser.hpp"
#include "series.hpp"

namespace itfe {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json integer_json(const BigInt& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

inline Json rational_json(const Rational& r) { return r.str(); }

/// Coefficients as numbers when all are integers, else as "p/q" strings.
inline Json coefficient_array(const std::vector<Rational>& c) {
    Json a = Json::array();
    const bool integral = std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_integer(); });
    for (const auto& r : c) a.push_back(integral ? integer_json(r.numerator()) : rational_json(r));
    return a;
}

inline Json integer_array(const std::vector<BigInt>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(integer_json(x));
    return a;
}

inline Json to_json(const Series& s) {
    Json c = Json::array();
    for (const auto& r : s.coeffs()) c.push_back(rational_json(r));
    return {{"order", s.order()}, {"coeffs", c}};
}

inline Json to_json(const ProjectivePoint& p) { return to_string(p); }

inline Json to_json(const IntervalCertificate& c) {
    Json conds = Json::array();
    for (const auto& s : c.conditions)
        conds.push_back({{"meaning", s.meaning}, {"polynomial", s.poly.str()}, {"sign", s.sign}});
    return {{"interval", {c.lo.str(), c.hi.str()}},
            {"critical_value", to_json(c.critical_value)},
            {"orbit_index", c.orbit_index},
            {"point", c.point.str()},
            {"conditions", conds}};
}

inline Json to_json(const OrbitReport& r) {
    Json cps = Json::array();
    for (const auto& c : r.critical_points) cps.push_back({{"point", c.root.str()}, {"multiplicity", c.multiplicity}});
    Json cvs = Json::array();
    for (const auto& v : r.critical_values) cvs.push_back(to_json(v));
    Json orbits = Json::array();
    for (const auto& o : r.orbits) {
        Json it = Json::array();
        for (const auto& p : o.iterates) it.push_back(to_json(p));
        Json jo = {{"value", to_json(o.value)}, {"iterates", it}};
        jo["cycle_start"] = o.cycle_start ? Json(*o.cycle_start) : Json(nullptr);
        orbits.push_back(jo);
    }
    Json pc = Json::array();
    for (const auto& p : r.postcritical_set) pc.push_back(to_json(p));
    Json cycles = Json::array();
    for (const auto& cyc : r.cycles) {
        Json c = Json::array();
        for (const auto& p : cyc) c.push_back(to_json(p));
        cycles.push_back(c);
    }
    Json j = {{"status", to_string(r.status)},
              {"critical_points", cps},
              {"irrational_critical_points", r.irrational_critical_count},
              {"critical_values", cvs},
              {"orbits", orbits},
              {"postcritical_set", pc},
              {"postcritical_contains_infinity", r.postcritical_contains_infinity},
              {"infinity_critical_multiplicity", r.infinity_critical_multiplicity},
              {"cycles", cycles},
              {"max_iter", r.max_iter},
              {"note", r.note}};
    j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
    return j;
}

inline Json to_json(const ConjugacyResult& c) {
    Json j = {{"kind", to_string(c.kind)},
              {"verified", c.verified},
              {"d", c.d},
              {"pcf_status", to_string(c.pcf_status)},
              {"note", c.note}};
    j["m"] = c.m ? Json(c.m->as_function().str()) : Json(nullptr);
    return j;
}

inline Json to_json(const Verdict& v) {
    Json cert = Json::array();
    for (const auto& e : v.certificate) cert.push_back({{"hypothesis", e.hypothesis}, {"evidence", e.evidence}});
    Json j = {{"outcome", to_string(v.outcome)}, {"detail", v.detail}, {"certificate", cert}};
    j["witness"] = v.witness ? Json(v.witness->str()) : Json(nullptr);
    if (v.outcome == Outcome::AlgebraicPower) j["N"] = v.N;
    return j;
}

inline Json classify_options_json(const ClassifyOptions& o) {
    return {{"external_nonalgebraic", o.external_nonalgebraic},
            {"polynomial_degree_bound", o.polynomial_degree_bound},
            {"rational_degree_bound", o.rational_degree_bound},
            {"exponent_denominator_bound", o.exponent_denominator_bound},
            {"series_check_order", o.series_check_order},
            {"max_iter", o.max_iter}};
}

/// Verdict plus the inputs that produced it, enough to replay it.
inline Json classify_report(const RationalFunction& R, const RationalFunction& a, const RationalFunction& b,
                            const ClassifyOptions& opt = {}) {
    Json j = to_json(classify(R, a, b, opt));
    j["inputs"] = {{"R", R.str()}, {"a", a.str()}, {"b", b.str()}, {"options", classify_options_json(opt)}};
    return j;
}

/// Re-runs classification from a report's inputs; true when the outcome,
/// witness and certificate all come out identical.
inline bool replay_verdict(const Json& report) {
    const Json& in = report.at("inputs");
    const Json& o = in.at("options");
    ClassifyOptions opt;
    opt.external_nonalgebraic = o.at("external_nonalgebraic").get<bool>();
    opt.polynomial_degree_bound = o.at("polynomial_degree_bound").get<int>();
    opt.rational_degree_bound = o.at("rational_degree_bound").get<int>();
    opt.exponent_denominator_bound = o.at("exponent_denominator_bound").get<int>();
    opt.series_check_order = o.at("series_check_order").get<int>();
    opt.max_iter = o.at("max_iter").get<int>();
    const Json again = classify_report(parse_expression(in.at("R").get<std::string>()),
                                       parse_expression(in.at("a").get<std::string>()),
                                       parse_expression(in.at("b").get<std::string>()), opt);
    return again == report;
}

// --- pipeline reports ------------------------------------------------------------

inline Json trees_report(const TreeFamily& family, int order, int oracle_max = 12) {
    const Series T = complete_tree_series(family, order);
    Json table = Json::array();
    bool all_match = true;
    for (int n = 1; n <= std::min(order, oracle_max); ++n) {
        const BigInt oracle = enumerate_complete_trees(family, n);
        const bool match = T[n] == Rational(oracle);
        all_match = all_match && match;
        table.push_back({{"n", n}, {"series", integer_json(T[n].numerator())}, {"oracle", integer_json(oracle)},
                         {"match", match}});
    }
    const RationalFunction S = family.map();
    const RationalFunction t = RationalFunction::t();
    const Verdict v = classify(S, 1, -t);
    return {{"schema", kSchemaVersion},
            {"command", "trees"},
            {"inputs", {{"set", family.arity_set()}, {"order", order}}},
            {"coeffs", coefficient_array(T.coeffs())},
            {"oracle", table},
            {"oracle_agrees", all_match},
            {"verify_fe_order", verify_fe_contractive(S, Series::constant(1, order), Series::variable(order), T)},
            {"equation", {{"R", S.str()}, {"a", "1"}, {"b", "-t"}}},
            {"verdict", to_string(v.outcome)}};
}

inline Json sierpinski_report(int order, int oracle_level = 4, const ParallelOptions& par = {}) {
    const GreenSeries g = sierpinski_green(order);
    const int oracle_max = std::min(order, 2 * (1 << std::min(oracle_level, 20)) - 1);
    const auto walks = sierpinski_walk_counts(oracle_max, oracle_level, par);
    Json table = Json::array();
    bool all_match = true;
    for (int n = 0; n <= oracle_max; ++n) {
        const bool match = g.G4[n] == Rational(walks[static_cast<std::size_t>(n)]);
        all_match = all_match && match;
        table.push_back({{"n", n}, {"series", rational_json(g.G4[n])},
                         {"oracle", integer_json(walks[static_cast<std::size_t>(n)])}, {"match", match}});
    }
    const Verdict v = classify(sierpinski_map(), sierpinski_coefficient(), 0);
    return {{"schema", kSchemaVersion},
            {"command", "sierpinski"},
            {"inputs", {{"order", order}, {"oracle_level", oracle_level}}},
            {"coeffs_G", coefficient_array(g.G.coeffs())},
            {"coeffs_G4", coefficient_array(g.G4.coeffs())},
            {"oracle", table},
            {"oracle_agrees", all_match},
            {"verify_fe_order", verify_fe(sierpinski_map(), sierpinski_coefficient(), RationalFunction(0), g.G)},
            {"equation", {{"R", sierpinski_map().str()}, {"a", sierpinski_coefficient().str()}, {"b", "0"}}},
            {"verdict", to_string(v.outcome)},
            {"verdict_detail", v.detail}};
}

inline Json patterns_report(int m, int order, int verify_bruteforce = -1, const ParallelOptions& par = {}) {
    const PatternSeries p = pattern_series(m, order);
    std::vector<Rational> counts;
    for (int n = 0; n <= order; ++n) counts.push_back(p.P_hat[n] * Rational(factorial(static_cast<unsigned long>(n))));
    Json table = Json::array();
    bool all_match = true;
    const auto pattern = chainsaw_pattern(m);
    for (int n = 0; n <= std::min(order, verify_bruteforce); ++n) {
        const std::uint64_t oracle = count_avoiders(pattern, n, par);
        const bool match = counts[static_cast<std::size_t>(n)] == Rational(BigInt(std::to_string(oracle)));
        all_match = all_match && match;
        table.push_back({{"n", n}, {"series", integer_json(counts[static_cast<std::size_t>(n)].numerator())},
                         {"oracle", oracle}, {"match", match}});
    }
    const RationalFunction R = pattern_map(m);
    const RationalFunction c(Polynomial::t(), Polynomial{Rational(1), Rational(1)});
    // S(R) = S/c - 1/c
    const Verdict v = classify(R, RationalFunction(1) / c, -(RationalFunction(1) / c));
    return {{"schema", kSchemaVersion},
            {"command", "patterns"},
            {"inputs", {{"m", m}, {"order", order}, {"verify_bruteforce", verify_bruteforce}}},
            {"pattern", pattern},
            {"coeffs_S", coefficient_array(p.S.coeffs())},
            {"coeffs_S_hat", coefficient_array(p.S_hat.coeffs())},
            {"avoider_counts", coefficient_array(counts)},
            {"oracle", table},
            {"oracle_agrees", all_match},
            {"verify_fe_order", verify_fe_contractive(R, Series::from_rational_function(c, order),
                                                      Series::constant(1, order), p.S)},
            {"verdict", to_string(v.outcome)},
            {"verdict_detail", v.detail}};
}

} // namespace itfe
