#pragma once

// Verdicts on y(R) = a y + b: rational, algebraic power, differentially
// transcendental, or the weaker outcomes when a hypothesis cannot be settled.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynamics.hpp"
#include "funceq.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "rational_function.hpp"
#include "series.hpp"

namespace itfe {

enum class Outcome { Rational, AlgebraicPower, DiffTranscendental, RiccatiResidual, Conditional, Unknown };

inline const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Rational: return "Rational";
    case Outcome::AlgebraicPower: return "AlgebraicPower";
    case Outcome::DiffTranscendental: return "DiffTranscendental";
    case Outcome::RiccatiResidual: return "RiccatiResidual";
    case Outcome::Conditional: return "Conditional";
    case Outcome::Unknown: return "Unknown";
    }
    return "?";
}

struct Evidence {
    std::string hypothesis;
    std::string evidence;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    std::optional<RationalFunction> witness; // Rational: the solution; AlgebraicPower: f^N
    int N = 0;                               // AlgebraicPower only
    std::string detail;                      // Conditional: what is missing; Unknown: why
    std::vector<Evidence> certificate;
};

struct ClassifyOptions {
    bool external_nonalgebraic = false; // caller vouches that no nonzero algebraic solution exists
    int polynomial_degree_bound = 40;
    int rational_degree_bound = 8;      // Pade search [D/D], D <= bound
    int exponent_denominator_bound = 12;
    int series_check_order = 40;
    int max_iter = 20;
};

/// Audit trail for the hypotheses on R alone.
inline std::vector<Evidence> certify_hypotheses(const RationalFunction& R, int max_iter = 20) {
    std::vector<Evidence> out;
    if (!fixes_zero(R)) {
        out.push_back({"fixes0", "no: R(0) != 0"});
        return out;
    }
    out.push_back({"fixes0", "yes"});
    const MultiplierData md = multiplier_data(R);
    if (md.d >= 2)
        out.push_back({"multiplier", "d=" + std::to_string(md.d) + " (superattracting), r_d=" + md.leading.str()});
    else
        out.push_back({"multiplier", "r1=" + md.r1.str() + " " + to_string(md.cls)});
    const AssumptionCheck chk = check_assumption_R(R);
    std::string ev;
    switch (chk.status) {
    case AssumptionStatus::Violated:
        ev = chk.identity_iterate ? "violated at k=" + std::to_string(*chk.identity_iterate) : "violated: " + chk.reason;
        break;
    case AssumptionStatus::OtherMultiplierCase: ev = "not applicable: " + chk.reason; break;
    case AssumptionStatus::Satisfied: ev = R.map_degree() >= 2 ? "satisfied: map degree>=2" : "satisfied: " + chk.reason;
    }
    out.push_back({"no-iterate-identity", ev});
    if (md.cls == MultiplierClass::UnitMultiplier && chk.status == AssumptionStatus::Satisfied)
        out.push_back({"parabolic", "r1=1, R != t: satisfied"});
    if (md.d >= 2) {
        const ConjugacyResult cr = find_conjugating_homography(R, max_iter);
        std::string e = to_string(cr.kind);
        if (cr.m) e += " m=" + cr.m->as_function().str();
        e += cr.kind == ConjugacyKind::Unknown ? " (" + cr.note + ")" : std::string(" via ") + to_string(cr.pcf_status);
        out.push_back({"conjugacy", e});
    }
    return out;
}

/// [D/D] Pade approximant of f (needs order >= 2D), or nullopt when singular.
inline std::optional<RationalFunction> pade(const Series& f, int D) {
    if (f.order() < 2 * D) return std::nullopt;
    // q = 1 + q_1 t + ... + q_D t^D, sum_j q_j f_(n-j) = 0 for n = D+1..2D.
    Matrix m;
    std::vector<Rational> rhs;
    for (int n = D + 1; n <= 2 * D; ++n) {
        std::vector<Rational> row(static_cast<std::size_t>(D));
        for (int j = 1; j <= D; ++j) row[j - 1] = n - j >= 0 ? f[n - j] : Rational(0);
        m.push_back(std::move(row));
        rhs.push_back(-f[n]);
    }
    LinearSolution ls = solve_linear(std::move(m), std::move(rhs), static_cast<std::size_t>(D));
    if (!ls.particular) return std::nullopt;
    std::vector<Rational> q{Rational(1)};
    q.insert(q.end(), ls.particular->begin(), ls.particular->end());
    const Polynomial qp(q);
    const Series pq = Series::multiply_raw(f, Series::from_polynomial(qp, 2 * D), D);
    return RationalFunction(pq.to_polynomial(), qp);
}

/// Exact check of y(R) = a y + b for a rational function y.
inline bool is_rational_solution(const RationalFunction& R, const RationalFunction& a, const RationalFunction& b,
                                 const RationalFunction& y) {
    try {
        return ratfunc_compose(y, R) == a * y + b;
    } catch (const DegenerateComposition&) {
        return false;
    }
}

/// Rational solution by polynomial search, then by Pade reconstruction of a
/// series solution; every hit is checked exactly.
inline std::optional<RationalFunction> find_rational_solution(const RationalFunction& R, const RationalFunction& a,
                                                              const RationalFunction& b,
                                                              const std::optional<Series>& series,
                                                              const ClassifyOptions& opt) {
    if (auto p = find_polynomial_solution(R, a, b, opt.polynomial_degree_bound)) {
        RationalFunction y = p->particular;
        if (is_rational_solution(R, a, b, y)) return y;
    }
    if (series)
        for (int D = 1; D <= opt.rational_degree_bound && 2 * D <= series->order(); ++D)
            if (auto y = pade(*series, D); y && is_rational_solution(R, a, b, *y)) return y;
    return std::nullopt;
}

namespace detail {

inline bool is_power_series(const RationalFunction& f) { return !f.den()[0].is_zero(); }

/// Power-series solution with every free index set to 1 (or nullopt when a, b
/// have poles at 0, the equation is unsupported, or it is obstructed).
inline std::optional<Series> solution_series(const RationalFunction& R, const RationalFunction& a,
                                             const RationalFunction& b, int order, std::vector<Evidence>& cert) {
    if (!is_power_series(a) || !is_power_series(b)) return std::nullopt;
    try {
        FESolution probe = solve_fe_standard(R, a, b, order);
        Normalization norm;
        // b = 0: the first free coefficient is 1 so the solution is nonzero.
        for (int i : probe.free_indices) norm[i] = 0;
        if (b.is_zero() && !probe.free_indices.empty()) norm[probe.free_indices.front()] = 1;
        FESolution sol = solve_fe_standard(R, a, b, order, norm);
        if (!sol.series) {
            cert.push_back({"power-series solution", "obstructed at index " + std::to_string(sol.obstructions.front())});
            return std::nullopt;
        }
        const int v = verify_fe(R, a, b, *sol.series);
        cert.push_back({"power-series solution", "computed to order " + std::to_string(sol.series->order()) +
                                                     ", verify_fe order " + std::to_string(v)});
        return sol.series;
    } catch (const UnsupportedEquation& e) {
        cert.push_back({"power-series solution", std::string("not computed: ") + e.what()});
        return std::nullopt;
    }
}

/// Candidate points for the multiplicative search: rational roots and poles
/// of a, their images, rational fixed points of R and their rational preimages.
inline std::vector<Rational> multiplicative_candidates(const RationalFunction& R, const RationalFunction& a) {
    std::vector<Rational> pts = default_candidate_points(a);
    const std::size_t base = pts.size();
    for (std::size_t i = 0; i < base; ++i)
        if (auto v = R(pts[i])) pts.push_back(*v);
    const Polynomial fixed = R.num() - Polynomial::t() * R.den();
    std::vector<Rational> fixed_pts;
    if (!fixed.is_zero() && fixed.degree() > 0)
        for (const auto& r : rational_roots(fixed).roots) fixed_pts.push_back(r.root);
    for (const auto& p : fixed_pts) {
        pts.push_back(p);
        const Polynomial pre = R.num() - R.den() * Polynomial::constant(p);
        if (!pre.is_zero() && pre.degree() > 0)
            for (const auto& r : rational_roots(pre).roots) pts.push_back(r.root);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline std::string points_str(const std::vector<Rational>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + "]";
}

/// Homogeneous algebraic-power solution with c = 1 whose series checks out.
inline std::optional<MultiplicativeSolution> homogeneous_algebraic(const RationalFunction& R,
                                                                   const RationalFunction& a,
                                                                   const ClassifyOptions& opt,
                                                                   std::vector<Evidence>& cert) {
    const auto cands = multiplicative_candidates(R, a);
    auto sol = find_multiplicative_solution(R, a, cands, opt.exponent_denominator_bound);
    std::string ev = "candidates " + points_str(cands) + ", exponent denominators <= " +
                     std::to_string(opt.exponent_denominator_bound) + ": ";
    if (!sol) {
        cert.push_back({"homogeneous algebraic solution", ev + "none"});
        return std::nullopt;
    }
    if (!sol->solves_equation()) {
        cert.push_back({"homogeneous algebraic solution", ev + "identity holds only with c=" + sol->scalar.str()});
        return std::nullopt;
    }
    auto f = multiplicative_series(*sol, opt.series_check_order);
    const int v = f && is_power_series(a) ? verify_fe(R, a, RationalFunction(0), *f) : -1;
    cert.push_back({"homogeneous algebraic solution", ev + "N=" + std::to_string(sol->N) + ", points " +
                                                          points_str(sol->points) + ", exponents " +
                                                          points_str(sol->exponents) + ", verify_fe order " +
                                                          std::to_string(v)});
    return sol;
}

inline bool polynomial_with_t2(const RationalFunction& R) {
    return R.is_polynomial() && R.num().valuation() >= 2;
}

} // namespace detail

/// The strongest outcome the checks below justify, with every check recorded.
inline Verdict classify(const RationalFunction& R, const RationalFunction& a, const RationalFunction& b,
                        const ClassifyOptions& opt = {}) {
    if (!fixes_zero(R)) throw NotFixingZero();
    Verdict v;
    v.certificate = certify_hypotheses(R, opt.max_iter);
    const AssumptionCheck chk = check_assumption_R(R);
    if (chk.status == AssumptionStatus::Violated) {
        v.outcome = Outcome::Unknown;
        v.detail = "assumption on R fails: " + chk.reason;
        return v;
    }
    if (chk.status == AssumptionStatus::OtherMultiplierCase) {
        v.outcome = Outcome::Unknown;
        v.detail = "multiplier R'(0) outside {0, 1, -1}: case left aside";
        return v;
    }
    if (a.is_zero()) {
        v.outcome = Outcome::Unknown;
        v.detail = "a = 0: the equation does not involve y(R)";
        return v;
    }

    auto done = [&](Outcome o, std::string detail = {}) {
        v.outcome = o;
        v.detail = std::move(detail);
        return v;
    };

    // a = 1: rational or differentially transcendental.
    if (a == RationalFunction(1)) {
        if (b.is_zero()) {
            v.witness = RationalFunction(1);
            v.certificate.push_back({"solution space", "a=1, b=0: constants only"});
            return done(Outcome::Rational);
        }
        const bool poly_case = R.is_polynomial() && R.num().degree() >= 2 && b.is_polynomial();
        if (detail::polynomial_with_t2(R) && b.is_polynomial() && b.num().valuation() >= 1 &&
            b.num().degree() < R.num().degree()) {
            v.certificate.push_back({"corollary hypotheses", "R in t^2 Q[t], b in t Q[t], b != 0, deg b = " +
                                                                 std::to_string(b.num().degree()) + " < " +
                                                                 std::to_string(R.num().degree()) + " = deg R"});
            v.certificate.push_back({"rational branch excluded",
                                     "degree argument: a polynomial solution f would have deg b = deg f * deg R"});
            v.certificate.push_back({"dichotomy", "a=1: a solution is rational or differentially transcendental"});
            detail::solution_series(R, a, b, opt.series_check_order, v.certificate);
            return done(Outcome::DiffTranscendental);
        }
        if (poly_case) {
            // Poles of a rational solution form a finite totally invariant set
            // for R, which only an exceptional point could give (excluded by
            // R'(0) in {0, 1, -1}). So it is a polynomial, of degree deg b / deg R.
            const int db = b.num().degree(), dr = R.num().degree();
            std::string ev = "rational solutions are polynomial; ";
            if (db % dr == 0) {
                if (auto p = find_polynomial_solution(R, a, b, db / dr);
                    p && is_rational_solution(R, a, b, p->particular)) {
                    v.witness = RationalFunction(p->particular);
                    v.certificate.push_back({"rational solution", "exact polynomial solution " + p->particular.str()});
                    return done(Outcome::Rational);
                }
                ev += "none of degree " + std::to_string(db / dr);
            } else {
                ev += "deg b = " + std::to_string(db) + " is not a multiple of deg R = " + std::to_string(dr);
            }
            v.certificate.push_back({"rational branch excluded", ev});
            v.certificate.push_back({"dichotomy", "a=1: a solution is rational or differentially transcendental"});
            detail::solution_series(R, a, b, opt.series_check_order, v.certificate);
            return done(Outcome::DiffTranscendental);
        }
        const auto series = detail::solution_series(R, a, b, 2 * opt.rational_degree_bound + 2, v.certificate);
        if (auto y = find_rational_solution(R, a, b, series, opt)) {
            v.witness = *y;
            v.certificate.push_back({"rational solution", "exact identity verified for " + y->str()});
            return done(Outcome::Rational);
        }
        v.certificate.push_back({"rational branch", "no polynomial solution of degree <= " +
                                                        std::to_string(opt.polynomial_degree_bound) +
                                                        ", no Pade [D/D] solution for D <= " +
                                                        std::to_string(opt.rational_degree_bound)});
        return done(Outcome::Conditional, "rational solution not excluded beyond the search bounds");
    }

    // b = 0: algebraic power or differentially transcendental.
    if (b.is_zero()) {
        if (auto sol = detail::homogeneous_algebraic(R, a, opt, v.certificate)) {
            v.witness = multiplicative_witness(*sol);
            v.N = sol->N;
            return done(Outcome::AlgebraicPower);
        }
        detail::solution_series(R, a, b, opt.series_check_order, v.certificate);
        if (opt.external_nonalgebraic) {
            v.certificate.push_back({"algebraic branch excluded", "external nonalgebraicity flag supplied by caller"});
            v.certificate.push_back({"dichotomy", "b=0: a solution with f^N rational for no N is differentially "
                                                  "transcendental"});
            return done(Outcome::DiffTranscendental);
        }
        return done(Outcome::Conditional, "algebraicity not excluded at desk scale");
    }

    // General a, b.
    const auto series = detail::solution_series(R, a, b, 2 * opt.rational_degree_bound + 2, v.certificate);
    if (auto y = find_rational_solution(R, a, b, series, opt)) {
        v.witness = *y;
        v.certificate.push_back({"rational solution", "exact identity verified for " + y->str()});
        return done(Outcome::Rational);
    }
    v.certificate.push_back({"rational branch", "no rational solution within the search bounds"});
    if (detail::homogeneous_algebraic(R, a, opt, v.certificate))
        return done(Outcome::RiccatiResidual,
                    "the homogeneous equation has an algebraic solution, so f' = alpha f + beta is not excluded");
    if (opt.external_nonalgebraic) {
        v.certificate.push_back({"algebraic branch excluded", "external nonalgebraicity flag supplied by caller"});
        v.certificate.push_back({"dichotomy", "no nonzero algebraic solution (in particular no rational "
                                              "one): differentially transcendental"});
        return done(Outcome::DiffTranscendental);
    }
    return done(Outcome::RiccatiResidual,
                "f' = alpha f + beta with alpha, beta rational is not excluded; showing f solves no inhomogeneous "
                "order-1 linear ODE would settle it");
}

} // namespace itfe
