#pragma once

// Local and global dynamics of a rational map R with R(0) = 0: multiplier
// classification, the "no iterate is the identity" check, critical orbits
// with exact certificates, and conjugacy to t^d or +-T_d by a homography.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "series.hpp"

namespace itfe {

enum class MultiplierClass { Superattracting, UnitMultiplier, NegUnitMultiplier, OtherMultiplier };

inline const char* to_string(MultiplierClass c) {
    switch (c) {
    case MultiplierClass::Superattracting: return "Superattracting";
    case MultiplierClass::UnitMultiplier: return "UnitMultiplier";
    case MultiplierClass::NegUnitMultiplier: return "NegUnitMultiplier";
    case MultiplierClass::OtherMultiplier: return "OtherMultiplier";
    }
    return "?";
}

struct MultiplierData {
    int d = 1;          // order of the zero of R at 0
    Rational r1;        // R'(0)
    Rational leading;   // first nonzero Taylor coefficient r_d
    MultiplierClass cls = MultiplierClass::OtherMultiplier;
};

inline bool fixes_zero(const RationalFunction& R) {
    return !R.is_zero() && !R.den()[0].is_zero() && R.num()[0].is_zero();
}

inline MultiplierData multiplier_data(const RationalFunction& R) {
    if (!fixes_zero(R)) throw NotFixingZero();
    MultiplierData m;
    m.d = R.num().valuation();
    m.leading = R.num()[m.d] / R.den()[0];
    m.r1 = m.d == 1 ? m.leading : Rational(0);
    if (m.d >= 2)
        m.cls = MultiplierClass::Superattracting;
    else if (m.r1 == Rational(1))
        m.cls = MultiplierClass::UnitMultiplier;
    else if (m.r1 == Rational(-1))
        m.cls = MultiplierClass::NegUnitMultiplier;
    else
        m.cls = MultiplierClass::OtherMultiplier;
    return m;
}

enum class AssumptionStatus { Satisfied, Violated, OtherMultiplierCase };

inline const char* to_string(AssumptionStatus s) {
    switch (s) {
    case AssumptionStatus::Satisfied: return "Satisfied";
    case AssumptionStatus::Violated: return "Violated";
    case AssumptionStatus::OtherMultiplierCase: return "OtherMultiplierCase";
    }
    return "?";
}

struct AssumptionCheck {
    AssumptionStatus status = AssumptionStatus::Satisfied;
    std::string reason;
    std::optional<int> identity_iterate; // k with R^k = t, when Violated that way
};

/// Checks that R fixes 0 with multiplier in {0, 1, -1} (the roots of unity in
/// Q) and that no iterate of R is the identity. Maps of degree >= 2 have
/// iterates of growing degree; Moebius maps are checked by matrix powers.
inline AssumptionCheck check_assumption_R(const RationalFunction& R, int iterate_budget = 12) {
    if (R.is_zero()) throw ZeroInput("check_assumption_R");
    if (!fixes_zero(R)) return {AssumptionStatus::Violated, "R(0) != 0", std::nullopt};
    const MultiplierData md = multiplier_data(R);
    if (md.cls == MultiplierClass::OtherMultiplier)
        return {AssumptionStatus::OtherMultiplierCase,
                "R'(0) = " + md.r1.str() + " is neither 0 nor a root of unity", std::nullopt};
    const int deg = R.map_degree();
    if (deg >= 2)
        return {AssumptionStatus::Satisfied,
                "map degree " + std::to_string(deg) + " >= 2, iterates have degree " + std::to_string(deg) + "^k",
                std::nullopt};
    const Homography h = *Homography::from_function(R);
    Homography power = h;
    for (int k = 1; k <= iterate_budget; ++k) {
        if (power.is_identity_map())
            return {AssumptionStatus::Violated, "R^" + std::to_string(k) + " = t", k};
        power = power.then_after(h);
    }
    // A Moebius map over Q of finite order has order 1, 2, 3, 4 or 6.
    if (iterate_budget >= 6)
        return {AssumptionStatus::Satisfied,
                "Moebius map of infinite order (no identity iterate up to " + std::to_string(iterate_budget) +
                    "; finite orders over Q divide 4 or 6)",
                std::nullopt};
    return {AssumptionStatus::Satisfied,
            "Moebius map without identity iterate up to budget " + std::to_string(iterate_budget), std::nullopt};
}

/// A point of the projective line over Q; nullopt is infinity.
using ProjectivePoint = std::optional<Rational>;

inline std::string to_string(const ProjectivePoint& p) { return p ? p->str() : "inf"; }

inline ProjectivePoint apply_map(const RationalFunction& R, const ProjectivePoint& x) {
    if (!x) {
        const int dn = R.num().degree(), dd = R.den().degree();
        if (dn > dd) return std::nullopt;
        if (dn == dd) return R.num().leading() / R.den().leading();
        return Rational(0);
    }
    return R(*x);
}

// --- strict sign of a polynomial on an open interval ------------------------

namespace detail {

inline int sign_variations(const Polynomial& p) {
    int v = 0, last = 0;
    for (const auto& c : p.coeffs()) {
        int s = c.sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// True when p has no root in (lo, hi), via Descartes' rule on the Moebius
/// image of the interval, bisecting up to `depth` times.
inline bool no_root_in_open_interval(const Polynomial& p, const Rational& lo, const Rational& hi, int depth) {
    if (p.is_zero()) return false;
    if (p.degree() == 0) return true;
    // q(y) = (1+y)^n p((lo + hi y)/(1+y)), y in (0, inf) <-> x in (lo, hi)
    const int n = p.degree();
    const Polynomial num{lo, hi}, one_plus_y{Rational(1), Rational(1)};
    Polynomial q;
    for (int i = 0; i <= n; ++i)
        if (!p[i].is_zero())
            q += p[i] * (pow(num, static_cast<unsigned long>(i)) * pow(one_plus_y, static_cast<unsigned long>(n - i)));
    if (sign_variations(q) == 0) return true;
    if (depth == 0) return false;
    const Rational mid = (lo + hi) / Rational(2);
    if (p(mid).is_zero()) return false;
    return no_root_in_open_interval(p, lo, mid, depth - 1) && no_root_in_open_interval(p, mid, hi, depth - 1);
}

} // namespace detail

/// A claim that `poly` has strict sign `sign` everywhere on the open interval.
struct SignCondition {
    std::string meaning;
    Polynomial poly;
    int sign = 1;
};

inline bool holds_on(const SignCondition& c, const Rational& lo, const Rational& hi, int depth = 24) {
    const Rational mid = (lo + hi) / Rational(2);
    return c.poly(mid).sign() == c.sign && detail::no_root_in_open_interval(c.poly, lo, hi, depth);
}

/// Proof that the orbit of a critical value is infinite: an orbit point v lies
/// in I = (lo, hi) with 0 an endpoint, R(I) is inside I and |R(x)| < |x| on I,
/// so the orbit from v is strictly decreasing in modulus and never repeats.
struct IntervalCertificate {
    Rational lo, hi;
    ProjectivePoint critical_value;
    int orbit_index = 0; // v = R^orbit_index(critical_value)
    Rational point;      // v
    std::vector<SignCondition> conditions;
};

namespace detail {

inline std::vector<SignCondition> contraction_conditions(const RationalFunction& R, int side) {
    const Polynomial& N = R.num();
    const Polynomial& D = R.den();
    const Polynomial xD = Polynomial::t() * D;
    if (side > 0)
        return {{"R(x) > 0", N * D, 1}, {"x - R(x) > 0", (xD - N) * D, 1}};
    return {{"R(x) < 0", N * D, -1}, {"R(x) - x > 0", (N - xD) * D, 1}};
}

inline std::optional<IntervalCertificate> try_certificate(const RationalFunction& R, const ProjectivePoint& cv,
                                                          int index, const Rational& v) {
    if (v.is_zero()) return std::nullopt;
    const int side = v.sign();
    auto conditions = contraction_conditions(R, side);
    for (int j = 0; j <= 16; j += 2) {
        const Rational c = abs(v) * (Rational(1) + pow(Rational(2), -j));
        const Rational lo = side > 0 ? Rational(0) : -c;
        const Rational hi = side > 0 ? c : Rational(0);
        if (std::all_of(conditions.begin(), conditions.end(),
                        [&](const SignCondition& s) { return holds_on(s, lo, hi); }))
            return IntervalCertificate{lo, hi, cv, index, v, conditions};
    }
    return std::nullopt;
}

} // namespace detail

/// Re-checks a certificate against R from scratch.
inline bool verify_certificate(const RationalFunction& R, const IntervalCertificate& cert) {
    if (!(cert.lo < cert.point && cert.point < cert.hi)) return false;
    if (!(cert.lo.is_zero() || cert.hi.is_zero())) return false;
    ProjectivePoint x = cert.critical_value;
    for (int i = 0; i < cert.orbit_index && x; ++i) x = apply_map(R, x);
    if (!x || *x != cert.point) return false;
    const auto expected = detail::contraction_conditions(R, cert.point.sign());
    if (expected.size() != cert.conditions.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (!(expected[i].poly == cert.conditions[i].poly) || expected[i].sign != cert.conditions[i].sign)
            return false;
    return std::all_of(cert.conditions.begin(), cert.conditions.end(),
                       [&](const SignCondition& s) { return holds_on(s, cert.lo, cert.hi); });
}

enum class OrbitStatus { FiniteP, InfiniteCertified, Unknown };

inline const char* to_string(OrbitStatus s) {
    switch (s) {
    case OrbitStatus::FiniteP: return "FiniteP";
    case OrbitStatus::InfiniteCertified: return "InfiniteCertified";
    case OrbitStatus::Unknown: return "Unknown";
    }
    return "?";
}

struct CriticalOrbit {
    ProjectivePoint value;
    std::vector<ProjectivePoint> iterates; // iterates[0] = value
    std::optional<std::size_t> cycle_start; // iterates[cycle_start..] is a cycle
};

struct OrbitReport {
    std::vector<RootMultiplicity> critical_points;
    int irrational_critical_count = 0;
    int infinity_critical_multiplicity = 0; // 0 when infinity is not critical
    std::vector<ProjectivePoint> critical_values;
    std::vector<CriticalOrbit> orbits;
    OrbitStatus status = OrbitStatus::Unknown;
    /// FiniteP: the finite part of the post-critical set (ascending) and its cycles.
    std::vector<ProjectivePoint> postcritical_set; // finite points
    bool postcritical_contains_infinity = false;
    std::vector<std::vector<ProjectivePoint>> cycles;
    std::optional<IntervalCertificate> certificate;
    int max_iter = 0;
    std::string note;
};

namespace detail {

inline bool point_less(const ProjectivePoint& a, const ProjectivePoint& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

struct PointHash {
    std::size_t operator()(const ProjectivePoint& p) const noexcept {
        return p ? std::hash<Rational>{}(*p) : 0x51f15eedULL;
    }
};

} // namespace detail

/// Critical points (rational roots of the numerator of R'), their values, and
/// the exact forward orbits of those values with cycle detection. Irrational
/// critical points are counted but not iterated, so they can only degrade a
/// finite answer to Unknown.
/// Orbit points are exact; heights roughly multiply by deg R per step, so
/// iteration stops once a point gets this large.
inline constexpr std::size_t kOrbitHeightBits = 4096;

namespace detail {
inline std::size_t height_bits(const Rational& x) {
    return mpz_sizeinbase(x.raw().get_num_mpz_t(), 2) + mpz_sizeinbase(x.raw().get_den_mpz_t(), 2);
}
} // namespace detail

inline OrbitReport critical_portrait(const RationalFunction& R, int max_iter = 20) {
    if (R.map_degree() < 1) throw std::invalid_argument("critical_portrait needs a nonconstant map");
    OrbitReport rep;
    rep.max_iter = max_iter;
    const Polynomial crit = R.derivative().num();
    if (!crit.is_zero() && crit.degree() > 0) {
        auto roots = rational_roots(crit);
        rep.critical_points = roots.roots;
        rep.irrational_critical_count = roots.remainder_degree;
    }
    std::vector<ProjectivePoint> values;
    for (const auto& cp : rep.critical_points) values.push_back(R(cp.root));
    // Infinity: local degree from the degrees of R(1/s) at s = 0.
    {
        const int dn = R.num().degree(), dd = R.den().degree();
        if (dn - dd >= 2) {
            rep.infinity_critical_multiplicity = dn - dd - 1;
            values.emplace_back(std::nullopt);
        } else if (dd - dn >= 2) {
            rep.infinity_critical_multiplicity = dd - dn - 1;
            values.emplace_back(Rational(0));
        } else if (dn == dd) {
            const Rational c = R.num().leading() / R.den().leading();
            const Polynomial diff = R.num() - R.den() * Polynomial::constant(c);
            if (dd - diff.degree() >= 2) {
                rep.infinity_critical_multiplicity = dd - diff.degree() - 1;
                values.emplace_back(c);
            }
        }
    }
    for (const auto& v : values)
        if (std::find(rep.critical_values.begin(), rep.critical_values.end(), v) == rep.critical_values.end())
            rep.critical_values.push_back(v);
    std::sort(rep.critical_values.begin(), rep.critical_values.end(), detail::point_less);

    bool all_finite = true, height_capped = false;
    for (const auto& cv : rep.critical_values) {
        CriticalOrbit orbit{cv, {cv}, std::nullopt};
        std::unordered_map<ProjectivePoint, std::size_t, detail::PointHash> seen{{cv, 0}};
        ProjectivePoint x = cv;
        for (int i = 0; i <= max_iter; ++i) {
            if (!rep.certificate && x)
                rep.certificate = detail::try_certificate(R, cv, i, *x);
            if (rep.certificate) break;
            if (i == max_iter) break;
            x = apply_map(R, x);
            if (x && detail::height_bits(*x) > kOrbitHeightBits) {
                height_capped = true;
                break;
            }
            if (auto it = seen.find(x); it != seen.end()) {
                orbit.cycle_start = it->second;
                break;
            }
            seen.emplace(x, orbit.iterates.size());
            orbit.iterates.push_back(x);
        }
        if (!orbit.cycle_start) all_finite = false;
        rep.orbits.push_back(std::move(orbit));
        if (rep.certificate) break;
    }

    if (rep.certificate) {
        rep.status = OrbitStatus::InfiniteCertified;
        rep.note = "orbit of critical value " + to_string(rep.certificate->critical_value) +
                   " is strictly decreasing in modulus inside an invariant interval";
    } else if (!all_finite) {
        rep.status = OrbitStatus::Unknown;
        rep.note = "some critical orbit neither closed nor certified infinite within " + std::to_string(max_iter) +
                   " iterations";
        if (height_capped) rep.note += " (stopped at an orbit point above " + std::to_string(kOrbitHeightBits) + " bits)";
    } else if (rep.irrational_critical_count > 0) {
        rep.status = OrbitStatus::Unknown;
        rep.note = std::to_string(rep.irrational_critical_count) +
                   " irrational critical point(s) not iterated; rational orbits are finite";
    } else {
        rep.status = OrbitStatus::FiniteP;
        for (const auto& o : rep.orbits) {
            for (const auto& p : o.iterates)
                if (!p) {
                    rep.postcritical_contains_infinity = true;
                } else if (std::find(rep.postcritical_set.begin(), rep.postcritical_set.end(), p) ==
                    rep.postcritical_set.end())
                    rep.postcritical_set.push_back(p);
            std::vector<ProjectivePoint> cyc(o.iterates.begin() + static_cast<std::ptrdiff_t>(*o.cycle_start),
                                             o.iterates.end());
            auto lowest = std::min_element(cyc.begin(), cyc.end(), detail::point_less);
            std::rotate(cyc.begin(), lowest, cyc.end());
            if (std::find(rep.cycles.begin(), rep.cycles.end(), cyc) == rep.cycles.end()) rep.cycles.push_back(cyc);
        }
        std::sort(rep.postcritical_set.begin(), rep.postcritical_set.end(), detail::point_less);
        rep.note = "all critical orbits are eventually periodic";
    }
    return rep;
}

// --- conjugacy ----------------------------------------------------------------

enum class ConjugacyKind { Monomial, ChebyshevPlus, ChebyshevMinus, None, Unknown };

inline const char* to_string(ConjugacyKind k) {
    switch (k) {
    case ConjugacyKind::Monomial: return "Monomial";
    case ConjugacyKind::ChebyshevPlus: return "ChebyshevPlus";
    case ConjugacyKind::ChebyshevMinus: return "ChebyshevMinus";
    case ConjugacyKind::None: return "None";
    case ConjugacyKind::Unknown: return "Unknown";
    }
    return "?";
}

struct ConjugacyResult {
    ConjugacyKind kind = ConjugacyKind::Unknown;
    std::optional<Homography> m;
    bool verified = false;
    int d = 0;
    OrbitStatus pcf_status = OrbitStatus::Unknown;
    std::string note;
};

/// The model map t^d, T_d or -T_d for a conjugacy kind.
inline RationalFunction conjugacy_model(ConjugacyKind kind, int d) {
    switch (kind) {
    case ConjugacyKind::Monomial: return Polynomial::monomial(1, static_cast<std::size_t>(d));
    case ConjugacyKind::ChebyshevPlus: return chebyshev(static_cast<unsigned>(d));
    case ConjugacyKind::ChebyshevMinus: return -chebyshev(static_cast<unsigned>(d));
    default: throw std::invalid_argument("no model map for this conjugacy kind");
    }
}

/// Exact check of R(m(t)) = m(model(t)).
inline bool verify_conjugacy(const RationalFunction& R, const Homography& m, ConjugacyKind kind, int d) {
    const RationalFunction mf = m.as_function();
    return ratfunc_compose(R, mf) == ratfunc_compose(mf, conjugacy_model(kind, d));
}

namespace detail {

/// Rational solutions x of x^k = c.
inline std::vector<Rational> rational_kth_roots(const Rational& c, int k) {
    Polynomial p = Polynomial::monomial(1, static_cast<std::size_t>(k)) - Polynomial::constant(c);
    std::vector<Rational> out;
    for (const auto& r : rational_roots(p).roots) out.push_back(r.root);
    return out;
}

} // namespace detail

/// Searches a homography m over Q with R(m(t)) = m(t^d) or R(m(t)) = m(+-T_d(t)).
///
/// A certified infinite post-critical set rules all three out. Otherwise:
/// for t^d, m(0) = 0 and m(inf) = p is a fixed point of R of local degree d
/// (p = inf gives the affine case m = w t, else m = w t / ((w/p) t + 1)), and
/// matching the leading coefficient gives w^(d-1) = 1/r_d; for +-T_d,
/// m(inf) = 0 so m = beta / (t + delta), and the two leading coefficients at
/// infinity give r_d beta^(d-1) = +-2^(1-d) and delta = r_(d+1) beta / (d r_d).
/// Each candidate is verified as an exact identity.
inline ConjugacyResult find_conjugating_homography(const RationalFunction& R, int max_iter = 20) {
    const MultiplierData md = multiplier_data(R);
    if (md.d < 2) throw std::invalid_argument("conjugacy search needs a superattracting fixed point (d >= 2)");
    ConjugacyResult res;
    res.d = md.d;
    const OrbitReport portrait = critical_portrait(R, max_iter);
    res.pcf_status = portrait.status;
    if (portrait.status == OrbitStatus::InfiniteCertified) {
        res.kind = ConjugacyKind::None;
        res.note = "post-critical set certified infinite; t^d and +-T_d are post-critically finite";
        return res;
    }
    const int d = md.d;
    const Rational rd = md.leading;

    auto accept = [&](const Homography& m, ConjugacyKind kind) {
        if (!verify_conjugacy(R, m, kind, d)) return false;
        res.kind = kind;
        res.m = m;
        res.verified = true;
        return true;
    };

    // t^d: fully ramified fixed points other than 0.
    std::vector<ProjectivePoint> ramified;
    if (R.num().degree() - R.den().degree() == d) ramified.emplace_back(std::nullopt);
    for (const auto& cp : portrait.critical_points)
        if (cp.multiplicity == d - 1 && !cp.root.is_zero() && R(cp.root) == ProjectivePoint(cp.root))
            ramified.emplace_back(cp.root);
    for (const auto& p : ramified)
        for (const auto& w : detail::rational_kth_roots(inverse(rd), d - 1)) {
            Homography m = p ? Homography(w, 0, w / *p, 1) : Homography(w, 0, 0, 1);
            if (accept(m, ConjugacyKind::Monomial)) {
                res.note = "conjugate to t^" + std::to_string(d);
                return res;
            }
        }

    // +-T_d: m(inf) = 0.
    const Series rs = Series::from_rational_function(R, d + 1);
    const Rational two_pow = pow(Rational(2), 1 - d);
    for (ConjugacyKind kind : {ConjugacyKind::ChebyshevPlus, ConjugacyKind::ChebyshevMinus}) {
        const Rational target = (kind == ConjugacyKind::ChebyshevPlus ? two_pow : -two_pow) / rd;
        for (const auto& beta : detail::rational_kth_roots(target, d - 1)) {
            const Rational delta = rs[d + 1] * beta / (Rational(d) * rd);
            if (accept(Homography(0, beta, 1, delta), kind)) {
                res.note = std::string("conjugate to ") + (kind == ConjugacyKind::ChebyshevPlus ? "T_" : "-T_") +
                           std::to_string(d);
                return res;
            }
        }
    }

    res.kind = ConjugacyKind::Unknown;
    res.note = std::string("no conjugating homography over Q; post-critical status ") + to_string(portrait.status) +
               " leaves conjugacy over an extension of Q open";
    return res;
}

} // namespace itfe
