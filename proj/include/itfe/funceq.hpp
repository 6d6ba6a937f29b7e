#pragma once

// Solvers for order-1 iterative functional equations y(R(t)) = a(t) y(t) + b(t)
// over Q[[t]], plus the Boettcher and Julia functions of R and exact
// finders for polynomial and multiplicative (algebraic-power) solutions.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "series.hpp"

namespace itfe {

/// Cooperative interruption for long recursions: checked once per coefficient.
struct Budget {
    long max_steps = -1; // negative: unlimited
    const std::atomic<bool>* cancel = nullptr;

    void check(long step) const {
        if (cancel && cancel->load(std::memory_order_relaxed)) throw BudgetExceeded("cancelled");
        if (max_steps >= 0 && step > max_steps) throw BudgetExceeded("step limit " + std::to_string(max_steps));
    }
};

using Normalization = std::map<int, Rational>;

struct FESolution {
    std::optional<Series> series;   // absent when obstructed
    std::vector<int> free_indices;  // resonant indices fixed by the normalization
    std::vector<int> obstructions;  // resonant indices with nonzero forcing
    int shift = 0;                  // equation n determines coefficient n - shift

    const Series& value() const {
        if (!series) throw Obstructed(obstructions.empty() ? -1 : obstructions.front());
        return *series;
    }
};

namespace detail {

/// R^0, R^1, ... as series through t^order, stopping once a power vanishes
/// to that order.
inline std::vector<Series> series_powers(const Series& r, int order, int max_power) {
    std::vector<Series> p;
    p.push_back(Series::constant(1, order));
    for (int k = 1; k <= max_power; ++k) {
        if (p.back().is_zero()) {
            p.emplace_back(order);
            continue;
        }
        p.push_back(Series::multiply_raw(p.back(), r, order));
    }
    return p;
}

inline Series expand_map(const RationalFunction& R, int order) {
    if (!fixes_zero(R)) throw NotFixingZero();
    return Series::from_rational_function(R, order);
}

/// Index s such that equation n of y(R) - a y = b determines y_(n-s).
inline int equation_shift(const Series& r, const Series& a) {
    const int d = r.valuation_bound();
    const Rational& a0 = a[0];
    if (d >= 2) {
        if (a0.is_zero())
            throw UnsupportedEquation("a(0) = 0 with a superattracting map (coefficients are not triangular)");
        return 0;
    }
    if (!(r[1].is_one() && a0.is_one())) return 0;
    // Parabolic and a(0) = 1: every index is resonant at first order; the
    // first nonlinear term of R or the first nonconstant term of a decides.
    int m = -1, j = -1;
    for (int i = 2; i <= r.order(); ++i)
        if (!r[i].is_zero()) { m = i; break; }
    for (int i = 1; i <= a.order(); ++i)
        if (!a[i].is_zero()) { j = i; break; }
    if (m < 0 && j < 0)
        throw UnsupportedEquation("R = t and a = 1 to the working order: every coefficient is free");
    if (m < 0) return j;
    if (j < 0) return m - 1;
    return std::min(m - 1, j);
}

} // namespace detail

/// Coefficient recursion for y(R(t)) = a(t) y(t) + b(t).
///
/// With M(n,k) = [t^n] R^k - a_(n-k), equation n reads
/// sum_k M(n,k) y_k = b_n and is triangular in y_(n-s) (s = 0 unless R is
/// parabolic and a(0) = 1). A zero pivot is a resonance: the coefficient is
/// taken from `normalization` (default 0) when the forcing vanishes, and is an
/// obstruction otherwise.
inline FESolution solve_fe_standard(const RationalFunction& R, const Series& a, const Series& b, int order,
                                    const Normalization& normalization = {}, const Budget& budget = {}) {
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    const Series r_probe = detail::expand_map(R, std::max(order, 2) + 2);
    const int s = detail::equation_shift(r_probe, a);
    const int n_max = std::min({order + s, a.order(), b.order()});
    const int y_order = n_max - s;
    if (y_order < 0) throw std::invalid_argument("a and b are not known to a high enough order");
    const Series r = detail::expand_map(R, n_max);
    const auto P = detail::series_powers(r, n_max, y_order);

    auto M = [&](int n, int k) {
        Rational v = P[static_cast<std::size_t>(k)][n];
        if (n - k >= 0 && n - k <= a.order()) v -= a[n - k];
        return v;
    };

    FESolution sol;
    sol.shift = s;
    Series y(y_order);
    for (int n = 0; n <= n_max; ++n) {
        budget.check(n);
        const int h = n - s;
        Rational forcing = b[n];
        for (int k = 0; k < std::max(h, 0); ++k)
            if (!y[k].is_zero()) forcing -= M(n, k) * y[k];
        for (int k = std::max(h + 1, 0); k <= std::min(n, y_order); ++k)
            if (!M(n, k).is_zero())
                throw UnsupportedEquation("equation " + std::to_string(n) + " involves undetermined coefficient " +
                                          std::to_string(k));
        if (h < 0) {
            if (!forcing.is_zero()) {
                sol.obstructions.push_back(n);
                return sol;
            }
            continue;
        }
        const Rational pivot = M(n, h);
        if (pivot.is_zero()) {
            if (!forcing.is_zero()) {
                sol.obstructions.push_back(h);
                return sol;
            }
            auto it = normalization.find(h);
            y[h] = it == normalization.end() ? Rational(0) : it->second;
            sol.free_indices.push_back(h);
        } else {
            y[h] = forcing / pivot;
        }
    }
    for (const auto& [idx, value] : normalization)
        if (idx <= y_order && std::find(sol.free_indices.begin(), sol.free_indices.end(), idx) ==
                                  sol.free_indices.end())
            throw std::invalid_argument("normalization given for non-resonant index " + std::to_string(idx));
    sol.series = std::move(y);
    return sol;
}

/// Convenience overload expanding a and b (power series at 0) far enough.
inline FESolution solve_fe_standard(const RationalFunction& R, const RationalFunction& a, const RationalFunction& b,
                                    int order, const Normalization& normalization = {}, const Budget& budget = {}) {
    const int extra = std::max(order, 2) + 2;
    return solve_fe_standard(R, Series::from_rational_function(a, order + extra),
                             Series::from_rational_function(b, order + extra), order, normalization, budget);
}

/// y = c * y(R) + d, solved by direct recursion when the right-hand side at
/// t^n only involves y_k with k < n: valuation(c) >= 1, or R of valuation >= 2
/// (then the constant term solves (1 - c0) y0 = d0, taking y0 = 0 when
/// c0 = 1 and d0 = 0).
inline Series solve_fe_contractive(const RationalFunction& R, const Series& c, const Series& d, int order,
                                   const Budget& budget = {}) {
    if (!fixes_zero(R)) throw NotFixingZero();
    const int n_max = std::min({order, c.order(), d.order()});
    if (n_max < 0) throw std::invalid_argument("order must be >= 0");
    const int rv = R.num().valuation();
    const bool c_small = c.valuation_bound() >= 1;
    if (!c_small && rv < 2) throw NotContractive("c(0) != 0 and R has a simple zero at 0");
    const Series r = detail::expand_map(R, n_max);
    const auto P = detail::series_powers(r, n_max, n_max);

    Series y(n_max);
    std::vector<Rational> phi; // coefficients of y(R)
    auto phi_coeff = [&](int m, int known) {
        Rational v;
        for (int k = 0; k <= std::min(m, known); ++k)
            if (!y[k].is_zero()) v += y[k] * P[static_cast<std::size_t>(k)][m];
        return v;
    };
    for (int n = 0; n <= n_max; ++n) {
        budget.check(n);
        if (n == 0 && !c_small) {
            const Rational one_minus = Rational(1) - c[0];
            if (one_minus.is_zero()) {
                if (!d[0].is_zero()) throw NotContractive("c(0) = 1 but d(0) != 0");
                y[0] = 0;
            } else {
                y[0] = d[0] / one_minus;
            }
            phi.push_back(y[0]);
            continue;
        }
        // phi_m for m < n is final once y_0..y_(n-1) are known.
        while (static_cast<int>(phi.size()) < n) phi.push_back(phi_coeff(static_cast<int>(phi.size()), n - 1));
        Rational v = d[n];
        for (int i = c_small ? 1 : 0; i <= n; ++i) {
            if (c[i].is_zero()) continue;
            const int m = n - i;
            v += c[i] * (m < static_cast<int>(phi.size()) ? phi[static_cast<std::size_t>(m)] : phi_coeff(m, n - 1));
        }
        y[n] = v;
    }
    return y;
}

inline Series solve_fe_contractive(const RationalFunction& R, const RationalFunction& c, const RationalFunction& d,
                                   int order, const Budget& budget = {}) {
    return solve_fe_contractive(R, Series::from_rational_function(c, order), Series::from_rational_function(d, order),
                                order, budget);
}

/// Largest n such that f(R) - a f - b vanishes through t^n, within the order
/// the inputs determine; -1 if the constant term already fails.
inline int verify_fe(const RationalFunction& R, const Series& a, const Series& b, const Series& f) {
    const Series phi = series_compose(f, detail::expand_map(R, f.order()));
    const Series residual = phi - a * f - b;
    for (int i = 0; i <= residual.order(); ++i)
        if (!residual[i].is_zero()) return i - 1;
    return residual.order();
}

inline int verify_fe(const RationalFunction& R, const RationalFunction& a, const RationalFunction& b,
                     const Series& f) {
    return verify_fe(R, Series::from_rational_function(a, f.order()), Series::from_rational_function(b, f.order()), f);
}

/// Same check for the contractive form y = c y(R) + d.
inline int verify_fe_contractive(const RationalFunction& R, const Series& c, const Series& d, const Series& f) {
    const Series phi = series_compose(f, detail::expand_map(R, f.order()));
    const Series residual = f - c * phi - d;
    for (int i = 0; i <= residual.order(); ++i)
        if (!residual[i].is_zero()) return i - 1;
    return residual.order();
}

/// Boettcher function: tau = u t + O(t^2) with tau(R(t)) = tau(t)^d, where
/// u^(d-1) = r_d. Coefficients come from matching t^(n+d-1); the power
/// tau^d = t^d sigma^d is maintained by the power recurrence.
inline Series boettcher(const RationalFunction& R, int order, const Budget& budget = {}) {
    const MultiplierData md = multiplier_data(R);
    const int d = md.d;
    if (d < 2) throw std::invalid_argument("boettcher needs a zero of order d >= 2 at 0");
    if (order < 1) throw std::invalid_argument("boettcher order must be >= 1");
    auto u = exact_root(md.leading, static_cast<unsigned long>(d - 1));
    if (!u) throw GroundFieldExtensionRequired("r_d = " + md.leading.str() + " has no rational (d-1)-th root");
    const int top = order + d - 1;
    const Series r = Series::from_rational_function(R, top);
    const auto P = detail::series_powers(r, top, top / d + 1);

    Series tau(order);
    tau[1] = *u;
    // sigma = tau / t, power = sigma^d with power[j] known for j < current.
    std::vector<Rational> sigma{*u}, power{pow(*u, d)};
    const Rational pivot = Rational(d) * pow(*u, d - 1);
    const Rational dp1 = Rational(d + 1);
    for (int n = 2; n <= order; ++n) {
        budget.check(n);
        const int j = n - 1; // power[j] = [t^(n+d-1)] tau^d
        Rational partial;    // power[j] without the sigma_j term
        for (int k = 1; k < j; ++k)
            if (!sigma[k].is_zero()) partial += (dp1 * Rational(k) - Rational(j)) * sigma[k] * power[j - k];
        partial /= Rational(j) * sigma[0];
        Rational lhs;
        // R^k has valuation dk, so only k <= (n + d - 1) / d reach t^(n+d-1)
        for (int k = 1; k < n && d * k <= n + d - 1; ++k)
            if (!tau[k].is_zero()) lhs += tau[k] * P[static_cast<std::size_t>(k)][n + d - 1];
        tau[n] = (lhs - partial) / pivot;
        sigma.push_back(tau[n]);
        power.push_back(partial + pivot * tau[n]);
    }
    return tau;
}

struct JuliaResult {
    Series psi;
    int iterate = 1; // psi was computed for R^iterate (then checked against R)
};

/// Normalized solution psi (first nonzero coefficient 1) of
/// psi(R(t)) = R'(t)/d * psi(t). For d >= 2, psi = tau/tau'; for d = 1 the
/// coefficient recursion is run on R (or on R o R when R'(0) = -1).
inline JuliaResult julia_psi(const RationalFunction& R, int order, bool allow_nonresonant = false,
                             const Budget& budget = {}) {
    const MultiplierData md = multiplier_data(R);
    if (md.d >= 2) {
        const Series tau = boettcher(R, order + 1, budget);
        const Series psi = tau / differentiate(tau);
        return {psi.truncate(order), 1};
    }
    RationalFunction map = R;
    int iterate = 1;
    if (md.cls == MultiplierClass::NegUnitMultiplier) {
        map = ratfunc_compose(R, R);
        iterate = 2;
        if (map == RationalFunction::t()) throw UnsupportedMultiplier("R o R = t: an iterate is the identity");
    } else if (md.cls == MultiplierClass::OtherMultiplier && !allow_nonresonant) {
        throw UnsupportedMultiplier("R'(0) = " + md.r1.str() + " (nonresonant recursion not enabled)");
    }
    const int extra = std::max(order, 2) + 2;
    const Series r = Series::from_rational_function(map, order + extra);
    const Series rprime = Series::from_rational_function(map.derivative(), order + extra);
    int free_index = 1;
    if (r[1].is_one()) {
        free_index = -1;
        for (int i = 2; i <= r.order(); ++i)
            if (!r[i].is_zero()) { free_index = i; break; }
        if (free_index < 0) throw UnsupportedMultiplier("map is the identity to the working order");
    }
    FESolution sol = solve_fe_standard(map, rprime, Series(rprime.order()), order, {{free_index, Rational(1)}},
                                       budget);
    return {sol.value(), iterate};
}

// --- exact polynomial solutions ------------------------------------------------

struct PolynomialSolution {
    Polynomial particular;
    std::vector<Polynomial> homogeneous; // basis of polynomial solutions of y(R) = a y, same degree bound
    int degree = 0;                      // degree bound at which the system became solvable
};

namespace detail {

/// Polynomial solution of degree <= deg, from the denominator-cleared system
/// sum_i y_i [N^i D^(deg-i) ad bd - an bd t^i D^deg] = bn ad D^deg.
inline std::optional<PolynomialSolution> polynomial_solution_of_degree(const RationalFunction& R,
                                                                       const RationalFunction& a,
                                                                       const RationalFunction& b, int deg) {
    const Polynomial& N = R.num();
    const Polynomial& D = R.den();
    const Polynomial Ddeg = pow(D, static_cast<unsigned long>(deg));
    const Polynomial common = a.den() * b.den();
    std::vector<Polynomial> columns;
    Polynomial npow = Polynomial::constant(1);
    for (int i = 0; i <= deg; ++i) {
        columns.push_back(npow * pow(D, static_cast<unsigned long>(deg - i)) * common -
                          a.num() * b.den() * Polynomial::monomial(1, static_cast<std::size_t>(i)) * Ddeg);
        npow *= N;
    }
    const Polynomial rhs = b.num() * a.den() * Ddeg;
    int rows = rhs.degree() + 1;
    for (const auto& c : columns) rows = std::max(rows, c.degree() + 1);
    Matrix m(static_cast<std::size_t>(rows), std::vector<Rational>(columns.size()));
    std::vector<Rational> v(static_cast<std::size_t>(rows));
    for (int row = 0; row < rows; ++row) {
        for (std::size_t col = 0; col < columns.size(); ++col) m[row][col] = columns[col][row];
        v[row] = rhs[row];
    }
    LinearSolution ls = solve_linear(std::move(m), std::move(v), columns.size());
    if (!ls.particular) return std::nullopt;
    PolynomialSolution out;
    out.particular = Polynomial(*ls.particular);
    for (auto& k : ls.kernel) out.homogeneous.emplace_back(std::move(k));
    out.degree = deg;
    return out;
}

} // namespace detail

/// Smallest degree bound D <= deg_bound at which y(R) = a y + b has a
/// polynomial solution of degree <= D. Solvability is monotone in D, so D is
/// found by bisection.
inline std::optional<PolynomialSolution> find_polynomial_solution(const RationalFunction& R,
                                                                  const RationalFunction& a,
                                                                  const RationalFunction& b, int deg_bound = 40) {
    if (deg_bound < 0) return std::nullopt;
    auto best = detail::polynomial_solution_of_degree(R, a, b, deg_bound);
    if (!best) return std::nullopt;
    int lo = 0, hi = deg_bound; // solvable at hi
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (auto s = detail::polynomial_solution_of_degree(R, a, b, mid)) {
            best = std::move(s);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return best;
}

// --- multiplicative (algebraic power) solutions -------------------------------

/// a^N = c^N * prod_i s_i^(N lambda_i), s_i = (R - a_i)/(t - a_i).
struct MultiplicativeSolution {
    std::vector<Rational> points;
    std::vector<Rational> exponents;
    Rational scalar = 1; // c
    int N = 1;

    /// Whether f = prod (t - a_i)^lambda_i itself solves y(R) = a y (c = 1).
    bool solves_equation() const { return scalar.is_one(); }
};

inline RationalFunction s_factor(const RationalFunction& R, const Rational& p) {
    return (R - RationalFunction(p)) / RationalFunction(Polynomial{-p, Rational(1)});
}

/// Checks a^N = c^N prod s_i^(N lambda_i) as rational functions.
inline bool verify_multiplicative(const RationalFunction& R, const RationalFunction& a,
                                  const MultiplicativeSolution& sol) {
    RationalFunction rhs = RationalFunction(pow(sol.scalar, sol.N));
    for (std::size_t i = 0; i < sol.points.size(); ++i) {
        const Rational e = sol.exponents[i] * Rational(sol.N);
        if (!e.is_integer()) return false;
        rhs = rhs * pow(s_factor(R, sol.points[i]), e.numerator().get_si());
    }
    return pow(a, sol.N) == rhs;
}

/// Rational roots of numerator and denominator of a.
inline std::vector<Rational> default_candidate_points(const RationalFunction& a) {
    std::vector<Rational> pts;
    for (const Polynomial* p : {&a.num(), &a.den()})
        if (p->degree() > 0)
            for (const auto& r : rational_roots(*p).roots) pts.push_back(r.root);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Searches lambda in Q^I with a'/a = sum lambda_i s_i'/s_i (a linear system
/// after clearing denominators), keeps it when every denominator is at most
/// `exponent_denominator_bound`, and returns it only after the exact identity
/// a^N = c^N prod s_i^(N lambda_i) has been checked.
inline std::optional<MultiplicativeSolution> find_multiplicative_solution(
    const RationalFunction& R, const RationalFunction& a, std::vector<Rational> candidate_points = {},
    int exponent_denominator_bound = 12) {
    if (a.is_zero()) throw ZeroInput("find_multiplicative_solution");
    if (candidate_points.empty()) candidate_points = default_candidate_points(a);
    std::sort(candidate_points.begin(), candidate_points.end());
    candidate_points.erase(std::unique(candidate_points.begin(), candidate_points.end()), candidate_points.end());

    std::vector<Rational> pts;
    std::vector<RationalFunction> logs;
    for (const auto& p : candidate_points) {
        RationalFunction s = s_factor(R, p);
        if (s.is_zero() || s.is_constant()) continue;
        pts.push_back(p);
        logs.push_back(ratfunc_log_derivative(s));
    }
    const RationalFunction target = a.is_constant() ? RationalFunction(0) : ratfunc_log_derivative(a);

    Polynomial common = target.den();
    for (const auto& l : logs) common = common / gcd(common, l.den()) * l.den();
    auto scaled = [&](const RationalFunction& f) { return f.num() * (common / f.den()); };
    std::vector<Polynomial> columns;
    for (const auto& l : logs) columns.push_back(scaled(l));
    const Polynomial rhs = scaled(target);
    int rows = rhs.degree() + 1;
    for (const auto& c : columns) rows = std::max(rows, c.degree() + 1);
    Matrix m(static_cast<std::size_t>(rows), std::vector<Rational>(columns.size()));
    std::vector<Rational> v(static_cast<std::size_t>(rows));
    for (int row = 0; row < rows; ++row) {
        for (std::size_t col = 0; col < columns.size(); ++col) m[row][col] = columns[col][row];
        v[row] = rhs[row];
    }
    LinearSolution ls = solve_linear(std::move(m), std::move(v), columns.size());
    if (!ls.particular) return std::nullopt;

    MultiplicativeSolution sol;
    BigInt n = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Rational& lambda = (*ls.particular)[i];
        if (lambda.is_zero()) continue;
        if (lambda.denominator() > exponent_denominator_bound) return std::nullopt;
        n = lcm(n, lambda.denominator());
        sol.points.push_back(pts[i]);
        sol.exponents.push_back(lambda);
    }
    sol.N = static_cast<int>(n.get_si());
    RationalFunction prod = 1;
    for (std::size_t i = 0; i < sol.points.size(); ++i)
        prod = prod * pow(s_factor(R, sol.points[i]), (sol.exponents[i] * Rational(sol.N)).numerator().get_si());
    const RationalFunction ratio = pow(a, sol.N) / prod;
    if (!ratio.is_constant()) return std::nullopt;
    auto c = exact_root(ratio.num()[0], static_cast<unsigned long>(sol.N));
    if (!c) return std::nullopt;
    sol.scalar = *c;
    if (!verify_multiplicative(R, a, sol)) return std::nullopt;
    return sol;
}

/// f^N = prod_i (1 - t/a_i)^(N lambda_i) * t^(N lambda_0) as a rational function,
/// where f = prod (t - a_i)^lambda_i with the constants (-a_i)^lambda_i dropped.
inline RationalFunction multiplicative_witness(const MultiplicativeSolution& sol) {
    RationalFunction w = 1;
    for (std::size_t i = 0; i < sol.points.size(); ++i) {
        const long e = (sol.exponents[i] * Rational(sol.N)).numerator().get_si();
        const Rational& p = sol.points[i];
        const RationalFunction factor = p.is_zero() ? RationalFunction::t()
                                                    : RationalFunction(Polynomial{Rational(1), -inverse(p)});
        w = w * pow(factor, e);
    }
    return w;
}

/// Power series of f = prod (1 - t/a_i)^lambda_i (times t^lambda_0 when 0 is a
/// point with a nonnegative integer exponent); nullopt if f is no power series.
inline std::optional<Series> multiplicative_series(const MultiplicativeSolution& sol, int order) {
    Series f = Series::constant(1, order);
    int shift = 0;
    for (std::size_t i = 0; i < sol.points.size(); ++i) {
        const Rational& p = sol.points[i];
        const Rational& lambda = sol.exponents[i];
        if (p.is_zero()) {
            if (!lambda.is_integer() || lambda.sign() < 0) return std::nullopt;
            shift += static_cast<int>(lambda.numerator().get_si());
            continue;
        }
        Series base = Series::constant(1, order);
        if (order >= 1) base[1] = -inverse(p);
        f = Series::multiply_raw(f, unit_power(base, lambda), order);
    }
    if (shift == 0) return f;
    Series shifted(order);
    for (int i = shift; i <= order; ++i) shifted[i] = f[i - shift];
    return shifted;
}

} // namespace itfe
