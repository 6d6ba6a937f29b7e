#pragma once

// Truncated formal power series over Q.
//
// A Series carries coefficients for exponents 0..order. Every operation
// returns the largest order whose coefficients are fully determined by its
// inputs; nothing is padded past what the inputs justify.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rational_function.hpp"

namespace itfe {

class Series {
public:
    /// The zero series known through t^order.
    explicit Series(int order = 0) : c_(checked(order) + 1), order_(order) {}
    Series(std::vector<Rational> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
        c_.resize(checked(order) + 1);
    }

    static Series constant(const Rational& c, int order) {
        Series s(order);
        s.c_[0] = c;
        return s;
    }
    static Series variable(int order) {
        Series s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }
    static Series from_polynomial(const Polynomial& p, int order) {
        Series s(order);
        for (int i = 0; i <= std::min(order, p.degree()); ++i) s.c_[i] = p[i];
        return s;
    }
    /// Taylor expansion at 0; the denominator must not vanish at 0.
    static Series from_rational_function(const RationalFunction& f, int order) {
        return divide_raw(from_polynomial(f.num(), order), from_polynomial(f.den(), order), order);
    }

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    /// Coefficient of t^i; i must not exceed order().
    const Rational& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
    Rational& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }

    /// Index of the first nonzero coefficient; nullopt when zero through order().
    std::optional<int> valuation() const {
        for (int i = 0; i <= order_; ++i)
            if (!c_[i].is_zero()) return i;
        return std::nullopt;
    }
    /// valuation(), or order()+1 for the zero-to-order series: a lower bound
    /// on the valuation of every series this truncation stands for.
    int valuation_bound() const { return valuation().value_or(order_ + 1); }
    bool is_zero() const { return !valuation().has_value(); }

    Series truncate(int order) const {
        if (order > order_) throw std::invalid_argument("cannot extend a series past its truncation order");
        return Series(std::vector<Rational>(c_.begin(), c_.begin() + order + 1), order);
    }

    Polynomial to_polynomial() const { return Polynomial(c_); }

    friend bool operator==(const Series& a, const Series& b) { return a.order_ == b.order_ && a.c_ == b.c_; }

    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Series operator+(const Series& f, const Series& g) {
        const int n = std::min(f.order_, g.order_);
        Series r(n);
        for (int i = 0; i <= n; ++i) r.c_[i] = f.c_[i] + g.c_[i];
        return r;
    }
    friend Series operator-(const Series& f, const Series& g) { return f + (-g); }
    friend Series operator*(const Series& f, const Series& g) {
        const int n = std::min(f.order_ + g.valuation_bound(), g.order_ + f.valuation_bound());
        return multiply_raw(f, g, n);
    }
    friend Series operator*(const Series& f, const Rational& s) {
        Series r = f;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend Series operator*(const Rational& s, const Series& f) { return f * s; }
    friend Series operator/(const Series& f, const Series& g) {
        if (g.order_ < 0 || g.c_[0].is_zero()) throw DivisionByNonUnit();
        const int n = std::min(f.order_, g.order_ + f.valuation_bound());
        return divide_raw(f, g, n);
    }

    /// Coefficientwise product to a caller-chosen order; missing input
    /// coefficients are treated as zero.
    static Series multiply_raw(const Series& f, const Series& g, int n) {
        Series r(n);
        const int fo = std::min(f.order_, n);
        for (int i = 0; i <= fo; ++i) {
            if (f.c_[i].is_zero()) continue;
            const int lim = std::min(g.order_, n - i);
            for (int j = 0; j <= lim; ++j)
                if (!g.c_[j].is_zero()) r.c_[i + j] += f.c_[i] * g.c_[j];
        }
        return r;
    }
    static Series divide_raw(const Series& f, const Series& g, int n) {
        if (g.c_.empty() || g.c_[0].is_zero()) throw DivisionByNonUnit();
        Series q(n);
        const Rational inv = inverse(g.c_[0]);
        for (int i = 0; i <= n; ++i) {
            Rational acc = i <= f.order_ ? f.c_[i] : Rational(0);
            for (int k = std::max(0, i - g.order_); k < i; ++k)
                if (!q.c_[k].is_zero()) acc -= q.c_[k] * g.c_[i - k];
            q.c_[i] = acc * inv;
        }
        return q;
    }

private:
    static std::size_t checked(int order) {
        if (order < 0) throw std::invalid_argument("series truncation order must be >= 0");
        return static_cast<std::size_t>(order);
    }
    std::vector<Rational> c_;
    int order_;
};

enum class ArithmeticKind { Add, Sub, Mul, Div };

inline Series arithmetic(const Series& f, const Series& g, ArithmeticKind kind) {
    switch (kind) {
    case ArithmeticKind::Add: return f + g;
    case ArithmeticKind::Sub: return f - g;
    case ArithmeticKind::Mul: return f * g;
    case ArithmeticKind::Div: return f / g;
    }
    throw std::invalid_argument("unknown arithmetic kind");
}

/// f^e for e >= 0, by repeated squaring.
inline Series pow(const Series& f, unsigned long e) {
    Series result(0);
    Series base = f;
    bool first = true;
    while (e) {
        if (e & 1UL) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1UL;
        if (e) base = base * base;
    }
    return first ? Series::constant(1, f.order()) : result;
}

/// sigma^alpha for a series with sigma(0) = 1 and rational alpha, by the
/// power recurrence P_m = 1/m * sum_k ((alpha+1)k - m) sigma_k P_{m-k}.
inline Series unit_power(const Series& sigma, const Rational& alpha) {
    if (!sigma[0].is_one()) throw std::invalid_argument("unit_power needs constant term 1");
    const int n = sigma.order();
    Series p(n);
    p[0] = 1;
    const Rational a1 = alpha + Rational(1);
    for (int m = 1; m <= n; ++m) {
        Rational acc;
        for (int k = 1; k <= m; ++k) {
            if (sigma[k].is_zero()) continue;
            acc += (a1 * Rational(k) - Rational(m)) * sigma[k] * p[m - k];
        }
        p[m] = acc / Rational(m);
    }
    return p;
}

/// f(g(t)). Requires g(0) = 0. With v = valuation of g and v1 the first
/// nonconstant exponent present in f, the result is exact through
/// min(v*(order(f)+1) - 1, order(g) + (v1-1)*v).
inline Series series_compose(const Series& f, const Series& g) {
    if (!g[0].is_zero()) throw CompositionAtUnit();
    const int v = g.valuation_bound();
    const long long from_f = static_cast<long long>(v) * (f.order() + 1) - 1;
    long long from_g = std::numeric_limits<long long>::max();
    for (int i = 1; i <= f.order(); ++i)
        if (!f[i].is_zero()) {
            from_g = static_cast<long long>(g.order()) + static_cast<long long>(i - 1) * v;
            break;
        }
    const int n = static_cast<int>(std::min(from_f, from_g));
    // Horner in the series ring, truncated at n.
    Series acc = Series::constant(f[f.order()], n);
    for (int k = f.order() - 1; k >= 0; --k) {
        acc = Series::multiply_raw(acc, g, n);
        acc[0] += f[k];
    }
    return acc;
}

/// Compositional inverse of f = f1 t + ..., by Lagrange inversion:
/// [t^n] g = (1/n) [t^(n-1)] (t/f)^n. Exact through order(f).
inline Series reversion(const Series& f) {
    if (f.order() < 1 || !f[0].is_zero() || f[1].is_zero()) throw NotReversible();
    const int n = f.order();
    // h = t / f, known through t^(n-1).
    Series f_over_t(std::vector<Rational>(f.coeffs().begin() + 1, f.coeffs().end()), n - 1);
    const Series h = Series::divide_raw(Series::constant(1, n - 1), f_over_t, n - 1);
    Series g(n);
    const Rational h0 = h[0];
    const Series sigma = h * inverse(h0); // unit with constant term 1
    Rational h0_pow = 1;
    for (int k = 1; k <= n; ++k) {
        h0_pow *= h0;
        // [t^(k-1)] sigma^k via the power recurrence, truncated at k-1.
        const Series p = unit_power(sigma.truncate(k - 1), Rational(k));
        g[k] = h0_pow * p[k - 1] / Rational(k);
    }
    return g;
}

/// Termwise derivative; the order drops by one.
inline Series differentiate(const Series& f) {
    if (f.order() < 1) throw std::invalid_argument("differentiate needs order >= 1");
    Series d(f.order() - 1);
    for (int i = 1; i <= f.order(); ++i) d[i - 1] = f[i] * Rational(i);
    return d;
}

/// Coefficient n divided by n!.
inline Series borel_transform(const Series& f) {
    Series r(f.order());
    for (int i = 0; i <= f.order(); ++i) r[i] = f[i] / Rational(factorial(static_cast<unsigned long>(i)));
    return r;
}

/// Coefficient n multiplied by n!; inverse of borel_transform.
inline Series inverse_borel_transform(const Series& f) {
    Series r(f.order());
    for (int i = 0; i <= f.order(); ++i) r[i] = f[i] * Rational(factorial(static_cast<unsigned long>(i)));
    return r;
}

/// t^shift * body. Only the pieces the solvers need.
struct LaurentSeries {
    int shift = 0;
    Series body;

    /// Expansion of a rational function with a possible pole at 0, known
    /// through t^order.
    static LaurentSeries from_rational_function(const RationalFunction& f, int order) {
        int v = f.den().valuation();
        Polynomial den = f.den();
        if (v > 0) den = divmod(den, Polynomial::monomial(1, static_cast<std::size_t>(v))).first;
        // f = t^(-v) * num/den', so body must be known through order + v.
        return {-v, Series::from_rational_function(RationalFunction(f.num(), den), order + v)};
    }

    int order() const { return shift + body.order(); }

    Rational coeff(int exponent) const {
        int i = exponent - shift;
        if (i < 0) return 0;
        return body[i];
    }

    /// Power series view; throws if a negative power is present.
    Series to_series() const {
        auto v = body.valuation();
        if (v && *v + shift < 0) throw std::domain_error("Laurent series has a pole at 0");
        Series s(std::max(order(), 0));
        for (int e = 0; e <= s.order(); ++e) s[e] = coeff(e);
        return s;
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        return {a.shift + b.shift, a.body * b.body};
    }
};

} // namespace itfe
