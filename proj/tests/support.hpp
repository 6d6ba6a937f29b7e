#pragma once

// Test-side oracles. They work on plain mpq_class vectors and share no code
// with the library's series or solver routines.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "itfe/polynomial.hpp"
#include "itfe/rational.hpp"
#include "itfe/rational_function.hpp"
#include "itfe/series.hpp"

namespace oracle {

using Vec = std::vector<mpq_class>;

inline Vec mul(const Vec& a, const Vec& b, int n) {
    Vec r(n + 1, 0);
    for (int i = 0; i <= n && i < (int)a.size(); ++i)
        for (int j = 0; i + j <= n && j < (int)b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// Long division a/b to t^n, b[0] != 0.
inline Vec div(const Vec& a, const Vec& b, int n) {
    Vec rem(n + 1, 0), q(n + 1, 0);
    for (int i = 0; i <= n && i < (int)a.size(); ++i) rem[i] = a[i];
    for (int i = 0; i <= n; ++i) {
        q[i] = rem[i] / b[0];
        for (int j = 0; i + j <= n && j < (int)b.size(); ++j) rem[i + j] -= q[i] * b[j];
    }
    return q;
}

/// sum_k f_k g^k to t^n by explicit powers.
inline Vec compose(const Vec& f, const Vec& g, int n) {
    Vec r(n + 1, 0), p(n + 1, 0);
    p[0] = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (int i = 0; i <= n; ++i) r[i] += f[k] * p[i];
        p = mul(p, g, n);
    }
    return r;
}

inline Vec pow(const Vec& f, int e, int n) {
    Vec r(n + 1, 0);
    r[0] = 1;
    for (int i = 0; i < e; ++i) r = mul(r, f, n);
    return r;
}

/// Compositional inverse by the fixed-point iteration g <- (t - (f(g) - f1 g)) / f1,
/// each pass fixing one more coefficient.
inline Vec reversion(const Vec& f, int n) {
    Vec g(n + 1, 0);
    for (int pass = 0; pass <= n; ++pass) {
        Vec fg = compose(f, g, n);
        Vec next(n + 1, 0);
        for (int i = 0; i <= n; ++i) next[i] = -(fg[i] - f[1] * g[i]) / f[1];
        if (n >= 1) next[1] += 1 / f[1];
        g = next;
    }
    return g;
}

inline Vec expand(const itfe::RationalFunction& f, int n) {
    Vec a, b;
    for (const auto& c : f.num().coeffs()) a.push_back(c.raw());
    for (const auto& c : f.den().coeffs()) b.push_back(c.raw());
    return div(a, b, n);
}

inline Vec from(const itfe::Series& s) {
    Vec v;
    for (const auto& c : s.coeffs()) v.push_back(c.raw());
    return v;
}

inline Vec ints(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Vec derivative(const Vec& f) {
    Vec d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (long)i);
    return d;
}

inline Vec truncate(Vec v, int n) {
    v.resize(n + 1, 0);
    return v;
}

inline mpz_class binomial(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace oracle

namespace gen {

/// Random small rationals and polynomials from a seeded engine.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    itfe::Rational rational(int h = 5) { return itfe::Rational(integer(-h, h), integer(1, h)); }
    itfe::Rational nonzero_rational(int h = 5) {
        for (;;)
            if (auto r = rational(h); !r.is_zero()) return r;
    }

    itfe::Polynomial polynomial(int max_deg, int h = 5) {
        std::vector<itfe::Rational> c;
        const int d = integer(0, max_deg);
        for (int i = 0; i <= d; ++i) c.push_back(rational(h));
        return itfe::Polynomial(c);
    }
    itfe::Polynomial nonzero_polynomial(int max_deg, int h = 5) {
        for (;;)
            if (auto p = polynomial(max_deg, h); !p.is_zero()) return p;
    }

    /// Series to `order`, with at least `valuation` leading zeros.
    itfe::Series series(int order, int valuation = 0, int h = 5) {
        itfe::Series s(order);
        for (int i = valuation; i <= order; ++i) s[i] = rational(h);
        return s;
    }

    itfe::RationalFunction rational_function(int max_deg, int h = 5) {
        return itfe::RationalFunction(polynomial(max_deg, h), nonzero_polynomial(max_deg, h));
    }

    /// R with R(0) = 0 and denominator nonvanishing at 0.
    itfe::RationalFunction map_fixing_zero(int max_deg) {
        for (;;) {
            itfe::Polynomial num = itfe::Polynomial::t() * nonzero_polynomial(max_deg - 1);
            itfe::Polynomial den = nonzero_polynomial(max_deg - 1);
            if (den[0].is_zero()) continue;
            return itfe::RationalFunction(num, den);
        }
    }
};

} // namespace gen
