#pragma once

// Dense univariate polynomials over Q in the variable t.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace itfe {

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); } // NOLINT
    Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
    static Polynomial constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }
    /// c * t^k
    static Polynomial monomial(const Rational& c, std::size_t k) {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Polynomial(std::move(v));
    }
    static Polynomial t() { return monomial(1, 1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    /// Exponent of the lowest nonzero term; -1 for zero.
    int valuation() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return -1;
    }

    Rational operator()(const Rational& x) const {
        Rational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
        return Polynomial(std::move(d));
    }

    /// Composition this(inner).
    Polynomial compose(const Polynomial& inner) const {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
        return acc;
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * inverse(leading());
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial& a, const Rational& s) {
        if (s.is_zero()) return {};
        Polynomial r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& a) { return a * s; }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw DivisionByZeroPolynomial();
        if (a.degree() < b.degree()) return {Polynomial{}, a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1);
        const Rational lead_inv = inverse(b.leading());
        for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
            const Rational q = rem[k + b.degree()] * lead_inv;
            quo[k] = q;
            if (q.is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= q * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

    /// Human- and parser-readable form, ascending powers, e.g. "1-2*t^2".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const Rational& c = c_[i];
            if (c.is_zero()) continue;
            std::string mag = abs(c).str();
            std::string term;
            if (i == 0) {
                term = mag;
            } else {
                std::string var = i == 1 ? "t" : "t^" + std::to_string(i);
                term = abs(c).is_one() ? var : mag + "*" + var;
            }
            if (out.empty())
                out = (c.sign() < 0 ? "-" : "") + term;
            else
                out += (c.sign() < 0 ? "-" : "+") + term;
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Monic gcd over Q; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Polynomial pow(const Polynomial& p, unsigned long e) {
    Polynomial result = Polynomial::constant(1), base = p;
    while (e) {
        if (e & 1UL) result *= base;
        e >>= 1UL;
        if (e) base *= base;
    }
    return result;
}

/// Chebyshev polynomial of the first kind via T_{d+1} = 2t T_d - T_{d-1}.
inline Polynomial chebyshev(unsigned d) {
    Polynomial prev = Polynomial::constant(1);
    if (d == 0) return prev;
    Polynomial cur = Polynomial::t();
    const Polynomial two_t = Polynomial::monomial(2, 1);
    for (unsigned k = 1; k < d; ++k) {
        Polynomial next = two_t * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

struct RootMultiplicity {
    Rational root;
    int multiplicity;
    friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

struct RationalRoots {
    std::vector<RootMultiplicity> roots; // ascending
    int remainder_degree = 0;            // degree of the factor with no rational roots
};

namespace detail {

inline std::vector<BigInt> positive_divisors(BigInt n) {
    if (n < 0) n = -n;
    std::vector<std::pair<BigInt, unsigned>> factors;
    for (BigInt p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Integer coefficients of the primitive polynomial proportional to p.
inline std::vector<BigInt> primitive_integer_form(const Polynomial& p) {
    BigInt den = 1;
    for (const auto& c : p.coeffs()) den = lcm(den, c.denominator());
    std::vector<BigInt> out;
    BigInt content = 0;
    for (const auto& c : p.coeffs()) {
        BigInt v = c.numerator() * (den / c.denominator());
        content = gcd(content, v);
        out.push_back(v);
    }
    if (content != 0)
        for (auto& v : out) v /= content;
    return out;
}

} // namespace detail

/// All rational roots with exact multiplicities. Candidates come from the
/// rational-root theorem on the primitive integer form; multiplicities from
/// repeated exact division by the linear factor.
inline RationalRoots rational_roots(const Polynomial& p) {
    if (p.is_zero()) throw ZeroInput("rational_roots");
    RationalRoots out;
    Polynomial rest = p;
    if (int v = rest.valuation(); v > 0) {
        out.roots.push_back({Rational(0), v});
        rest = divmod(rest, Polynomial::monomial(1, static_cast<std::size_t>(v))).first;
    }
    if (rest.degree() > 0) {
        auto ints = detail::primitive_integer_form(rest);
        auto ps = detail::positive_divisors(ints.front());
        auto qs = detail::positive_divisors(ints.back());
        std::vector<Rational> candidates;
        for (const auto& num : ps)
            for (const auto& den : qs) {
                candidates.emplace_back(num, den);
                candidates.emplace_back(BigInt(-num), den);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& r : candidates) {
            if (rest.degree() <= 0) break;
            const Polynomial factor{-r, Rational(1)};
            int mult = 0;
            while (rest.degree() > 0) {
                auto [q, rem] = divmod(rest, factor);
                if (!rem.is_zero()) break;
                rest = std::move(q);
                ++mult;
            }
            if (mult) out.roots.push_back({r, mult});
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.root < b.root; });
    out.remainder_degree = std::max(rest.degree(), 0);
    return out;
}

} // namespace itfe
