#pragma once

// Exact rational scalars on top of GMP.
//
// Invariants (maintained by mpq canonicalization): gcd(|num|, den) = 1,
// den > 0, zero is 0/1. Values print as "p/q", or "p" when q = 1.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace itfe {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {} // NOLINT(google-explicit-constructor)
    Rational(int v) : v_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Rational(const BigInt& v) : v_(v) {} // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "p", "-p" or "p/q" in base 10.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        auto valid = [](const std::string& digits) {
            std::size_t i = (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) ? 1 : 0;
            if (i == digits.size()) return false;
            for (; i < digits.size(); ++i)
                if (digits[i] < '0' || digits[i] > '9') return false;
            return true;
        };
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
            throw std::invalid_argument("not a rational literal: '" + s + "'");
        if (num[0] == '+') num.erase(0, 1);
        return Rational(BigInt(num, 10), BigInt(den, 10));
    }

    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    Rational operator-() const { return from(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    /// From a canonical GMP rational.
    static Rational from(const mpq_class& q) {
        Rational r;
        r.v_ = q;
        r.v_.canonicalize();
        return r;
    }

private:
    mpq_class v_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational inverse(const Rational& r) { return Rational(1) / r; }

/// r^e for any integer e (e < 0 requires r != 0).
inline Rational pow(const Rational& r, long e) {
    if (e < 0) return pow(inverse(r), -e);
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), r.numerator().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), r.denominator().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(num, den);
}

/// Exact k-th root in Q, if one exists. For even k the nonnegative root is returned.
inline std::optional<Rational> exact_root(const Rational& r, unsigned long k) {
    if (k == 0) throw std::invalid_argument("zeroth root");
    if (k == 1) return r;
    if (r.sign() < 0 && k % 2 == 0) return std::nullopt;
    BigInt num = r.numerator(), den = r.denominator();
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) == 0) return std::nullopt;
    return Rational(neg ? BigInt(-rn) : rn, rd);
}

inline BigInt factorial(unsigned long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace itfe

template <>
struct std::hash<itfe::Rational> {
    std::size_t operator()(const itfe::Rational& r) const noexcept {
        std::size_t h1 = std::hash<std::string>{}(r.numerator().get_str(16));
        std::size_t h2 = std::hash<std::string>{}(r.denominator().get_str(16));
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};
