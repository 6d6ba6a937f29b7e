#pragma once

// Reduced fractions of polynomials over Q, and homographies.
//
// Normal form: gcd(num, den) = 1 and den monic, so structural equality is
// equality of rational functions.

#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace itfe {

class RationalFunction {
public:
    RationalFunction() : den_(Polynomial::constant(1)) {}
    RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1)) {} // NOLINT
    RationalFunction(const Rational& c) : RationalFunction(Polynomial::constant(c)) {} // NOLINT
    RationalFunction(int c) : RationalFunction(Rational(c)) {} // NOLINT
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZeroPolynomial();
        reduce();
    }
    static RationalFunction t() { return RationalFunction(Polynomial::t()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    /// Degree of the map t -> f(t) on the projective line.
    int map_degree() const { return std::max(num_.degree(), den_.degree()); }

    /// Value at x; nullopt at a pole.
    std::optional<Rational> operator()(const Rational& x) const {
        Rational d = den_(x);
        if (d.is_zero()) return std::nullopt;
        return num_(x) / d;
    }

    RationalFunction derivative() const {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    RationalFunction operator-() const { return {-num_, den_}; }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DivisionByZeroPolynomial();
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Parser-readable form: "p" or "(p)/(q)".
    /// The denominator is printed with coprime integer coefficients and a
    /// positive lowest-order term, e.g. t^2/(4-3*t).
    std::string str() const {
        if (is_polynomial()) return num_.str();
        Rational scale = 1;
        {
            BigInt den = 1, content = 0;
            for (const auto& c : den_.coeffs()) den = lcm(den, c.denominator());
            for (const auto& c : den_.coeffs()) content = gcd(content, c.numerator() * (den / c.denominator()));
            scale = Rational(den, content);
            if (den_[den_.valuation()].sign() < 0) scale = -scale;
        }
        const Polynomial n = num_ * scale, d = den_ * scale;
        auto wrap = [](const Polynomial& p) {
            std::string s = p.str();
            bool single = p.coeffs().size() == 1 || (p.valuation() == p.degree() && abs(p.leading()).is_one());
            return single && s[0] != '-' ? s : "(" + s + ")";
        };
        return wrap(n) + "/" + wrap(d);
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(1);
            return;
        }
        Polynomial g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        Rational lead = den_.leading();
        if (!lead.is_one()) {
            num_ = num_ * inverse(lead);
            den_ = den_ * inverse(lead);
        }
    }
    Polynomial num_;
    Polynomial den_;
};

inline RationalFunction pow(const RationalFunction& f, long e) {
    if (e < 0) {
        if (f.is_zero()) throw DivisionByZeroPolynomial();
        return pow(RationalFunction(f.den(), f.num()), -e);
    }
    return {pow(f.num(), static_cast<unsigned long>(e)), pow(f.den(), static_cast<unsigned long>(e))};
}

/// outer(inner(t)), exactly reduced.
inline RationalFunction ratfunc_compose(const RationalFunction& outer, const RationalFunction& inner) {
    // outer = P/Q, inner = U/V, m = max(deg P, deg Q):
    // outer(U/V) = sum P_i U^i V^(m-i) / sum Q_i U^i V^(m-i)
    const Polynomial& P = outer.num();
    const Polynomial& Q = outer.den();
    const int m = std::max(P.degree(), Q.degree());
    if (m <= 0) return outer;
    const Polynomial& U = inner.num();
    const Polynomial& V = inner.den();
    std::vector<Polynomial> upow{Polynomial::constant(1)}, vpow{Polynomial::constant(1)};
    for (int i = 1; i <= m; ++i) {
        upow.push_back(upow.back() * U);
        vpow.push_back(vpow.back() * V);
    }
    auto homogenize = [&](const Polynomial& F) {
        Polynomial acc;
        for (int i = 0; i <= F.degree(); ++i)
            if (!F[i].is_zero()) acc += F[i] * (upow[i] * vpow[m - i]);
        return acc;
    };
    Polynomial num = homogenize(P), den = homogenize(Q);
    if (den.is_zero()) throw DegenerateComposition();
    return {std::move(num), std::move(den)};
}

/// a'/a, reduced.
inline RationalFunction ratfunc_log_derivative(const RationalFunction& a) {
    if (a.is_zero()) throw ZeroInput("ratfunc_log_derivative");
    return {a.num().derivative() * a.den() - a.num() * a.den().derivative(), a.num() * a.den()};
}

/// (alpha t + beta) / (gamma t + delta) with alpha delta - beta gamma != 0.
class Homography {
public:
    Homography(Rational alpha, Rational beta, Rational gamma, Rational delta)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)), delta_(std::move(delta)) {
        if (determinant().is_zero()) throw std::invalid_argument("singular homography");
    }
    static Homography identity() { return {1, 0, 0, 1}; }

    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }
    const Rational& gamma() const { return gamma_; }
    const Rational& delta() const { return delta_; }
    Rational determinant() const { return alpha_ * delta_ - beta_ * gamma_; }

    RationalFunction as_function() const {
        return {Polynomial{beta_, alpha_}, Polynomial{delta_, gamma_}};
    }

    /// this o other, as a 2x2 matrix product.
    Homography then_after(const Homography& o) const {
        return {alpha_ * o.alpha_ + beta_ * o.gamma_, alpha_ * o.beta_ + beta_ * o.delta_,
                gamma_ * o.alpha_ + delta_ * o.gamma_, gamma_ * o.beta_ + delta_ * o.delta_};
    }

    Homography inverse() const { return {delta_, -beta_, -gamma_, alpha_}; }

    /// Is this a scalar multiple of the identity matrix (the identity map)?
    bool is_identity_map() const {
        return beta_.is_zero() && gamma_.is_zero() && alpha_ == delta_;
    }

    /// Degree-1 rational function as a homography; nullopt otherwise.
    static std::optional<Homography> from_function(const RationalFunction& f) {
        if (f.map_degree() != 1) return std::nullopt;
        return Homography(f.num()[1], f.num()[0], f.den()[1], f.den()[0]);
    }

private:
    Rational alpha_, beta_, gamma_, delta_;
};

} // namespace itfe
