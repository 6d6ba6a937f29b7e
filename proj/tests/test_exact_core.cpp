#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "itfe/dynamics.hpp"
#include "itfe/linalg.hpp"
#include "itfe/parser.hpp"
#include "itfe/polynomial.hpp"
#include "itfe/rational.hpp"
#include "itfe/rational_function.hpp"
#include "support.hpp"

using namespace itfe;

namespace {

RationalFunction F(const char* s) { return parse_expression(s); }

std::map<Rational, int> root_map(const Polynomial& p) {
    std::map<Rational, int> m;
    for (const auto& r : rational_roots(p).roots) m[r.root] += r.multiplicity;
    return m;
}

} // namespace

TEST(Rational, NormalForm) {
    Rational r(BigInt(6), BigInt(-4));
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(0, 7).str(), "0");
    EXPECT_EQ(Rational(0, 7).denominator(), 1);
    EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
    EXPECT_EQ(Rational::parse("08/010"), Rational(4, 5)); // decimal, not octal
    EXPECT_THROW(Rational::parse("10/-4"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ExactRoots) {
    EXPECT_EQ(exact_root(Rational(4, 9), 2), Rational(2, 3));
    EXPECT_EQ(exact_root(Rational(-8, 27), 3), Rational(-2, 3));
    EXPECT_FALSE(exact_root(Rational(2), 2).has_value());
    EXPECT_FALSE(exact_root(Rational(-4), 2).has_value());
}

TEST(Polynomial, ArithmeticAndPrinting) {
    const Polynomial t = Polynomial::t();
    const Polynomial p = t * t + t * t * t;
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.valuation(), 2);
    EXPECT_EQ(p.str(), "t^2+t^3");
    EXPECT_EQ(Polynomial().degree(), -1);
    auto [q, r] = divmod(p, t + Polynomial::constant(1));
    EXPECT_EQ(q, t * t);
    EXPECT_TRUE(r.is_zero());
    EXPECT_THROW(divmod(p, Polynomial()), DivisionByZeroPolynomial);
}

TEST(RationalRoots, CriticalPointsOfTreeMap) {
    // 2t + 3t^2
    const auto rr = rational_roots(Polynomial{0, 2, 3});
    EXPECT_EQ(root_map(Polynomial{0, 2, 3}), (std::map<Rational, int>{{Rational(-2, 3), 1}, {Rational(0), 1}}));
    EXPECT_EQ(rr.remainder_degree, 0);
}

TEST(RationalRoots, DoubleRootAndIrrational) {
    EXPECT_EQ(root_map(Polynomial{0, 0, 1}), (std::map<Rational, int>{{Rational(0), 2}}));
    const auto rr = rational_roots(Polynomial{1, 0, -2});
    EXPECT_TRUE(rr.roots.empty());
    EXPECT_EQ(rr.remainder_degree, 2);
    EXPECT_THROW(rational_roots(Polynomial()), ZeroInput);
}

TEST(RationalRoots, ProductIsUnionOfRoots) {
    gen::Gen g(11);
    for (int iter = 0; iter < 60; ++iter) {
        // products of random linear factors and a random cofactor
        Polynomial p = Polynomial::constant(g.nonzero_rational());
        Polynomial q = g.nonzero_polynomial(3);
        for (int k = g.integer(0, 3); k > 0; --k) p *= Polynomial{-g.rational(), Rational(1)};
        auto mp = root_map(p), mq = root_map(q), mpq = root_map(p * q);
        for (auto& [r, m] : mq) mp[r] += m;
        EXPECT_EQ(mpq, mp) << p.str() << " * " << q.str();
    }
}

TEST(RationalFunction, NormalFormIsMonicAndReduced) {
    const RationalFunction f(Polynomial{0, 2}, Polynomial{4, 2});
    EXPECT_EQ(f.num(), (Polynomial{0, 1}));
    EXPECT_EQ(f.den(), (Polynomial{2, 1}));
    EXPECT_EQ(F("(t^2-1)/(t-1)"), F("t+1"));
    EXPECT_THROW(RationalFunction(Polynomial{1}, Polynomial()), DivisionByZeroPolynomial);
}

TEST(RationalFunction, ComposeExamples) {
    EXPECT_EQ(ratfunc_compose(F("t^2"), F("t/(1+t)")), F("t^2/(1+2t+t^2)"));
    const RationalFunction R = F("t^2/(1-2t+2t^2)"), m = F("t/(1+t)");
    EXPECT_EQ(ratfunc_compose(R, m), F("t^2/(1+t^2)"));
    EXPECT_EQ(ratfunc_compose(R, m), ratfunc_compose(m, F("t^2")));
    EXPECT_EQ(ratfunc_compose(m, m), F("t/(1+2t)"));
}

TEST(RationalFunction, ComposeIsAssociative) {
    gen::Gen g(12);
    int checked = 0;
    for (int iter = 0; iter < 40; ++iter) {
        const auto f = g.rational_function(2), h = g.rational_function(2), k = g.rational_function(2);
        try {
            EXPECT_EQ(ratfunc_compose(ratfunc_compose(f, h), k), ratfunc_compose(f, ratfunc_compose(h, k)));
            ++checked;
        } catch (const DegenerateComposition&) {
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(RationalFunction, LogDerivative) {
    EXPECT_EQ(ratfunc_log_derivative(F("1-2t^2")), F("-4t/(1-2t^2)"));
    EXPECT_TRUE(ratfunc_log_derivative(F("7/3")).is_zero());
    EXPECT_THROW(ratfunc_log_derivative(RationalFunction(0)), ZeroInput);
    // partial fractions, summed term by term
    const RationalFunction a = F("(2+t)(4-3t)/((4+t)(2-t))");
    const RationalFunction sum = F("1/(2+t)") + F("-3/(4-3t)") - F("1/(4+t)") + F("1/(2-t)");
    EXPECT_EQ(ratfunc_log_derivative(a), sum);
}

TEST(RationalFunction, LogDerivativeOfProduct) {
    gen::Gen g(13);
    for (int iter = 0; iter < 40; ++iter) {
        auto a = g.rational_function(3), b = g.rational_function(3);
        if (a.is_zero() || b.is_zero()) continue;
        EXPECT_EQ(ratfunc_log_derivative(a * b), ratfunc_log_derivative(a) + ratfunc_log_derivative(b));
    }
}

TEST(Homography, CompositionIsMatrixProduct) {
    gen::Gen g(14);
    for (int iter = 0; iter < 40; ++iter) {
        auto make = [&] {
            for (;;) {
                Rational a = g.rational(), b = g.rational(), c = g.rational(), d = g.rational();
                if (!(a * d - b * c).is_zero()) return Homography(a, b, c, d);
            }
        };
        const Homography h1 = make(), h2 = make();
        EXPECT_EQ(ratfunc_compose(h1.as_function(), h2.as_function()), h1.then_after(h2).as_function());
        EXPECT_TRUE(h1.then_after(h1.inverse()).is_identity_map());
    }
    EXPECT_THROW(Homography(1, 2, 2, 4), std::invalid_argument);
}

TEST(Chebyshev, Examples) {
    EXPECT_EQ(chebyshev(0), Polynomial{1});
    EXPECT_EQ(chebyshev(1), Polynomial::t());
    EXPECT_EQ(chebyshev(2), (Polynomial{-1, 0, 2}));
    // recurrence applied by hand in the oracle: T5 = 16t^5 - 20t^3 + 5t
    oracle::Vec a = oracle::ints({1}), b = oracle::ints({0, 1});
    for (int k = 2; k <= 5; ++k) {
        oracle::Vec c(k + 1, 0);
        for (std::size_t i = 0; i < b.size(); ++i) c[i + 1] += 2 * b[i];
        for (std::size_t i = 0; i < a.size(); ++i) c[i] -= a[i];
        a = b;
        b = c;
    }
    std::vector<Rational> expect;
    for (auto& x : b) expect.push_back(Rational::from(x));
    EXPECT_EQ(chebyshev(5), Polynomial(expect));
    EXPECT_EQ(chebyshev(5), (Polynomial{0, 5, 0, -20, 0, 16}));
}

TEST(Chebyshev, CompositionLaw) {
    for (unsigned a = 1; a <= 6; ++a)
        for (unsigned b = 1; b <= 6; ++b)
            EXPECT_EQ(chebyshev(a).compose(chebyshev(b)), chebyshev(a * b)) << a << "," << b;
}

TEST(Linalg, SolvesAndReportsKernel) {
    Matrix m{{1, 2}, {2, 4}};
    auto s = solve_linear(m, {3, 6}, 2);
    ASSERT_TRUE(s.particular);
    EXPECT_EQ((*s.particular)[0] + 2 * (*s.particular)[1], Rational(3));
    ASSERT_EQ(s.kernel.size(), 1u);
    EXPECT_EQ(s.kernel[0][0] + 2 * s.kernel[0][1], Rational(0));
    EXPECT_FALSE(solve_linear(m, {3, 7}, 2).particular);
}
