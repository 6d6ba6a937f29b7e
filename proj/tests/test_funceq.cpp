#include <gtest/gtest.h>

#include <atomic>

#include "itfe/funceq.hpp"
#include "itfe/parser.hpp"
#include "support.hpp"

using namespace itfe;

namespace {

RationalFunction F(const char* s) { return parse_expression(s); }

Series expand(const RationalFunction& f, int order) { return Series::from_rational_function(f, order); }

// f(R) - a f - b through t^n, computed on plain vectors
oracle::Vec residual(const RationalFunction& R, const RationalFunction& a, const RationalFunction& b,
                     const oracle::Vec& f, int n) {
    const auto phi = oracle::compose(f, oracle::expand(R, n), n);
    const auto af = oracle::mul(oracle::expand(a, n), f, n);
    const auto bn = oracle::expand(b, n);
    oracle::Vec r(n + 1);
    for (int i = 0; i <= n; ++i) r[i] = phi[i] - af[i] - bn[i];
    return r;
}

bool vanishes(const oracle::Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// balanced {2,3}-trees by leaves: level h+1 is level h composed with t^2+t^3
oracle::Vec balanced_trees(int n) {
    oracle::Vec level = oracle::ints({0, 1}), total(n + 1, 0);
    const auto r = oracle::ints({0, 0, 1, 1});
    for (int h = 0; h <= n; ++h) {
        level.resize(n + 1, 0);
        for (int i = 0; i <= n; ++i) total[i] += level[i];
        level = oracle::compose(level, r, n);
    }
    return total;
}

} // namespace

TEST(SolveStandard, TreeEquation) {
    const auto sol = solve_fe_standard(F("t^2+t^3"), F("1"), F("-t"), 16);
    ASSERT_TRUE(sol.series);
    EXPECT_EQ(oracle::from(sol.value()), balanced_trees(16));
    EXPECT_EQ(sol.free_indices, std::vector<int>{0});
    EXPECT_TRUE(sol.obstructions.empty());
    std::vector<Rational> head(sol.value().coeffs().begin(), sol.value().coeffs().begin() + 13);
    EXPECT_EQ(head, (std::vector<Rational>{0, 1, 1, 1, 1, 2, 2, 3, 4, 5, 8, 14, 23}));
}

TEST(SolveStandard, GreenFunctionOfGasket) {
    const RationalFunction R = F("t^2/(4-3t)"), a = F("(2+t)(4-3t)/((4+t)(2-t))");
    const auto sol = solve_fe_standard(R, a, RationalFunction(0), 12, {{0, Rational(1)}});
    const auto& G = sol.value();
    EXPECT_EQ(G[0], Rational(1));
    EXPECT_EQ(G[1], Rational(0));
    EXPECT_EQ(G[2], Rational(1, 4));
    EXPECT_EQ(G[3], Rational(1, 16));
    EXPECT_TRUE(vanishes(residual(R, a, RationalFunction(0), oracle::from(G), 12)));
    EXPECT_EQ(verify_fe(R, a, RationalFunction(0), G), 12);
}

TEST(SolveStandard, ObstructionAndNormalization) {
    const auto sol = solve_fe_standard(F("t^2"), F("1"), F("1"), 6);
    EXPECT_FALSE(sol.series);
    EXPECT_EQ(sol.obstructions, std::vector<int>{0});
    EXPECT_THROW(sol.value(), Obstructed);
    // index 1 is not resonant for t^2
    EXPECT_THROW(solve_fe_standard(F("t^2"), F("1"), F("t"), 6, {{1, Rational(2)}}), std::invalid_argument);
    EXPECT_THROW(solve_fe_standard(F("1+t"), F("1"), F("t"), 6), NotFixingZero);
}

TEST(SolveStandard, HomogeneousUnitEquationHasOnlyConstants) {
    gen::Gen g(41);
    for (int iter = 0; iter < 25; ++iter) {
        RationalFunction R = g.map_fixing_zero(3);
        R = ratfunc_compose(R, F("t^2"));
        const Rational c = g.rational();
        const auto sol = solve_fe_standard(R, F("1"), RationalFunction(0), 10, {{0, c}});
        EXPECT_EQ(sol.free_indices, std::vector<int>{0}) << R.str();
        EXPECT_EQ(sol.value(), Series::constant(c, 10)) << R.str();
    }
}

TEST(SolveStandard, ParabolicShift) {
    // R parabolic with a(0) = 1: equation n fixes y_(n-1)
    const RationalFunction R = F("t/(1+t)"), b = F("t^3");
    const auto sol = solve_fe_standard(R, F("1"), b, 8);
    EXPECT_EQ(sol.shift, 1);
    ASSERT_TRUE(sol.series);
    EXPECT_TRUE(vanishes(residual(R, F("1"), b, oracle::from(sol.value()), sol.value().order())));
}

TEST(SolveStandard, ResidualVanishesOnRandomInputs) {
    gen::Gen g(42);
    int solved = 0;
    for (int iter = 0; iter < 40; ++iter) {
        const RationalFunction R = ratfunc_compose(g.map_fixing_zero(3), F("t^2"));
        RationalFunction a = g.rational_function(2), b = g.rational_function(2);
        if (a.num()[0].is_zero() || a.den()[0].is_zero() || b.den()[0].is_zero()) continue;
        const auto sol = solve_fe_standard(R, a, b, 9);
        if (!sol.series) continue;
        EXPECT_TRUE(vanishes(residual(R, a, b, oracle::from(sol.value()), 9))) << R.str() << " " << a.str();
        ++solved;
    }
    EXPECT_GT(solved, 15);
}

TEST(SolveStandard, LinearInForcing) {
    gen::Gen g(43);
    for (int iter = 0; iter < 20; ++iter) {
        const RationalFunction R = ratfunc_compose(g.map_fixing_zero(2), F("t^2"));
        const RationalFunction a = F("2+t");
        const RationalFunction b1 = g.polynomial(3), b2 = g.polynomial(3);
        const Rational lambda = g.rational();
        const Series y1 = solve_fe_standard(R, a, b1, 8).value(), y2 = solve_fe_standard(R, a, b2, 8).value();
        const Series y = solve_fe_standard(R, a, b1 + b2 * RationalFunction(lambda), 8).value();
        EXPECT_EQ(y, y1 + y2 * lambda);
    }
}

TEST(SolveContractive, AgreesWithStandardForm) {
    gen::Gen g(44);
    for (int iter = 0; iter < 25; ++iter) {
        const RationalFunction R = ratfunc_compose(g.map_fixing_zero(3), F("t^2"));
        RationalFunction c = g.rational_function(2);
        const RationalFunction d = g.polynomial(3);
        if (c.num()[0].is_zero() || c.den()[0].is_zero() || c.num()[0] == c.den()[0]) continue;
        // y = c y(R) + d  <=>  y(R) = y/c - d/c
        const RationalFunction inv = RationalFunction(1) / c;
        const Series ys = solve_fe_standard(R, inv, -(d * inv), 8).value();
        const Series yc = solve_fe_contractive(R, c, d, 8);
        EXPECT_EQ(ys, yc) << R.str() << " " << c.str();
        EXPECT_EQ(verify_fe_contractive(R, expand(c, 8), expand(d, 8), yc), 8);
    }
}

TEST(SolveContractive, Rejections) {
    EXPECT_THROW(solve_fe_contractive(F("t/(1+t)"), F("1"), F("t"), 5), NotContractive);
    // c of positive valuation works even when R is parabolic
    const Series y = solve_fe_contractive(F("t/(1+t)"), F("t"), F("1"), 6);
    EXPECT_EQ(verify_fe_contractive(F("t/(1+t)"), expand(F("t"), 6), expand(F("1"), 6), y), 6);
}

TEST(VerifyFe, DetectsFirstWrongCoefficient) {
    const RationalFunction R = F("t^2+t^3"), a = F("3"), b = F("1+t");
    const Series y = solve_fe_standard(R, a, b, 10).value();
    EXPECT_EQ(verify_fe(R, a, b, y), 10);
    for (int k = 0; k <= 10; ++k) {
        Series bad = y;
        bad[k] += 1;
        EXPECT_EQ(verify_fe(R, a, b, bad), k - 1) << k;
    }
}

TEST(Boettcher, Examples) {
    EXPECT_EQ(boettcher(F("t^2"), 6), Series::variable(6));
    Series two_t(5);
    two_t[1] = 2;
    EXPECT_EQ(boettcher(F("2t^2"), 5), two_t);
    EXPECT_THROW(boettcher(F("2t^3"), 5), GroundFieldExtensionRequired);
    EXPECT_THROW(boettcher(F("t/(1+t)"), 5), std::invalid_argument);
    EXPECT_THROW(boettcher(F("t^2+t^3"), 40, Budget{5, nullptr}), BudgetExceeded);
    std::atomic<bool> stop{true};
    EXPECT_THROW(boettcher(F("t^2+t^3"), 40, Budget{-1, &stop}), BudgetExceeded);
}

TEST(Boettcher, ConjugatesToPower) {
    gen::Gen g(45);
    for (int iter = 0; iter < 20; ++iter) {
        const int d = g.integer(2, 3);
        // leading coefficient a (d-1)-th power so the root is rational
        const Rational u = g.nonzero_rational(3);
        const RationalFunction R = ratfunc_compose(RationalFunction(Polynomial::monomial(pow(u, d - 1), static_cast<std::size_t>(d))),
                            F("t") + F("t^2") * RationalFunction(g.rational()));
        const int n = 9;
        const Series tau = boettcher(R, n);
        EXPECT_EQ(pow(tau[1], d - 1), pow(u, d - 1)); // either root when d is odd
        const auto lhs = oracle::compose(oracle::from(tau), oracle::expand(R, n + d - 1), n + d - 1);
        const auto rhs = oracle::pow(oracle::from(tau), d, n + d - 1);
        EXPECT_EQ(lhs, rhs) << R.str();
    }
}

TEST(JuliaPsi, Examples) {
    const auto p = julia_psi(F("t/(1+t)"), 8);
    Series t2(8);
    t2[2] = 1;
    EXPECT_EQ(p.psi, t2);
    EXPECT_EQ(p.iterate, 1);
    EXPECT_EQ(julia_psi(F("t^2"), 6).psi, Series::variable(6));
    EXPECT_THROW(julia_psi(F("3t+t^2"), 6), UnsupportedMultiplier);
    EXPECT_NO_THROW(julia_psi(F("3t+t^2"), 6, true));
    EXPECT_THROW(julia_psi(F("-t"), 6), UnsupportedMultiplier);
    EXPECT_EQ(julia_psi(F("-t+t^2"), 6).iterate, 2);
}

TEST(JuliaPsi, SatisfiesEquation) {
    for (const char* s : {"t^2+t^3", "t^2/(1-2t^2)", "t/(1+t)", "t+t^3", "t/(1-t^2)", "3t+t^2", "-t+t^2"}) {
        const RationalFunction R = F(s);
        const auto res = julia_psi(R, 10, true);
        const int d = multiplier_data(R).d;
        // psi(R) = R'/d psi on R itself, not only on the iterate
        const auto r = residual(R, R.derivative() / RationalFunction(d), RationalFunction(0), oracle::from(res.psi),
                                res.psi.order());
        EXPECT_TRUE(vanishes(r)) << s;
    }
}

TEST(PolynomialSolution, RecoversPlantedPolynomial) {
    const RationalFunction R = F("t^2+t^3"), a = F("1+t"), g = F("t^2+3");
    const RationalFunction b = ratfunc_compose(g, R) - a * g;
    const auto sol = find_polynomial_solution(R, a, b);
    ASSERT_TRUE(sol);
    EXPECT_EQ(sol->degree, 2);
    EXPECT_EQ(RationalFunction(sol->particular), g);
    EXPECT_TRUE(sol->homogeneous.empty());
}

TEST(PolynomialSolution, PlantedRandom) {
    gen::Gen g(46);
    for (int iter = 0; iter < 20; ++iter) {
        const RationalFunction R = g.map_fixing_zero(3);
        if (R.map_degree() < 2) continue;
        const RationalFunction a = g.rational_function(2);
        const Polynomial y = g.polynomial(4);
        const RationalFunction b = ratfunc_compose(RationalFunction(y), R) - a * RationalFunction(y);
        const auto sol = find_polynomial_solution(R, a, b, 8);
        ASSERT_TRUE(sol) << R.str();
        const RationalFunction p = sol->particular;
        EXPECT_EQ(ratfunc_compose(p, R) - a * p, b);
    }
}

TEST(PolynomialSolution, TreeEquationHasNone) {
    EXPECT_FALSE(find_polynomial_solution(F("t^2+t^3"), F("1"), F("-t"), 20));
}

TEST(MultiplicativeSolution, PowerWitness) {
    const RationalFunction R = F("t^2/(1-2t^2)"), a = F("1-2t^2");
    const auto sol = find_multiplicative_solution(R, a, {Rational(-1, 2), Rational(1, 2), Rational(0)});
    ASSERT_TRUE(sol);
    EXPECT_EQ(sol->N, 2);
    EXPECT_EQ(sol->points, (std::vector<Rational>{Rational(-1, 2), Rational(1, 2)}));
    EXPECT_EQ(sol->exponents, (std::vector<Rational>{Rational(-1, 2), Rational(-1, 2)}));
    EXPECT_TRUE(sol->solves_equation());
    EXPECT_TRUE(verify_multiplicative(R, a, *sol));
    EXPECT_EQ(multiplicative_witness(*sol), F("1/(1-4t^2)"));
    const auto f = multiplicative_series(*sol, 30);
    ASSERT_TRUE(f);
    EXPECT_TRUE(vanishes(residual(R, a, RationalFunction(0), oracle::from(*f), 30)));
    // f = (1-4t^2)^(-1/2): central binomials
    for (int n = 0; n <= 15; ++n) EXPECT_EQ((*f)[2 * n], Rational(oracle::binomial(2 * n, n)));
}

TEST(MultiplicativeSolution, ConstantCoefficient) {
    const auto sol = find_multiplicative_solution(F("t^2+t^3"), F("1"));
    ASSERT_TRUE(sol);
    EXPECT_TRUE(sol->points.empty());
    EXPECT_EQ(sol->scalar, Rational(1));
    EXPECT_EQ(multiplicative_witness(*sol), F("1"));
}

TEST(MultiplicativeSolution, GreenCoefficientHasNone) {
    const RationalFunction R = F("t^2/(4-3t)"), a = F("(2+t)(4-3t)/((4+t)(2-t))");
    EXPECT_FALSE(find_multiplicative_solution(R, a, {}, 4));
}

TEST(MultiplicativeSolution, PlantedProducts) {
    // a = prod s_i^lambda_i with integer lambda is always found
    gen::Gen g(47);
    for (int iter = 0; iter < 15; ++iter) {
        const RationalFunction R = ratfunc_compose(g.map_fixing_zero(2), F("t^2"));
        std::vector<Rational> pts{g.nonzero_rational(3), g.nonzero_rational(3)};
        if (pts[0] == pts[1]) continue;
        RationalFunction a = 1;
        const long e0 = g.integer(1, 2), e1 = -g.integer(1, 2);
        a = pow(s_factor(R, pts[0]), e0) * pow(s_factor(R, pts[1]), e1);
        if (a.is_constant()) continue;
        const auto sol = find_multiplicative_solution(R, a, pts);
        ASSERT_TRUE(sol) << R.str();
        EXPECT_TRUE(verify_multiplicative(R, a, *sol));
    }
}
