#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pi1/multipoly.hpp"
#include "pi1/rational.hpp"
#include "pi1/sampling.hpp"
#include "pi1/series.hpp"

using namespace pi1;

TEST_CASE("rational: canonical form and text round trip") {
    CHECK(Rational(6, 8) == Rational(3, 4));
    CHECK(Rational(-6, -8) == Rational(3, 4));
    CHECK(Rational(6, -8).str() == "-3/4");
    CHECK(Rational("22/7").str() == "22/7");
    CHECK(Rational("-5").str() == "-5");
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1) / Rational(0));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(-1, 2).pow(3) == Rational(-1, 8));

    SplitMix64 rng(20260817);
    for (int i = 0; i < 200; ++i) {
        Rational r = sample_rational(rng) * sample_rational(rng) + sample_rational(rng);
        CHECK(Rational(r.str()) == r);
    }
}

TEST_CASE("rational: generalized binomial via falling factorials") {
    // C(k, j) for integer k < 0 drives the symbol calculus of inverse powers.
    CHECK(binomial_falling(-1, 0) == Rational(1));
    CHECK(binomial_falling(-1, 1) == Rational(-1));
    CHECK(binomial_falling(-1, 2) == Rational(1));
    CHECK(binomial_falling(-1, 3) == Rational(-1));
    CHECK(binomial_falling(-2, 2) == Rational(3));
    CHECK(binomial_falling(5, 2) == Rational(10));
    CHECK(binomial_falling(Rational(1, 2), 2) == Rational(-1, 8));
    CHECK(binomial_falling(Rational(1, 2), 3) == Rational(1, 16));
}

TEST_CASE("atoms: names and ordering") {
    CHECK(atom_name(u_jet(0)) == "u");
    CHECK(atom_name(u_jet(1)) == "u_x");
    CHECK(atom_name(u_jet(3)) == "u_xxx");
    CHECK(atom_name(u_jet(6)) == "u^(6)");
    CHECK(atom_name(s_time(0)) == "x");
    CHECK(atom_name(s_time(1)) == "s3");
    CHECK(atom_name(i_time(3)) == "t3");
    CHECK(atom_name(oper_q(2)) == "q2");
    CHECK(atom_name(sym_p(1)) == "P1");
    CHECK(atom_name(moduli('b', 0)) == "b0");
    CHECK(u_jet(0) < u_jet(1));
    CHECK(u_jet(5) < s_time(0));
    CHECK_THROWS(i_time(2));
    CHECK_THROWS(moduli('d', 0));
}

TEST_CASE("multipoly: arithmetic, derivative, substitution") {
    MultiPoly u{u_jet(0)}, x{s_time(0)};
    MultiPoly p = (u + x) * (u + x);
    CHECK(p == u * u + Rational(2) * u * x + x * x);
    CHECK(p.term_count() == 3);
    CHECK(p.derivative(u_jet(0)) == Rational(2) * u + Rational(2) * x);
    CHECK(p.subst(u_jet(0), MultiPoly(0) - x).is_zero());
    CHECK((u * u - x).total_degree() == 2);
    CHECK(p.degree_in(u_jet(0)) == 2);

    auto parts = (u * u * x + u + Rational(3) * x).collect(u_jet(0));
    CHECK(parts[2] == x);
    CHECK(parts[1] == MultiPoly(1));
    CHECK(parts[0] == Rational(3) * x);

    std::map<Atom, Rational> at{{u_jet(0), Rational(2)}, {s_time(0), Rational(-1, 2)}};
    CHECK(p.eval_partial(at).constant_value() == Rational(9, 4));

    CHECK(p.str() == "u^2 + 2*u*x + x^2");
    MultiPoly q = Rational(3, 8) * u * u - Rational(1, 4) * x;
    CHECK(q.latex() == "\\frac{3}{8}u^{2}-\\frac{1}{4}x");
}

TEST_CASE("multipoly: ring purity is enforced") {
    MultiPoly u{u_jet(0)}, q1{oper_q(1)}, b0{moduli('b', 0)}, t1{i_time(1)};
    CHECK_THROWS_AS(u * q1, std::logic_error);
    CHECK_THROWS_AS(u + b0, std::logic_error);
    CHECK_THROWS_AS(q1 * b0, std::logic_error);
    CHECK_NOTHROW(q1 * t1);               // deformation ring is one ring
    CHECK_NOTHROW(u * MultiPoly(Rational(5)));
    // substitution moves a polynomial into another ring wholesale
    MultiPoly moved = (u * u).subst(u_jet(0), q1);
    CHECK(moved == q1 * q1);
}

TEST_CASE("series: geometric reciprocal") {
    LambdaSeries one = LambdaSeries::constant(MultiPoly(1));
    LambdaSeries b = one - LambdaSeries::monomial2(-2, MultiPoly(1));
    LambdaSeries inv = b.inverse(-6);
    for (int e = 0; e >= -6; e -= 2) CHECK(inv.coeff2(e) == MultiPoly(1));
    CHECK(inv.coeff2(-1).is_zero());
    CHECK_THROWS_AS(inv.coeff2(-8), std::domain_error);
}

TEST_CASE("series: sqrt of lambda^3 + x lambda") {
    MultiPoly x{s_time(0)};
    LambdaSeries a =
        LambdaSeries::monomial2(6, MultiPoly(1)) + LambdaSeries::monomial2(2, x);
    LambdaSeries xi = a.sqrt(-9);
    CHECK(xi.half_step());
    CHECK(xi.coeff2(3) == MultiPoly(1));
    CHECK(xi.coeff2(-1) == Rational(1, 2) * x);
    CHECK(xi.coeff2(-5) == Rational(-1, 8) * x * x);
    CHECK(xi.coeff2(-9) == Rational(1, 16) * x * x * x);
    CHECK(xi.coeff2(1).is_zero());
    LambdaSeries sq = xi * xi;
    CHECK(LambdaSeries::equal_to_depth(sq, a, sq.low2()));
}

TEST_CASE("series: residue and projection conventions") {
    MultiPoly u{u_jet(0)};
    LambdaSeries s = LambdaSeries::monomial2(2, MultiPoly(3)) +
                     LambdaSeries::monomial2(-2, u) + LambdaSeries::monomial2(-4, MultiPoly(7));
    CHECK(s.residue_infty() == -u);  // residue at infinity = minus the lambda^{-1} coefficient
    LambdaSeries plus = s.proj_nonneg();
    CHECK(plus.exact());
    CHECK(plus.coeff2(2) == MultiPoly(3));
    CHECK(!plus.coeff2(-2).is_zero() == false);

    LambdaSeries shallow = s.truncated2(-1);
    CHECK_THROWS_AS(shallow.residue_infty(), std::domain_error);
    CHECK_THROWS_AS(shallow.truncated2(-4), std::logic_error);
}

TEST_CASE("series: derivative in lambda and polynomial division") {
    MultiPoly x{s_time(0)};
    LambdaSeries p = LambdaSeries::monomial2(4, MultiPoly(1)) -
                     LambdaSeries::monomial2(2, MultiPoly(3)) +
                     LambdaSeries::monomial2(0, MultiPoly(2));
    LambdaSeries dp = p.d_lambda();
    CHECK(dp.coeff2(2) == MultiPoly(2));
    CHECK(dp.coeff2(0) == MultiPoly(-3));

    LambdaSeries divisor = LambdaSeries::monomial2(2, MultiPoly(1)) -
                           LambdaSeries::monomial2(0, MultiPoly(1));
    auto [q, r] = LambdaSeries::divmod(p, divisor);
    CHECK(r.is_zero_trusted());
    CHECK(q.coeff2(2) == MultiPoly(1));
    CHECK(q.coeff2(0) == MultiPoly(-2));
    CHECK(p.eval_at(Rational(5)).constant_value() == Rational(25 - 15 + 2));
    CHECK(p.eval_at(x) == x * x - Rational(3) * x + Rational(2));

    LambdaSeries half = LambdaSeries::monomial2(3, MultiPoly(1));
    CHECK_THROWS_AS(LambdaSeries::divmod(p, half), std::domain_error);
}

TEST_CASE("series: multiplication watermark propagation") {
    MultiPoly u{u_jet(0)};
    LambdaSeries a = (LambdaSeries::monomial2(4, MultiPoly(1)) + LambdaSeries::monomial2(-2, u))
                         .truncated2(-2);
    LambdaSeries b = (LambdaSeries::monomial2(2, MultiPoly(1)) + LambdaSeries::monomial2(-4, u))
                         .truncated2(-4);
    LambdaSeries ab = a * b;
    // max(a.low + b.top, b.low + a.top) = max(-2+2, -4+4) = 0
    CHECK(ab.low2() == 0);
    CHECK(ab.coeff2(6) == MultiPoly(1));
    CHECK(ab.coeff2(0) == u + u);
    CHECK_THROWS_AS(ab.coeff2(-2), std::domain_error);
}

TEST_CASE("series: seeded algebra properties") {
    SplitMix64 rng(42);
    std::vector<Atom> atoms{u_jet(0), u_jet(1), s_time(0)};

    for (int trial = 0; trial < 200; ++trial) {
        LambdaSeries a = sample_series(rng, atoms, 4, -4);
        LambdaSeries b = sample_series(rng, atoms, 2, -4);
        LambdaSeries c = sample_series(rng, atoms, 2, -2);
        LambdaSeries lhs = (a * b) * c, rhs = a * (b * c);
        int d = std::max(lhs.low2(), rhs.low2());
        CHECK(LambdaSeries::equal_to_depth(lhs, rhs, d));
        CHECK(LambdaSeries::equal_to_depth(a * b, b * a, (a * b).low2()));
        CHECK(LambdaSeries::equal_to_depth(a * (b + c), a * b + a * c,
                                           std::max((a * (b + c)).low2(), (a * b + a * c).low2())));
    }

    // sqrt is a section of squaring for monic inputs, both exponent parities
    for (int trial = 0; trial < 50; ++trial) {
        for (int top2 : {8, 6}) {
            LambdaSeries a = LambdaSeries::monomial2(top2, MultiPoly(1));
            for (int e = top2 - 2; e >= -4; e -= 2)
                if (rng.below(2)) a += LambdaSeries::monomial2(e, sample_poly(rng, atoms, 2, 2));
            LambdaSeries root = a.sqrt(-12);
            LambdaSeries sq = root * root;
            CHECK(LambdaSeries::equal_to_depth(sq, a, sq.low2()));
        }
    }

    // (a/b)*b returns a on the trusted region
    for (int trial = 0; trial < 50; ++trial) {
        LambdaSeries a = sample_series(rng, atoms, 4, -6);
        LambdaSeries b = LambdaSeries::monomial2(2, MultiPoly(1));
        for (int e = 1; e >= -6; --e)
            if (rng.below(2)) b += LambdaSeries::monomial2(e, sample_poly(rng, atoms, 2, 2));
        LambdaSeries q = LambdaSeries::div(a, b, -6);
        LambdaSeries back = q * b;
        CHECK(LambdaSeries::equal_to_depth(back, a, back.low2()));
    }
}

TEST_CASE("series: printing is deterministic and ordered") {
    MultiPoly u{u_jet(0)};
    LambdaSeries s = LambdaSeries::monomial2(3, MultiPoly(1)) +
                     LambdaSeries::monomial2(-1, Rational(1, 2) * u);
    CHECK(s.str() == "l^3/2 + 1/2*u*l^-1/2");
    CHECK(s.latex() == "\\lambda^{\\frac{3}{2}}+\\frac{1}{2}u\\lambda^{-\\frac{1}{2}}");
}
