#include <gtest/gtest.h>

#include <random>

#include "pentacycle/exact.hpp"

using namespace pentacycle;

namespace {

QPoly sextic() { return qpoly({1, 6, 5, 22, 22, 8, 1}); }

}  // namespace

TEST(Exact, ParseRational)
{
    EXPECT_EQ(parse_rational("-71/48"), Rat(-71, 48));
    EXPECT_EQ(parse_rational("0.125"), Rat(1, 8));
    EXPECT_EQ(parse_rational("-2.5"), Rat(-5, 2));
    EXPECT_EQ(parse_rational(" 7 "), Rat(7));
    EXPECT_EQ(parse_rational("6/4"), Rat(3, 2));
    EXPECT_THROW(parse_rational("1/0"), std::domain_error);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Exact, PolyTextRoundTrip)
{
    QPoly p = parse_qpoly("32,28,40,9");
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(to_text(p), "32,28,40,9");
    EXPECT_EQ(to_text(parse_qpoly("1/2,0,-3/4,0")), "1/2,0,-3/4");
    EXPECT_EQ(QPoly().degree(), -1);
}

TEST(Exact, GcdExamples)
{
    QPoly a = qpoly({-1, 0, 1}), b = qpoly({-1, 1});
    EXPECT_EQ(gcd(a, b), b);
    EXPECT_EQ(gcd(sextic(), sextic().derivative()), QPoly(Rat(1)));

    Int p = 3701;
    auto fp = reduce_mod(sextic(), p);
    auto g = gcd(fp, fp.derivative());
    ASSERT_EQ(g.degree(), 1);
    EXPECT_EQ(g[0], ModInt(Int(-1727), p));
}

TEST(Exact, ResultantExamples)
{
    EXPECT_EQ(resultant(qpoly({-2, 1}), qpoly({-3, 1})), Rat(-1));
    EXPECT_EQ(discriminant(sextic()), Rat(Int(4096) * 3701));
    // alpha = (T^5+8T^4+22T^3+23T^2+7T+5)/2 has norm 8
    QPoly alpha = parse_qpoly("5/2,7/2,23/2,22/2,8/2,1/2");
    EXPECT_EQ(resultant(sextic(), alpha), Rat(8));
}

TEST(Exact, ResultantOverPolynomialRing)
{
    // Res_z(z - c, z + c) = -2c  as polynomials in c
    QQPoly a{QPoly(qpoly({0, -1})), QPoly(Rat(1))};
    QQPoly b{QPoly(qpoly({0, 1})), QPoly(Rat(1))};
    EXPECT_EQ(resultant(a, b), qpoly({0, 2}));
}

TEST(Exact, SturmCounts)
{
    EXPECT_EQ(sturm_real_root_count(qpoly({1, 0, 1})), 0);
    EXPECT_EQ(sturm_real_root_count(qpoly({-2, 0, 1})), 2);
    EXPECT_EQ(sturm_real_root_count(sextic()), 2);
    EXPECT_THROW(sturm_real_root_count(qpoly({1, 2, 1})), std::domain_error);
}

TEST(Exact, RationalRootsBasic)
{
    auto r = rational_roots(qpoly({-1, 0, 1}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], Rat(-1));
    EXPECT_EQ(r[1], Rat(1));
    EXPECT_TRUE(rational_roots(sextic()).empty());
    // (x - 1/3)^2 (x + 7/2) (x^2 - 2)
    QPoly p = qpoly({-1, 3}).pow(2) * qpoly({7, 2}) * qpoly({-2, 0, 1});
    auto rr = rational_roots(p);
    std::vector<Rat> want{Rat(-7, 2), Rat(1, 3), Rat(1, 3)};
    EXPECT_EQ(rr, want);
    EXPECT_EQ(rational_roots_by_divisors(p), want);
}

TEST(Exact, RationalRootsAgreeWithDivisorOracle)
{
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-30, 30), den(1, 12), deg(0, 3), co(-9, 9);
    for (int trial = 0; trial < 150; ++trial) {
        QPoly p(Rat(1));
        int nroots = 1 + trial % 4;
        for (int i = 0; i < nroots; ++i) p = p * QPoly{Rat(-num(rng)), Rat(den(rng))};
        int extra = deg(rng);
        std::vector<Rat> q;
        for (int i = 0; i <= extra; ++i) q.emplace_back(co(rng));
        q.back() = 1 + std::abs(co(rng));
        p = p * QPoly(q);
        auto a = rational_roots(p), b = rational_roots_by_divisors(p);
        EXPECT_EQ(a, b) << to_text(p);
        for (auto& r : a) EXPECT_TRUE(is_zero(p.eval(r)));
    }
}

TEST(Exact, ResultantVanishesIffCommonFactor)
{
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> co(-6, 6);
    auto rnd = [&](int d) {
        std::vector<Rat> v;
        for (int i = 0; i < d; ++i) v.emplace_back(co(rng));
        v.emplace_back(1 + std::abs(co(rng)));
        return QPoly(v);
    };
    for (int t = 0; t < 60; ++t) {
        QPoly a = rnd(1 + t % 4), b = rnd(1 + (t / 4) % 4);
        bool planted = t % 2 == 0;
        if (planted) {
            QPoly c = rnd(1 + t % 2);
            a = a * c;
            b = b * c;
        }
        bool res_zero = is_zero(resultant(a, b));
        bool common = gcd(a, b).degree() >= 1;
        EXPECT_EQ(res_zero, common);
        if (planted) EXPECT_TRUE(res_zero);
    }
}

TEST(Exact, DdfPattern)
{
    auto q = reduce_mod(qpoly({1, 3, -3, -4, 1, 1}), Int(23));  // splits completely mod 23
    EXPECT_EQ(ddf_pattern(q), (std::vector<int>{1, 1, 1, 1, 1}));
    auto q2 = reduce_mod(qpoly({1, 3, -3, -4, 1, 1}), Int(2));
    EXPECT_EQ(ddf_pattern(q2), (std::vector<int>{5}));
}

TEST(Exact, BiPolyBasics)
{
    BiPoly F = BiPoly::X() * BiPoly::X() - BiPoly::X() + BiPoly::Y();  // z^2 - z + c
    EXPECT_EQ(F.eval(Rat(2), Rat(-2)), Rat(0));
    BiPoly G = F.substitute(BiPoly::X() + BiPoly(Rat(1)), BiPoly::Y());
    EXPECT_EQ(G.eval(Rat(1), Rat(-2)), Rat(0));
    EXPECT_EQ(F.dx().coeff(1, 0), Rat(2));
    EXPECT_EQ(F.at_y(Rat(0)), qpoly({0, -1, 1}));
}

TEST(Exact, QuadExtArithmetic)
{
    using Q2 = QuadExt<Rat>;
    Q2 s(Rat(0), Rat(1), Rat(33));  // sqrt(33)
    Q2 x = Q2(Rat(-2)) + s * Q2(Rat(1, 3));
    Q2 sum = x + x.conj(), prod = x * x.conj();
    EXPECT_TRUE(sum.in_base());
    EXPECT_EQ(sum.re(), Rat(-4));
    EXPECT_EQ(prod.re(), Rat(1, 3));
    EXPECT_EQ((x / x).re(), Rat(1));
}
