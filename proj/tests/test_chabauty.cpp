// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "pentacycle/chabauty.hpp"

using namespace pentacycle;

namespace {

const QPoly f = qpoly({1, 6, 5, 22, 22, 8, 1});
const CurveCoeffs fc = curve_coeffs(f);

const Json& chab()
{
    static const Json j = load_fixture("chabauty.json");
    return j;
}

DivClass<Rat> D() { return infinity_class<Rat>(1); }

LocalParams sD() { return local_params(fc, Rat(0), Rat(-1), Rat(-3), Rat(1)); }

Rat rand_v1(std::mt19937_64& rng)
{
    long n = static_cast<long>(rng() % 200) - 100;
    long d = static_cast<long>(rng() % 20) * 3 + 1;
    return make_rat(Int(3 * n), Int(d));
}

}  // namespace

TEST(Chabauty, LocalParamsOfDPrime)
{
    EXPECT_EQ(sD().s1, Rat(-9, 14));
    EXPECT_EQ(sD().s2, Rat(426, 49));
    auto z = local_params(fc, Rat(2), Rat(5), Rat(2), Rat(-5));
    EXPECT_EQ(z.s1, 0);
    EXPECT_EQ(z.s2, 0);
    Genus2Curve<Rat> C(f);
    auto Dp = scalar_mul(C, 9, D());
    auto viaClass = local_params(fc, Dp);
    EXPECT_EQ(viaClass, sD());
}

TEST(Chabauty, DoublingMatchesFormalAdd)
{
    Genus2Curve<Rat> C(f);
    auto Dp = scalar_mul(C, 9, D());
    auto two = local_params(fc, add(C, Dp, Dp));
    EXPECT_TRUE(congruent81(two, formal_add(fc, sD(), sD())));
}

TEST(Chabauty, LogAndExp)
{
    auto l = formal_log(fc, sD());
    EXPECT_EQ(mod81(l.s1), 36);
    EXPECT_EQ(mod81(l.s2), 3);
    EXPECT_TRUE(congruent81(formal_exp(fc, l), sD()));
    EXPECT_GE(exp_log_tail_bound(1), 4);
    EXPECT_THROW(formal_log(fc, LocalParams{Rat(1), Rat(3)}), std::domain_error);
}

TEST(Chabauty, FormalGroupAxioms)
{
    std::mt19937_64 rng(20261018);
    LocalParams zero{Rat(0), Rat(0)};
    for (int i = 0; i < 120; ++i) {
        LocalParams s{rand_v1(rng), rand_v1(rng)}, t{rand_v1(rng), rand_v1(rng)};
        EXPECT_EQ(formal_add(fc, s, zero), s);
        EXPECT_TRUE(congruent81(formal_add(fc, s, LocalParams{Rat(-s.s1), Rat(-s.s2)}), zero));
        EXPECT_TRUE(congruent81(formal_add(fc, s, t), formal_add(fc, t, s)));
        auto lhs = formal_log(fc, formal_add(fc, s, t));
        auto ls = formal_log(fc, s), lt = formal_log(fc, t);
        EXPECT_TRUE(congruent81(lhs, LocalParams{Rat(ls.s1 + lt.s1), Rat(ls.s2 + lt.s2)}));
        EXPECT_TRUE(congruent81(formal_exp(fc, formal_log(fc, s)), s));
    }
}

TEST(Chabauty, TSeries)
{
    auto t = t_series_exact(fc, sD());
    EXPECT_EQ(mod81(t.t1, 4), (std::vector<Int>{0, 36, 0, 27}));
    EXPECT_EQ(mod81(t.t2, 4), (std::vector<Int>{0, 3, 0, 9}));
    EXPECT_EQ(mod81(t.t1.eval(Rat(1))), mod81(Rat(-9, 14)));
    EXPECT_EQ(mod81(t.t2.eval(Rat(1))), mod81(Rat(426, 49)));
    // M_3 membership for every n: t1 = 0 mod 9, t2 = 0 mod 3 coefficientwise
    for (auto& c : mod81(t.t1)) EXPECT_EQ(c % 9, 0);
    for (auto& c : mod81(t.t2)) EXPECT_EQ(c % 3, 0);
}

TEST(Chabauty, Thetas)
{
    auto t = t_series_exact(fc, sD());
    auto th1 = theta_series(load_k_series(chab(), "D1"), t);
    auto th2 = theta_series(load_k_series(chab(), "D2"), t);
    EXPECT_TRUE(th1.high_terms_vanish);
    EXPECT_TRUE(th2.high_terms_vanish);
    EXPECT_EQ(th1.residues, (std::vector<Int>{0, 27, 0, 0, 0}));
    EXPECT_EQ(th2.residues, (std::vector<Int>{36, 27, 18, 54, 27}));
    auto ev = [&](long n) {
        Int acc = 0, p = 1;
        for (auto& c : th2.residues) {
            acc += c * p;
            p *= n;
        }
        return Int(((acc % 81) + 81) % 81);
    };
    EXPECT_EQ(ev(1), 0);
    EXPECT_EQ(ev(-1), 0);
    for (long n = -40; n <= 40; ++n)
        if (n % 3 != 0 && ev(n) == 0) EXPECT_TRUE((n - 1) % 3 == 0 || (n + 1) % 3 == 0);
    auto r1 = strassman_bound(th1.series);
    EXPECT_TRUE(r1.determinate);
    EXPECT_EQ(r1.r, 1);
    auto r2 = strassman_bound(reduce_to_27(th2.series));
    EXPECT_TRUE(r2.determinate);
    EXPECT_EQ(r2.r, 2);
    EXPECT_EQ(reduce_to_27(th2.series).coeffs, (std::vector<Int>{9, 0, 18, 0, 0}));
}

TEST(Chabauty, KSeriesSpotCheck)
{
    Genus2Curve<Rat> C(f);
    auto t = t_series_exact(fc, sD());
    auto Dp = scalar_mul(C, 9, D());
    for (auto [name, base] : {std::pair<std::string, DivClass<Rat>>{"D1", D()}, {"D2", scalar_mul(C, 2, D())}}) {
        auto k = load_k_series(chab(), name);
        for (long n : {1L, -1L, 2L}) {
            auto sc = k_series_spot_check(C, base, Dp, k, t, n);
            EXPECT_TRUE(sc.matches) << name << " n=" << n << " " << sc.divisor;
        }
    }
}

TEST(Chabauty, ResidueClasses)
{
    auto C3 = reduce_curve(f, 3);
    DivClass<ModInt> D3 = infinity_class<ModInt>(1);
    EXPECT_EQ(residue_classes_of_l(C3, D3), (std::vector<long>{1, 2, 7, 8}));
}
