// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "pentacycle/localnum.hpp"

using namespace pentacycle;

namespace {
const QPoly f = qpoly({1, 6, 5, 22, 22, 8, 1});
const QPoly h = qpoly({477968, 565728, 244664, 89560, 38705, 8976, 2186, 654, 53, 22, 1});
}  // namespace

TEST(Localnum, Legendre)
{
    EXPECT_EQ(legendre(Int(185), Int(3701)), 1);
    EXPECT_EQ(legendre(Int(-1375), Int(3701)), 1);
    EXPECT_EQ(legendre(Int(-1731), Int(3701)), -1);
    EXPECT_EQ(legendre(Int(2), Int(3701)), -1);
    EXPECT_EQ(legendre(Int(3701), Int(3701)), 0);
}

TEST(Localnum, HenselSqrt)
{
    auto b = hensel_sqrt(PadicNum::from_int(881, 2, 10));
    Int r = b.residue();
    EXPECT_EQ((r * r - 881) % 1024, 0);
    EXPECT_NO_THROW(hensel_sqrt(PadicNum::from_int(185, 3701, 3)));
    EXPECT_THROW(hensel_sqrt(PadicNum::from_int(2, 3701, 3)), std::domain_error);
    EXPECT_THROW(hensel_sqrt(PadicNum::from_int(3, 2, 10)), std::domain_error);
    EXPECT_THROW(hensel_sqrt(PadicNum::from_int(3701, 3701, 4)), std::domain_error);
}

TEST(Localnum, HenselSqrtRandomSquares)
{
    std::mt19937_64 rng(7);
    for (long p : {2L, 3L, 3701L}) {
        const long k = 8;
        for (int i = 0; i < 100; ++i) {
            Int x = Int(static_cast<unsigned long>(rng() % 1000000)) * 2 + 1;
            if (p != 2 && x % p == 0) x += 2;
            if (p == 3 && x % 3 == 0) x += 2;
            Int a = x * x;
            auto b = hensel_sqrt(PadicNum::from_int(a, Int(p), k));
            Int m = ipow(Int(p), k);
            Int rb = b.residue();
            EXPECT_EQ(Int((rb * rb - a) % m), 0) << p;
        }
    }
}

TEST(Localnum, PadicArithmetic)
{
    auto a = PadicNum::from_rat(Rat(-9, 14), 3, 4);
    EXPECT_EQ(a.valuation(), 2);
    EXPECT_EQ(a.residue(), Int(63));  // -9/14 = 63 mod 81
    auto b = PadicNum::from_rat(Rat(426, 49), 3, 4);
    EXPECT_EQ(b.residue(), Int(12));
    auto z = a - a;
    EXPECT_TRUE(z.is_tracked_zero());
    EXPECT_EQ((a * b).precision(), 5);
}

TEST(Localnum, ZpRootCounts)
{
    EXPECT_EQ(zp_integer_root_count(f, 2), 0);
    EXPECT_EQ(zp_integer_root_count(h, 2), 0);
    EXPECT_EQ(zp_integer_root_count(f, 3701), 1);
    EXPECT_EQ(zp_integer_root_count(h, 3701), 1);
    EXPECT_EQ(zp_integer_root_count(qpoly({-2, 0, 1}), 7), 2);   // 3^2 = 2 mod 7
    EXPECT_EQ(zp_integer_root_count(qpoly({-2, 0, 1}), 5), 0);
    EXPECT_EQ(zp_integer_root_count(qpoly({-17, 0, 1}), 2), 2);  // 17 = 1 mod 8
}

TEST(Localnum, ZpRootCountsAgreeWithBruteForce)
{
    std::mt19937_64 rng(11);
    for (long p : {2L, 3L, 5L}) {
        const long k = 6;
        long m = 1;
        for (int i = 0; i < k; ++i) m *= p;
        for (int trial = 0; trial < 30; ++trial) {
            long r1 = static_cast<long>(rng() % 50) - 25, r2 = r1 + p * p * static_cast<long>(rng() % 5 + 1);
            long c = static_cast<long>(rng() % 40) + 2;
            // (x - r1)(x - r2)(x^2 + c): two planted roots; the quadratic may add more
            QPoly a = qpoly({-r1, 1}) * qpoly({-r2, 1}) * qpoly({c, 0, 1});
            if (!is_squarefree(a)) continue;
            long got = zp_integer_root_count(a, p);
            // brute force: roots mod p^k that lift (simple roots of the reduction chain)
            long planted = 2, extra = zp_integer_root_count(qpoly({c, 0, 1}), p);
            EXPECT_EQ(got, planted + extra);
            // residues mod p^k where a vanishes to order k form clusters around each root
            long hits = 0;
            auto ai = a;
            for (long x = 0; x < m; ++x)
            {
                Rat v = ai.eval(Rat(x));
                if (v == 0 || vp(v, Int(p)) >= k) ++hits;
            }
            EXPECT_GE(hits, got);
        }
    }
}

TEST(Localnum, HenselLift)
{
    Int p = 3701;
    auto fp = reduce_mod(f, p);
    Poly<ModInt> g0 = reduce_mod(qpoly({-1371, 1}), p);
    auto [q, r] = divmod(fp, g0);
    ASSERT_TRUE(is_zero(r));
    auto lift = hensel_lift(f, g0, q, p, 6);
    Int m = ipow(p, 6);
    EXPECT_EQ(lift.g * lift.h, reduce_mod(f, m));
}

TEST(Localnum, Strassman)
{
    PadicSeriesTrunc t1{3, 4, {0, 27, 0, 0, 0}, 5, 4};
    auto r1 = strassman_bound(t1);
    EXPECT_TRUE(r1.determinate);
    EXPECT_EQ(r1.r, 1);
    PadicSeriesTrunc t2{3, 3, {9, 0, 18, 0, 0}, 5, 3};
    auto r2 = strassman_bound(t2);
    EXPECT_TRUE(r2.determinate);
    EXPECT_EQ(r2.r, 2);
    PadicSeriesTrunc t3{3, 20, {3, 1}, 2, LONG_MAX};
    EXPECT_EQ(strassman_bound(t3).r, 1);
    PadicSeriesTrunc bad{3, 2, {0, 0, 9}, 3, 1};
    EXPECT_FALSE(strassman_bound(bad).determinate);
}

TEST(Localnum, StrassmanMonotone)
{
    // the theta_2 residues: mod 27 -> r = 2; mod 81 (more precision) -> r = 2 as well, never more
    PadicSeriesTrunc lo{3, 3, {9, 0, 18, 0, 0}, 5, 3};
    PadicSeriesTrunc hi{3, 4, {36, 27, 18, 54, 27}, 5, 4};
    EXPECT_LE(strassman_bound(hi).r, strassman_bound(lo).r);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        std::vector<Int> c;
        for (int j = 0; j < 5; ++j) c.push_back(Int(static_cast<unsigned long>(rng() % 243)));
        PadicSeriesTrunc fine{3, 5, c, 5, 5};
        std::vector<Int> cc;
        for (auto& x : c) cc.push_back(x % 81);
        PadicSeriesTrunc coarse{3, 4, cc, 5, 4};
        auto a = strassman_bound(coarse), b = strassman_bound(fine);
        if (a.determinate && b.determinate) EXPECT_LE(b.r, a.r);
    }
}
