// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "pentacycle/endo.hpp"

using namespace pentacycle;

namespace {
const QPoly P = qpoly({25, 5, 9, 1, 1});
const QPoly R = qpoly({49, 14, 4, 2, 1});
const QPoly golden = qpoly({-1, 1, 1});
}  // namespace

TEST(Endo, Irreducibility)
{
    EXPECT_TRUE(quartic_irreducible(P));
    EXPECT_TRUE(quartic_irreducible(R));
    EXPECT_FALSE(quartic_irreducible(qpoly({1, 0, 0, 0, 1}) - qpoly({0, 0, 2})));  // x^4 - 2x^2 + 1
    EXPECT_FALSE(quartic_irreducible(qpoly({2, 0, 3, 0, 1})));                     // (x^2+1)(x^2+2)
    EXPECT_FALSE(quartic_irreducible(qpoly({-1, 0, 0, 0, 1})));
    EXPECT_TRUE(quartic_irreducible(qpoly({1, 0, 0, 0, 1})));
    EXPECT_THROW(quartic_galois(qpoly({2, 0, 3, 0, 1})), std::domain_error);
}

TEST(Endo, GaloisAndSubfields)
{
    auto a = quartic_galois(P);
    EXPECT_EQ(a.group, QuarticGroup::D4);
    EXPECT_EQ(a.quadratic_subfields, (std::vector<Int>{5}));
    auto b = quartic_galois(R);
    EXPECT_EQ(b.group, QuarticGroup::D4);
    ASSERT_EQ(b.quadratic_subfields.size(), 1u);
    EXPECT_NE(b.quadratic_subfields[0], 5);
    auto c = quartic_galois(qpoly({1, 0, 0, 0, 1}));
    EXPECT_EQ(c.group, QuarticGroup::V4);
    EXPECT_EQ(c.quadratic_subfields, (std::vector<Int>{-2, -1, 2}));
}

TEST(Endo, RegressionAgainstSplittingFieldDegree)
{
    const std::vector<QPoly> set = {
        P, R,
        qpoly({1, 0, 0, 0, 1}),     // V4
        qpoly({-2, 0, 0, 0, 1}),    // D4
        qpoly({1, 1, 0, 0, 1}),     // S4
        qpoly({12, 8, 0, 0, 1}),    // A4
        qpoly({5, 0, 5, 0, 1}),     // C4
        qpoly({1, 0, -10, 0, 1}),   // V4
        qpoly({-5, 0, 0, 0, 1}),    // D4
        qpoly({1, -1, 1, -1, 1}),   // C4 (Q(zeta5))
        qpoly({2, 0, 4, 0, 1}),     // C4
        qpoly({-1, -1, 0, 0, 1}),   // S4
        qpoly({3, 0, 0, 0, 1}),     // D4
        qpoly({1, 0, 1, 0, 1}) + qpoly({0, 0, 0, 0, 0}),  // reducible? x^4+x^2+1 = (x^2+x+1)(x^2-x+1)
        qpoly({9, 0, -1, 0, 1}),    // Frobenius at 3
        qpoly({-3, 0, 3, 0, 1}),    // D4
        qpoly({2, 2, 2, 2, 1}) - qpoly({0, 0, 0, 0, 0}),
        qpoly({1, 2, 3, 4, 1}),
        qpoly({7, 0, 0, 1, 1}),
        qpoly({36, 0, 0, 0, 1}) + qpoly({0, 0, 12}),  // x^4 + 12x^2 + 36 = (x^2+6)^2: reducible
        qpoly({9, 0, 3, 0, 1}),
        qpoly({4, 0, -4, 0, 1}) + qpoly({0, 0, 8}),
    };
    int checked = 0;
    for (auto& q : set) {
        if (!is_squarefree(q) || !quartic_irreducible(q)) continue;
        auto a = quartic_galois(q);
        EXPECT_EQ(group_order(a.group), splitting_field_degree(q)) << to_text(q);
        bool has_sub = !a.quadratic_subfields.empty();
        bool expect_sub = a.group == QuarticGroup::C4 || a.group == QuarticGroup::V4 || a.group == QuarticGroup::D4;
        EXPECT_EQ(has_sub, expect_sub) << to_text(q);
        if (a.group == QuarticGroup::V4) EXPECT_EQ(a.quadratic_subfields.size(), 3u);
        if (a.group == QuarticGroup::C4 || a.group == QuarticGroup::D4) EXPECT_EQ(a.quadratic_subfields.size(), 1u);
        ++checked;
    }
    EXPECT_GE(checked, 16);
}

TEST(Endo, PairSums)
{
    auto sp = pair_sum_resolvent(P);
    EXPECT_EQ(sp.degree(), 6);
    EXPECT_TRUE(divides(golden, sp));
    auto sr = pair_sum_resolvent(R);
    EXPECT_FALSE(divides(golden, sr));
    auto s1 = pair_sum_resolvent(qpoly({-1, 0, 0, 0, 1}));
    EXPECT_EQ(s1[0], 0);
    EXPECT_EQ(s1[1], 0);
    for (auto& q : {P, R, qpoly({1, 1, 0, 0, 1})}) {
        auto s = pair_sum_resolvent(q);
        auto pq = power_sums(q, 3), ps = power_sums(s, 3);
        for (int k = 1; k <= 3; ++k) {
            // sum_{i<j} (r_i + r_j)^k = (sum_l C(k,l) p_l p_{k-l} - 2^k p_k) / 2
            Rat acc = 0;
            Int binom = 1;
            for (int l = 0; l <= k; ++l) {
                acc += Rat(binom) * pq[l] * pq[k - l];
                binom = binom * (k - l) / (l + 1);
            }
            acc = (acc - rpow(Rat(2), k) * pq[k]) / 2;
            EXPECT_EQ(ps[k], acc) << k;
        }
    }
}

TEST(Endo, FrobeniusSquareAtThree)
{
    EXPECT_EQ(frobenius_square_charpoly(qpoly({9, 0, -1, 0, 1})), qpoly({81, -18, 19, -2, 1}));
    EXPECT_FALSE(quartic_irreducible(frobenius_square_charpoly(qpoly({9, 0, -1, 0, 1}))));
}

TEST(Endo, Obstruction)
{
    auto o = power_in_subfield_obstruction(quartic_galois(P));
    EXPECT_TRUE(o.holds);
    EXPECT_FALSE(o.transcript.empty());
    EXPECT_EQ(gcd(P, P.compose(qpoly({0, -1}))).degree(), 0);
    EXPECT_FALSE(power_in_subfield_obstruction(quartic_galois(qpoly({1, 0, 0, 0, 1}))).holds);
    EXPECT_EQ((3701 - 5) % 12, 0);
    EXPECT_EQ((3701 - 5) / 12, 308);
}

TEST(Endo, EndIsZ)
{
    auto c = end_is_z_certificate(P, R);
    EXPECT_TRUE(c.absolutely_simple);
    EXPECT_TRUE(c.subfields_differ);
    EXPECT_TRUE(c.end_is_z);
    EXPECT_TRUE(c.nonmodular);
    EXPECT_FALSE(end_is_z_certificate(P, P).end_is_z);
    EXPECT_THROW(end_is_z_certificate(qpoly({1, 0, 0, 0, 1}), R), std::domain_error);
}
