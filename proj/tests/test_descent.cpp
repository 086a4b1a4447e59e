// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pentacycle/descent.hpp"

using namespace pentacycle;

namespace {

const ElementTable& table()
{
    static const ElementTable t = load_elements();
    return t;
}

}  // namespace

TEST(Descent, XMinusTImages)
{
    DivClass<Rat> d;
    d.u = qpoly({-2, 1});
    d.mp = 1;
    d.mm = 0;
    EXPECT_EQ(x_minus_T_image(d), LElem(qpoly({2, -1})));
    d.u = qpoly({4, 1});
    EXPECT_EQ(x_minus_T_image(d), LElem(qpoly({-4, -1})));
    EXPECT_EQ(x_minus_T_image(DivClass<Rat>::identity()), LElem(1));
    // degree-2 part: u(T)
    Genus2Curve<Rat> C(l_modulus());
    auto D = from_points(C, CurvePoint<Rat>::affine(Rat(0), Rat(1)), CurvePoint<Rat>::affine(Rat(-3), Rat(1)));
    EXPECT_EQ(x_minus_T_image(D), LElem(qpoly({0, 3, 1})));
}

TEST(Descent, ImageNormsAreSquares)
{
    // N(x_P - T) = f(x_P) = y_P^2, so rational classes have square norms
    Genus2Curve<Rat> C(l_modulus());
    auto D = from_points(C, CurvePoint<Rat>::affine(Rat(0), Rat(1)), CurvePoint<Rat>::inf(-1));
    auto sq = [](const Rat& q) {
        return q > 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
    };
    auto nD = D;
    for (int n = 1; n <= 8; ++n, nD = add(C, nD, D)) {
        Rat N = l_norm(x_minus_T_image(nD));
        EXPECT_TRUE(sq(N)) << n << ": " << describe(nD);
    }
}

TEST(Descent, TwoTorsionCounts)
{
    EXPECT_EQ(two_torsion_count({6}), 1);
    EXPECT_EQ(two_torsion_count({1, 2, 3}), 2);
    EXPECT_EQ(two_torsion_count({1, 1, 2, 2}), 4);
    auto parts = partitions_of_six();
    EXPECT_EQ(parts.size(), 11u);
    for (auto& p : parts) EXPECT_EQ(two_torsion_count(p), two_torsion_brute_force(p));
}

TEST(Descent, DerivedPatterns)
{
    EXPECT_TRUE(pattern_at_two_derived(table().get("alpha")));
    auto p = pattern_at_3701_derived();
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(pattern_at_infinity_derived().size(), 4u);
}

TEST(Descent, LocalQuotients)
{
    auto q2 = local_quotient_sizes(2, {6});
    EXPECT_EQ(q2.j_mod_2j, 4);
    EXPECT_EQ(q2.j_mod_ker, 2);
    auto q3701 = local_quotient_sizes(3701, {1, 2, 3});
    EXPECT_EQ(q3701.j_mod_2j, 2);
    EXPECT_EQ(q3701.j_mod_ker, 2);
    auto qinf = local_quotient_sizes(0, {1, 1, 2, 2});
    EXPECT_EQ(qinf.j_mod_2j, 1);
    EXPECT_EQ(qinf.j_mod_ker, 1);
    for (auto* q : {&q2, &q3701, &qinf}) EXPECT_TRUE(q->halves_consistent);
}

TEST(Descent, PartitionResolvent)
{
    auto r = partition_resolvent(l_modulus());
    EXPECT_EQ(r.h, partition_resolvent_h());
    EXPECT_EQ(r.h[0], 477968);
    EXPECT_EQ(r.h[9], 22);
    // x^6 - 1 style sanity: roots of unity partitions
    auto s = partition_resolvent(qpoly({-1, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(s.h.degree(), 10);
}

TEST(Descent, HBasis)
{
    auto hb = h_group_basis(table());
    EXPECT_EQ(hb.kernel.size(), 2u);
    EXPECT_TRUE(same_span(hb.kernel, {g_vector("u1"), g_vector("u3*beta1*beta2")}));
    EXPECT_EQ(norm_class(l_norm(g_element(table(), g_vector("u3*beta1*beta2")))), norm_class(Rat(1)));
    EXPECT_NE(norm_class(l_norm(table().get("alpha"))), norm_class(Rat(1)));
}

TEST(Descent, HBasisOrderingInvariant)
{
    std::vector<std::string> g{"u1", "u3", "alpha", "beta1", "beta2"};
    auto ref = h_group_basis(table()).kernel;
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(g.begin(), g.end(), rng);
        EXPECT_TRUE(same_span(h_group_basis(table(), g).kernel, ref));
    }
}

TEST(Descent, EliminationsAndRank)
{
    auto r = rank_certificate(table());
    ASSERT_EQ(r.eliminations.size(), 3u);
    for (auto& e : r.eliminations) {
        EXPECT_TRUE(e.eliminated) << g_text(e.h);
        if (g_text(e.h) == "u1") EXPECT_EQ(e.place, "2");
        else EXPECT_EQ(e.place, "3701");
    }
    EXPECT_EQ(r.torsion, 1);
    EXPECT_EQ(r.index_Q, 2);
    EXPECT_EQ(r.rank, 1);
    EXPECT_TRUE(r.ok);
}

TEST(Descent, GoodReductionAtTwo) { EXPECT_TRUE(good_reduction_identity()); }
