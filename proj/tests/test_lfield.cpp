// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "pentacycle/lfield.hpp"

using namespace pentacycle;

namespace {

const ElementTable& table()
{
    static const ElementTable t = load_elements();
    return t;
}

LElem random_elem(std::mt19937_64& rng)
{
    std::vector<Rat> c;
    for (int i = 0; i < 6; ++i) c.push_back(make_rat(Int(static_cast<long>(rng() % 41) - 20), Int(static_cast<long>(rng() % 3) + 1)));
    return LElem::from_coords(c);
}

}  // namespace

TEST(LField, ModulusIrreducible)
{
    EXPECT_TRUE(irreducible_by_patterns(l_modulus()));
    EXPECT_FALSE(irreducible_by_patterns(qpoly({-1, 0, 0, 0, 1})));
}

TEST(LField, TabulatedNorms)
{
    for (auto& e : table().elements) EXPECT_EQ(e.norm, e.claimed_norm) << e.name;
    EXPECT_EQ(l_norm(table().get("alpha")), 8);
    EXPECT_EQ(l_norm(table().get("u3")), -1);
    EXPECT_EQ(l_norm(table().get("beta3")), Rat(ipow(Int(3701), 3)));
    EXPECT_THROW(l_norm(LElem()), std::domain_error);
}

TEST(LField, NormMultiplicative)
{
    std::mt19937_64 rng(20261018);
    for (int i = 0; i < 100; ++i) {
        LElem a = random_elem(rng), b = random_elem(rng);
        if (a.zero() || b.zero()) continue;
        EXPECT_EQ(l_norm(a * b), l_norm(a) * l_norm(b));
        Rat q = make_rat(Int(static_cast<long>(rng() % 9) + 1), Int(static_cast<long>(rng() % 5) + 1));
        EXPECT_EQ(l_norm(LElem::scalar(q) * a), rpow(q, 6) * l_norm(a));
    }
}

TEST(LField, InverseAndIdentities)
{
    LElem u1 = table().get("u1");
    EXPECT_EQ(u1 * u1.inverse(), LElem(1));
    auto ids = verify_element_factorizations(table());
    ASSERT_EQ(ids.size(), 2u);
    for (auto& c : ids) EXPECT_TRUE(c.ok()) << to_string(c.value);
}

TEST(LField, TwoMaximalOrder)
{
    const auto& o = the_two_maximal_order();
    EXPECT_TRUE(o.maximal);
    EXPECT_EQ(o.v2_disc_f, 12);
    EXPECT_LT(o.v2_disc_order, o.v2_disc_f);
    EXPECT_EQ(factor_small(o.index).size(), 1u);
    EXPECT_EQ(factor_small(o.index)[0].first, 2);
    for (auto& e : table().elements) EXPECT_TRUE(o.contains(e.value)) << e.name;
    EXPECT_FALSE(o.contains(LElem::scalar(Rat(1, 2))));
    EXPECT_TRUE(two_adic_shape_ok());
    EXPECT_EQ(two_adic_valuation(table().get("alpha")), 1);
}

TEST(LField, Completion3701)
{
    const auto& c = completion_3701();
    EXPECT_TRUE(c.residue_cubic_irreducible);
    EXPECT_EQ(c.root % 3701, 1371);
    auto q1 = reduce_mod(lift_mod(c.quad), Int(3701));
    auto lin = reduce_mod(qpoly({-1727, 1}), Int(3701));
    EXPECT_EQ(q1, lin * lin);
}

TEST(LField, LocalValuations3701)
{
    LElem m4 = LElem(qpoly({-4, -1}));
    auto q = local_valuation(m4, LPlace::Q3701);
    EXPECT_EQ(q.v, 0);
    EXPECT_EQ(*q.residue, 3701 - 1375);
    auto e = local_valuation(m4, LPlace::E);
    EXPECT_EQ(e.v, 0);
    EXPECT_EQ(*e.residue, 3701 - 1731);
    EXPECT_EQ(local_valuation(table().get("beta2"), LPlace::E).v, 1);
    // valuations of 3701 itself: 1 / 2 / 1
    LElem p = LElem::scalar(Rat(3701));
    EXPECT_EQ(local_valuation(p, LPlace::Q3701).v, 1);
    EXPECT_EQ(local_valuation(p, LPlace::E).v, 2);
    EXPECT_EQ(local_valuation(p, LPlace::F).v, 1);
    // denominators divisible by 3701 are handled
    LElem s = m4 * LElem::scalar(Rat(1, 3701));
    EXPECT_EQ(local_valuation(s, LPlace::E).v, -2);
    // p / pi^2 = -1/b' on residues, b' = qb / p
    ModInt bp(Int(completion_3701().qb / 3701), Int(3701));
    ModInt r0(*local_valuation(m4, LPlace::E).residue, Int(3701));
    EXPECT_EQ(ModInt(*local_valuation(s, LPlace::E).residue, Int(3701)), r0 * (-bp));
    EXPECT_EQ(ModInt(*local_valuation(m4 * LElem::scalar(Rat(3701)), LPlace::E).residue, Int(3701)), r0 / (-bp));
}

TEST(LField, ValuationsAddUp)
{
    // sum over places of e*f*v equals v_3701(norm)
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        LElem a = random_elem(rng);
        if (a.zero()) continue;
        long vq = local_valuation(a, LPlace::Q3701).v, ve = local_valuation(a, LPlace::E).v, vf = local_valuation(a, LPlace::F).v;
        EXPECT_EQ(vq + ve + 3 * vf, vp(l_norm(a), Int(3701)));
    }
    for (auto& e : table().elements) {
        long vq = local_valuation(e.value, LPlace::Q3701).v, ve = local_valuation(e.value, LPlace::E).v,
             vf = local_valuation(e.value, LPlace::F).v;
        EXPECT_EQ(vq + ve + 3 * vf, vp(e.norm, Int(3701))) << e.name;
    }
}

TEST(LField, SquareClasses)
{
    const LElem alpha = table().get("alpha");
    LElem two_minus_T(qpoly({2, -1}));
    LElem m4(qpoly({-4, -1}));
    EXPECT_FALSE(local_square_class_test(two_minus_T, 2, alpha).trivial);
    auto r = local_square_class_test(m4, 3701, alpha);
    EXPECT_FALSE(r.trivial);
    // the Q_3701 part alone is a square
    EXPECT_EQ(legendre(*local_valuation(m4, LPlace::Q3701).residue, Int(3701)), 1);
    // squares act trivially
    LElem u1 = table().get("u1");
    EXPECT_EQ(local_square_class_test(u1 * m4 * m4, 3701, alpha).trivial, local_square_class_test(u1, 3701, alpha).trivial);
    EXPECT_TRUE(local_square_class_test(m4 * m4, 3701, alpha).trivial);
    EXPECT_TRUE(local_square_class_test(two_minus_T * two_minus_T * LElem(3), 2, alpha).trivial);
    EXPECT_TRUE(local_square_class_test(LElem(5), 2, alpha).trivial);
}
