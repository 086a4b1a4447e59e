// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "pentacycle/dynatomic.hpp"
#include "pentacycle/fixtures.hpp"
#include "pentacycle/model.hpp"

using namespace pentacycle;

namespace {

ChainExpectations expectations()
{
    Json j = load_fixture("model_chain.json");
    ChainExpectations e;
    e.node_model = bipoly_from_row_texts(j["node_model"]["rows_by_first"]);
    e.blown_up = bipoly_from_row_texts(j["blown_up"]["rows_by_first"]);
    e.axis_shifted = bipoly_from_row_texts(j["axis_shifted"]["rows_by_first"]);
    e.discriminant = parse_qpoly(j["discriminant"]["poly"].get<std::string>());
    e.sextic = parse_qpoly(j["sextic"]["poly"].get<std::string>());
    return e;
}

}  // namespace

TEST(Model, Tau5SingularPointIsTheNode)
{
    auto sp = singular_points(tau_fixture(5));
    ASSERT_EQ(sp.rational.size(), 1u);
    EXPECT_EQ(sp.rational[0].first, Rat(-1));
    EXPECT_EQ(sp.rational[0].second, Rat(-4, 3));
    EXPECT_TRUE(sp.complete);
    EXPECT_TRUE(node_check(tau_fixture(5), Rat(-1), Rat(-4, 3)));
}

TEST(Model, SmallSingularities)
{
    BiPoly X = BiPoly::X(), Y = BiPoly::Y();
    BiPoly cusp = Y.pow(2) - X.pow(3);
    auto sp = singular_points(cusp);
    ASSERT_EQ(sp.rational.size(), 1u);
    EXPECT_EQ(sp.rational[0], std::make_pair(Rat(0), Rat(0)));
    EXPECT_FALSE(node_check(cusp, 0, 0));
    EXPECT_TRUE(node_check(X * Y, 0, 0));
    auto conic = singular_points(X.pow(2) + Y.pow(2) - BiPoly(Rat(1)));
    EXPECT_TRUE(conic.rational.empty());
    EXPECT_TRUE(conic.complete);
    EXPECT_THROW(node_check(cusp, 1, 1), std::domain_error);
}

TEST(Model, ChainMatchesEveryIntermediate)
{
    auto r = hyperelliptic_chain(tau_fixture(5));
    for (auto& c : model_chain_matches(r, expectations())) EXPECT_TRUE(c.matches) << c.step;
    EXPECT_EQ(r.f, the_curve().f);
    EXPECT_EQ(r.steps[1].result.coeff(0, 0), Rat(238));
    EXPECT_EQ((r.B * r.B - r.A * r.C * Rat(4))[6], Rat(6561));
    EXPECT_TRUE(rational_roots(r.f).empty());
}

TEST(Model, PullbackVanishesAndMatchesFormula)
{
    BiPoly tau = tau_fixture(5);
    auto r = hyperelliptic_chain(tau);
    CFormulas F;
    int matched = 0;
    for (int sign : {1, -1}) {
        auto m = composite_map(r, sign);
        EXPECT_TRUE(pullback_vanishes(tau, r, m));
        if (chain_c_matches_formula(m, F)) ++matched;
    }
    EXPECT_EQ(matched, 1);
}

TEST(Model, IdentityFactorIsFour)
{
    auto k = c_formula_identity_factor(CFormulas{}, the_curve().f);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(*k, Rat(4));
}

TEST(Model, CValues)
{
    EXPECT_TRUE(c_map_affine(0, 1).pole);
    EXPECT_EQ(c_map_affine(0, -1).value, Rat(-16, 9));
    EXPECT_EQ(c_map_affine(-3, 1).value, Rat(-64, 9));
    EXPECT_TRUE(c_map_affine(-3, -1).pole);
    QPoly f = the_curve().f;
    auto plus = c_map_infinity(f, +1), minus = c_map_infinity(f, -1);
    EXPECT_FALSE(plus.pole);
    EXPECT_EQ(plus.value, Rat(-2));
    EXPECT_TRUE(minus.pole);
    EXPECT_EQ(minus.pole_order, 2);
    EXPECT_EQ(minus.leading, Rat(-1, 4));
}

TEST(Model, InfinityExpansion)
{
    QPoly f = the_curve().f;
    auto e = infinity_expansion(f, 1, 5);
    std::vector<std::pair<int, Rat>> want{{3, 1}, {2, 4}, {1, 3}, {0, -1}, {-1, 2}};
    EXPECT_EQ(e, want);
    EXPECT_EQ(infinity_expansion(f, -1, 1).front(), std::make_pair(3, Rat(-1)));
    // (x^3+4x^2+3x-1)^2 - f has degree 2
    QPoly Y = qpoly({-1, 3, 4, 1});
    EXPECT_EQ((Y * Y - f).degree(), 2);
}
