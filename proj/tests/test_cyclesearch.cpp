// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "pentacycle/cyclesearch.hpp"

using namespace pentacycle;

namespace {
const std::vector<RatPoint> known{
    {Rat(-7, 2), Rat(-71, 48)}, {Rat(-3), Rat(-4)}, {Rat(-1), Rat(-2)}, {Rat(0), Rat(0)}, {Rat(1), Rat(-2)}};

std::string temp_path(const std::string& tag)
{
    return (std::filesystem::temp_directory_path() / ("pentacycle_" + tag + "_" + std::to_string(::getpid()) + ".json")).string();
}
}  // namespace

TEST(CycleSearch, FixturePointsLieOnTau6)
{
    BiPoly F = tau_fixture(6);
    for (auto& [x, c] : known) EXPECT_TRUE(is_zero(F.eval(x, c))) << x << "," << c;
    EXPECT_TRUE(is_zero(F.at_x(Rat(0)).eval(Rat(0))));
    EXPECT_EQ(F.at_x(Rat(2)).degree(), 3);
    EXPECT_EQ(F.at_y(Rat(5)).degree(), 9);
}

TEST(CycleSearch, ScanBoundSevenFindsTheFivePoints)
{
    auto r = tau6_scan(tau_fixture(6), 7);
    EXPECT_EQ(r.points, known);
    EXPECT_TRUE(r.x_first_done && r.c_first_done);
    for (auto& [x, c] : r.points) EXPECT_TRUE(is_zero(tau_fixture(6).eval(x, c)));
}

TEST(CycleSearch, PassesAgreeAndThreadsAreDeterministic)
{
    BiPoly F = tau_fixture(6);
    auto a = tau6_scan(F, 24, 1);
    auto b = tau6_scan(F, 24, 4);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(a.fractions, b.fractions);
    EXPECT_EQ(a.points, known);
    // c = -71/48 is beyond this bound, so only the x-first pass sees that point
    EXPECT_EQ(a.x_first.size(), 5u);
    EXPECT_EQ(a.c_first.size(), 4u);
}

TEST(CycleSearch, CheckpointResumes)
{
    BiPoly F = tau_fixture(6);
    std::string path = temp_path("ckpt");
    std::remove(path.c_str());
    struct Stop {};
    try {
        tau6_scan(F, 20, 2, path, [](long n) {
            if (n >= 8) throw Stop{};
        });
        FAIL() << "scan was not interrupted";
    } catch (const Stop&) {
    }
    std::ifstream in(path);
    ASSERT_TRUE(in.good());
    auto saved = ScanCheckpoint::from_json(Json::parse(in));
    EXPECT_EQ(saved.bound, 20);
    EXPECT_GE(saved.last_numerator, 8);
    EXPECT_LT(saved.last_numerator, 20);
    auto resumed = tau6_scan(F, 20, 2, path);
    EXPECT_EQ(resumed.resumed_from, saved.last_numerator);
    auto fresh = tau6_scan(F, 20, 1);
    EXPECT_EQ(resumed.points, fresh.points);
    EXPECT_EQ(resumed.fractions, fresh.fractions);
    // a checkpoint for another bound is ignored
    auto other = tau6_scan(F, 5, 1, path);
    EXPECT_EQ(other.resumed_from, -1);
    std::remove(path.c_str());
}

TEST(CycleSearch, QuinticAtMinusTwo)
{
    auto q = cycle_quintic(tau_fixture(5), Rat(-2));
    EXPECT_EQ(q.quintic, qpoly({1, 3, -3, -4, 1, 1}));
    EXPECT_EQ(q.trace, Rat(-1));
    EXPECT_GT(q.witness_prime, 0);
    EXPECT_TRUE(q.cofactor_no_rational_roots);
    EXPECT_EQ(q.quintic * q.cofactor, dynatomic_at(5, Rat(-2)));
    EXPECT_EQ(discriminant(q.quintic), Rat(14641));
}

TEST(CycleSearch, ReportsForTheThreeCValues)
{
    BiPoly t5 = tau_fixture(5);
    Json cf = load_fixture("cycle_fields.json");
    auto r2 = stable_cycle_field_report(t5, Rat(-2), cf);
    EXPECT_EQ(r2.disc_support, std::vector<Int>{11});
    EXPECT_EQ(r2.fixture_conductor, 11);
    auto r16 = stable_cycle_field_report(t5, Rat(-16, 9), cf);
    EXPECT_EQ(r16.fixture_conductor, 41);
    EXPECT_TRUE(r16.support_within_fixture);
    EXPECT_TRUE(std::find(r16.disc_support.begin(), r16.disc_support.end(), Int(41)) != r16.disc_support.end());
    auto r64 = stable_cycle_field_report(t5, Rat(-64, 9), cf);
    EXPECT_EQ(r64.fixture_conductor, 275);
    EXPECT_TRUE(r64.support_within_fixture);
    ASSERT_TRUE(r64.zp3_roots.has_value());
    EXPECT_EQ(*r64.zp3_roots, 5);  // 3 splits completely
    for (auto* r : {&r2, &r16, &r64}) {
        EXPECT_TRUE(r->cyclic_signature);
        EXPECT_GT(r->cq.witness_prime, 0);
        EXPECT_TRUE(r->cq.cofactor_no_rational_roots);
        EXPECT_EQ(r->cq.quintic.degree(), 5);
    }
}

TEST(CycleSearch, RejectsCWithoutRationalCycle)
{
    EXPECT_THROW(cycle_quintic(tau_fixture(5), Rat(1)), std::domain_error);
}

TEST(CycleSearch, MonicIntegralRescaling)
{
    auto [m, d] = monic_integral(qpoly({1, 0, 0}) + QPoly(std::vector<Rat>{Rat(1, 9), Rat(1, 3), Rat(1)}));
    EXPECT_EQ(d, 3);
    for (auto& c : m.coeffs()) EXPECT_EQ(c.get_den(), 1);
}
