// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pentacycle/pipeline.hpp"

using namespace pentacycle;
namespace fs = std::filesystem;

namespace {

// Points PENTACYCLE_FIXTURES at a scratch copy of the tables for one scope.
struct ScratchFixtures {
    fs::path dir;
    explicit ScratchFixtures(const std::string& tag)
    {
        dir = fs::temp_directory_path() / ("pentacycle-fx-" + tag);
        fs::remove_all(dir);
        fs::copy(PENTACYCLE_DEFAULT_FIXTURES, dir, fs::copy_options::recursive);
        setenv("PENTACYCLE_FIXTURES", dir.c_str(), 1);
    }
    ~ScratchFixtures()
    {
        unsetenv("PENTACYCLE_FIXTURES");
        fs::remove_all(dir);
    }
    void replace(const std::string& file, const std::string& from, const std::string& to)
    {
        std::ifstream in(dir / file);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string s = ss.str();
        auto at = s.find(from);
        ASSERT_NE(at, std::string::npos);
        s.replace(at, from.size(), to);
        std::ofstream(dir / file) << s;
    }
};

}  // namespace

TEST(Pipeline, StageNamesAreKnown)
{
    EXPECT_EQ(stage_names().size(), 8u);
    EXPECT_EQ(stage_names().front(), "genus");
    EXPECT_EQ(stage_names().back(), "tau6-scan");
    EXPECT_THROW(run_stage("nope", {}), std::invalid_argument);
}

TEST(Pipeline, StagesVerifyAndAreDeterministic)
{
    for (auto* n : {"genus", "model", "multiples", "frobenius", "endomorphisms"}) {
        auto a = run_stage(n, {}), b = run_stage(n, {});
        EXPECT_FALSE(a.any_failed()) << n;
        EXPECT_EQ(certificate_document(a).dump(2), certificate_document(b).dump(2)) << n;
    }
}

TEST(Pipeline, FindAddressesNodesByPath)
{
    auto d = stage_descent();
    ASSERT_NE(d.find("descent/rank"), nullptr);
    EXPECT_EQ(d.find("descent/rank")->payload["rank"], 1);
    EXPECT_EQ(d.find("descent/nothing"), nullptr);
}

TEST(Pipeline, CorruptedTau5FailsTheModel)
{
    ScratchFixtures fx("tau5");
    fx.replace("tau5.json", "\"32,28,40,9\"", "\"32,28,40,10\"");
    auto m = stage_model();
    EXPECT_TRUE(m.any_failed());
    ASSERT_NE(m.find("model/node"), nullptr);
    EXPECT_EQ(m.find("model/node")->status, Status::Failed);
}

TEST(Pipeline, MissingFixtureBecomesFailedLeaf)
{
    ScratchFixtures fx("missing");
    fs::remove(fx.dir / "multiples.json");
    auto c = guarded("multiples", "multiples", [] { return stage_multiples(); });
    EXPECT_TRUE(c.any_failed());
}

TEST(Pipeline, SmallScanStage)
{
    PipelineConfig cfg;
    cfg.scan_bound = 7;
    auto s = stage_tau6_scan(cfg);
    EXPECT_FALSE(s.any_failed());
}
