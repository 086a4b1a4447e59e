/*
   Copyright 2026 The pentacycle authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// pentacycle: runs the verification stages and prints their certificates.
// Exit status: 0 when nothing failed, 1 when a leaf failed, 2 on usage or
// configuration errors.

#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "pentacycle/pipeline.hpp"

namespace {

using namespace pentacycle;

constexpr int exit_ok = 0, exit_failed = 1, exit_usage = 2;

// One line per node; short leaf payloads are shown inline.
void render(const Certificate& c, int depth)
{
    std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    std::cout << pad << "[" << status_name(c.status) << "] " << c.name << ": " << c.anchor << "\n";
    if (c.children.empty() && !c.payload.empty()) {
        std::string p = c.payload.dump();
        if (p.size() <= 160) std::cout << pad << "    " << p << "\n";
    }
    for (auto& ch : c.children) render(ch, depth + 1);
}

int emit(const Certificate& c, bool json)
{
    if (json) {
        std::cout << certificate_document(c).dump(2) << "\n";
    } else {
        render(c, 0);
        std::cout << (c.any_failed() ? "result: FAILED\n" : "result: verified\n");
    }
    return c.any_failed() ? exit_failed : exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification pipeline for the rational points of the period-5 trace curve C0(5)"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "pentacycle certificate schema " + std::to_string(certificate_schema_version));

    bool json = false;
    std::string only;
    app.add_flag("--json", json, "print the certificate tree as JSON");
    app.add_option("--only", only, "print only the subtree rooted at this node (e.g. descent, descent/rank)");

    PipelineConfig cfg;
    cfg.scan_bound = 100;

    auto* genus = app.add_subcommand("genus", "genus of C0(N) and C1(N)");
    genus->add_option("--max", cfg.genus_max, "largest N")->check(CLI::Range(1L, 40L))->capture_default_str();

    auto* model = app.add_subcommand("model", "hyperelliptic model from tau_5");
    model->add_flag("--emit-chain", cfg.emit_chain, "include every intermediate polynomial");

    auto* multiples = app.add_subcommand("multiples", "multiples of D over Q and F_3");
    multiples->add_option("--limit", cfg.multiples_limit, "largest multiple")->check(CLI::Range(0, 200))->capture_default_str();

    auto* frob = app.add_subcommand("frobenius", "Frobenius characteristic polynomials");
    frob->add_option("--p", cfg.frobenius_primes, "primes of good reduction (repeatable)")->capture_default_str();

    app.add_subcommand("descent", "2-descent and the rank of J(Q)");
    app.add_subcommand("rational-points", "Chabauty at 3 and the six rational points");
    app.add_subcommand("endomorphisms", "End J = Z and non-modularity");

    std::string checkpoint;
    bool no_checkpoint = false;
    auto* scan = app.add_subcommand("tau6-scan", "bounded-height scan of tau_6(x, c) = 0");
    auto* all = app.add_subcommand("all", "every stage");
    for (auto* sc : {scan, all}) {
        sc->add_option("--bound", cfg.scan_bound, "height bound for the scan")->check(CLI::Range(1L, 100000L))->capture_default_str();
        sc->add_option("--jobs", cfg.scan_jobs, "worker threads for the scan")->check(CLI::Range(1u, 1024u))->capture_default_str();
    }
    scan->add_option("--checkpoint", checkpoint, "checkpoint file (default: tau6-scan-<bound>.json in the working directory)");
    scan->add_flag("--no-checkpoint", no_checkpoint, "do not read or write a checkpoint");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    if (!std::filesystem::is_directory(fixture_dir())) {
        std::cerr << "pentacycle: fixture directory not found: " << fixture_dir() << "\n";
        return exit_usage;
    }

    std::string stage;
    for (auto* sc : app.get_subcommands()) stage = sc->get_name();

    if (stage == "tau6-scan") {
        if (!no_checkpoint) {
            cfg.scan_checkpoint = checkpoint.empty() ? "tau6-scan-" + std::to_string(cfg.scan_bound) + ".json" : checkpoint;
        }
        if (!json)
            cfg.scan_progress = [&](long n) { std::cerr << "\rtau6-scan: numerators <= " << n << " of " << cfg.scan_bound << std::flush; };
    }

    Certificate result;
    try {
        result = stage == "all" ? run_all(cfg) : run_stage(stage, cfg);
    } catch (const FixtureError& e) {
        std::cerr << "pentacycle: " << e.what() << "\n";
        return exit_usage;
    }
    if (cfg.scan_progress) std::cerr << "\n";

    if (!only.empty()) {
        const Certificate* sub = result.find(only);
        if (!sub) {
            std::cerr << "pentacycle: --only " << only << ": no such node in the " << stage << " tree\n";
            return exit_usage;
        }
        return emit(*sub, json);
    }
    return emit(result, json);
}
