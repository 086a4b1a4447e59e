// Copyright 2026 The pentacycle authors
// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero only
// when a criterion fails that is not a documented known failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pentacycle/pipeline.hpp"

using namespace pentacycle;

namespace {

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

const Certificate& node(const Certificate& root, const std::string& name)
{
    const Certificate* c = root.find(name);
    if (!c) throw std::runtime_error("missing node " + name);
    return *c;
}

bool verified(const Certificate& root, const std::string& name)
{
    const auto& c = node(root, name);
    return c.status == Status::Verified && !c.any_failed();
}

const Json& payload(const Certificate& root, const std::string& name) { return node(root, name).payload; }

// ---- 1: genus table ----
Check genus_table()
{
    Check k;
    const long c0[] = {0, 0, 0, 0, 2, 4, 16, 32, 79, 162};
    const long c1[] = {0, 0, 0, 2, 14, 34, 124, 285, 745, 1690};
    auto t0 = std::chrono::steady_clock::now();
    for (long N = 1; N <= 10; ++N) {
        k.require(genus_c0(N) == c0[N - 1], "genus_c0(" + std::to_string(N) + ")");
        k.require(genus_c1(N) == c1[N - 1], "genus_c1(" + std::to_string(N) + ")");
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    k.require(s < 1.0, "genus table took " + std::to_string(s) + " s");
    return k;
}

// ---- 2: model chain ----
Check model_chain()
{
    Check k;
    PipelineConfig cfg;
    cfg.emit_chain = true;
    auto m = stage_model(cfg);
    k.require(!m.any_failed(), "model stage has a failed leaf");
    k.require(payload(m, "model/chain").value("sextic", "") == "1,6,5,22,22,8,1", "sextic coefficients");
    for (auto& c : node(m, "model/chain").children)
        if (c.payload.contains("matches_table")) k.require(c.payload["matches_table"].get<bool>(), c.name);
    k.require(node(m, "model/chain").children.size() >= 5, "intermediate polynomials missing");
    k.require(payload(m, "model/discriminant").value("disc", "") == Int(Int(4096) * 3701).get_str(), "disc(f) = 2^12 * 3701");
    k.require(the_curve().f == qpoly({1, 6, 5, 22, 22, 8, 1}), "curve sextic");
    return k;
}

// ---- 3: c at the six points, compared strictly by label ----
Check six_point_c_values()
{
    Check k;
    const std::vector<std::pair<std::string, std::string>> want = {
        {"(0,1)", "inf"}, {"(0,-1)", "-16/9"}, {"(-3,1)", "-64/9"}, {"(-3,-1)", "inf"}, {"inf+", "inf"}, {"inf-", "-2"}};
    auto got = c_values_at_six_points();
    for (auto& [label, c] : want) k.require(got.at(label).to_string() == c, "c(" + label + ") = " + got.at(label).to_string() + ", table " + c);
    return k;
}

// ---- 4: multiples table ----
Check multiples()
{
    Check k;
    PipelineConfig cfg;
    cfg.multiples_limit = 11;
    auto m = stage_multiples(cfg);
    k.require(!m.any_failed(), "multiples stage has a failed leaf");
    const auto& rows = payload(m, "multiples/table")["rows"];
    k.require(rows.size() == 12, "rows for n = 0..11");
    for (auto& r : rows) k.require(r["matches_table"].get<bool>(), "row n = " + r["n"].dump());
    // 8D = [P + Pbar], u = x^2 + 4x + 1/3, v = (10/3)x + 1
    Genus2Curve<Rat> C(the_curve().f);
    auto eight = scalar_mul(C, 8, infinity_class<Rat>(1));
    k.require(eight.u == QPoly(std::vector<Rat>{Rat(1, 3), Rat(4), Rat(1)}), "8D u");
    k.require(eight.v == QPoly(std::vector<Rat>{Rat(1), Rat(10, 3)}), "8D v");
    k.require(verified(m, "multiples/order-mod-3") && payload(m, "multiples/order-mod-3")["order"] == 9, "order of D mod 3");
    return k;
}

// ---- 5: counting and Frobenius ----
Check counting()
{
    Check k;
    PipelineConfig cfg;
    cfg.frobenius_primes = {3, 5, 7};
    auto fr = stage_frobenius(cfg);
    k.require(!fr.any_failed(), "frobenius stage has a failed leaf");
    k.require(payload(fr, "frobenius/p3")["charpoly"] == "9,0,-1,0,1", "charpoly at 3");
    k.require(payload(fr, "frobenius/p5")["charpoly"] == "25,5,9,1,1", "charpoly at 5");
    k.require(payload(fr, "frobenius/p7")["charpoly"] == "49,14,4,2,1", "charpoly at 7");
    const auto& t = payload(fr, "frobenius/torsion");
    k.require(t["order_3"] == 9 && t["order_5"] == 41 && t["gcd"] == 1, "#J(F_3), #J(F_5), gcd");
    return k;
}

// ---- 6: descent ----
Check descent()
{
    Check k;
    auto d = stage_descent();
    k.require(!d.any_failed(), "descent stage has a failed leaf");
    auto pat = [&](const std::string& place) { return payload(d, "descent/places/" + place)["pattern"].dump(); };
    k.require(pat("2") == "[[2,3]]", "pattern at 2");
    k.require(pat("3701") == "[[1,1],[2,1],[1,3]]", "pattern at 3701");
    k.require(pat("inf") == "[[1,1],[1,1],[2,1],[2,1]]", "pattern at infinity");
    const std::vector<std::tuple<std::string, long, long, long>> sizes = {{"2", 1, 4, 2}, {"3701", 2, 2, 2}, {"inf", 4, 1, 1}};
    for (auto& [place, t2, a, b] : sizes) {
        const auto& p = payload(d, "descent/places/" + place);
        k.require(p["two_torsion"] == t2, "#J[2] at " + place);
        k.require(p["j_mod_2j"] == a && p["j_mod_ker"] == b, "quotient sizes at " + place);
    }
    for (auto& id : payload(d, "descent/identities")["identities"]) k.require(id["exact"].get<bool>(), "identity " + id["value"].dump());
    const auto& r = payload(d, "descent/resolvent");
    k.require(r["h"] == "477968,565728,244664,89560,38705,8976,2186,654,53,22,1", "h coefficients");
    k.require(r["roots_in_Z2"] == 0, "h roots in Z_2");
    const auto& rank = payload(d, "descent/rank");
    k.require(rank["eliminations"].size() == 3, "square-class eliminations");
    for (auto& e : rank["eliminations"]) k.require(e["eliminated"].get<bool>(), "elimination of " + e["h"].get<std::string>());
    k.require(rank["rank"] == 1, "rank certificate");
    return k;
}

// ---- 7: Chabauty ----
Check chabauty()
{
    Check k;
    auto rp = stage_rational_points();
    auto path = [](const std::string& s) { return "rational-points/chabauty/" + s; };
    for (auto& leaf : {"local-params", "log", "t-series", "D1/spot-check", "D2/spot-check", "D1/theta", "D2/theta", "strassman"})
        k.require(verified(rp, path(leaf)), std::string(leaf) + " not verified");
    k.require(payload(rp, path("local-params"))["s"] == Json::array({"-9/14", "426/49"}), "s(D')");
    k.require(payload(rp, path("log"))["log_mod_81"] == Json::array({"36", "3"}), "L(s(D')) mod 81");
    k.require(payload(rp, path("t-series"))["t1"] == "0,36,0,27" && payload(rp, path("t-series"))["t2"] == "0,3,0,9", "t-series mod 81");
    k.require(payload(rp, path("D1/theta"))["residues_mod_81"] == "0,27,0,0,0", "theta_1 mod 81");
    k.require(payload(rp, path("D2/theta"))["residues_mod_81"] == "36,27,18,54,27", "theta_2 mod 81");
    k.require(payload(rp, path("strassman"))["D1"] == 1 && payload(rp, path("strassman"))["D2"] == 2, "Strassman bounds");
    for (auto* sc : {"D1/spot-check", "D2/spot-check"}) {
        const auto& checks = payload(rp, path(sc))["checks"];
        k.require(checks.size() == 3, std::string(sc) + " needs three n values");
        for (auto& c : checks) k.require(c["matches"].get<bool>(), std::string(sc) + " n = " + c["n"].dump());
    }
    const auto& t = payload(rp, "rational-points/tally");
    k.require(verified(rp, "rational-points/tally"), "tally not verified");
    k.require(t["rational_points"] == Json::array({"(0,1)", "(0,-1)", "(-3,1)", "(-3,-1)", "inf+", "inf-"}), "C(Q) is the six points");
    k.require(t["upper_bound"] == 6, "upper bound 6");
    return k;
}

// ---- 8: endomorphisms ----
Check endomorphisms()
{
    Check k;
    auto e = stage_endomorphisms();
    k.require(!e.any_failed(), "endomorphisms stage has a failed leaf");
    const auto& p5 = payload(e, "endomorphisms/p5");
    k.require(p5["irreducible"].get<bool>() && p5["group"] == "D4", "P irreducible with group D4");
    k.require(p5["quadratic_subfields"] == Json::array({"5"}), "quadratic subfield disc 5");
    const auto& ps = payload(e, "endomorphisms/pair-sums");
    QPoly g = qpoly({-1, 1, 1});
    k.require(divides(g, parse_qpoly(ps["resolvent_5"].get<std::string>())), "x^2+x-1 divides the resolvent of P");
    k.require(!divides(g, parse_qpoly(ps["resolvent_7"].get<std::string>())), "x^2+x-1 does not divide the resolvent of R");
    k.require(verified(e, "endomorphisms/end-is-z"), "End J = Z certificate");
    return k;
}

// ---- 9: tau6 scan ----
Check tau6_bound_100()
{
    Check k;
    auto t0 = std::chrono::steady_clock::now();
    auto r = tau6_scan(tau_fixture(6), 100, 1);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::vector<RatPoint> want = {
        {Rat(-7, 2), Rat(-71, 48)}, {Rat(-3), Rat(-4)}, {Rat(-1), Rat(-2)}, {Rat(0), Rat(0)}, {Rat(1), Rat(-2)}};
    std::vector<RatPoint> got(r.points.begin(), r.points.end());
    std::sort(got.begin(), got.end());
    k.require(got == want, "scan found " + std::to_string(got.size()) + " points");
    k.require(r.x_first == r.c_first, "the two passes disagree");
    k.require(s < 300.0, "scan took " + std::to_string(s) + " s");
    return k;
}

// ---- 10: property suites ----
Check properties()
{
    Check k;
    std::mt19937_64 rng(20261018);
    {
        const long p = 1009;
        auto Cp = reduce_curve(the_curve().f, p);
        std::vector<long> root(p, -1);
        for (long y = 0; y < p; ++y) root[(y * y) % p] = y;
        auto mod = [&](long v) { return ModInt(Int(v), Int(p)); };
        auto point = [&]() {
            for (;;) {
                long x = static_cast<long>(rng() % p);
                long fx = Cp.f.eval(mod(x)).value().get_si();
                if (root[fx] < 0) continue;
                long y = (rng() & 1) ? root[fx] : (p - root[fx]) % p;
                return CurvePoint<ModInt>::affine(mod(x), mod(y));
            }
        };
        for (int i = 0; i < 200 && k.ok; ++i) {
            auto a = from_points(Cp, point(), point()), b = from_points(Cp, point(), point()), c = from_points(Cp, point(), point());
            k.require(add(Cp, add(Cp, a, b), c) == add(Cp, a, add(Cp, b, c)), "associativity over F_1009");
            k.require(add(Cp, a, b) == add(Cp, b, a), "commutativity over F_1009");
            k.require(add(Cp, a, neg(a)).is_identity(), "inverse over F_1009");
            k.require(add(Cp, a, DivClass<ModInt>::identity()) == a, "identity over F_1009");
        }
    }
    {
        const CurveCoeffs fc = curve_coeffs(the_curve().f);
        auto v1 = [&]() {
            long n = static_cast<long>(rng() % 200) - 100;
            long d = static_cast<long>(rng() % 20) * 3 + 1;
            return make_rat(Int(3 * n), Int(d));
        };
        LocalParams zero{Rat(0), Rat(0)};
        for (int i = 0; i < 100 && k.ok; ++i) {
            LocalParams s{v1(), v1()}, t{v1(), v1()};
            k.require(formal_add(fc, s, zero) == s, "formal identity");
            k.require(congruent81(formal_add(fc, s, LocalParams{Rat(-s.s1), Rat(-s.s2)}), zero), "formal inverse mod 3^4");
            k.require(congruent81(formal_add(fc, s, t), formal_add(fc, t, s)), "formal commutativity mod 3^4");
            auto ls = formal_log(fc, s), lt = formal_log(fc, t);
            k.require(congruent81(formal_log(fc, formal_add(fc, s, t)), LocalParams{Rat(ls.s1 + lt.s1), Rat(ls.s2 + lt.s2)}),
                      "log is a homomorphism mod 3^4");
            k.require(congruent81(formal_exp(fc, ls), s), "exp inverts log mod 3^4");
        }
    }
    for (int i = 0; i < 200 && k.ok; ++i) {
        std::vector<Int> c;
        for (int j = 0; j < 5; ++j) c.push_back(Int(static_cast<unsigned long>(rng() % 243)));
        std::vector<Int> cc;
        for (auto& x : c) cc.push_back(x % 81);
        auto fine = strassman_bound(PadicSeriesTrunc{3, 5, c, 5, 5});
        auto coarse = strassman_bound(PadicSeriesTrunc{3, 4, cc, 5, 4});
        if (fine.determinate && coarse.determinate) k.require(fine.r <= coarse.r, "Strassman bound grew with precision");
    }
    auto parts = partitions_of_six();
    k.require(parts.size() == 11, "11 partitions of 6");
    for (auto& p : parts) k.require(two_torsion_count(p) == two_torsion_brute_force(p), "two_torsion_count vs brute force");
    for (long N = 1; N <= 8 && k.ok; ++N) {
        QQPoly prod(QPoly(Rat(1)));
        for (long d : divisors_of(N)) prod = prod * dynatomic_zc(d);
        k.require(prod == iterate_minus_z(static_cast<int>(N)), "divisor product N = " + std::to_string(N));
    }
    return k;
}

}  // namespace

int main()
{
    struct Item {
        int id;
        const char* title;
        std::function<Check()> run;
        bool known_red;
    };
    const std::vector<Item> items = {
        {1, "genus table", genus_table, false},
        {2, "model chain", model_chain, false},
        {3, "c at the six points", six_point_c_values, true},
        {4, "jacobian multiples", multiples, false},
        {5, "point counts and Frobenius", counting, false},
        {6, "two-descent", descent, false},
        {7, "Chabauty", chabauty, false},
        {8, "endomorphisms", endomorphisms, false},
        {9, "tau6 scan at bound 100", tau6_bound_100, false},
        {10, "property suites", properties, false},
    };
    int hard_failures = 0;
    for (auto& it : items) {
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = it.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string verdict = c.ok ? "PASS" : it.known_red ? "FAIL (known, see ledger)" : "FAIL";
        std::printf("criterion %2d  %-28s %s  [%.1fs]%s%s\n", it.id, it.title, verdict.c_str(), s, c.ok ? "" : "  ", c.why.c_str());
        std::fflush(stdout);
        if (!c.ok && !it.known_red) ++hard_failures;
    }
    return hard_failures == 0 ? 0 : 1;
}
