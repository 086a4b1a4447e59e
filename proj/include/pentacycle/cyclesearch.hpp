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


// Bounded-height scan of the period-6 trace curve, and the fields cut out by
// the rational 5-cycles.

#ifndef PENTACYCLE_CYCLESEARCH_HPP
#define PENTACYCLE_CYCLESEARCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pentacycle/dynatomic.hpp"
#include "pentacycle/exact.hpp"
#include "pentacycle/fixtures.hpp"
#include "pentacycle/localnum.hpp"

namespace pentacycle {

// ---------------------------------------------------------------------------
// tau6 scan

using RatPoint = std::pair<Rat, Rat>;
using PointSet = std::set<RatPoint>;

struct ScanResult {
    long bound = 0;
    std::vector<RatPoint> points;  // union, sorted
    PointSet x_first, c_first;     // hits of each pass
    bool x_first_done = false, c_first_done = false;
    long fractions = 0;            // values scanned per pass
    long resumed_from = -1;        // numerator recorded in the checkpoint, if any
};

/// State after every numerator magnitude up to `last_numerator` is scanned.
struct ScanCheckpoint {
    long bound = 0;
    std::string polynomial;  // rows of the scanned polynomial; a mismatch voids the checkpoint
    long last_numerator = -1;
    long fractions = 0;
    PointSet x_first, c_first;

    Json to_json() const
    {
        auto pts = [](const PointSet& s) {
            Json a = Json::array();
            for (auto& [x, c] : s) a.push_back(Json::array({x.get_str(), c.get_str()}));
            return a;
        };
        Json j;
        j["bound"] = bound;
        j["polynomial"] = polynomial;
        j["last_numerator"] = last_numerator;
        j["fractions"] = fractions;
        j["x_first"] = pts(x_first);
        j["c_first"] = pts(c_first);
        return j;
    }
    static ScanCheckpoint from_json(const Json& j)
    {
        ScanCheckpoint s;
        s.bound = j.at("bound").get<long>();
        s.polynomial = j.value("polynomial", "");
        s.last_numerator = j.at("last_numerator").get<long>();
        s.fractions = j.at("fractions").get<long>();
        for (auto& p : j.at("x_first")) s.x_first.emplace(parse_rational(p.at(0)), parse_rational(p.at(1)));
        for (auto& p : j.at("c_first")) s.c_first.emplace(parse_rational(p.at(0)), parse_rational(p.at(1)));
        return s;
    }
};

namespace detail {

/// Reduced fractions with numerator magnitude n and denominator in [1, bound].
inline std::vector<Rat> fractions_with_numerator(long n, long bound)
{
    std::vector<Rat> out;
    if (n == 0) {
        out.emplace_back(0);
        return out;
    }
    for (long s = 1; s <= bound; ++s)
        if (std::gcd(n, s) == 1) {
            out.push_back(make_rat(Int(n), Int(s)));
            out.push_back(make_rat(Int(-n), Int(s)));
        }
    return out;
}

struct NumeratorHits {
    PointSet x_first, c_first;
    long fractions = 0;
};

inline NumeratorHits scan_numerator(const BiPoly& F, long n, long bound)
{
    NumeratorHits h;
    for (auto& v : fractions_with_numerator(n, bound)) {
        ++h.fractions;
        QPoly in_c = F.at_x(v);
        if (is_zero(in_c)) throw std::logic_error("tau6_scan: x = " + v.get_str() + " is a component");
        for (auto& c : rational_roots(in_c)) h.x_first.emplace(v, c);
        QPoly in_x = F.at_y(v);
        if (is_zero(in_x)) throw std::logic_error("tau6_scan: c = " + v.get_str() + " is a component");
        for (auto& x : rational_roots(in_x)) h.c_first.emplace(x, v);
    }
    return h;
}

inline void write_checkpoint(const std::string& path, const ScanCheckpoint& s)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
        out << s.to_json().dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot move checkpoint to " + path);
}

inline std::string polynomial_fingerprint(const BiPoly& F)
{
    std::string s;
    for (auto& r : F.to_rows()) s += r + ";";
    return s;
}

inline std::optional<ScanCheckpoint> read_checkpoint(const std::string& path, long bound, const std::string& poly)
{
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        ScanCheckpoint s = ScanCheckpoint::from_json(Json::parse(in));
        if (s.bound != bound || s.polynomial != poly) return std::nullopt;  // different run; start over
        return s;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable; start over
    }
}

}  // namespace detail

/// Every rational point (x, c) of F(x, c) = 0 with x or c of height <= bound.
/// Numerators are processed in batches across `jobs` threads; results merge in
/// numerator order, so output does not depend on scheduling. With a
/// checkpoint path, progress is saved after each batch and resumed on restart.
inline ScanResult tau6_scan(const BiPoly& F, long bound, unsigned jobs = 1, const std::string& checkpoint = "",
                            const std::function<void(long)>& progress = {})
{
    if (bound < 1) throw std::domain_error("tau6_scan: bound >= 1");
    jobs = std::max(1u, jobs);
    ScanCheckpoint st;
    st.bound = bound;
    st.polynomial = detail::polynomial_fingerprint(F);
    ScanResult out;
    out.bound = bound;
    if (!checkpoint.empty())
        if (auto s = detail::read_checkpoint(checkpoint, bound, st.polynomial)) {
            st = *s;
            out.resumed_from = st.last_numerator;
        }

    const long batch = 4 * static_cast<long>(jobs);
    while (st.last_numerator < bound) {
        long lo = st.last_numerator + 1, hi = std::min(bound, st.last_numerator + batch);
        std::vector<detail::NumeratorHits> hits(static_cast<std::size_t>(hi - lo + 1));
        std::atomic<long> next{lo};
        std::vector<std::string> errors(jobs);
        auto worker = [&](unsigned id) {
            try {
                for (long n; (n = next.fetch_add(1)) <= hi;) hits[static_cast<std::size_t>(n - lo)] = detail::scan_numerator(F, n, bound);
            } catch (const std::exception& e) {
                errors[id] = e.what();
                next = hi + 1;
            }
        };
        if (jobs == 1) worker(0);
        else {
            std::vector<std::thread> ts;
            for (unsigned i = 0; i < jobs; ++i) ts.emplace_back(worker, i);
            for (auto& t : ts) t.join();
        }
        for (auto& e : errors)
            if (!e.empty()) throw std::logic_error(e);
        for (auto& h : hits) {
            st.x_first.insert(h.x_first.begin(), h.x_first.end());
            st.c_first.insert(h.c_first.begin(), h.c_first.end());
            st.fractions += h.fractions;
        }
        st.last_numerator = hi;
        if (!checkpoint.empty()) detail::write_checkpoint(checkpoint, st);
        if (progress) progress(hi);
    }

    out.x_first = st.x_first;
    out.c_first = st.c_first;
    out.fractions = st.fractions;
    out.x_first_done = out.c_first_done = true;
    PointSet all = st.x_first;
    all.insert(st.c_first.begin(), st.c_first.end());
    for (auto& p : all)
        if (!is_zero(F.eval(p.first, p.second))) throw std::logic_error("tau6_scan: listed point is not on the curve");
    out.points.assign(all.begin(), all.end());
    return out;
}

/// Height of a rational: max(|num|, den).
inline Int rat_height(const Rat& r)
{
    Int n = abs(r.get_num());
    return n > r.get_den() ? n : Int(r.get_den());
}

// ---------------------------------------------------------------------------
// Quintic cycle fields

/// Phi_5(z, c0) as a polynomial in z.
inline QPoly dynatomic_at(long N, const Rat& c0)
{
    QQPoly P = dynatomic_zc(N);
    std::vector<Rat> v;
    for (int i = 0; i <= P.degree(); ++i) v.push_back(P[i].eval(c0));
    return QPoly(std::move(v));
}

/// sum_{i<N} g^i(z) for g = z^2 + c0.
inline QPoly orbit_trace_poly(long N, const Rat& c0)
{
    QPoly z = QPoly::monomial(Rat(1), 1), g = z, s = z;
    for (long i = 1; i < N; ++i) {
        g = g * g + QPoly(c0);
        s = s + g;
    }
    return s;
}

struct CycleQuintic {
    Rat c, trace;
    QPoly quintic;          // monic, divides Phi_5(z, c)
    QPoly cofactor;         // Phi_5(z, c) / quintic
    long witness_prime = 0; // quintic irreducible modulo this prime
    bool cofactor_no_rational_roots = false;
};

/// Primes p <= bound at which q has p-integral coefficients and stays squarefree.
inline std::vector<long> good_primes(const QPoly& q, long bound)
{
    std::vector<long> out;
    Rat d = discriminant(q);
    for (long p = 2; p <= bound; ++p) {
        bool prime = true;
        for (long k = 2; k * k <= p; ++k)
            if (p % k == 0) prime = false;
        if (!prime) continue;
        bool integral = true;
        for (auto& c : q.coeffs())
            if (c.get_den() % p == 0) integral = false;
        if (integral && vp(d, Int(p)) == 0) out.push_back(p);
    }
    return out;
}

/// The 5-cycle of z^2 + c whose trace is a rational root of tau5(., c).
inline CycleQuintic cycle_quintic(const BiPoly& tau5, const Rat& c)
{
    QPoly traces = tau5.at_y(c);
    if (is_zero(traces)) throw std::domain_error("cycle_quintic: tau5 vanishes identically at c");
    QPoly phi = dynatomic_at(5, c);
    QPoly S = orbit_trace_poly(5, c);
    for (auto& x0 : rational_roots(traces)) {
        QPoly g = gcd(phi, S - QPoly(x0));
        if (g.degree() != 5) continue;
        CycleQuintic out;
        out.c = c;
        out.trace = x0;
        out.quintic = g.monic();
        auto [q, r] = divmod(phi, out.quintic);
        if (!is_zero(r)) throw std::logic_error("cycle_quintic: quintic does not divide Phi_5");
        out.cofactor = q;
        out.cofactor_no_rational_roots = rational_roots(q).empty();
        for (long p : good_primes(out.quintic, 50))
            if (ddf_pattern(reduce_mod(out.quintic, Int(p))) == std::vector<int>{5}) {
                out.witness_prime = p;
                break;
            }
        return out;
    }
    throw std::domain_error("cycle_quintic: no rational trace root with a degree-5 cycle gcd at c = " + c.get_str());
}

/// Monic integral rescaling: d^n q(z/d) for the least d clearing denominators.
inline std::pair<QPoly, Int> monic_integral(const QPoly& q)
{
    QPoly m = q.monic();
    int n = m.degree();
    for (Int d = 1;; ++d) {
        std::vector<Rat> v(static_cast<std::size_t>(n + 1));
        bool ok = true;
        for (int i = 0; i <= n; ++i) {
            v[i] = m[i] * ipow(d, static_cast<unsigned long>(n - i));
            if (v[i].get_den() != 1) ok = false;
        }
        if (ok) return {QPoly(std::move(v)), d};
    }
}

struct PrimePattern {
    long p = 0;
    std::vector<int> pattern;
};

struct CycleFieldReport {
    CycleQuintic cq;
    Rat discriminant;
    std::vector<Int> disc_support;
    std::vector<PrimePattern> patterns;  // primes <= 50 of good reduction
    bool cyclic_signature = false;        // only (5) and (1,1,1,1,1) occur
    long fixture_conductor = 0;
    std::vector<Int> fixture_support;
    bool support_within_fixture = false;  // poly-disc primes, apart from 3, lie in the fixture support
    std::optional<long> zp3_roots;        // roots in Z_3 of the monic integral rescaling
    Json to_json() const;
};

inline std::vector<Int> prime_support(const Rat& r)
{
    std::set<Int> s;
    for (auto& [p, e] : factor_small(r.get_num())) s.insert(p);
    for (auto& [p, e] : factor_small(r.get_den())) s.insert(p);
    return {s.begin(), s.end()};
}

inline CycleFieldReport stable_cycle_field_report(const BiPoly& tau5, const Rat& c, const Json& cycle_fields)
{
    CycleFieldReport r;
    r.cq = cycle_quintic(tau5, c);
    r.discriminant = discriminant(r.cq.quintic);
    r.disc_support = prime_support(r.discriminant);
    r.cyclic_signature = true;
    for (long p : good_primes(r.cq.quintic, 50)) {
        auto pat = ddf_pattern(reduce_mod(r.cq.quintic, Int(p)));
        if (pat != std::vector<int>{5} && pat != std::vector<int>{1, 1, 1, 1, 1}) r.cyclic_signature = false;
        r.patterns.push_back({p, pat});
    }
    for (auto& e : cycle_fields.at("cycles"))
        if (parse_rational(e.at("c").get<std::string>()) == c) {
            r.fixture_conductor = e.at("conductor").get<long>();
            for (auto& q : e.at("disc_support")) r.fixture_support.emplace_back(q.get<long>());
        }
    r.support_within_fixture = r.fixture_conductor != 0;
    for (auto& q : r.disc_support)
        if (q != 3 && std::find(r.fixture_support.begin(), r.fixture_support.end(), q) == r.fixture_support.end())
            r.support_within_fixture = false;
    auto [mi, d] = monic_integral(r.cq.quintic);
    if (is_squarefree(mi)) r.zp3_roots = zp_integer_root_count(mi, Int(3));
    return r;
}

inline Json CycleFieldReport::to_json() const
{
    Json j;
    j["c"] = cq.c.get_str();
    j["trace"] = cq.trace.get_str();
    j["quintic"] = to_text(cq.quintic);
    j["irreducible_mod"] = cq.witness_prime;
    j["cofactor_degree"] = cq.cofactor.degree();
    j["cofactor_no_rational_roots"] = cq.cofactor_no_rational_roots;
    j["poly_discriminant"] = discriminant.get_str();
    Json sup = Json::array();
    for (auto& p : disc_support) sup.push_back(p.get_str());
    j["poly_disc_support"] = sup;
    Json pats = Json::object();
    for (auto& pp : patterns) pats[std::to_string(pp.p)] = pp.pattern;
    j["ddf_patterns"] = pats;
    j["cyclic_signature"] = cyclic_signature;
    j["conductor_fixture"] = fixture_conductor;
    j["support_within_fixture"] = support_within_fixture;
    if (zp3_roots) j["z3_roots_of_integral_model"] = *zp3_roots;
    return j;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_CYCLESEARCH_HPP
