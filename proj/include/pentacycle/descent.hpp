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

// 2-descent on the Jacobian: (x - T) images, local 2-torsion and quotient
// sizes, the partition resolvent, F2 linear algebra on the generator group and
// the elimination transcript that leaves rank 1.

#ifndef PENTACYCLE_DESCENT_HPP
#define PENTACYCLE_DESCENT_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pentacycle/balls.hpp"
#include "pentacycle/count.hpp"
#include "pentacycle/jacobian.hpp"
#include "pentacycle/lfield.hpp"
#include "pentacycle/localnum.hpp"

namespace pentacycle {

/// The printed degree-10 resolvent whose roots are a1 a2 a3 + a4 a5 a6.
inline const QPoly& partition_resolvent_h()
{
    static const QPoly h = qpoly({477968, 565728, 244664, 89560, 38705, 8976, 2186, 654, 53, 22, 1});
    return h;
}

// ---------------------------------------------------------------------------
// (x - T)

/// Image of a class (Pic^2 form E - inf+ - inf-) in L^* / L^{*2} Q^*.
inline LElem x_minus_T_image(const DivClass<Rat>& d)
{
    const int du = d.u.degree();
    if (du > 0 && gcd(d.u, l_modulus()).degree() > 0) throw std::domain_error("x_minus_T_image: support meets a Weierstrass point");
    if (du == 2) return LElem(d.u);
    if (du == 1) return -LElem(d.u);
    return LElem(1);  // O, or +-(inf+ - inf-)
}

// ---------------------------------------------------------------------------
// Local 2-torsion

/// Orbit sizes of Galois on the six roots, from (e, f) pairs.
struct LocalPattern {
    std::string place;
    std::vector<std::pair<int, int>> ef;

    std::vector<int> orbits() const
    {
        std::vector<int> o;
        for (auto& [e, f] : ef) o.push_back(e * f);
        std::sort(o.begin(), o.end());
        return o;
    }
};

/// #J(K)[2] = (even-cardinality unions of root orbits) / 2.
inline long two_torsion_count(const std::vector<int>& orbits)
{
    if (std::accumulate(orbits.begin(), orbits.end(), 0) != 6) throw std::domain_error("pattern must sum to 6");
    long even = 0;
    const std::size_t k = orbits.size();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int s = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) s += orbits[i];
        if (s % 2 == 0) ++even;
    }
    return even / 2;
}

/// Brute force in the even-subsets-mod-complement model for a permutation with
/// the given cycle type: classes {S, S^c} with sigma S in {S, S^c}.
inline long two_torsion_brute_force(const std::vector<int>& cycles)
{
    std::vector<int> sigma(6);
    int at = 0;
    for (int c : cycles) {
        for (int i = 0; i < c; ++i) sigma[at + i] = at + (i + 1) % c;
        at += c;
    }
    if (at != 6) throw std::domain_error("cycle type must sum to 6");
    long fixed = 0;
    for (unsigned S = 0; S < 64; ++S) {
        if (__builtin_popcount(S) % 2) continue;
        unsigned img = 0;
        for (int i = 0; i < 6; ++i)
            if (S >> i & 1) img |= 1u << sigma[i];
        if (img == S || img == (63u ^ S)) ++fixed;
    }
    return fixed / 2;
}

inline std::vector<std::vector<int>> partitions_of_six()
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, 6, 6);
    return out;
}

/// Number of roots of f and of h in the completion (p = 0 for R).
struct LocalRoots {
    long f_roots = 0, h_roots = 0;
};

inline LocalRoots local_roots(long p)
{
    LocalRoots r;
    if (p == 0) {
        r.f_roots = sturm_real_root_count(l_modulus());
        r.h_roots = sturm_real_root_count(partition_resolvent_h());
    } else {
        r.f_roots = zp_integer_root_count(l_modulus(), Int(p));
        r.h_roots = zp_integer_root_count(partition_resolvent_h(), Int(p));
    }
    return r;
}

struct LocalQuotients {
    long two_torsion = 0;
    long index = 0;          // [ker(x - T) : 2J]
    long j_mod_2j = 0;       // #J/2J
    long j_mod_ker = 0;      // #J/ker(x - T)
    LocalRoots roots;
    bool halves_consistent = false;  // rational halves form a J[2]-torsor: count 0 or #J[2]
};

/// p in {2, 3701, 0 (= infinity)}.
inline LocalQuotients local_quotient_sizes(long p, const std::vector<int>& orbits)
{
    LocalQuotients q;
    q.two_torsion = two_torsion_count(orbits);
    q.roots = local_roots(p);
    long halves = q.roots.f_roots + q.roots.h_roots;
    q.halves_consistent = (halves == 0 || halves == q.two_torsion);
    q.index = halves > 0 ? 1 : 2;
    // #J/2J = |2|_p^{-2} #J[2]
    if (p == 2)
        q.j_mod_2j = 4 * q.two_torsion;
    else if (p == 0) {
        if (q.two_torsion % 4) throw std::logic_error("real 2-torsion not divisible by 4");
        q.j_mod_2j = q.two_torsion / 4;
    } else
        q.j_mod_2j = q.two_torsion;
    if (q.j_mod_2j % q.index) throw std::logic_error("index does not divide #J/2J");
    q.j_mod_ker = q.j_mod_2j / q.index;
    return q;
}

/// Pattern at 2 from f mod 2 = c^2 with c irreducible cubic and v(alpha) = 1.
inline bool pattern_at_two_derived(const LElem& alpha)
{
    return two_adic_shape_ok() && two_adic_valuation(alpha) == 1 &&
           ddf_pattern(reduce_mod(qpoly({1, 1, 0, 1}), Int(2))) == std::vector<int>{3};
}

/// Pattern at 3701 from the lifted split (linear, Eisenstein quadratic, irreducible cubic).
inline std::vector<std::pair<int, int>> pattern_at_3701_derived()
{
    const auto& c = completion_3701();
    if (!c.residue_cubic_irreducible) throw std::logic_error("3701: residue cubic splits");
    return {{1, 1}, {2, 1}, {1, 3}};
}

inline std::vector<std::pair<int, int>> pattern_at_infinity_derived()
{
    int r = sturm_real_root_count(l_modulus());
    std::vector<std::pair<int, int>> p(static_cast<std::size_t>(r), {1, 1});
    for (int i = 0; i < (6 - r) / 2; ++i) p.emplace_back(2, 1);
    return p;
}

// ---------------------------------------------------------------------------
// Partition resolvent

struct ResolventResult {
    QPoly h;
    unsigned long bits = 0;
};

inline ResolventResult partition_resolvent(const QPoly& f, unsigned long bits = 96)
{
    if (f.degree() != 6 || !is_squarefree(f)) throw std::domain_error("partition_resolvent: squarefree sextic required");
    if (f.lead() != 1) throw std::domain_error("partition_resolvent: monic f required");
    for (int attempt = 0; attempt <= 4; ++attempt, bits *= 2) {
        auto rb = certified_roots(f, bits);
        const auto& r = rb.balls;
        std::vector<CBall> sums;
        for (int a = 1; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) {
                // partitions {0, a, b} | rest
                std::vector<int> rest;
                for (int i = 1; i < 6; ++i)
                    if (i != a && i != b) rest.push_back(i);
                CBall s = (r[0] * r[a] * r[b]).rounded(bits) + (r[rest[0]] * r[rest[1]] * r[rest[2]]).rounded(bits);
                sums.push_back(s.rounded(bits));
            }
        auto c = ball_poly_from_roots(sums, bits);
        std::vector<Rat> coeffs;
        bool ok = true;
        for (auto& b : c) {
            auto n = b.unique_integer();
            if (!n) {
                ok = false;
                break;
            }
            coeffs.emplace_back(*n);
        }
        if (ok) return {QPoly(coeffs), bits};
    }
    throw std::runtime_error("partition_resolvent: interval refinement stalled");
}

// ---------------------------------------------------------------------------
// F2 linear algebra on G = <u1, u2, u3, -1, alpha, beta1, beta2, beta3>

inline const std::vector<std::string>& g_basis_names()
{
    static const std::vector<std::string> n{"u1", "u2", "u3", "-1", "alpha", "beta1", "beta2", "beta3"};
    return n;
}

using SquareClassVector = F2Vec;

inline SquareClassVector g_vector(const std::vector<std::string>& factors)
{
    SquareClassVector v(8, 0);
    for (auto& f : factors) {
        auto& n = g_basis_names();
        auto it = std::find(n.begin(), n.end(), f);
        if (it == n.end()) throw std::domain_error("unknown generator " + f);
        v[static_cast<std::size_t>(it - n.begin())] ^= 1;
    }
    return v;
}

/// "u3*beta1*beta2" -> vector
inline SquareClassVector g_vector(const std::string& product)
{
    std::vector<std::string> f;
    std::size_t s = 0;
    while (s <= product.size()) {
        auto e = product.find('*', s);
        if (e == std::string::npos) e = product.size();
        if (e > s) f.push_back(product.substr(s, e - s));
        s = e + 1;
    }
    return g_vector(f);
}

inline std::string g_text(const SquareClassVector& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) s += (s.empty() ? "" : "*") + g_basis_names()[i];
    return s.empty() ? "1" : s;
}

inline LElem g_element(const ElementTable& t, const SquareClassVector& v)
{
    LElem r(1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) r = r * t.get(g_basis_names()[i]);
    return r;
}

/// Norm class in Q^*/Q^{*2} as a vector over the primes {-1, 2, 3701}.
inline F2Vec norm_class(const Rat& n)
{
    if (is_zero(n)) throw std::domain_error("norm_class of zero");
    F2Vec v(3, 0);
    v[0] = n < 0 ? 1 : 0;
    v[1] = static_cast<int>(((vp(n, Int(2)) % 2) + 2) % 2);
    v[2] = static_cast<int>(((vp(n, Int(3701)) % 2) + 2) % 2);
    Rat rest = n / (rpow(Rat(2), vp(n, Int(2))) * rpow(Rat(3701), vp(n, Int(3701))));
    if (rest < 0) rest = -rest;
    if (rest != 1) throw std::domain_error("norm_class: norm not supported on {-1, 2, 3701}");
    return v;
}

struct HBasis {
    std::vector<SquareClassVector> quotient_relations;  // images of -1, 2, 3701 in G
    std::vector<std::string> g_prime_basis;             // names spanning G' = G / relations
    std::vector<SquareClassVector> kernel;              // basis of H in G coordinates
};

/// Span equality over F2.
inline bool same_span(const std::vector<F2Vec>& a, const std::vector<F2Vec>& b)
{
    std::vector<F2Vec> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    std::size_t ra = a.empty() ? 0 : f2_rank(a), rb = b.empty() ? 0 : f2_rank(b), rab = ab.empty() ? 0 : f2_rank(ab);
    return ra == rb && rb == rab;
}

inline HBasis h_group_basis(const ElementTable& t, std::vector<std::string> g_prime = {"u1", "u3", "alpha", "beta1", "beta2"})
{
    for (auto& e : t.elements)
        if (e.norm != e.claimed_norm) throw FixtureError("fixture norm inconsistent for " + e.name);
    HBasis out;
    // -1, 2 = alpha^2 u2, 3701 = beta1 beta2^2 beta3
    out.quotient_relations = {g_vector("-1"), g_vector("u2"), g_vector("beta1*beta3")};
    out.g_prime_basis = g_prime;
    std::vector<F2Vec> rows;
    for (auto& n : g_prime) rows.push_back(norm_class(l_norm(t.get(n))));
    for (auto& k : f2_left_kernel(rows)) {
        SquareClassVector v(8, 0);
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i]) {
                auto w = g_vector(g_prime[i]);
                for (std::size_t j = 0; j < 8; ++j) v[j] ^= w[j];
            }
        out.kernel.push_back(v);
    }
    return out;
}

/// All nonzero elements of the span of a basis.
inline std::vector<SquareClassVector> span_nonzero(const std::vector<SquareClassVector>& basis)
{
    std::vector<SquareClassVector> out;
    for (unsigned mask = 1; mask < (1u << basis.size()); ++mask) {
        SquareClassVector v(8, 0);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (mask >> i & 1)
                for (std::size_t j = 0; j < 8; ++j) v[j] ^= basis[i][j];
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int ca = std::accumulate(a.begin(), a.end(), 0), cb = std::accumulate(b.begin(), b.end(), 0);
        return ca != cb ? ca < cb : a > b;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Elimination

struct Elimination {
    SquareClassVector h;
    std::string place;  // "3701" or "2", empty when not eliminated
    std::string reason;
    bool eliminated = false;
};

struct LocalImage {
    long p = 0;
    Rat x;       // the local point (x, sqrt(y2)) on the curve
    Rat y2;
    bool point_exists = false;
    LElem image;  // x - T
};

inline LocalImage local_image_generator(long p, const Rat& x)
{
    LocalImage g;
    g.p = p;
    g.x = x;
    g.y2 = l_modulus().eval(x);
    try {
        hensel_sqrt(PadicNum::from_rat(g.y2, Int(p), 12));
        g.point_exists = true;
    } catch (const std::domain_error&) {
        g.point_exists = false;
    }
    // [P - inf-] = P + inf+ - inf+ - inf-
    DivClass<Rat> d;
    d.u = qpoly({0, 1}) - QPoly(x);
    d.mp = 1;
    d.mm = 0;
    g.image = x_minus_T_image(d);
    return g;
}

inline std::vector<Elimination> eliminate_h(const ElementTable& t, const std::vector<SquareClassVector>& h_nonzero,
                                            const LocalImage& at2, const LocalImage& at3701)
{
    const LElem alpha = t.get("alpha");
    std::vector<Elimination> out;
    long target_parity = local_valuation(at3701.image, LPlace::E).v % 2;
    for (auto& h : h_nonzero) {
        Elimination e;
        e.h = h;
        LElem x = g_element(t, h);
        long par = ((local_valuation(x, LPlace::E).v % 2) + 2) % 2;
        if (par != ((target_parity + 2) % 2)) {
            e.eliminated = true;
            e.place = "3701";
            e.reason = "E-valuation parity " + std::to_string(par) + " vs " + std::to_string(target_parity) + " for the local image";
            out.push_back(e);
            continue;
        }
        // at 2 the local image is {1, class of 2 - T}
        bool a = local_square_class_test(x, 2, alpha).trivial;
        bool b = local_square_class_test(x * at2.image, 2, alpha).trivial;
        if (!a && !b) {
            e.eliminated = true;
            e.place = "2";
            e.reason = g_text(h) + " and " + g_text(h) + "*(2-T) both nontrivial in L_2^*/L_2^*2 Q_2^*";
        } else {
            e.reason = "not eliminated";
        }
        out.push_back(e);
    }
    return out;
}

/// y = 2z + x^3 + x + 1 turns y^2 = f into 4 (z^2 + (x^3+x+1) z - (2x^5+5x^4+5x^3+x^2+x)).
inline BiPoly bipoly_in_x(const QPoly& q)
{
    std::vector<QPoly> rows;
    for (int i = 0; i <= q.degree(); ++i) rows.emplace_back(q[i]);
    return BiPoly::from_rows(rows);
}

inline bool good_reduction_identity()
{
    BiPoly X = BiPoly::X(), Z = BiPoly::Y();
    BiPoly c = X.pow(3) + X + BiPoly(Rat(1));
    BiPoly y = Z * BiPoly(Rat(2)) + c;
    BiPoly lhs = y * y - bipoly_in_x(l_modulus());
    BiPoly rhs = (Z * Z + c * Z - bipoly_in_x(qpoly({0, 1, 1, 5, 5, 2}))) * BiPoly(Rat(4));
    return lhs == rhs;
}

struct RankResult {
    long rank = -1;
    long torsion = 0;
    long j_mod_ker_Q = 0;      // #J(Q)/ker(x - T)
    long index_Q = 0;          // [ker : 2J(Q)]
    long j_mod_2j_Q = 0;
    std::vector<Elimination> eliminations;
    bool ok = false;
};

inline RankResult rank_certificate(const ElementTable& t)
{
    RankResult r;
    r.torsion = torsion_bound(l_modulus(), {3, 5});
    HBasis hb = h_group_basis(t);
    auto at2 = local_image_generator(2, Rat(2));
    auto at3701 = local_image_generator(3701, Rat(-4));
    r.eliminations = eliminate_h(t, span_nonzero(hb.kernel), at2, at3701);
    bool all = std::all_of(r.eliminations.begin(), r.eliminations.end(), [](auto& e) { return e.eliminated; });
    r.j_mod_ker_Q = all ? 1 : 0;
    bool f_root = !rational_roots(l_modulus()).empty();
    bool h_root = !rational_roots(partition_resolvent_h()).empty();
    r.index_Q = (f_root || h_root) ? 1 : 2;
    r.j_mod_2j_Q = r.j_mod_ker_Q * r.index_Q;
    // #J/2J = 2^(rank + dim J[2]); J(Q)[2] is trivial here
    if (all && r.torsion == 1 && at2.point_exists && at3701.point_exists) {
        long n = r.j_mod_2j_Q, k = 0;
        while (n > 1 && n % 2 == 0) {
            n /= 2;
            ++k;
        }
        r.rank = k;
        r.ok = (n == 1);
    }
    return r;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_DESCENT_HPP
