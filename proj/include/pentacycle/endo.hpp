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

// Quartic Frobenius fields: irreducibility, Galois group, quadratic subfields,
// the pair-sum resolvent and the End J = Z argument.

#ifndef PENTACYCLE_ENDO_HPP
#define PENTACYCLE_ENDO_HPP

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "pentacycle/balls.hpp"
#include "pentacycle/exact.hpp"

namespace pentacycle {

namespace detail {

inline void require_monic_integral_quartic(const QPoly& p)
{
    if (p.degree() != 4 || p.lead() != 1) throw std::domain_error("monic quartic required");
    for (auto& c : p.coeffs())
        if (c.get_den() != 1) throw std::domain_error("integral quartic required");
}

inline bool is_rational_square(const Rat& q)
{
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

inline Rat rational_sqrt(const Rat& q)
{
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return make_rat(n, d);
}

}  // namespace detail

/// Monic integral quartic: no rational root and no split into two integral quadratics.
inline bool quartic_irreducible(const QPoly& p)
{
    detail::require_monic_integral_quartic(p);
    if (!rational_roots(p).empty()) return false;
    const Int a3 = p[3].get_num(), a2 = p[2].get_num(), a1 = p[1].get_num(), a0 = p[0].get_num();
    // (x^2 + a x + b)(x^2 + c x + d): b d = a0, a + c = a3, ac = a2 - b - d, ad + bc = a1
    for (auto& b0 : positive_divisors(abs(a0)))
        for (int sgn : {1, -1}) {
            Int b = b0 * sgn, d = a0 / b;
            Int disc = a3 * a3 - 4 * (a2 - b - d);
            if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
            Int r;
            mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
            for (Int a : {Int((a3 + r) / 2), Int((a3 - r) / 2)}) {
                if ((a3 + r) % 2 != 0) continue;
                Int c = a3 - a;
                if (a * d + b * c == a1) return false;
            }
        }
    return true;
}

/// Roots r1 r2 + r3 r4 etc.
inline QPoly resolvent_cubic(const QPoly& p)
{
    const Rat a3 = p[3], a2 = p[2], a1 = p[1], a0 = p[0];
    return QPoly(std::vector<Rat>{Rat(-(a1 * a1 + a0 * a3 * a3 - 4 * a0 * a2)), Rat(a1 * a3 - 4 * a0), Rat(-a2), Rat(1)});
}

enum class QuarticGroup { C4, V4, D4, A4, S4 };

inline const char* group_name(QuarticGroup g)
{
    switch (g) {
    case QuarticGroup::C4: return "C4";
    case QuarticGroup::V4: return "V4";
    case QuarticGroup::D4: return "D4";
    case QuarticGroup::A4: return "A4";
    case QuarticGroup::S4: return "S4";
    }
    return "?";
}

inline long group_order(QuarticGroup g)
{
    switch (g) {
    case QuarticGroup::C4:
    case QuarticGroup::V4: return 4;
    case QuarticGroup::D4: return 8;
    case QuarticGroup::A4: return 12;
    case QuarticGroup::S4: return 24;
    }
    return 0;
}

/// Squarefree m != 1 such that Q(sqrt m) lies in Q[x]/(p), p irreducible.
inline std::vector<Int> quadratic_subfields(const QPoly& p)
{
    detail::require_monic_integral_quartic(p);
    const Rat a = p[3] / 2, a2 = p[2], a1 = p[1], a0 = p[0];
    Int disc = discriminant(p).get_num();
    std::vector<Int> primes;
    for (auto& [q, e] : factor_small(abs(disc))) primes.push_back(q);
    std::vector<Int> out;
    for (unsigned mask = 0; mask < (1u << primes.size()); ++mask)
        for (int sgn : {1, -1}) {
            Int m = sgn;
            for (std::size_t i = 0; i < primes.size(); ++i)
                if (mask >> i & 1) m *= primes[i];
            if (m == 1) continue;
            const Rat mr(m);
            // p = N(x^2 + (a + s sqrt m) x + (c + t sqrt m))
            bool found = false;
            // s = 0: c fixed, t^2 m = c^2 - a0
            {
                Rat c = (a2 - a * a) / 2;
                Rat t2 = (c * c - a0) / mr;
                if (2 * a * c == a1 && !is_zero(t2) && detail::is_rational_square(t2)) found = true;
            }
            // s != 0: S = s^2 m solves S (c(S)^2 - a0) = (a c(S) - a1/2)^2 with c(S) = (a2 - a^2 + S)/2
            if (!found) {
                QPoly S = QPoly::x();
                QPoly c = (QPoly(Rat(a2 - a * a)) + S).scale(Rat(1, 2));
                QPoly lhs = S * (c * c - QPoly(a0));
                QPoly rhs = c.scale(a) - QPoly(Rat(a1 / 2));
                QPoly eq = lhs - rhs * rhs;
                if (!is_zero(eq))
                    for (auto& r : rational_roots(squarefree_part(eq))) {
                        Rat s2 = r / mr;
                        if (!is_zero(r) && detail::is_rational_square(s2)) {
                            found = true;
                            break;
                        }
                    }
            }
            if (found) out.push_back(m);
        }
    std::sort(out.begin(), out.end());
    return out;
}

struct QuarticAnalysis {
    QPoly quartic;
    bool irreducible = false;
    QuarticGroup group = QuarticGroup::S4;
    Rat discriminant;
    QPoly resolvent;
    std::vector<Rat> resolvent_roots;
    std::vector<Int> quadratic_subfields;
};

inline QuarticAnalysis quartic_galois(const QPoly& p)
{
    QuarticAnalysis q;
    q.quartic = p;
    q.irreducible = quartic_irreducible(p);
    if (!q.irreducible) throw std::domain_error("quartic_galois: reducible quartic");
    q.discriminant = discriminant(p);
    q.resolvent = resolvent_cubic(p);
    auto rr = rational_roots(squarefree_part(q.resolvent));
    std::sort(rr.begin(), rr.end());
    q.resolvent_roots = rr;
    bool disc_square = detail::is_rational_square(q.discriminant);
    if (rr.empty())
        q.group = disc_square ? QuarticGroup::A4 : QuarticGroup::S4;
    else if (rr.size() == 3)
        q.group = QuarticGroup::V4;
    else {
        // Kappe-Warren: C4 iff x^2 - r x + a0 and x^2 + a3 x + (a2 - r) split over Q(sqrt disc)
        const Rat r = rr[0];
        auto splits = [&](const Rat& d) {
            return is_zero(d) || detail::is_rational_square(d) || detail::is_rational_square(d * q.discriminant);
        };
        bool c4 = splits(r * r - 4 * p[0]) && splits(p[3] * p[3] - 4 * (p[2] - r));
        q.group = c4 ? QuarticGroup::C4 : QuarticGroup::D4;
    }
    if (q.group != QuarticGroup::A4 && q.group != QuarticGroup::S4) q.quadratic_subfields = quadratic_subfields(p);
    return q;
}

// ---------------------------------------------------------------------------
// Splitting-field degree, independently: the orbit of V = r1 + 2 r2 + 3 r3
// under the Galois group is the smallest set {V_pi : pi in H}, H <= S4, whose
// polynomial has integer coefficients and divides the full resolvent.

using Perm4 = std::array<int, 4>;

inline std::vector<std::vector<Perm4>> subgroups_of_s4()
{
    std::vector<Perm4> all;
    Perm4 p{0, 1, 2, 3};
    do all.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto compose = [](const Perm4& a, const Perm4& b) {
        Perm4 c;
        for (int i = 0; i < 4; ++i) c[i] = a[b[i]];
        return c;
    };
    std::set<std::vector<Perm4>> groups;
    for (auto& g1 : all)
        for (auto& g2 : all) {
            std::set<Perm4> h{Perm4{0, 1, 2, 3}, g1, g2};
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<Perm4> cur(h.begin(), h.end());
                for (auto& x : cur)
                    for (auto& y : cur)
                        if (h.insert(compose(x, y)).second) grew = true;
            }
            groups.insert(std::vector<Perm4>(h.begin(), h.end()));
        }
    std::vector<std::vector<Perm4>> out(groups.begin(), groups.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    return out;
}

inline long splitting_field_degree(const QPoly& p)
{
    detail::require_monic_integral_quartic(p);
    auto subs = subgroups_of_s4();
    const auto& s4 = subs.back();
    const std::array<std::array<long, 3>, 4> weights{{{1, 2, 3}, {1, 3, 7}, {2, 5, 11}, {1, -4, 9}}};
    for (unsigned long bits : {128UL, 256UL, 512UL})
        for (auto& w : weights) {
            auto rb = certified_roots(p, bits);
            const auto& r = rb.balls;
            if (r.size() != 4) throw std::domain_error("splitting_field_degree: squarefree quartic required");
            auto V = [&](const Perm4& pi) {
                return (CBall(Rat(w[0])) * r[pi[0]] + CBall(Rat(w[1])) * r[pi[1]] + CBall(Rat(w[2])) * r[pi[2]]).rounded(bits);
            };
            auto integral = [&](const std::vector<CBall>& vals) -> std::optional<QPoly> {
                std::vector<Rat> cs;
                for (auto& b : ball_poly_from_roots(vals, bits)) {
                    auto n = b.unique_integer();
                    if (!n) return std::nullopt;
                    cs.emplace_back(*n);
                }
                return QPoly(cs);
            };
            std::vector<CBall> allv;
            for (auto& pi : s4) allv.push_back(V(pi));
            auto full = integral(allv);
            if (!full || !is_squarefree(*full)) continue;
            for (auto& h : subs) {
                std::vector<CBall> vals;
                for (auto& pi : h) vals.push_back(V(pi));
                auto q = integral(vals);
                if (q && divides(*q, *full)) return static_cast<long>(h.size());
            }
            throw std::logic_error("splitting_field_degree: no subgroup matched");
        }
    throw std::runtime_error("splitting_field_degree: no separable resolvent found");
}

// ---------------------------------------------------------------------------
// Pair sums and Frobenius squares

/// Monic square root of a monic polynomial that is a perfect square.
inline QPoly poly_sqrt(const QPoly& a)
{
    if (a.degree() % 2 || a.lead() != 1) throw std::domain_error("poly_sqrt: monic even degree required");
    const int n = a.degree() / 2;
    std::vector<Rat> s(static_cast<std::size_t>(n) + 1, Rat(0));
    s[n] = 1;
    for (int k = 1; k <= n; ++k) {
        // coefficient of x^{2n-k} in s^2 fixes s_{n-k}
        Rat acc = 0;
        for (int i = n - k + 1; i <= n; ++i) {
            int j = 2 * n - k - i;
            if (j >= n - k + 1 && j <= n) acc += s[i] * s[j];
        }
        s[n - k] = (a[2 * n - k] - acc) / 2;
    }
    QPoly r(s);
    if (r * r != a) throw std::domain_error("poly_sqrt: not a square");
    return r;
}

/// prod_{i<j} (x - r_i - r_j) = sqrt(Res_y(P(y), P(x - y)) / (16 P(x/2))).
inline QPoly pair_sum_resolvent(const QPoly& p)
{
    if (p.degree() != 4 || !is_squarefree(p)) throw std::domain_error("pair_sum_resolvent: squarefree quartic required");
    QPoly pm = p.monic();
    // as polynomials in y over Q[x]
    std::vector<QPoly> py, pxy;
    for (int i = 0; i <= 4; ++i) py.emplace_back(pm[i]);
    QQPoly Py(py);
    QQPoly xmy(std::vector<QPoly>{QPoly::x(), QPoly(Rat(-1))});
    QQPoly Pxy;
    for (int i = 4; i >= 0; --i) Pxy = Pxy * xmy + QQPoly(QPoly(pm[i]));
    QPoly R = resultant(Py, Pxy);
    QPoly half = pm.compose(QPoly(std::vector<Rat>{Rat(0), Rat(1, 2)})).scale(Rat(16));
    QPoly sq = R / half;
    return poly_sqrt(sq.monic());
}

/// Power sums p_1..p_k of the roots of a monic polynomial (Newton).
inline std::vector<Rat> power_sums(const QPoly& a, int k)
{
    const int n = a.degree();
    std::vector<Rat> p(static_cast<std::size_t>(k) + 1, Rat(0));
    p[0] = n;
    for (int m = 1; m <= k; ++m) {
        Rat c_m = m <= n ? a[n - m] : Rat(0);
        Rat acc = -m * c_m;
        for (int i = 1; i < m; ++i) acc -= (i <= n ? a[n - i] : Rat(0)) * p[m - i];
        p[m] = acc;
    }
    return p;
}

/// Q with P(X) P(-X) = Q(X^2): the charpoly of the square of Frobenius.
inline QPoly frobenius_square_charpoly(const QPoly& p)
{
    QPoly neg = p.compose(qpoly({0, -1}));
    QPoly prod = p * neg;
    std::vector<Rat> q;
    for (int i = 0; i <= prod.degree(); i += 2) {
        if (!is_zero(prod[i + 1])) throw std::logic_error("P(X)P(-X) not even");
        q.push_back(prod[i]);
    }
    QPoly out(q);
    return out.lead() < 0 ? out.scale(Rat(-1)) : out;
}

struct Obstruction {
    bool holds = false;
    std::vector<std::string> transcript;
};

/// No positive power of a root of P lies in a proper subfield of Q[X]/(P).
inline Obstruction power_in_subfield_obstruction(const QuarticAnalysis& q)
{
    Obstruction o;
    if (q.group != QuarticGroup::D4) {
        o.transcript.push_back("hypothesis unmet: group is " + std::string(group_name(q.group)));
        return o;
    }
    if (q.quadratic_subfields.size() != 1) {
        o.transcript.push_back("hypothesis unmet: expected a unique quadratic subfield");
        return o;
    }
    Int m = q.quadratic_subfields[0];
    bool ok = true;
    // roots of unity with phi(k) | 4: k in {3,4,5,6,8,10,12}
    bool has_m3 = (m == -3), has_m1 = (m == -1);
    o.transcript.push_back("orders 3, 6 need Q(sqrt -3) inside; subfield is Q(sqrt " + m.get_str() + "): " + (has_m3 ? "present" : "excluded"));
    o.transcript.push_back("order 4 needs Q(sqrt -1) inside: " + std::string(has_m1 ? "present" : "excluded"));
    o.transcript.push_back("orders 5, 8, 10, 12 need an abelian quartic field; the group is D4: excluded");
    ok = ok && !has_m3 && !has_m1;
    QPoly neg = q.quartic.compose(qpoly({0, -1}));
    long g = gcd(q.quartic, neg).degree();
    o.transcript.push_back("gcd(P(X), P(-X)) has degree " + std::to_string(g) + (g == 0 ? ": sigma(pi)/pi != -1" : ": -pi is a root"));
    ok = ok && g == 0;
    o.transcript.push_back(ok ? "only roots of unity are +-1; no power of pi lies in a proper subfield" : "obstruction fails");
    o.holds = ok;
    return o;
}


struct EndCertificate {
    QuarticAnalysis at5, at7;
    Obstruction obstruction;
    bool absolutely_simple = false;   // endomorphism algebra at 5 is the quartic CM field
    bool subfields_differ = false;    // unique quadratic subfields at 5 and 7 differ
    bool end_is_z = false;
    bool nonmodular = false;          // no nonzero map from a modular Jacobian (stated dichotomy)
    std::vector<std::string> transcript;
};

/// End J = Z from the Frobenius quartics at 5 and 7. The dichotomy for
/// abelian varieties of GL2 type (rank of End B is dim B or 2 dim B) is taken
/// as an axiom and recorded in the transcript.
inline EndCertificate end_is_z_certificate(const QPoly& P5, const QPoly& P7)
{
    EndCertificate c;
    c.at5 = quartic_galois(P5);
    c.at7 = quartic_galois(P7);
    c.obstruction = power_in_subfield_obstruction(c.at5);
    c.absolutely_simple = c.obstruction.holds;
    auto unique = [](const QuarticAnalysis& a) { return a.quadratic_subfields.size() == 1; };
    if (!unique(c.at5) || !unique(c.at7)) throw std::domain_error("end_is_z_certificate: quartics need a unique quadratic subfield");
    c.subfields_differ = c.at5.quadratic_subfields[0] != c.at7.quadratic_subfields[0];
    c.transcript.push_back("End at 5 tensor Q is Q[X]/(P5), with quadratic subfield Q(sqrt " + c.at5.quadratic_subfields[0].get_str() + ")");
    c.transcript.push_back("End at 7 tensor Q is Q[X]/(P7), with quadratic subfield Q(sqrt " + c.at7.quadratic_subfields[0].get_str() + ")");
    c.transcript.push_back("a real quadratic endomorphism field would embed in both; they differ, so End J tensor Q = Q");
    c.end_is_z = c.absolutely_simple && c.subfields_differ;
    c.transcript.push_back("axiom: for B of GL2 type the rank of End B is dim B or 2 dim B");
    c.nonmodular = c.end_is_z;  // rank 1 < dim J = 2
    c.transcript.push_back(c.nonmodular ? "rank of End J is 1 < 2: J is not a quotient of a modular Jacobian" : "no conclusion");
    return c;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_ENDO_HPP
