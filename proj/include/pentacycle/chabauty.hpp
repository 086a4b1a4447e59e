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

// 3-adic Chabauty on the Jacobian: local parameters, the degree-3 formal group
// with exp/log, t(n), the k-series, theta_1/theta_2 and Strassman.

#ifndef PENTACYCLE_CHABAUTY_HPP
#define PENTACYCLE_CHABAUTY_HPP

#include <array>
#include <set>
#include <string>
#include <vector>

#include "pentacycle/exact.hpp"
#include "pentacycle/fixtures.hpp"
#include "pentacycle/jacobian.hpp"
#include "pentacycle/localnum.hpp"

namespace pentacycle {

/// Curve coefficients f_0..f_6 of y^2 = f(x).
using CurveCoeffs = std::array<Rat, 7>;

inline CurveCoeffs curve_coeffs(const QPoly& f)
{
    CurveCoeffs c;
    for (int i = 0; i <= 6; ++i) c[i] = f[i];
    return c;
}

inline const Int& chabauty_modulus()
{
    static const Int m = 81;
    return m;
}

/// r mod 81 in [0, 81); r must be 3-integral.
inline Int mod81(const Rat& r)
{
    if (vp(Int(r.get_den()), Int(3)) > 0) throw std::domain_error("mod81: not 3-integral");
    return (ModInt(r.get_num(), chabauty_modulus()) / ModInt(r.get_den(), chabauty_modulus())).value();
}

inline std::vector<Int> mod81(const QPoly& p, int min_len = 0)
{
    std::vector<Int> v;
    for (int i = 0; i <= p.degree(); ++i) v.push_back(mod81(p[i]));
    while (static_cast<int>(v.size()) < min_len) v.emplace_back(0);
    while (static_cast<int>(v.size()) > min_len && !v.empty() && is_zero(v.back())) v.pop_back();
    return v;
}

struct LocalParams {
    Rat s1, s2;
    friend bool operator==(const LocalParams& a, const LocalParams& b) { return a.s1 == b.s1 && a.s2 == b.s2; }
};

namespace detail {

template <class K>
K F0(const CurveCoeffs& f, const K& x1, const K& x2)
{
    K p = x1 * x2, s = x1 + x2;
    return K(2 * f[0]) + K(f[1]) * s + K(2 * f[2]) * p + K(f[3]) * p * s + K(2 * f[4]) * p * p + K(f[5]) * p * p * s +
           K(2 * f[6]) * p * p * p;
}

template <class K>
K G0(const CurveCoeffs& f, const K& x1, const K& x2)
{
    K x22 = x2 * x2, x23 = x22 * x2, x24 = x23 * x2, x25 = x24 * x2, x12 = x1 * x1;
    return K(4 * f[0]) + K(f[1]) * (x1 + K(3) * x2) + K(f[2]) * (K(2) * x1 * x2 + K(2) * x22) +
           K(f[3]) * (K(3) * x1 * x22 + x23) + K(4 * f[4]) * x1 * x23 + K(f[5]) * (x12 * x23 + K(3) * x1 * x24) +
           K(f[6]) * (K(2) * x12 * x24 + K(2) * x1 * x25);
}

template <class K>
K G1(const CurveCoeffs& f, const K& x1, const K& x2)
{
    K x22 = x2 * x2, x23 = x22 * x2, x24 = x23 * x2, x25 = x24 * x2, x12 = x1 * x1;
    return K(f[0]) * (K(2) * x1 + K(2) * x2) + K(f[1]) * (K(3) * x1 * x2 + x22) + K(4 * f[2]) * x1 * x22 +
           K(f[3]) * (x12 * x22 + K(3) * x1 * x23) + K(f[4]) * (K(2) * x12 * x23 + K(2) * x1 * x24) +
           K(f[5]) * (K(3) * x12 * x24 + x1 * x25) + K(4 * f[6]) * x12 * x25;
}

}  // namespace detail

/// s_1, s_2 of [(x1,y1) + (x2,y2)] over any field K containing the coordinates.
template <class K>
std::pair<K, K> local_params_points(const CurveCoeffs& f, const K& x1, const K& y1, const K& x2, const K& y2)
{
    K den = detail::F0(f, x1, x2) - K(2) * y1 * y2;
    if (is_zero(den)) throw std::domain_error("local_params: F0 - 2 y1 y2 vanishes");
    den = den * den;
    K dx = x1 - x2;
    K s1 = (detail::G1(f, x1, x2) * y1 - detail::G1(f, x2, x1) * y2) * dx / den;
    K s2 = (detail::G0(f, x1, x2) * y1 - detail::G0(f, x2, x1) * y2) * dx / den;
    return {s1, s2};
}

inline LocalParams local_params(const CurveCoeffs& f, const Rat& x1, const Rat& y1, const Rat& x2, const Rat& y2)
{
    auto [a, b] = local_params_points<Rat>(f, x1, y1, x2, y2);
    return {a, b};
}

/// Local parameters of an affine class [P1 + P2]; conjugate pairs go through Q(sqrt disc u).
inline LocalParams local_params(const CurveCoeffs& f, const DivClass<Rat>& d)
{
    if (d.u.degree() != 2) throw std::domain_error("local_params: class must have affine support of degree 2");
    auto rs = rational_roots(squarefree_part(d.u));
    if (rs.size() == 2) return local_params(f, rs[0], d.v.eval(rs[0]), rs[1], d.v.eval(rs[1]));
    if (rs.size() == 1) throw std::domain_error("local_params: double point");
    using Q2 = QuadExt<Rat>;
    Rat disc = d.u[1] * d.u[1] - 4 * d.u[0];
    Q2 x1(Rat(-d.u[1] / 2), Rat(1, 2), disc), x2 = x1.conj();
    auto yv = [&](const Q2& x) { return Q2(d.v[0]) + Q2(d.v[1]) * x; };
    auto [a, b] = local_params_points<Q2>(f, x1, yv(x1), x2, yv(x2));
    if (!a.in_base() || !b.in_base()) throw std::logic_error("local_params: conjugate pair gave irrational parameters");
    return {a.re(), b.re()};
}

// ---------------------------------------------------------------------------
// Degree-3 formal group, exp and log. Inputs need 3-adic valuation >= 1; the
// results are exact rationals whose residues mod 81 are certified.

/// Lower bound for v_3 of the discarded degree >= 5 terms of E and L,
/// sum a_ij s1^i s2^j / (i! j!), when v(s) >= v.
inline long exp_log_tail_bound(long v, int max_degree = 400)
{
    auto v3fact = [](int n) {
        long e = 0;
        for (int q = 3; q <= n; q *= 3) e += n / q;
        return e;
    };
    long best = LONG_MAX;
    for (int d = 5; d <= max_degree; d += 2) {
        long worst = 0;
        for (int i = 0; i <= d; ++i) worst = std::max(worst, v3fact(i) + v3fact(d - i));
        best = std::min(best, d * v - worst);
    }
    return best;
}

namespace detail {

inline void require_v1(const LocalParams& s)
{
    for (auto* x : {&s.s1, &s.s2})
        if (!is_zero(*x) && vp(*x, Int(3)) < 1) throw std::domain_error("formal group: parameter not in 3Z_3");
}

}  // namespace detail

inline LocalParams formal_add(const CurveCoeffs& f, const LocalParams& s, const LocalParams& t)
{
    detail::require_v1(s);
    detail::require_v1(t);
    Rat u1 = s.s1 + t.s1 + 2 * f[4] * s.s1 * s.s1 * t.s1 + 2 * f[4] * s.s1 * t.s1 * t.s1 - f[1] * s.s2 * s.s2 * t.s2 -
             f[1] * s.s2 * t.s2 * t.s2;
    Rat u2 = s.s2 + t.s2 + 2 * f[2] * s.s2 * s.s2 * t.s2 + 2 * f[2] * s.s2 * t.s2 * t.s2 - f[5] * s.s1 * s.s1 * t.s1 -
             f[5] * s.s1 * t.s1 * t.s1;
    return {u1, u2};
}

inline LocalParams formal_log(const CurveCoeffs& f, const LocalParams& s)
{
    detail::require_v1(s);
    Rat c1 = s.s1 * s.s1 * s.s1, c2 = s.s2 * s.s2 * s.s2;
    return {Rat(s.s1 + (-2 * f[4] * c1 + f[1] * c2) / 3), Rat(s.s2 + (-2 * f[2] * c2 + f[5] * c1) / 3)};
}

inline LocalParams formal_exp(const CurveCoeffs& f, const LocalParams& s)
{
    detail::require_v1(s);
    Rat c1 = s.s1 * s.s1 * s.s1, c2 = s.s2 * s.s2 * s.s2;
    return {Rat(s.s1 + (2 * f[4] * c1 - f[1] * c2) / 3), Rat(s.s2 + (2 * f[2] * c2 - f[5] * c1) / 3)};
}

inline bool congruent81(const LocalParams& a, const LocalParams& b)
{
    return mod81(a.s1) == mod81(b.s1) && mod81(a.s2) == mod81(b.s2);
}

/// t(n) = E(n L(s)) as polynomials in n (exact truncation).
struct TSeries {
    QPoly t1, t2;
};

inline TSeries t_series_exact(const CurveCoeffs& f, const LocalParams& s)
{
    LocalParams l = formal_log(f, s);
    QPoly a = QPoly::monomial(l.s1, 1), b = QPoly::monomial(l.s2, 1);
    QPoly a3 = a * a * a, b3 = b * b * b;
    QPoly t1 = a + (a3.scale(2 * f[4]) - b3.scale(f[1])).scale(Rat(1, 3));
    QPoly t2 = b + (b3.scale(2 * f[2]) - a3.scale(f[5])).scale(Rat(1, 3));
    return {t1, t2};
}

// ---------------------------------------------------------------------------
// k-series and theta

/// Parses [[coef, "t1^2*t2"], ...] into a polynomial in (t1, t2) = (X, Y).
inline BiPoly parse_k_series(const Json& terms)
{
    BiPoly b;
    for (auto& t : terms) {
        Rat c = parse_rational(t.at(0).get<std::string>());
        std::string m = t.at(1).get<std::string>();
        int i = 0, j = 0;
        std::size_t pos = 0;
        while (pos < m.size()) {
            auto e = m.find('*', pos);
            if (e == std::string::npos) e = m.size();
            std::string f = m.substr(pos, e - pos);
            pos = e + 1;
            if (f == "1") continue;
            int pw = 1;
            auto caret = f.find('^');
            if (caret != std::string::npos) {
                pw = std::stoi(f.substr(caret + 1));
                f = f.substr(0, caret);
            }
            if (f == "t1")
                i += pw;
            else if (f == "t2")
                j += pw;
            else
                throw FixtureError("k-series: bad monomial " + m);
        }
        b = b + BiPoly::term(c, i, j);
    }
    return b;
}

inline QPoly substitute_t(const BiPoly& k, const TSeries& t)
{
    QPoly acc;
    for (auto& [key, c] : k.terms()) acc = acc + (t.t1.pow(key.first) * t.t2.pow(key.second)).scale(c);
    return acc;
}

struct KSeries {
    std::string name;
    BiPoly k1, k2, k3;
};

inline KSeries load_k_series(const Json& chab, const std::string& name)
{
    const Json& j = chab.at("k_series").at(name);
    return {name, parse_k_series(j.at("k1")), parse_k_series(j.at("k2")), parse_k_series(j.at("k3"))};
}

struct ThetaSeries {
    std::vector<Int> residues;      // coefficients of n^0..n^4 mod 81
    bool high_terms_vanish = false;  // all coefficients of n^>=5 are 0 mod 81
    PadicSeriesTrunc series;
};

inline ThetaSeries theta_series(const KSeries& k, const TSeries& t)
{
    QPoly k1 = substitute_t(k.k1, t), k2 = substitute_t(k.k2, t), k3 = substitute_t(k.k3, t);
    QPoly th = k2 * k2 - (k1 * k3).scale(4);
    ThetaSeries out;
    auto all = mod81(th, 5);
    out.high_terms_vanish = true;
    for (std::size_t i = 5; i < all.size(); ++i)
        if (!is_zero(all[i])) out.high_terms_vanish = false;
    out.residues.assign(all.begin(), all.begin() + 5);
    out.series = PadicSeriesTrunc{Int(3), 4, out.residues, 5, 4};
    return out;
}

/// Drops a mod-81 series to mod 27.
inline PadicSeriesTrunc reduce_to_27(const PadicSeriesTrunc& s)
{
    PadicSeriesTrunc r = s;
    r.k = 3;
    for (auto& c : r.coeffs) c %= 27;
    r.tail_bound = std::min(s.tail_bound, 3L);
    return r;
}

/// (1 : x1+x2 : x1 x2) as a primitive integer triple, homogenized for points at infinity.
inline std::array<Int, 3> support_triple(const DivClass<Rat>& d)
{
    std::array<Rat, 3> t;
    if (d.u.degree() == 2)
        t = {Rat(1), Rat(-d.u[1]), d.u[0]};
    else if (d.u.degree() == 1)
        t = {Rat(0), Rat(1), Rat(-d.u[0])};
    else
        t = {Rat(0), Rat(0), Rat(1)};
    Int den = 1;
    for (auto& x : t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::array<Int, 3> z;
    Int g = 0;
    for (int i = 0; i < 3; ++i) {
        Rat s = t[i] * Rat(den);
        s.canonicalize();
        z[i] = s.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
    }
    for (auto& x : z) x /= g;
    return z;
}

struct SpotCheck {
    long n = 0;
    std::string divisor;
    std::array<Int, 3> triple;
    std::array<Int, 3> k_mod81;
    bool matches = false;
};

/// Compares base + n D' (exact group law) with (k1 : k2 : k3)(t(n)) mod 81.
inline SpotCheck k_series_spot_check(const Genus2Curve<Rat>& C, const DivClass<Rat>& base, const DivClass<Rat>& dprime,
                                     const KSeries& k, const TSeries& t, long n)
{
    SpotCheck sc;
    sc.n = n;
    DivClass<Rat> d = add(C, base, scalar_mul(C, n, dprime));
    sc.divisor = describe(d);
    sc.triple = support_triple(d);
    TSeries tn{QPoly(t.t1.eval(Rat(n))), QPoly(t.t2.eval(Rat(n)))};
    std::array<Rat, 3> kv = {substitute_t(k.k1, tn)[0], substitute_t(k.k2, tn)[0], substitute_t(k.k3, tn)[0]};
    for (int i = 0; i < 3; ++i) sc.k_mod81[i] = mod81(kv[i]);
    sc.matches = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Rat minor = Rat(sc.triple[i]) * kv[j] - Rat(sc.triple[j]) * kv[i];
            if (!is_zero(mod81(minor))) sc.matches = false;
        }
    return sc;
}

/// {l mod 9 : l D~ has the form [P + P]} over F_3.
inline std::vector<long> residue_classes_of_l(const Genus2Curve<ModInt>& C3, const DivClass<ModInt>& D3, long order = 9)
{
    std::vector<long> out;
    DivClass<ModInt> acc = DivClass<ModInt>::identity();
    for (long l = 0; l < order; ++l, acc = add(C3, acc, D3))
        if (is_diagonal_form(C3, acc)) out.push_back(l);
    return out;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_CHABAUTY_HPP
