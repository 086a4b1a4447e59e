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

// Jacobian of y^2 = f(x), deg f = 6, f monic, over a field of characteristic
// != 2. Classes live in Pic^2: an effective degree-2 divisor
//   (affine part with Mumford data u, v) + mp*inf+ + mm*inf-,
// where inf+ is the point with y/x^3 -> +1. The canonical class
// inf+ + inf- is the identity O and is stored as u = 1, mp = mm = 1.
//
// Addition: opposite affine points are cancelled first (Cantor composition),
// each cancelled pair or inf+ + inf- pair removes one copy of the canonical
// class, and a remaining degree-4 divisor R is reduced by the cubic
// y = c(x) through R: div(y - c) = R + R' - 3inf+ - 3inf- (adjusted at
// infinity), so R - K ~ -R' + ... ~ iota(R') + corrections.

#ifndef PENTACYCLE_JACOBIAN_HPP
#define PENTACYCLE_JACOBIAN_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pentacycle/exact.hpp"

namespace pentacycle {

template <class K>
struct CurvePoint {
    enum Kind { Affine, InfPlus, InfMinus } kind = Affine;
    K x, y;

    static CurvePoint affine(K x, K y) { return {Affine, std::move(x), std::move(y)}; }
    static CurvePoint inf(int branch) { return {branch > 0 ? InfPlus : InfMinus, K(0), K(0)}; }
};

template <class K>
struct Genus2Curve {
    Poly<K> f;
    Poly<K> Y;  // polynomial part of sqrt(f) on the inf+ branch; deg(f - Y^2) <= 2

    explicit Genus2Curve(Poly<K> poly) : f(std::move(poly))
    {
        if (f.degree() != 6) throw std::domain_error("Genus2Curve: sextic required");
        if (!(f.lead() == K(1))) throw std::domain_error("Genus2Curve: f must be monic");
        K two(2);
        K a = exquo(f[5], two);
        K b = exquo(f[4] - a * a, two);
        K c = exquo(f[3] - two * a * b, two);
        Y = Poly<K>(std::vector<K>{c, b, a, K(1)});
    }

    bool on_curve(const CurvePoint<K>& P) const { return P.kind != CurvePoint<K>::Affine || P.y * P.y == f.eval(P.x); }
};

template <class K>
struct DivClass {
    Poly<K> u{K(1)}, v;
    int mp = 1, mm = 1;

    static DivClass identity() { return {}; }
    bool is_identity() const { return u.degree() == 0 && mp == 1 && mm == 1; }
    friend bool operator==(const DivClass& a, const DivClass& b)
    {
        return a.mp == b.mp && a.mm == b.mm && a.u == b.u && a.v == b.v;
    }
    friend bool operator!=(const DivClass& a, const DivClass& b) { return !(a == b); }
};

namespace detail {

template <class K>
DivClass<K> make_class(const Poly<K>& u, const Poly<K>& v, int mp, int mm)
{
    DivClass<K> d;
    d.u = u.monic();
    d.v = d.u.degree() == 0 ? Poly<K>() : v % d.u;
    d.mp = mp;
    d.mm = mm;
    if (d.u.degree() + mp + mm != 2) throw std::logic_error("DivClass: degree must be 2");
    return d;
}

template <class K>
struct Composition {
    Poly<K> U, V;
    int cancelled = 0;
};

// Cantor composition of the affine parts; `cancelled` = deg gcd(u1, u2, v1 + v2).
template <class K>
Composition<K> compose(const Poly<K>& f, const Poly<K>& u1, const Poly<K>& v1, const Poly<K>& u2, const Poly<K>& v2)
{
    auto x1 = xgcd(u1, u2);
    auto x2 = xgcd(x1.g, v1 + v2);
    const Poly<K>& d = x2.g;
    Poly<K> s1 = x2.s * x1.s, s2 = x2.s * x1.t, s3 = x2.t;
    Composition<K> c;
    c.U = (u1 * u2) / (d * d);
    Poly<K> num = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f);
    auto [q, r] = divmod(num, d);
    if (!is_zero(r)) throw std::logic_error("compose: inexact division");
    c.V = c.U.degree() == 0 ? Poly<K>() : q % c.U;
    c.cancelled = d.degree();
    return c;
}

}  // namespace detail

template <class K>
DivClass<K> from_points(const Genus2Curve<K>& C, const CurvePoint<K>& P1, const CurvePoint<K>& P2)
{
    using P = CurvePoint<K>;
    if (!C.on_curve(P1) || !C.on_curve(P2)) throw std::domain_error("from_points: point not on curve");
    int mp = (P1.kind == P::InfPlus) + (P2.kind == P::InfPlus);
    int mm = (P1.kind == P::InfMinus) + (P2.kind == P::InfMinus);
    if (mp >= 1 && mm >= 1) return DivClass<K>::identity();
    Poly<K> X = Poly<K>::x();
    if (mp + mm == 2) return detail::make_class(Poly<K>(K(1)), Poly<K>(), mp, mm);
    if (mp + mm == 1) {
        const P& A = P1.kind == P::Affine ? P1 : P2;
        return detail::make_class(X - A.x, Poly<K>(A.y), mp, mm);
    }
    if (!(P1.x == P2.x)) {
        K s = exquo(P2.y - P1.y, P2.x - P1.x);
        return detail::make_class((X - P1.x) * (X - P2.x), Poly<K>(P1.y) + (X - P1.x) * s, 0, 0);
    }
    if (P1.y == -P2.y) return DivClass<K>::identity();  // includes 2*(Weierstrass point)
    K s = exquo(C.f.derivative().eval(P1.x), K(2) * P1.y);
    return detail::make_class((X - P1.x) * (X - P1.x), Poly<K>(P1.y) + (X - P1.x) * s, 0, 0);
}

/// [P + Pbar] for P = (ax + bx sqrt d, ay + by sqrt d), d a non-square.
inline DivClass<Rat> from_conjugate_pair(const Genus2Curve<Rat>& C, const Rat& ax, const Rat& bx, const Rat& ay, const Rat& by,
                                         const Rat& d)
{
    if (is_zero(bx)) throw std::domain_error("from_conjugate_pair: x must be irrational");
    Rat s = by / bx;
    QPoly u(std::vector<Rat>{Rat(ax * ax - d * bx * bx), Rat(-2 * ax), Rat(1)});
    QPoly v(std::vector<Rat>{Rat(ay - s * ax), s});
    if (!is_zero((v * v - C.f) % u)) throw std::domain_error("from_conjugate_pair: points not on curve or not conjugate");
    return detail::make_class(u, v, 0, 0);
}

template <class K>
DivClass<K> neg(const DivClass<K>& a)
{
    return detail::make_class(a.u, -a.v, a.mm, a.mp);
}

template <class K>
DivClass<K> add(const Genus2Curve<K>& C, const DivClass<K>& a, const DivClass<K>& b)
{
    if (a.is_identity()) return b;
    if (b.is_identity()) return a;
    auto comp = detail::compose(C.f, a.u, a.v, b.u, b.v);
    int Mp = a.mp + b.mp, Mm = a.mm + b.mm;
    int both = std::min(Mp, Mm);
    Mp -= both;
    Mm -= both;
    int pairs = comp.cancelled + both;
    if (pairs >= 2) return DivClass<K>::identity();
    if (pairs == 1) return detail::make_class(comp.U, comp.V, Mp, Mm);

    // degree-4 divisor without canonical pairs: fit y = c(x)
    const Poly<K>& U = comp.U;
    Poly<K> T = Mp > 0 ? C.Y : (Mm > 0 ? -C.Y : Poly<K>());
    Poly<K> c = comp.V + U * divmod(T, U).first;
    Poly<K> R = c * c - C.f;
    int j = 6 - R.degree();
    int jp = c.coeff(3) == K(1) ? j : 0, jm = c.coeff(3) == K(-1) ? j : 0;
    auto [A, rem] = divmod(R, U);
    if (!is_zero(rem)) throw std::logic_error("add: cubic does not pass through the divisor");
    int ep = jm - Mm, em = jp - Mp;
    if (ep < 0 || em < 0) throw std::logic_error("add: inconsistent multiplicities at infinity");
    if (A.degree() == 0 && ep == 1 && em == 1) return DivClass<K>::identity();
    return detail::make_class(A, -c, ep, em);
}

template <class K>
DivClass<K> scalar_mul(const Genus2Curve<K>& C, long n, const DivClass<K>& a)
{
    DivClass<K> base = n < 0 ? neg(a) : a;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    DivClass<K> acc = DivClass<K>::identity();
    while (k) {
        if (k & 1) acc = add(C, acc, base);
        base = add(C, base, base);
        k >>= 1;
    }
    return acc;
}

/// Does f have a root over K? Brute force for prime fields, rational roots over Q.
template <class K>
bool has_weierstrass_point(const Genus2Curve<K>& C)
{
    if constexpr (std::is_same_v<K, Rat>) {
        return !rational_roots(C.f).empty();
    } else {
        Int p = C.f.lead().modulus();
        for (Int x = 0; x < p; ++x)
            if (is_zero(C.f.eval(K(x, p)))) return true;
        return false;
    }
}

/// Class of the form [P + P] for a K-rational point P.
template <class K>
bool is_diagonal_form(const Genus2Curve<K>& C, const DivClass<K>& a)
{
    if (a.is_identity()) return has_weierstrass_point(C);
    if (a.mp == 2 || a.mm == 2) return true;
    if (a.u.degree() != 2) return false;
    return is_zero(a.u[1] * a.u[1] - K(4) * a.u[0]);
}

/// Human-readable form; affine points are spelled out when u splits over Q.
inline std::string describe(const DivClass<Rat>& a)
{
    if (a.is_identity()) return "O";
    std::vector<std::string> parts;
    auto pt = [&](const Rat& x) { return "(" + x.get_str() + "," + Rat(a.v.eval(x)).get_str() + ")"; };
    if (a.u.degree() == 1) parts.push_back(pt(Rat(-a.u[0])));
    if (a.u.degree() == 2) {
        auto rs = rational_roots(a.u);
        if (rs.empty()) return "[P+Pbar] u=" + pretty(a.u) + ", v=" + pretty(a.v);
        if (rs.size() == 1) rs.push_back(rs[0]);
        std::sort(rs.begin(), rs.end(), [](const Rat& x, const Rat& y) { return x > y; });
        for (auto& r : rs) parts.push_back(pt(r));
    }
    for (int i = 0; i < a.mp; ++i) parts.push_back("inf+");
    for (int i = 0; i < a.mm; ++i) parts.push_back("inf-");
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "+" : "") + parts[i];
    return s + "]";
}

inline std::string describe(const DivClass<ModInt>& a)
{
    if (a.is_identity()) return "O";
    std::vector<std::string> parts;
    auto pt = [&](const Int& x, const Int& p) { return "(" + x.get_str() + "," + a.v.eval(ModInt(x, p)).value().get_str() + ")"; };
    if (a.u.degree() >= 1) {
        Int p = a.u.lead().modulus();
        std::vector<Int> roots;
        for (Int x = 0; x < p; ++x)
            if (is_zero(a.u.eval(ModInt(x, p)))) roots.push_back(x);
        if (a.u.degree() == 2 && roots.size() == 1 && is_zero(a.u[1] * a.u[1] - ModInt(4) * a.u[0])) roots.push_back(roots[0]);
        if (static_cast<int>(roots.size()) != a.u.degree()) return "[P+Pbar] u=" + pretty(a.u);
        for (auto& r : roots) parts.push_back(pt(r, p));
    }
    for (int i = 0; i < a.mp; ++i) parts.push_back("inf+");
    for (int i = 0; i < a.mm; ++i) parts.push_back("inf-");
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "+" : "") + parts[i];
    return s + "]";
}

inline Genus2Curve<ModInt> reduce_curve(const QPoly& f, long p) { return Genus2Curve<ModInt>(reduce_mod(f, Int(p))); }

/// D = [inf+ + inf+] over any K.
template <class K>
DivClass<K> infinity_class(int branch)
{
    DivClass<K> d;
    d.mp = branch > 0 ? 2 : 0;
    d.mm = branch > 0 ? 0 : 2;
    return d;
}

template <class K>
std::vector<DivClass<K>> multiples_table(const Genus2Curve<K>& C, const DivClass<K>& D, int limit)
{
    std::vector<DivClass<K>> out{DivClass<K>::identity()};
    for (int n = 1; n <= limit; ++n) out.push_back(add(C, out.back(), D));
    return out;
}

/// Order of a class, searching up to `bound`; 0 if not found.
template <class K>
long class_order(const Genus2Curve<K>& C, const DivClass<K>& D, long bound)
{
    DivClass<K> acc = D;
    for (long n = 1; n <= bound; ++n) {
        if (acc.is_identity()) return n;
        acc = add(C, acc, D);
    }
    return 0;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_JACOBIAN_HPP
