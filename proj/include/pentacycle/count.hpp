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

// Point counts over F_p and F_{p^2}, Jacobian orders and Frobenius
// characteristic polynomials for y^2 = f(x), deg f = 6.

#ifndef PENTACYCLE_COUNT_HPP
#define PENTACYCLE_COUNT_HPP

#include <numeric>
#include <vector>

#include "pentacycle/exact.hpp"

namespace pentacycle {

struct FrobData {
    long p = 0;
    long count_p = 0, count_p2 = 0;
    long t = 0, s = 0;
    QPoly charpoly;  // X^4 - tX^3 + sX^2 - ptX + p^2
    long jacobian_order = 0;
};

inline bool good_reduction(const QPoly& f, long p)
{
    if (p == 2) return false;
    QPoly d = f.derivative();
    Rat disc = resultant(f, d);
    return !is_zero(disc) && vp(disc, Int(p)) == 0 && vp(f.lead(), Int(p)) == 0;
}

inline long least_nonresidue(long p)
{
    for (long n = 2; n < p; ++n)
        if (ModInt(Int(n), Int(p)).pow(Int((p - 1) / 2)) != ModInt(1)) return n;
    throw std::logic_error("least_nonresidue: none found");
}

/// #C(F_q) for q = p or p^2, counting both points at infinity when lc(f) is a square.
inline long point_count(const QPoly& f, long p, int degree)
{
    if (!good_reduction(f, p)) throw std::domain_error("point_count: bad reduction at p");
    if (degree != 1 && degree != 2) throw std::domain_error("point_count: q must be p or p^2");
    const Int P(p);
    Poly<ModInt> fp = reduce_mod(f, P);
    long total = 0;
    if (degree == 1) {
        Int e((p - 1) / 2);
        auto chi = [&](const ModInt& a) { return is_zero(a) ? 0 : (a.pow(e) == ModInt(1) ? 1 : -1); };
        for (long x = 0; x < p; ++x) total += 1 + chi(fp.eval(ModInt(Int(x), P)));
        total += 1 + chi(fp.lead());
        return total;
    }
    using F2 = QuadExt<ModInt>;
    ModInt nr(Int(least_nonresidue(p)), P);
    Int e((p * p - 1) / 2);
    std::vector<F2> fc;
    for (int i = 0; i <= fp.degree(); ++i) fc.push_back(F2(fp[i], ModInt(Int(0), P), nr));
    Poly<F2> f2(fc);
    auto chi = [&](const F2& a) { return is_zero(a) ? 0 : (a.pow(e) == F2(ModInt(Int(1), P), ModInt(Int(0), P), nr) ? 1 : -1); };
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b) total += 1 + chi(f2.eval(F2(ModInt(Int(a), P), ModInt(Int(b), P), nr)));
    total += 1 + chi(f2.lead());
    return total;
}

inline FrobData frobenius_charpoly(const QPoly& f, long p)
{
    FrobData d;
    d.p = p;
    d.count_p = point_count(f, p, 1);
    d.count_p2 = point_count(f, p, 2);
    d.t = p + 1 - d.count_p;
    long twice_s = d.count_p2 - p * p - 1 + d.t * d.t;
    if (twice_s % 2) throw std::logic_error("frobenius_charpoly: parity violation");
    d.s = twice_s / 2;
    d.charpoly = qpoly({p * p, -p * d.t, d.s, -d.t, 1});
    long order2 = d.count_p2 + d.count_p * d.count_p;
    d.jacobian_order = order2 / 2 - p;
    if (Rat(d.jacobian_order) != d.charpoly.eval(Rat(1))) throw std::logic_error("frobenius_charpoly: #J differs from P(1)");
    // Weil: |t| <= 4 sqrt p
    if (d.t * d.t > 16 * p) throw std::logic_error("frobenius_charpoly: Weil bound violated");
    return d;
}

inline long jacobian_order(const QPoly& f, long p) { return frobenius_charpoly(f, p).jacobian_order; }

inline long torsion_bound(const QPoly& f, const std::vector<long>& primes)
{
    if (primes.empty()) throw std::domain_error("torsion_bound: empty prime list");
    long g = 0;
    for (long p : primes) g = std::gcd(g, jacobian_order(f, p));
    return g;
}

/// n in [p+1-2sqrt p, p+1+2sqrt p] exactly.
inline bool in_hasse_interval(long n, long p)
{
    long d = n - p - 1;
    return d * d <= 4 * p;
}

/// Could J mod p be isogenous to a product of elliptic curves, judging by #J alone?
inline bool elliptic_split_screen(const QPoly& f, long p)
{
    long N = jacobian_order(f, p);
    for (long a = 1; a * a <= N; ++a)
        if (N % a == 0 && in_hasse_interval(a, p) && in_hasse_interval(N / a, p)) return true;
    return false;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_COUNT_HPP
