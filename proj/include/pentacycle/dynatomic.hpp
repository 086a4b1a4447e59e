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

#ifndef PENTACYCLE_DYNATOMIC_HPP
#define PENTACYCLE_DYNATOMIC_HPP

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pentacycle/exact.hpp"

namespace pentacycle {

inline int moebius(long n)
{
    if (n < 1) throw std::domain_error("moebius of nonpositive");
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline long euler_phi(long n)
{
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

inline std::vector<long> divisors_of(long n)
{
    std::vector<long> d;
    for (long i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

/// nu_2(N) = sum_{d|N} 2^d mu(N/d): the z-degree of Phi_N.
inline Int nu2(long N)
{
    Int s = 0;
    for (long d : divisors_of(N)) s += Int(moebius(N / d)) * ipow(Int(2), static_cast<unsigned long>(d));
    return s;
}

namespace detail {

inline long to_integer_or_throw(Rat r, const char* what)
{
    r.canonicalize();
    if (r.get_den() != 1) throw std::logic_error(std::string(what) + " is not an integer: " + r.get_str());
    return r.get_num().get_si();
}

inline Rat nu_half(long N) { return Rat(nu2(N), Int(2)); }

}  // namespace detail

inline long genus_c1(long N)
{
    if (N < 1) throw std::domain_error("genus_c1: N >= 1");
    Rat g = Rat(1) + Rat(N - 3, 2) * detail::nu_half(N);
    Rat s = 0;
    for (long d : divisors_of(N))
        if (d != N) s += Rat(d) * detail::nu_half(d) * Rat(euler_phi(N / d));
    g -= s / 2;
    return detail::to_integer_or_throw(g, "genus_c1");
}

inline long genus_c0(long N)
{
    if (N < 1) throw std::domain_error("genus_c0: N >= 1");
    Rat g = Rat(1) + (Rat(1, 2) - Rat(3, 2 * N)) * detail::nu_half(N);
    Rat s = 0;
    for (long d : divisors_of(N))
        if (d != N) s += detail::nu_half(d) * Rat(euler_phi(N / d));
    g -= s / 2;
    if (N % 2 == 0) {
        Rat t = 0;
        for (long r : divisors_of(N))
            if (r % 2 == 0 && (N / r) % 2 == 1) t += Rat(moebius(N / r)) * Rat(ipow(Int(2), static_cast<unsigned long>(r / 2)));
        g -= t / Rat(4 * N);
    }
    return detail::to_integer_or_throw(g, "genus_c0");
}

/// g^{m}(z) - z in Q[c][z], g = z^2 + c.
inline QQPoly iterate_minus_z(int m)
{
    QPoly c = qpoly({0, 1});
    QQPoly z = QQPoly::x();
    QQPoly g = z;
    for (int i = 0; i < m; ++i) g = g * g + QQPoly(c);
    return g - z;
}

/// Phi_N(z,c) = prod_{m|N} (g^m(z) - z)^{mu(N/m)} as an exact quotient in Q[c][z].
inline QQPoly dynatomic_zc(long N)
{
    if (N < 1) throw std::domain_error("dynatomic_poly: N >= 1");
    QQPoly num(QPoly(Rat(1))), den(QPoly(Rat(1)));
    for (long m : divisors_of(N)) {
        int mu = moebius(N / m);
        if (mu == 0) continue;
        QQPoly t = iterate_minus_z(static_cast<int>(m));
        if (mu > 0) num = num * t;
        else den = den * t;
    }
    auto [q, r] = divmod(num, den);
    if (!is_zero(r)) throw std::logic_error("dynatomic_poly: Moebius quotient not exact");
    if (Int(q.degree()) != nu2(N)) throw std::logic_error("dynatomic_poly: z-degree differs from nu_2(N)");
    return q;
}

/// BiPoly with variables (z, c).
inline BiPoly dynatomic_poly(long N) { return BiPoly::from_in_x(dynatomic_zc(N)); }

struct DynatomicTable {
    long N = 0;
    Int nu2_value;
    long genus_c0 = 0, genus_c1 = 0;
};

inline DynatomicTable dynatomic_table(long N) { return {N, nu2(N), genus_c0(N), genus_c1(N)}; }

enum class PowerMapKind { Square, SquareMinusTwo };

inline long mult_order(long a, long n)
{
    if (std::gcd(a, n) != 1) return 0;
    long x = a % n, k = 1;
    while (x != 1 % n) {
        x = x * a % n;
        ++k;
    }
    return k;
}

/// (n, N) such that z^2 (resp. z^2-2) has a Galois-stable N-cycle made of
/// primitive n-th roots of unity (resp. of zeta + zeta^-1).
inline std::vector<std::pair<long, long>> power_map_stable_cycles(PowerMapKind kind, long n_max)
{
    if (n_max < 3) throw std::domain_error("power_map_stable_cycles: n_max >= 3");
    std::vector<std::pair<long, long>> out;
    for (long n = 3; n <= n_max; n += 2) {
        long ph = euler_phi(n);
        long ord = mult_order(2, n);
        if (kind == PowerMapKind::Square) {
            if (ord == ph) out.emplace_back(n, ph);
        } else {
            // order of 2 in (Z/n)^*/<-1>
            long x = 2 % n, k = 1;
            while (x != 1 && x != n - 1) {
                x = x * 2 % n;
                ++k;
            }
            if (k == ph / 2) out.emplace_back(n, ph / 2);
        }
    }
    return out;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_DYNATOMIC_HPP
