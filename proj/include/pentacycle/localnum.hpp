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

// p-adic scalars with absolute precision, square roots, Z_p root counts,
// Hensel factor lifting and Strassman bounds.

#ifndef PENTACYCLE_LOCALNUM_HPP
#define PENTACYCLE_LOCALNUM_HPP

#include <climits>
#include <string>
#include <vector>

#include "pentacycle/exact.hpp"

namespace pentacycle {

/// p^val * unit, known modulo p^prec (absolute). Values divisible by p^prec
/// are the tracked zero: val = prec, unit = 0.
class PadicNum {
  public:
    PadicNum() = default;

    static PadicNum from_rat(const Rat& r, const Int& p, long prec)
    {
        PadicNum x;
        x.p_ = p;
        x.prec_ = prec;
        if (is_zero(r)) {
            x.set_zero();
            return x;
        }
        long v = vp(r, p);
        if (v >= prec) {
            x.set_zero();
            return x;
        }
        Int m = ipow(p, static_cast<unsigned long>(prec - v));
        Rat u = r / rpow(Rat(p), v);
        ModInt res = ModInt(u.get_num(), m) / ModInt(u.get_den(), m);
        x.val_ = v;
        x.unit_ = res.value();
        return x;
    }
    static PadicNum from_int(const Int& a, const Int& p, long prec) { return from_rat(Rat(a), p, prec); }

    const Int& p() const { return p_; }
    long valuation() const { return val_; }
    long precision() const { return prec_; }
    const Int& unit() const { return unit_; }
    bool is_tracked_zero() const { return val_ >= prec_; }

    /// Representative mod p^prec (requires val >= 0).
    Int residue() const
    {
        if (is_tracked_zero()) return 0;
        if (val_ < 0) throw std::domain_error("PadicNum: negative valuation has no integral residue");
        Int m = ipow(p_, static_cast<unsigned long>(prec_));
        Int r = unit_ * ipow(p_, static_cast<unsigned long>(val_));
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    Rat value() const { return is_tracked_zero() ? Rat(0) : Rat(unit_) * rpow(Rat(p_), val_); }

    friend PadicNum operator+(const PadicNum& a, const PadicNum& b) { return combine(a, b, 1); }
    friend PadicNum operator-(const PadicNum& a, const PadicNum& b) { return combine(a, b, -1); }
    friend PadicNum operator*(const PadicNum& a, const PadicNum& b)
    {
        check(a, b);
        // absolute precision of a product: min(va + kb, vb + ka)
        long prec = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
        if (a.is_tracked_zero() || b.is_tracked_zero()) return zero(a.p_, prec);
        return from_rat(a.value() * b.value(), a.p_, prec);
    }
    PadicNum operator-() const { return from_rat(-value(), p_, prec_); }

    /// Equality of the known digits: a - b is the tracked zero.
    friend bool congruent(const PadicNum& a, const PadicNum& b) { return (a - b).is_tracked_zero(); }

    std::string to_string() const
    {
        if (is_tracked_zero()) return "O(" + p_.get_str() + "^" + std::to_string(prec_) + ")";
        return p_.get_str() + "^" + std::to_string(val_) + "*" + unit_.get_str() + " + O(" + p_.get_str() + "^" + std::to_string(prec_) + ")";
    }

  private:
    static PadicNum zero(const Int& p, long prec)
    {
        PadicNum z;
        z.p_ = p;
        z.prec_ = prec;
        z.set_zero();
        return z;
    }
    void set_zero()
    {
        val_ = prec_;
        unit_ = 0;
    }
    static void check(const PadicNum& a, const PadicNum& b)
    {
        if (a.p_ != b.p_) throw std::domain_error("PadicNum: mixed primes");
    }
    static PadicNum combine(const PadicNum& a, const PadicNum& b, int sign)
    {
        check(a, b);
        long prec = std::min(a.prec_, b.prec_);
        return from_rat(a.value() + Rat(sign) * b.value(), a.p_, prec);
    }
    Int p_ = 2;
    long val_ = 0, prec_ = 1;
    Int unit_ = 0;
};

inline int legendre(const Int& a, const Int& p)
{
    if (p <= 2) throw std::domain_error("legendre: p must be an odd prime");
    return mpz_legendre(Int(a % p + p).get_mpz_t(), p.get_mpz_t());
}

namespace detail {

/// Square root of a unit a mod p (odd p), Tonelli-Shanks.
inline Int sqrt_mod_p(const Int& a, const Int& p)
{
    if (legendre(a, p) != 1) throw std::domain_error("sqrt_mod_p: non-residue");
    Int q = p - 1;
    long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (legendre(z, p) != -1) ++z;
    auto pw = [&](const Int& b, const Int& e) {
        Int r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    Int A = (a % p + p) % p;
    Int c = pw(z, q), x = pw(A, (q + 1) / 2), t = pw(A, q);
    long m = s;
    while (t != 1) {
        long i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = pw(c, ipow(Int(2), static_cast<unsigned long>(m - i - 1)));
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

}  // namespace detail

/// b with b^2 = a at the precision of a. For p = 2 the unit must be 1 mod 8.
inline PadicNum hensel_sqrt(const PadicNum& a)
{
    if (a.is_tracked_zero()) throw std::domain_error("hensel_sqrt: zero");
    if (a.valuation() % 2) throw std::domain_error("hensel_sqrt: odd valuation");
    const Int& p = a.p();
    long k = a.precision() - a.valuation();  // relative precision of the unit
    Int M = ipow(p, static_cast<unsigned long>(k));
    Int u = a.unit();
    Int x;
    if (p == 2) {
        if (k >= 3 && u % 8 != 1) throw std::domain_error("hensel_sqrt: unit not 1 mod 8");
        if (k < 3 && u % ipow(Int(2), static_cast<unsigned long>(k)) != 1 % M)
            throw std::domain_error("hensel_sqrt: non-square residue");
        x = 1;
        // x^2 = u mod 2^j, j >= 3: fix bit j-1
        for (long j = 3; j < k; ++j) {
            Int m = ipow(Int(2), static_cast<unsigned long>(j + 1));
            Int d = (x * x - u) % m;
            if (d != 0) x += ipow(Int(2), static_cast<unsigned long>(j - 1));
        }
    } else {
        x = detail::sqrt_mod_p(u, p);
        Int m = p;
        while (m < M) {
            m *= m;
            if (m > M) m = M;
            // Newton: x <- x - (x^2 - u)/(2x)
            Int inv;
            Int twox = 2 * x;
            if (!mpz_invert(inv.get_mpz_t(), twox.get_mpz_t(), m.get_mpz_t())) throw std::logic_error("hensel_sqrt: 2x not invertible");
            x = (x - (x * x - u) * inv) % m;
            if (x < 0) x += m;
        }
    }
    Rat b = Rat(x) * rpow(Rat(p), a.valuation() / 2);
    long prec = (p == 2) ? a.valuation() / 2 + k - 1 : a.valuation() / 2 + k;
    PadicNum r = PadicNum::from_rat(b, p, prec);
    if (!congruent(PadicNum::from_rat(b * b, p, a.precision()), a)) throw std::logic_error("hensel_sqrt: check failed");
    return r;
}

// ---------------------------------------------------------------------------
// Root counting in Z_p

namespace detail {

inline std::vector<Int> int_coeffs(const QPoly& a)
{
    std::vector<Int> z;
    for (auto& c : a.coeffs()) {
        Rat cc = c;
        cc.canonicalize();
        if (cc.get_den() != 1) throw std::domain_error("zp_integer_root_count: integer coefficients required");
        z.push_back(cc.get_num());
    }
    return z;
}

inline Int eval_mod(const std::vector<Int>& c, const Int& x, const Int& m)
{
    Int acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % m;
    return acc;
}

/// F(r + p x) with coefficients divided by their common p-power.
inline std::vector<Int> shift_scale(const std::vector<Int>& c, const Int& r, const Int& p)
{
    std::size_t n = c.size();
    std::vector<Int> g(c);
    // Taylor shift by r
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) g[j - 1] += r * g[j];
    Int pk = 1;
    for (std::size_t i = 0; i < n; ++i) {
        g[i] *= pk;
        pk *= p;
    }
    long v = LONG_MAX;
    for (auto& x : g)
        if (x != 0) v = std::min(v, vp(x, p));
    if (v == LONG_MAX) throw std::logic_error("shift_scale: zero polynomial");
    Int d = ipow(p, static_cast<unsigned long>(v));
    for (auto& x : g) x /= d;
    return g;
}

inline long zp_count_rec(const std::vector<Int>& c, const Int& p, int depth, int bound)
{
    if (depth > bound) throw std::logic_error("zp_integer_root_count: recursion exceeded the discriminant bound");
    std::vector<Int> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Int(static_cast<long>(i)));
    long count = 0;
    for (Int r = 0; r < p; ++r) {
        if (eval_mod(c, r, p) != 0) continue;
        if (eval_mod(d, r, p) != 0) {
            ++count;
            continue;
        }
        count += zp_count_rec(shift_scale(c, r, p), p, depth + 1, bound);
    }
    return count;
}

}  // namespace detail

/// Number of roots in Z_p of a squarefree integer polynomial.
inline long zp_integer_root_count(const QPoly& a, const Int& p)
{
    if (a.degree() < 1) return 0;
    if (!is_squarefree(a)) throw std::domain_error("zp_integer_root_count: input must be squarefree");
    auto c = detail::int_coeffs(a);
    Rat disc = resultant(a, a.derivative());
    int bound = static_cast<int>(vp(disc, p)) + 2;
    return detail::zp_count_rec(c, p, 0, bound);
}

// ---------------------------------------------------------------------------
// Hensel lifting of a coprime factorization f = g h mod p to mod p^k (f monic
// integral, g monic).

struct HenselPair {
    Poly<ModInt> g, h;
};

inline HenselPair hensel_lift(const QPoly& f, const Poly<ModInt>& g0, const Poly<ModInt>& h0, const Int& p, long k)
{
    Poly<ModInt> fp = reduce_mod(f, p);
    if (!(g0 * h0 == fp)) throw std::domain_error("hensel_lift: g h != f mod p");
    auto x = xgcd(g0, h0);
    if (x.g.degree() != 0) throw std::domain_error("hensel_lift: factors not coprime mod p");
    QPoly g = lift_mod(g0), h = lift_mod(h0);
    Int m = p;
    for (long j = 1; j < k; ++j) {
        Int m2 = m * p;
        // e = (f - g h) / m mod p;  g += m * (t e mod g), h += m * (s e mod h)
        QPoly e = f - g * h;
        Poly<ModInt> ep;
        {
            std::vector<ModInt> cs;
            for (auto& c : e.coeffs()) {
                Rat q = c / Rat(m);
                q.canonicalize();
                if (q.get_den() != 1) throw std::logic_error("hensel_lift: lost precision");
                cs.emplace_back(q.get_num(), p);
            }
            ep = Poly<ModInt>(cs);
        }
        Poly<ModInt> dg = (x.t * ep) % g0;
        auto [dh, rem] = divmod(ep - h0 * dg, g0);
        if (!is_zero(rem)) throw std::logic_error("hensel_lift: correction not exact");
        g = g + lift_mod(dg) * Rat(m);
        h = h + lift_mod(dh) * Rat(m);
        m = m2;
    }
    HenselPair out{reduce_mod(g, m), reduce_mod(h, m)};
    if (!(out.g * out.h == reduce_mod(f, m))) throw std::logic_error("hensel_lift: product check failed");
    return out;
}

// ---------------------------------------------------------------------------
// Strassman

struct PadicSeriesTrunc {
    Int p;
    long k = 1;                // coefficients known mod p^k
    std::vector<Int> coeffs;   // residues, degrees 0..d
    long tail_from = 0;        // every coefficient of degree >= tail_from ...
    long tail_bound = LONG_MAX;  // ... has valuation >= tail_bound
};

struct StrassmanResult {
    bool determinate = false;
    long r = -1;
    long min_valuation = 0;
    std::string reason;
};

inline StrassmanResult strassman_bound(const PadicSeriesTrunc& s)
{
    StrassmanResult out;
    long m = LONG_MAX, r = -1;
    Int mod = ipow(s.p, static_cast<unsigned long>(s.k));
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        Int c = s.coeffs[i] % mod;
        long v = (c == 0) ? s.k : vp(c, s.p);
        if (static_cast<long>(i) >= s.tail_from) v = std::max(v, s.tail_bound);
        if (v <= m) {
            if (v < m) m = v;
            r = static_cast<long>(i);
        }
    }
    out.min_valuation = m;
    if (m >= s.k) {
        out.reason = "indeterminate at this precision: no listed coefficient is visibly nonzero";
        return out;
    }
    if (s.tail_bound <= m || static_cast<long>(s.coeffs.size()) < s.tail_from) {
        out.reason = "indeterminate at this precision: tail bound does not exceed the minimal valuation";
        return out;
    }
    out.determinate = true;
    out.r = r;
    return out;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_LOCALNUM_HPP
