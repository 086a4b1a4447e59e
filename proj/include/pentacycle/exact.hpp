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

#ifndef PENTACYCLE_EXACT_HPP
#define PENTACYCLE_EXACT_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pentacycle {

using Int = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// scalar helpers

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }
inline bool is_zero(const Int& a) { return sgn(a) == 0; }
inline Rat exquo(const Rat& a, const Rat& b)
{
    if (sgn(b) == 0) throw std::domain_error("rational division by zero");
    return Rat(a / b);
}

inline Rat make_rat(const Int& n, const Int& d)
{
    if (sgn(d) == 0) throw std::domain_error("zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// Parses "3", "-71/48" or "0.125" exactly.
inline Rat parse_rational(std::string s)
{
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s[0] == '+') s.erase(0, 1);
    auto check_digits = [&](const std::string& t, bool allow_sign) {
        if (t.empty()) throw std::invalid_argument("bad rational literal: " + s);
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (allow_sign && i == 0 && t[i] == '-') continue;
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw std::invalid_argument("bad rational literal: " + s);
        }
        if (t == "-") throw std::invalid_argument("bad rational literal: " + s);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        check_digits(n, true);
        check_digits(d, false);
        return make_rat(Int(n, 10), Int(d, 10));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (neg) ip.erase(0, 1);
        if (ip.empty()) ip = "0";
        check_digits(ip, false);
        check_digits(fp, false);
        Int den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        Int num(ip + fp, 10);
        if (neg) num = -num;
        return make_rat(num, den);
    }
    check_digits(s, true);
    return Rat(Int(s, 10));
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& r) { return r.get_str(); }

inline Int floor_rat(const Rat& r)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ipow(const Int& b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat rpow(const Rat& b, long e)
{
    if (e < 0) return rpow(Rat(1) / b, -e);
    Rat r(ipow(b.get_num(), e), ipow(b.get_den(), e));
    return r;
}

/// p-adic valuation of a nonzero integer.
inline long vp(const Int& a, const Int& p)
{
    if (sgn(a) == 0) throw std::domain_error("valuation of zero");
    Int t = a;
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}

inline long vp(const Rat& a, const Int& p) { return vp(a.get_num(), p) - vp(a.get_den(), p); }

/// Trial-division factorization; fine for the small integers this library feeds it.
inline std::vector<std::pair<Int, unsigned>> factor_small(Int n)
{
    std::vector<std::pair<Int, unsigned>> out;
    if (n < 0) n = -n;
    if (n == 0) throw std::domain_error("factor of zero");
    for (Int d = 2; d * d <= n; d = (d == 2 ? Int(3) : Int(d + 2))) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1u);
    return out;
}

inline std::vector<Int> positive_divisors(const Int& n)
{
    std::vector<Int> ds{1};
    for (auto& [p, e] : factor_small(n)) {
        std::size_t cur = ds.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// ---------------------------------------------------------------------------
// ModInt: residue mod a runtime modulus m (prime or prime power).
// modulus 0 marks a plain integer constant that adopts the modulus of whatever
// it meets; this is what lets generic code write K(0), K(1).

class ModInt {
  public:
    ModInt() = default;
    ModInt(long v) : v_(v), m_(0) {}  // NOLINT(google-explicit-constructor)
    ModInt(const Int& v, const Int& m) : v_(v), m_(m) { reduce(); }

    const Int& value() const { return v_; }
    const Int& modulus() const { return m_; }
    bool bound() const { return sgn(m_) != 0; }

    ModInt with_modulus(const Int& m) const { return ModInt(v_, m); }

    friend bool is_zero(const ModInt& a) { return a.bound() ? sgn(a.v_) == 0 : sgn(a.v_) == 0; }

    friend ModInt operator+(const ModInt& a, const ModInt& b)
    {
        Int m = join(a, b);
        return ModInt(Int(a.v_ + b.v_), m, 0);
    }
    friend ModInt operator-(const ModInt& a, const ModInt& b)
    {
        Int m = join(a, b);
        return ModInt(Int(a.v_ - b.v_), m, 0);
    }
    friend ModInt operator*(const ModInt& a, const ModInt& b)
    {
        Int m = join(a, b);
        return ModInt(Int(a.v_ * b.v_), m, 0);
    }
    ModInt operator-() const { return ModInt(Int(-v_), m_, 0); }
    ModInt& operator+=(const ModInt& o) { return *this = *this + o; }
    ModInt& operator-=(const ModInt& o) { return *this = *this - o; }
    ModInt& operator*=(const ModInt& o) { return *this = *this * o; }

    ModInt inv() const
    {
        if (!bound()) {
            if (v_ == 1 || v_ == -1) return *this;
            throw std::domain_error("inverse of unbound integer constant");
        }
        Int r;
        if (mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), m_.get_mpz_t()) == 0)
            throw std::domain_error("non-invertible residue " + v_.get_str() + " mod " + m_.get_str());
        return ModInt(r, m_);
    }
    friend ModInt operator/(const ModInt& a, const ModInt& b)
    {
        ModInt bb = b;
        if (!bb.bound() && a.bound()) bb = bb.with_modulus(a.m_);
        return a * bb.inv();
    }
    ModInt& operator/=(const ModInt& o) { return *this = *this / o; }

    ModInt pow(Int e) const
    {
        if (e < 0) return inv().pow(Int(-e));
        if (!bound()) throw std::domain_error("pow of unbound constant");
        Int r;
        mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), m_.get_mpz_t());
        return ModInt(r, m_);
    }

    friend bool operator==(const ModInt& a, const ModInt& b)
    {
        Int m = join(a, b);
        if (sgn(m) == 0) return a.v_ == b.v_;
        Int d = a.v_ - b.v_;
        return mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) != 0;
    }
    friend bool operator!=(const ModInt& a, const ModInt& b) { return !(a == b); }

    friend ModInt exquo(const ModInt& a, const ModInt& b) { return a / b; }
    friend std::string to_string(const ModInt& a) { return a.v_.get_str(); }

  private:
    ModInt(Int v, Int m, int) : v_(std::move(v)), m_(std::move(m)) { reduce(); }
    void reduce()
    {
        if (sgn(m_) != 0) mpz_fdiv_r(v_.get_mpz_t(), v_.get_mpz_t(), m_.get_mpz_t());
    }
    static Int join(const ModInt& a, const ModInt& b)
    {
        if (!a.bound()) return b.m_;
        if (!b.bound()) return a.m_;
        if (a.m_ != b.m_) throw std::domain_error("mixed moduli");
        return a.m_;
    }

    Int v_ = 0;
    Int m_ = 0;
};

// ---------------------------------------------------------------------------
// QuadExt<K>: a + b*sqrt(d). d == 0 with b == 0 is an element of K that has not
// met an extension element yet.

template <class K>
class QuadExt {
  public:
    QuadExt() : a_(0), b_(0), d_(0) {}
    QuadExt(long v) : a_(v), b_(0), d_(0) {}  // NOLINT(google-explicit-constructor)
    QuadExt(K a) : a_(std::move(a)), b_(0), d_(0) {}  // NOLINT(google-explicit-constructor)
    QuadExt(K a, K b, K d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

    const K& re() const { return a_; }
    const K& im() const { return b_; }
    const K& d() const { return d_; }
    bool in_base() const { return is_zero(b_); }

    QuadExt conj() const { return QuadExt(a_, -b_, d_); }
    K norm() const { return a_ * a_ - d_ * b_ * b_; }

    friend bool is_zero(const QuadExt& x) { return is_zero(x.a_) && is_zero(x.b_); }
    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return QuadExt(x.a_ + y.a_, x.b_ + y.b_, join(x, y)); }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return QuadExt(x.a_ - y.a_, x.b_ - y.b_, join(x, y)); }
    QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y)
    {
        K d = join(x, y);
        return QuadExt(x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    QuadExt inv() const
    {
        K n = norm();
        if (is_zero(n)) throw std::domain_error("QuadExt: inverse of zero divisor");
        K ni = exquo(K(1), n);
        return QuadExt(a_ * ni, -(b_ * ni), d_);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inv(); }
    friend QuadExt exquo(const QuadExt& x, const QuadExt& y) { return x / y; }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    friend bool operator==(const QuadExt& x, const QuadExt& y) { return is_zero(x - y); }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    QuadExt pow(Int e) const
    {
        QuadExt r(K(1)), b = *this;
        if (e < 0) {
            b = b.inv();
            e = -e;
        }
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

  private:
    static K join(const QuadExt& x, const QuadExt& y)
    {
        if (is_zero(x.d_)) return y.d_;
        if (is_zero(y.d_)) return x.d_;
        if (x.d_ != y.d_) throw std::domain_error("QuadExt: mixed extensions");
        return x.d_;
    }
    K a_, b_, d_;
};

// ---------------------------------------------------------------------------
// Dense univariate polynomials, ascending coefficients, no trailing zeros.
// degree(0) == -1 stands in for -infinity.

template <class K>
class Poly {
  public:
    using coeff_type = K;

    Poly() = default;
    Poly(long c) : Poly(K(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(K c)  // NOLINT(google-explicit-constructor)
    {
        if (!is_zero(c)) c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }
    Poly(std::initializer_list<K> c) : c_(c) { trim(); }

    static Poly x() { return monomial(K(1), 1); }
    static Poly monomial(K c, int d)
    {
        if (is_zero(c)) return Poly();
        std::vector<K> v(static_cast<std::size_t>(d) + 1, K(0));
        v[d] = std::move(c);
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    K coeff(int i) const { return (i < 0 || i > degree()) ? K(0) : c_[i]; }
    K operator[](int i) const { return coeff(i); }
    const K& lead() const
    {
        if (c_.empty()) throw std::domain_error("lead of zero polynomial");
        return c_.back();
    }
    const std::vector<K>& coeffs() const { return c_; }

    void set(int i, K v)
    {
        if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, K(0));
        c_[i] = std::move(v);
        trim();
    }

    friend bool is_zero(const Poly& p) { return p.c_.empty(); }

    template <class V>
    V operator()(const V& at) const
    {
        V acc = V(K(0));
        for (int i = degree(); i >= 0; --i) acc = acc * at + V(c_[i]);
        return acc;
    }
    K eval(const K& at) const
    {
        K acc(0);
        for (int i = degree(); i >= 0; --i) acc = acc * at + c_[i];
        return acc;
    }

    Poly derivative() const
    {
        std::vector<K> d;
        for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * K(i));
        return Poly(std::move(d));
    }

    /// p(q(x))
    Poly compose(const Poly& q) const
    {
        Poly acc;
        for (int i = degree(); i >= 0; --i) acc = acc * q + Poly(c_[i]);
        return acc;
    }

    Poly monic() const { return is_zero(*this) ? *this : scale(exquo(K(1), lead())); }
    Poly scale(const K& s) const
    {
        std::vector<K> v(c_);
        for (auto& e : v) e = e * s;
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const
    {
        std::vector<K> v(c_);
        for (auto& e : v) e = -e;
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const K& s) { return a.scale(s); }
    friend Poly operator*(const K& s, const Poly& a) { return a.scale(s); }
    friend Poly operator+(const Poly& a, const K& s) { return a + Poly(s); }
    friend Poly operator-(const Poly& a, const K& s) { return a - Poly(s); }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const
    {
        Poly r(K(1)), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    /// x^deg * p(1/x)
    Poly reversed(int as_degree = -2) const
    {
        int n = as_degree == -2 ? degree() : as_degree;
        std::vector<K> v(static_cast<std::size_t>(std::max(n + 1, 0)), K(0));
        for (int i = 0; i <= degree(); ++i) v[n - i] = c_[i];
        return Poly(std::move(v));
    }

    /// truncation mod x^n
    Poly truncate(int n) const
    {
        std::vector<K> v(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), std::max(n, 0)));
        return Poly(std::move(v));
    }

  private:
    void trim()
    {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

using QPoly = Poly<Rat>;
using QQPoly = Poly<QPoly>;  // outer variable over Q[inner]

/// Long division; works over any ring where the leading coefficient divides exactly.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b)
{
    if (is_zero(b)) throw std::domain_error("polynomial division by zero");
    std::vector<K> r = a.coeffs();
    int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) return {Poly<K>(), a};
    std::vector<K> q(static_cast<std::size_t>(dq) + 1, K(0));
    const K& lb = b.lead();
    for (int k = dq; k >= 0; --k) {
        const K& top = r[k + db];
        if (is_zero(top)) continue;
        K t = exquo(top, lb);
        for (int i = 0; i < db; ++i) r[i + k] = r[i + k] - t * b.coeffs()[i];
        r[k + db] = K(0);
        q[k] = std::move(t);
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly<K>(std::move(q)), Poly<K>(std::move(r))};
}

template <class K>
Poly<K> operator%(const Poly<K>& a, const Poly<K>& b)
{
    return divmod(a, b).second;
}

template <class K>
Poly<K> operator/(const Poly<K>& a, const Poly<K>& b)
{
    auto [q, r] = divmod(a, b);
    if (!is_zero(r)) throw std::domain_error("inexact polynomial division");
    return q;
}

template <class K>
Poly<K> exquo(const Poly<K>& a, const Poly<K>& b)
{
    return a / b;
}

template <class K>
bool divides(const Poly<K>& d, const Poly<K>& a)
{
    return is_zero(divmod(a, d).second);
}

/// Monic gcd over a field.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b)
{
    while (!is_zero(b)) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// s*a + t*b = g with g monic (fields only).
template <class K>
struct XGcd {
    Poly<K> g, s, t;
};

template <class K>
XGcd<K> xgcd(const Poly<K>& a, const Poly<K>& b)
{
    Poly<K> r0 = a, r1 = b, s0(K(1)), s1, t0, t1(K(1));
    while (!is_zero(r1)) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (is_zero(r0)) return {r0, s0, t0};
    K li = exquo(K(1), r0.lead());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

/// Inverse of a modulo m over a field; throws when not coprime.
template <class K>
Poly<K> invmod(const Poly<K>& a, const Poly<K>& m)
{
    auto x = xgcd(a % m, m);
    if (x.g.degree() != 0) throw std::domain_error("invmod: not coprime");
    return x.s % m;
}

/// Fraction-free (Bareiss) determinant over an integral domain with exact quotients.
template <class K>
K det_bareiss(std::vector<std::vector<K>> m)
{
    const std::size_t n = m.size();
    if (n == 0) return K(1);
    K prev(1);
    bool neg = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m[k][k])) {
            std::size_t piv = k + 1;
            while (piv < n && is_zero(m[piv][k])) ++piv;
            if (piv == n) return K(0);
            std::swap(m[k], m[piv]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = exquo(K(m[i][j] * m[k][k] - m[i][k] * m[k][j]), prev);
            }
            m[i][k] = K(0);
        }
        prev = m[k][k];
    }
    K d = m[n - 1][n - 1];
    return neg ? K(-d) : d;
}

/// Division-free determinant by cofactor expansion; only for tiny matrices over rings.
template <class K>
K det_cofactor(const std::vector<std::vector<K>>& m)
{
    const std::size_t n = m.size();
    if (n == 0) return K(1);
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    K acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<K>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<K> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(std::move(row));
        }
        K t = m[0][j] * det_cofactor(minor);
        acc = (j % 2 == 0) ? K(acc + t) : K(acc - t);
    }
    return acc;
}

template <class K>
std::vector<std::vector<K>> sylvester(const Poly<K>& a, const Poly<K>& b)
{
    int m = a.degree(), n = b.degree();
    std::size_t s = static_cast<std::size_t>(m + n);
    std::vector<std::vector<K>> M(s, std::vector<K>(s, K(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[r][r + (m - i)] = a.coeffs()[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[n + r][r + (n - i)] = b.coeffs()[i];
    return M;
}

/// Res(a,b) = lc(a)^deg b * prod b(alpha_i), via the Sylvester determinant.
template <class K>
K resultant(const Poly<K>& a, const Poly<K>& b)
{
    if (is_zero(a) || is_zero(b)) throw std::domain_error("resultant of zero polynomial");
    if (a.degree() == 0 && b.degree() == 0) return K(1);
    if (a.degree() == 0) {
        K r(1);
        for (int i = 0; i < b.degree(); ++i) r = r * a.lead();
        return r;
    }
    if (b.degree() == 0) {
        K r(1);
        for (int i = 0; i < a.degree(); ++i) r = r * b.lead();
        return r;
    }
    return det_bareiss(sylvester(a, b));
}

/// disc(a) = (-1)^{n(n-1)/2} Res(a, a') / lc(a)
template <class K>
K discriminant(const Poly<K>& a)
{
    int n = a.degree();
    if (n < 1) throw std::domain_error("discriminant of constant");
    K r = exquo(resultant(a, a.derivative()), a.lead());
    if ((n * (n - 1) / 2) % 2) r = -r;
    return r;
}

// ---------------------------------------------------------------------------
// Rational polynomial utilities

inline Poly<Rat> qpoly(std::initializer_list<long> c)
{
    std::vector<Rat> v;
    for (long e : c) v.emplace_back(e);
    return Poly<Rat>(std::move(v));
}

inline Poly<Rat> parse_qpoly(const std::string& text)
{
    std::vector<Rat> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(parse_rational(tok));
    if (v.empty()) throw std::invalid_argument("empty polynomial literal");
    return Poly<Rat>(std::move(v));
}

inline std::string to_text(const Poly<Rat>& p)
{
    if (is_zero(p)) return "0";
    std::string s;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) s += ",";
        s += p[i].get_str();
    }
    return s;
}

template <class K>
std::string pretty(const Poly<K>& p, const std::string& var = "x")
{
    if (is_zero(p)) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        K c = p[i];
        if (is_zero(c)) continue;
        std::string cs = to_string(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs.erase(0, 1);
        if (!s.empty()) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        if (i == 0) s += cs;
        else {
            if (cs != "1") s += cs + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

/// Integer coefficient vector of the primitive part (positive leading coefficient).
inline std::vector<Int> primitive_integer(const Poly<Rat>& p)
{
    if (is_zero(p)) throw std::domain_error("primitive part of zero");
    Int l = 1;
    for (auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> z;
    Int g = 0;
    for (auto& c : p.coeffs()) {
        Int t = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
        z.push_back(t);
    }
    if (p.lead() < 0) g = -g;
    for (auto& e : z) e /= g;
    return z;
}

inline Poly<Rat> from_integer(const std::vector<Int>& z)
{
    std::vector<Rat> v(z.begin(), z.end());
    return Poly<Rat>(std::move(v));
}

inline Poly<Rat> squarefree_part(const Poly<Rat>& p)
{
    return (p / gcd(p, p.derivative())).monic();
}

inline bool is_squarefree(const Poly<Rat>& p) { return gcd(p, p.derivative()).degree() == 0; }

namespace detail {

// sign of sum z_i (m/2^k)^i, computed exactly as sum z_i m^i 2^{k(n-i)}
inline int sign_at_dyadic(const std::vector<Int>& z, const Int& m, unsigned long k)
{
    const int n = static_cast<int>(z.size()) - 1;
    Int acc = z[n], t;
    for (int i = n - 1; i >= 0; --i) {
        acc *= m;
        mpz_mul_2exp(t.get_mpz_t(), z[i].get_mpz_t(), k * static_cast<unsigned long>(n - i));
        acc += t;
    }
    return sgn(acc);
}

inline int sign_at_inf(const std::vector<Int>& z, bool negative)
{
    int s = sgn(z.back());
    if (negative && (z.size() - 1) % 2 == 1) s = -s;
    return s;
}

struct Sturm {
    std::vector<std::vector<Int>> chain;  // integer-scaled, positive multiples

    explicit Sturm(const Poly<Rat>& p)
    {
        Poly<Rat> a = p, b = p.derivative();
        chain.push_back(primitive_integer(a));
        while (!is_zero(b)) {
            // keep sign information: scale by a positive factor only
            std::vector<Int> zb = primitive_integer(b);
            if (b.lead() < 0)
                for (auto& e : zb) e = -e;
            chain.push_back(zb);
            Poly<Rat> r = -(a % b);
            a = std::move(b);
            b = std::move(r);
        }
    }
    int variations_dyadic(const Int& m, unsigned long k) const
    {
        int v = 0, last = 0;
        for (auto& z : chain) {
            int s = sign_at_dyadic(z, m, k);
            if (s == 0) continue;
            if (last && s != last) ++v;
            last = s;
        }
        return v;
    }
    int variations_inf(bool negative) const
    {
        int v = 0, last = 0;
        for (auto& z : chain) {
            int s = sign_at_inf(z, negative);
            if (last && s != last) ++v;
            last = s;
        }
        return v;
    }
};

/// Simplest rational (smallest denominator) strictly inside (a, b), a < b.
inline Rat simplest_between(const Rat& a, const Rat& b)
{
    if (sgn(a) < 0 && sgn(b) > 0) return Rat(0);
    if (sgn(b) <= 0) return Rat(-simplest_between(Rat(-b), Rat(-a)));
    // 0 <= a < b
    Int fa = floor_rat(a);
    Int n = fa + 1;
    if (Rat(n) < b) return Rat(n);
    // a and b lie in [fa, fa+1], a < b <= fa+1
    Rat lo = a - fa, hi = b - fa;  // 0 <= lo < hi <= 1
    if (sgn(lo) == 0) {
        // need 1/x > 1/hi, simplest is floor(1/hi)+1
        Rat inv_hi = Rat(1) / hi;
        Int k = floor_rat(inv_hi) + 1;
        return Rat(fa) + Rat(1) / Rat(k);
    }
    Rat inner = simplest_between(Rat(Rat(1) / hi), Rat(Rat(1) / lo));
    return Rat(fa) + Rat(1) / inner;
}

}  // namespace detail

/// Number of real roots (squarefree input required).
inline int sturm_real_root_count(const Poly<Rat>& p)
{
    if (p.degree() < 1) return 0;
    if (!is_squarefree(p)) throw std::domain_error("sturm_real_root_count: input not squarefree");
    detail::Sturm s(p);
    return s.variations_inf(true) - s.variations_inf(false);
}

/// Isolating intervals [lo, hi] (dyadic) each containing exactly one real root of
/// the squarefree polynomial p; exact rational roots hit during bisection are
/// reported in `exact`.
struct RealIsolation {
    std::vector<std::pair<Rat, Rat>> intervals;
    std::vector<Rat> exact;
};

inline RealIsolation isolate_real_roots(const Poly<Rat>& p)
{
    RealIsolation out;
    if (p.degree() < 1) return out;
    Poly<Rat> work = squarefree_part(p);
    for (;;) {
        if (work.degree() < 1) return out;
        std::vector<Int> z = primitive_integer(work);
        // Cauchy bound 1 + max |a_i / a_n|, rounded to a power of two
        Rat bound = 0;
        for (std::size_t i = 0; i + 1 < z.size(); ++i) {
            Rat r{Int(abs(z[i])), Int(abs(z.back()))};
            r.canonicalize();
            if (r > bound) bound = r;
        }
        bound += 1;
        unsigned long e = 0;
        while (Rat(ipow(Int(2), e)) < bound) ++e;
        detail::Sturm st(work);
        struct Box {
            Int lo, hi;  // numerators over 2^k
            unsigned long k;
            int vlo, vhi;
        };
        Int two_e = ipow(Int(2), e);
        std::vector<Box> todo{{Int(-two_e), two_e, 0, st.variations_dyadic(Int(-two_e), 0), st.variations_dyadic(two_e, 0)}};
        bool restarted = false;
        std::vector<std::pair<Rat, Rat>> found;
        while (!todo.empty() && !restarted) {
            Box b = todo.back();
            todo.pop_back();
            int cnt = b.vlo - b.vhi;
            if (cnt <= 0) continue;
            if (cnt == 1) {
                Rat lo(b.lo, ipow(Int(2), b.k)), hi(b.hi, ipow(Int(2), b.k));
                lo.canonicalize();
                hi.canonicalize();
                found.emplace_back(lo, hi);
                continue;
            }
            Int mid2 = b.lo + b.hi;  // midpoint at level k+1
            unsigned long k1 = b.k + 1;
            if (detail::sign_at_dyadic(z, mid2, k1) == 0) {
                Rat r(mid2, ipow(Int(2), k1));
                r.canonicalize();
                out.exact.push_back(r);
                work = work / Poly<Rat>{Rat(-r), Rat(1)};
                restarted = true;
                break;
            }
            int vm = st.variations_dyadic(mid2, k1);
            todo.push_back({Int(b.lo * 2), mid2, k1, b.vlo, vm});
            todo.push_back({mid2, Int(b.hi * 2), k1, vm, b.vhi});
        }
        if (restarted) continue;
        // Endpoints of the initial box can be roots only if the bound were hit,
        // which the strict Cauchy bound excludes.
        out.intervals = std::move(found);
        std::sort(out.intervals.begin(), out.intervals.end());
        return out;
    }
}

/// All rational roots with multiplicity, ascending.
///
/// Isolation + bisection to width below 1/L^2 (L = leading coefficient of the
/// primitive squarefree part), then the simplest rational in the interval is the
/// only possible rational root there.
inline std::vector<Rat> rational_roots(const Poly<Rat>& a)
{
    if (is_zero(a)) throw std::domain_error("rational_roots of zero polynomial");
    std::vector<Rat> roots;
    if (a.degree() < 1) return roots;
    Poly<Rat> sf = squarefree_part(a);
    RealIsolation iso = isolate_real_roots(sf);
    std::vector<Rat> cands = iso.exact;
    Poly<Rat> rest = sf;
    for (auto& r : iso.exact) rest = rest / Poly<Rat>{Rat(-r), Rat(1)};
    if (rest.degree() >= 1 && !iso.intervals.empty()) {
        std::vector<Int> z = primitive_integer(rest);
        Int L2 = z.back() * z.back();
        for (auto& [lo0, hi0] : iso.intervals) {
            // both endpoints are dyadic: bring them to a common 2^k
            Int den = lo0.get_den() > hi0.get_den() ? Int(lo0.get_den()) : Int(hi0.get_den());
            unsigned long k = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
            Int mlo = lo0.get_num() * (den / lo0.get_den());
            Int mhi = hi0.get_num() * (den / hi0.get_den());
            int slo = detail::sign_at_dyadic(z, mlo, k);
            bool hit = false;
            // loop while width >= 1/L^2, i.e. (mhi - mlo) * L^2 >= 2^k
            for (;;) {
                Int lhs = (mhi - mlo) * L2;
                if (mpz_sizeinbase(lhs.get_mpz_t(), 2) < k + 1) break;  // lhs < 2^k
                mlo <<= 1;
                mhi <<= 1;
                ++k;
                Int mid = (mlo + mhi) / 2;
                int sm = detail::sign_at_dyadic(z, mid, k);
                if (sm == 0) {
                    Rat r(mid, ipow(Int(2), k));
                    r.canonicalize();
                    cands.push_back(r);
                    hit = true;
                    break;
                }
                if (sm == slo) mlo = mid;
                else mhi = mid;
            }
            if (hit) continue;
            Rat lo(mlo, ipow(Int(2), k)), hi(mhi, ipow(Int(2), k));
            lo.canonicalize();
            hi.canonicalize();
            Rat c = detail::simplest_between(lo, hi);
            if (is_zero(rest.eval(c))) cands.push_back(c);
        }
    }
    for (auto& r : cands) {
        Poly<Rat> lin{Rat(-r), Rat(1)};
        Poly<Rat> t = a;
        for (;;) {
            auto [q, rem] = divmod(t, lin);
            if (!is_zero(rem)) break;
            roots.push_back(r);
            t = std::move(q);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Textbook oracle: candidates p/q with p | a0, q | an.
inline std::vector<Rat> rational_roots_by_divisors(const Poly<Rat>& a)
{
    if (is_zero(a)) throw std::domain_error("rational_roots of zero polynomial");
    std::vector<Rat> roots;
    Poly<Rat> t = a;
    while (t.degree() >= 1 && is_zero(t[0])) {
        roots.emplace_back(0);
        t = t / Poly<Rat>::x();
    }
    if (t.degree() >= 1) {
        std::vector<Int> z = primitive_integer(t);
        auto ps = positive_divisors(z.front()), qs = positive_divisors(z.back());
        std::vector<Rat> cands;
        for (auto& p : ps)
            for (auto& q : qs)
                for (int s : {1, -1}) cands.push_back(make_rat(Int(p * s), q));
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (auto& r : cands) {
            Poly<Rat> lin{Rat(-r), Rat(1)};
            for (;;) {
                auto [q, rem] = divmod(t, lin);
                if (!is_zero(rem)) break;
                roots.push_back(r);
                t = std::move(q);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Reduce a rational polynomial into (Z/m)[x]; denominators must be units.
inline Poly<ModInt> reduce_mod(const Poly<Rat>& p, const Int& m)
{
    std::vector<ModInt> v;
    for (auto& c : p.coeffs()) {
        ModInt n(c.get_num(), m), d(c.get_den(), m);
        v.push_back(n / d);
    }
    return Poly<ModInt>(std::move(v));
}

inline Poly<Rat> lift_mod(const Poly<ModInt>& p)
{
    std::vector<Rat> v;
    for (auto& c : p.coeffs()) v.emplace_back(c.value());
    return Poly<Rat>(std::move(v));
}

/// Distinct-degree factorization pattern of a squarefree polynomial over F_p:
/// sorted list of irreducible factor degrees.
inline std::vector<int> ddf_pattern(const Poly<ModInt>& a)
{
    const Int p = a.lead().modulus();
    Poly<ModInt> f = a.monic();
    std::vector<int> degs;
    Poly<ModInt> X = Poly<ModInt>::monomial(ModInt(1, p), 1);
    Poly<ModInt> h = X;
    auto powmod = [&](Poly<ModInt> b, Int e, const Poly<ModInt>& m) {
        Poly<ModInt> r(ModInt(1, p));
        b = b % m;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
            b = (b * b) % m;
            e >>= 1;
        }
        return r;
    };
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = powmod(h, p, f);
        Poly<ModInt> g = gcd(f, h - X);
        if (g.degree() > 0) {
            for (int i = 0; i < g.degree() / d; ++i) degs.push_back(d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) degs.push_back(f.degree());
    std::sort(degs.begin(), degs.end());
    return degs;
}

// ---------------------------------------------------------------------------
// Sparse bivariate polynomials: (i,j) -> coefficient of X^i Y^j

class BiPoly {
  public:
    using Key = std::pair<int, int>;
    BiPoly() = default;
    explicit BiPoly(std::map<Key, Rat> t) : t_(std::move(t)) { prune(); }
    BiPoly(const Rat& c)  // NOLINT(google-explicit-constructor)
    {
        if (!is_zero(c)) t_[{0, 0}] = c;
    }
    static BiPoly term(const Rat& c, int i, int j)
    {
        BiPoly b;
        if (!is_zero(c)) b.t_[{i, j}] = c;
        return b;
    }
    static BiPoly X() { return term(Rat(1), 1, 0); }
    static BiPoly Y() { return term(Rat(1), 0, 1); }

    /// rows[i] is the Y-polynomial multiplying X^i
    static BiPoly from_rows(const std::vector<Poly<Rat>>& rows)
    {
        BiPoly b;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i)
            for (int j = 0; j <= rows[i].degree(); ++j)
                if (!is_zero(rows[i][j])) b.t_[{i, j}] = rows[i][j];
        return b;
    }

    const std::map<Key, Rat>& terms() const { return t_; }
    Rat coeff(int i, int j) const
    {
        auto it = t_.find({i, j});
        return it == t_.end() ? Rat(0) : it->second;
    }
    bool zero() const { return t_.empty(); }
    friend bool is_zero(const BiPoly& b) { return b.t_.empty(); }
    std::size_t size() const { return t_.size(); }

    int degree_x() const
    {
        int d = -1;
        for (auto& [k, v] : t_) d = std::max(d, k.first);
        return d;
    }
    int degree_y() const
    {
        int d = -1;
        for (auto& [k, v] : t_) d = std::max(d, k.second);
        return d;
    }
    int total_degree() const
    {
        int d = -1;
        for (auto& [k, v] : t_) d = std::max(d, k.first + k.second);
        return d;
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b)
    {
        BiPoly r = a;
        for (auto& [k, v] : b.t_) r.t_[k] += v;
        r.prune();
        return r;
    }
    BiPoly operator-() const
    {
        BiPoly r = *this;
        for (auto& [k, v] : r.t_) v = -v;
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b)
    {
        std::map<Key, Rat> r;
        for (auto& [ka, va] : a.t_)
            for (auto& [kb, vb] : b.t_) r[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
        return BiPoly(std::move(r));
    }
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    BiPoly pow(unsigned e) const
    {
        BiPoly r(Rat(1)), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    Rat eval(const Rat& x, const Rat& y) const
    {
        Rat s = 0;
        for (auto& [k, v] : t_) s += v * rpow(x, k.first) * rpow(y, k.second);
        return s;
    }

    BiPoly dx() const
    {
        std::map<Key, Rat> r;
        for (auto& [k, v] : t_)
            if (k.first > 0) r[{k.first - 1, k.second}] += v * k.first;
        return BiPoly(std::move(r));
    }
    BiPoly dy() const
    {
        std::map<Key, Rat> r;
        for (auto& [k, v] : t_)
            if (k.second > 0) r[{k.first, k.second - 1}] += v * k.second;
        return BiPoly(std::move(r));
    }

    /// F(X(u,v), Y(u,v))
    BiPoly substitute(const BiPoly& xs, const BiPoly& ys) const
    {
        std::vector<BiPoly> xp{BiPoly(Rat(1))}, yp{BiPoly(Rat(1))};
        for (int i = 1; i <= degree_x(); ++i) xp.push_back(xp.back() * xs);
        for (int j = 1; j <= degree_y(); ++j) yp.push_back(yp.back() * ys);
        BiPoly r;
        for (auto& [k, v] : t_) r += BiPoly(v) * xp[k.first] * yp[k.second];
        return r;
    }

    /// Exact division by X^a Y^b (every term must be divisible).
    BiPoly shift_down(int a, int b) const
    {
        std::map<Key, Rat> r;
        for (auto& [k, v] : t_) {
            if (k.first < a || k.second < b) throw std::domain_error("BiPoly: monomial division not exact");
            r[{k.first - a, k.second - b}] = v;
        }
        return BiPoly(std::move(r));
    }

    BiPoly scale(const Rat& s) const
    {
        std::map<Key, Rat> r;
        for (auto& [k, v] : t_) r[k] = v * s;
        return BiPoly(std::move(r));
    }

    BiPoly swap_vars() const
    {
        std::map<Key, Rat> r;
        for (auto& [k, v] : t_) r[{k.second, k.first}] = v;
        return BiPoly(std::move(r));
    }

    /// As a polynomial in X with coefficients in Q[Y].
    Poly<Poly<Rat>> in_x() const
    {
        std::vector<Poly<Rat>> rows(static_cast<std::size_t>(std::max(degree_x() + 1, 0)));
        for (auto& [k, v] : t_) rows[k.first] = rows[k.first] + Poly<Rat>::monomial(v, k.second);
        return Poly<Poly<Rat>>(std::move(rows));
    }
    Poly<Poly<Rat>> in_y() const { return swap_vars().in_x(); }

    static BiPoly from_in_x(const Poly<Poly<Rat>>& p)
    {
        std::map<Key, Rat> r;
        for (int i = 0; i <= p.degree(); ++i)
            for (int j = 0; j <= p[i].degree(); ++j)
                if (!is_zero(p[i][j])) r[{i, j}] = p[i][j];
        return BiPoly(std::move(r));
    }

    /// F(X, y0) as a polynomial in X.
    Poly<Rat> at_y(const Rat& y0) const
    {
        std::vector<Rat> v(static_cast<std::size_t>(std::max(degree_x() + 1, 0)), Rat(0));
        for (auto& [k, c] : t_) v[k.first] += c * rpow(y0, k.second);
        return Poly<Rat>(std::move(v));
    }
    /// F(x0, Y) as a polynomial in Y.
    Poly<Rat> at_x(const Rat& x0) const { return swap_vars().at_y(x0); }

    /// Univariate embedding of a polynomial in one variable.
    static BiPoly in_var_x(const Poly<Rat>& p)
    {
        BiPoly b;
        for (int i = 0; i <= p.degree(); ++i)
            if (!is_zero(p[i])) b.t_[{i, 0}] = p[i];
        return b;
    }
    static BiPoly in_var_y(const Poly<Rat>& p) { return in_var_x(p).swap_vars(); }

    /// Rows by X-power, as comma texts (fixture format).
    std::vector<std::string> to_rows() const
    {
        std::vector<std::string> rows;
        auto px = in_x();
        for (int i = 0; i <= px.degree(); ++i) rows.push_back(to_text(px[i]));
        return rows;
    }

    std::string pretty(const std::string& vx = "x", const std::string& vy = "y") const
    {
        if (t_.empty()) return "0";
        std::string s;
        // descending total degree, then X power
        std::vector<std::pair<Key, Rat>> ts(t_.begin(), t_.end());
        std::sort(ts.begin(), ts.end(), [](auto& a, auto& b) {
            int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
            if (da != db) return da > db;
            return a.first.first > b.first.first;
        });
        for (auto& [k, v] : ts) {
            std::string cs = v.get_str();
            bool neg = cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (!s.empty()) s += neg ? " - " : " + ";
            else if (neg) s += "-";
            std::string mono;
            auto add = [&](const std::string& var, int e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += var;
                if (e > 1) mono += "^" + std::to_string(e);
            };
            add(vx, k.first);
            add(vy, k.second);
            if (mono.empty()) s += cs;
            else if (cs == "1") s += mono;
            else s += cs + "*" + mono;
        }
        return s;
    }

  private:
    void prune()
    {
        for (auto it = t_.begin(); it != t_.end();) {
            if (is_zero(it->second)) it = t_.erase(it);
            else ++it;
        }
    }
    std::map<Key, Rat> t_;
};

}  // namespace pentacycle

#endif  // PENTACYCLE_EXACT_HPP
