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

// Certified complex discs with rational data. Midpoints are rounded to a
// dyadic grid after every product so sizes stay bounded; the rounding error is
// folded into the radius, which is always an upper bound.

#ifndef PENTACYCLE_BALLS_HPP
#define PENTACYCLE_BALLS_HPP

#include <complex>
#include <optional>
#include <vector>

#include "pentacycle/exact.hpp"

namespace pentacycle {

/// Rational upper bound for sqrt(q), q >= 0, accurate to about 2^-bits.
inline Rat sqrt_upper(const Rat& q, unsigned long bits)
{
    if (sgn(q) < 0) throw std::domain_error("sqrt_upper of negative");
    if (sgn(q) == 0) return Rat(0);
    // floor(sqrt(q * 4^bits)) + 1, divided by 2^bits
    Int num = q.get_num(), den = q.get_den();
    Int scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), 2 * bits);
    Int t = scaled / den + 1;  // ceil-ish
    Int r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    r += 1;
    Rat out(r, ipow(Int(2), bits));
    out.canonicalize();
    return out;
}

inline Rat round_dyadic(const Rat& x, unsigned long bits)
{
    Int scaled;
    Int num = x.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), bits);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
    Rat out(q, ipow(Int(2), bits));
    out.canonicalize();
    return out;
}

inline Rat round_up_dyadic(const Rat& x, unsigned long bits)
{
    Int scaled;
    Int num = x.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), bits);
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
    Rat out(q, ipow(Int(2), bits));
    out.canonicalize();
    return out;
}

struct CBall {
    Rat re = 0, im = 0, rad = 0;

    CBall() = default;
    CBall(Rat r, Rat i = 0, Rat e = 0) : re(std::move(r)), im(std::move(i)), rad(std::move(e)) {}

    /// |re| + |im| >= modulus
    Rat mag_bound() const { return Rat(abs(re) + abs(im)); }

    friend CBall operator+(const CBall& a, const CBall& b) { return {Rat(a.re + b.re), Rat(a.im + b.im), Rat(a.rad + b.rad)}; }
    friend CBall operator-(const CBall& a, const CBall& b) { return {Rat(a.re - b.re), Rat(a.im - b.im), Rat(a.rad + b.rad)}; }
    CBall operator-() const { return {Rat(-re), Rat(-im), rad}; }
    friend CBall operator*(const CBall& a, const CBall& b)
    {
        CBall c;
        c.re = a.re * b.re - a.im * b.im;
        c.im = a.re * b.im + a.im * b.re;
        c.rad = a.mag_bound() * b.rad + b.mag_bound() * a.rad + a.rad * b.rad;
        return c;
    }

    CBall rounded(unsigned long bits) const
    {
        CBall c;
        c.re = round_dyadic(re, bits);
        c.im = round_dyadic(im, bits);
        c.rad = round_up_dyadic(Rat(rad + abs(re - c.re) + abs(im - c.im)), bits);
        return c;
    }

    bool contains_zero() const
    {
        // |mid| <= rad  <=>  re^2 + im^2 <= rad^2
        return re * re + im * im <= rad * rad;
    }

    /// The unique integer within the ball, if the ball is thin enough and real.
    std::optional<Int> unique_integer() const
    {
        if (rad >= Rat(1, 2)) return std::nullopt;
        if (abs(im) > rad) return std::nullopt;
        Int n = floor_rat(Rat(re + Rat(1, 2)));
        if (abs(Rat(re - n)) > rad) return std::nullopt;
        return n;
    }
};

struct RootBalls {
    std::vector<CBall> balls;
    unsigned long bits = 0;
};

namespace detail {

using CQ = std::pair<Rat, Rat>;  // exact Gaussian rational

inline CQ cmul(const CQ& a, const CQ& b) { return {Rat(a.first * b.first - a.second * b.second), Rat(a.first * b.second + a.second * b.first)}; }
inline CQ cadd(const CQ& a, const CQ& b) { return {Rat(a.first + b.first), Rat(a.second + b.second)}; }
inline CQ csub(const CQ& a, const CQ& b) { return {Rat(a.first - b.first), Rat(a.second - b.second)}; }
inline Rat cnorm(const CQ& a) { return Rat(a.first * a.first + a.second * a.second); }
inline CQ cdiv(const CQ& a, const CQ& b)
{
    Rat n = cnorm(b);
    CQ num = cmul(a, {b.first, Rat(-b.second)});
    return {Rat(num.first / n), Rat(num.second / n)};
}
inline CQ ceval(const Poly<Rat>& p, const CQ& z)
{
    CQ acc{Rat(0), Rat(0)};
    for (int i = p.degree(); i >= 0; --i) acc = cadd(cmul(acc, z), {p[i], Rat(0)});
    return acc;
}
inline CQ cround(const CQ& z, unsigned long bits) { return {round_dyadic(z.first, bits), round_dyadic(z.second, bits)}; }

}  // namespace detail

/// Certified inclusion discs for all complex roots of a squarefree polynomial.
/// Approximations come from Durand-Kerner in double precision, then Newton in
/// dyadic rationals; discs use the Weierstrass bound n*|p(z_i)/prod(z_i-z_j)|.
/// Precision doubles up to `max_doublings` times until the discs are disjoint
/// and each radius is below 2^-target_bits.
inline RootBalls certified_roots(const Poly<Rat>& p_in, unsigned long target_bits = 40, int max_doublings = 4)
{
    if (p_in.degree() < 1) throw std::domain_error("certified_roots: constant polynomial");
    if (!is_squarefree(p_in)) throw std::domain_error("certified_roots: not squarefree");
    Poly<Rat> p = p_in.monic();
    const int n = p.degree();

    std::vector<std::complex<double>> z(n);
    {
        std::vector<std::complex<double>> c(n + 1);
        for (int i = 0; i <= n; ++i) c[i] = p[i].get_d();
        auto ev = [&](std::complex<double> x) {
            std::complex<double> a = 0;
            for (int i = n; i >= 0; --i) a = a * x + c[i];
            return a;
        };
        double R = 1;
        for (int i = 0; i < n; ++i) R = std::max(R, 1 + std::abs(c[i]));
        for (int i = 0; i < n; ++i) z[i] = std::polar(0.9 * R, 0.4 + 2 * M_PI * i / n);
        for (int it = 0; it < 2000; ++it) {
            double delta = 0;
            for (int i = 0; i < n; ++i) {
                std::complex<double> den = 1;
                for (int j = 0; j < n; ++j)
                    if (j != i) den *= (z[i] - z[j]);
                std::complex<double> step = ev(z[i]) / den;
                z[i] -= step;
                delta = std::max(delta, std::abs(step));
            }
            if (delta < 1e-15) break;
        }
    }

    unsigned long bits = std::max<unsigned long>(2 * target_bits, 64);
    std::vector<detail::CQ> zq(n);
    for (int i = 0; i < n; ++i) zq[i] = {Rat(z[i].real()), Rat(z[i].imag())};
    Poly<Rat> dp = p.derivative();

    for (int attempt = 0; attempt <= max_doublings; ++attempt, bits *= 2) {
        // Newton refinement at the current precision
        for (int it = 0; it < 8; ++it)
            for (int i = 0; i < n; ++i) {
                detail::CQ d = detail::ceval(dp, zq[i]);
                if (is_zero(detail::cnorm(d))) break;
                zq[i] = detail::cround(detail::csub(zq[i], detail::cdiv(detail::ceval(p, zq[i]), d)), bits);
            }
        std::vector<Rat> radius(n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            detail::CQ den{Rat(1), Rat(0)};
            for (int j = 0; j < n; ++j)
                if (j != i) den = detail::cmul(den, detail::csub(zq[i], zq[j]));
            if (is_zero(detail::cnorm(den))) {
                ok = false;
                break;
            }
            Rat w2 = Rat(detail::cnorm(detail::ceval(p, zq[i])) / detail::cnorm(den));
            radius[i] = Rat(n) * sqrt_upper(w2, bits + 8);
            if (radius[i] * ipow(Int(2), target_bits) >= 1) ok = false;
        }
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j) {
                Rat s = radius[i] + radius[j];
                if (detail::cnorm(detail::csub(zq[i], zq[j])) <= s * s) ok = false;
            }
        if (ok) {
            RootBalls out;
            out.bits = bits;
            for (int i = 0; i < n; ++i) out.balls.emplace_back(zq[i].first, zq[i].second, radius[i]);
            return out;
        }
    }
    throw std::runtime_error("certified_roots: refinement stalled after precision doublings");
}

/// Coefficients (ascending) of prod (x - b_i), as balls.
inline std::vector<CBall> ball_poly_from_roots(const std::vector<CBall>& roots, unsigned long bits)
{
    std::vector<CBall> c{CBall(Rat(1))};
    for (auto& r : roots) {
        std::vector<CBall> nc(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            nc[i + 1] = nc[i + 1] + c[i];
            nc[i] = (nc[i] - (c[i] * r)).rounded(bits);
        }
        c = std::move(nc);
    }
    return c;
}

inline CBall ball_eval(const Poly<Rat>& p, const CBall& z, unsigned long bits)
{
    CBall acc;
    for (int i = p.degree(); i >= 0; --i) acc = (acc * z + CBall(p[i])).rounded(bits);
    return acc;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_BALLS_HPP
