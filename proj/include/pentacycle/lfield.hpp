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

// The sextic algebra L = Q[T]/(f): arithmetic, norms, the tabulated elements,
// a 2-maximal order, the completions at 2 and 3701 and local square classes.

#ifndef PENTACYCLE_LFIELD_HPP
#define PENTACYCLE_LFIELD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pentacycle/exact.hpp"
#include "pentacycle/fixtures.hpp"
#include "pentacycle/localnum.hpp"

namespace pentacycle {

inline const QPoly& l_modulus()
{
    static const QPoly f = qpoly({1, 6, 5, 22, 22, 8, 1});
    return f;
}

/// Irreducibility over Q from factorization patterns mod small primes: a rational
/// factor of degree d needs d to be a sub-sum of every pattern.
inline bool irreducible_by_patterns(const QPoly& a, long prime_bound = 200)
{
    const int n = a.degree();
    std::set<int> possible;
    for (int d = 1; d < n; ++d) possible.insert(d);
    std::vector<Int> ic = primitive_integer(a);
    Int disc = discriminant(from_integer(ic)).get_num();
    for (long p = 2; p <= prime_bound && !possible.empty(); ++p) {
        if (factor_small(Int(p)).size() != 1 || factor_small(Int(p))[0].second != 1) continue;
        if (ic.back() % p == 0 || disc % p == 0) continue;
        auto pat = ddf_pattern(reduce_mod(from_integer(ic), Int(p)));
        std::set<int> sums{0};
        for (int d : pat) {
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + d);
            sums = next;
        }
        for (auto it = possible.begin(); it != possible.end();)
            it = sums.count(*it) ? std::next(it) : possible.erase(it);
    }
    return possible.empty();
}

class LElem {
  public:
    LElem() : rep_() {}
    explicit LElem(QPoly r) : rep_(std::move(r) % l_modulus()) {}
    LElem(long c) : rep_(Rat(c)) {}  // NOLINT(google-explicit-constructor)
    static LElem T() { return LElem(QPoly::x()); }
    static LElem scalar(const Rat& r) { return LElem(QPoly(r)); }

    const QPoly& rep() const { return rep_; }
    bool zero() const { return is_zero(rep_); }

    friend LElem operator+(const LElem& a, const LElem& b) { return LElem(a.rep_ + b.rep_); }
    friend LElem operator-(const LElem& a, const LElem& b) { return LElem(a.rep_ - b.rep_); }
    friend LElem operator*(const LElem& a, const LElem& b) { return LElem(a.rep_ * b.rep_); }
    LElem operator-() const { return LElem(QPoly() - rep_); }
    friend bool operator==(const LElem& a, const LElem& b) { return a.rep_ == b.rep_; }
    friend bool operator!=(const LElem& a, const LElem& b) { return !(a == b); }

    LElem inverse() const
    {
        if (zero()) throw std::domain_error("inverse of zero in L");
        return LElem(invmod(rep_, l_modulus()));
    }
    LElem pow(long e) const
    {
        if (e < 0) return inverse().pow(-e);
        LElem r(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    /// Coordinates in the power basis 1, T, ..., T^5.
    std::vector<Rat> coords() const
    {
        std::vector<Rat> v(6, Rat(0));
        for (int i = 0; i <= rep_.degree(); ++i) v[i] = rep_[i];
        return v;
    }
    static LElem from_coords(const std::vector<Rat>& v) { return LElem(QPoly(v)); }

  private:
    QPoly rep_;
};

/// N_{L/Q}(x) = Res(f, x) for monic f.
inline Rat l_norm(const LElem& x)
{
    if (x.zero()) throw std::domain_error("norm of zero");
    return resultant(l_modulus(), x.rep());
}

// ---------------------------------------------------------------------------
// Tabulated elements

struct NamedElement {
    std::string name;
    LElem value;
    Rat claimed_norm;
    Rat norm;
};

struct ElementTable {
    std::vector<NamedElement> elements;
    Json identities;

    const LElem& get(const std::string& n) const
    {
        for (auto& e : elements)
            if (e.name == n) return e.value;
        throw FixtureError("no element named " + n);
    }
    bool has(const std::string& n) const
    {
        for (auto& e : elements)
            if (e.name == n) return true;
        return false;
    }
};

inline ElementTable load_elements(const Json& j)
{
    if (parse_qpoly(j.at("modulus").get<std::string>()) != l_modulus())
        throw FixtureError("elements_of_L: modulus differs from the sextic");
    ElementTable t;
    for (auto& e : j.at("elements")) {
        NamedElement ne;
        ne.name = e.at("name").get<std::string>();
        ne.value = LElem(parse_qpoly(e.at("poly").get<std::string>()));
        ne.claimed_norm = json_rat(e.at("norm"));
        ne.norm = l_norm(ne.value);
        t.elements.push_back(std::move(ne));
    }
    t.identities = j.value("identities", Json::array());
    return t;
}

inline ElementTable load_elements() { return load_elements(load_fixture("elements_of_L.json")); }

/// Product of named elements with integer exponents, e.g. {"alpha": 2, "u2": 1}.
inline LElem element_product(const ElementTable& t, const std::map<std::string, long>& ex)
{
    LElem r(1);
    for (auto& [n, e] : ex) r = r * t.get(n).pow(e);
    return r;
}

struct UnitAdjustment {
    bool found = false;
    std::map<std::string, long> exponents;  // over -1, u1, u2, u3

    std::string text() const
    {
        std::string s;
        for (auto& [n, e] : exponents) {
            if (e == 0) continue;
            if (!s.empty()) s += " ";
            s += n;
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s.empty() ? "1" : s;
    }
};

/// Writes q as (-1)^s u1^a u2^b u3^c with |a|,|b|,|c| <= bound.
inline UnitAdjustment find_unit(const ElementTable& t, const LElem& q, long bound = 3)
{
    UnitAdjustment out;
    if (l_norm(q) != 1 && l_norm(q) != -1) return out;
    const LElem u1 = t.get("u1"), u2 = t.get("u2"), u3 = t.get("u3");
    for (long s = 0; s <= 1; ++s)
        for (long a = -bound; a <= bound; ++a)
            for (long b = -bound; b <= bound; ++b)
                for (long c = -bound; c <= bound; ++c) {
                    LElem w = u1.pow(a) * u2.pow(b) * u3.pow(c);
                    if (s) w = -w;
                    if (w == q) {
                        out.found = true;
                        out.exponents = {{"-1", s}, {"u1", a}, {"u2", b}, {"u3", c}};
                        return out;
                    }
                }
    return out;
}

struct IdentityCheck {
    Rat value;
    std::map<std::string, long> product;
    bool exact = false;        // product == value on the nose
    UnitAdjustment adjustment;  // value = product * unit when not exact
    bool ok() const { return exact || adjustment.found; }
};

inline std::vector<IdentityCheck> verify_element_factorizations(const ElementTable& t)
{
    std::vector<IdentityCheck> out;
    for (auto& id : t.identities) {
        IdentityCheck c;
        c.value = json_rat(id.at("value"));
        for (auto& [k, v] : id.at("product").items()) c.product[k] = v.get<long>();
        LElem p = element_product(t, c.product);
        c.exact = (p == LElem::scalar(c.value));
        if (!c.exact) c.adjustment = find_unit(t, LElem::scalar(c.value) * p.inverse());
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lattice helpers: integer HNF, rational inverse, F2 kernels

using RatMat = std::vector<std::vector<Rat>>;
using IntMat = std::vector<std::vector<Int>>;

/// Row HNF of an integer matrix of rank n (n columns); returns the n nonzero rows.
inline IntMat hnf_rows(IntMat a)
{
    const std::size_t n = a.empty() ? 0 : a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = row + 1; i < a.size(); ++i) {
            if (is_zero(a[i][col])) continue;
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[row][col].get_mpz_t(), a[i][col].get_mpz_t());
            Int x = a[row][col] / g, y = a[i][col] / g;
            for (std::size_t c = col; c < n; ++c) {
                Int r0 = s * a[row][c] + t * a[i][c];
                Int r1 = x * a[i][c] - y * a[row][c];
                a[row][c] = r0;
                a[i][c] = r1;
            }
        }
        if (is_zero(a[row][col])) throw std::domain_error("hnf_rows: lattice not of full rank");
        if (a[row][col] < 0)
            for (auto& e : a[row]) e = -e;
        for (std::size_t k = 0; k < row; ++k) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[k][col].get_mpz_t(), a[row][col].get_mpz_t());
            for (std::size_t c = col; c < n; ++c) a[k][c] -= q * a[row][c];
        }
        ++row;
    }
    a.resize(n);
    return a;
}

/// Basis of the Z-lattice spanned by rational rows.
inline RatMat lattice_basis(const RatMat& rows)
{
    Int d = 1;
    for (auto& r : rows)
        for (auto& e : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den_mpz_t());
    IntMat z;
    for (auto& r : rows) {
        std::vector<Int> v;
        for (auto& e : r) {
            Rat s = e * Rat(d);
            s.canonicalize();
            v.push_back(s.get_num());
        }
        z.push_back(std::move(v));
    }
    RatMat out;
    for (auto& r : hnf_rows(z)) {
        std::vector<Rat> v;
        for (auto& e : r) v.push_back(make_rat(e, d));
        out.push_back(std::move(v));
    }
    return out;
}

inline RatMat mat_inverse(RatMat a)
{
    const std::size_t n = a.size();
    RatMat inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a[p][c])) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rat s = 1 / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || is_zero(a[i][c])) continue;
            Rat m = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= m * a[c][j];
                inv[i][j] -= m * inv[c][j];
            }
        }
    }
    return inv;
}

inline Rat mat_det(const RatMat& a) { return det_bareiss(a); }

/// Row vector times matrix.
inline std::vector<Rat> vec_mat(const std::vector<Rat>& v, const RatMat& m)
{
    std::vector<Rat> out(m.empty() ? 0 : m[0].size(), Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i]))
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * m[i][j];
    return out;
}

using F2Vec = std::vector<int>;

/// Basis of {a : a M = 0} over F2 for M given as rows.
inline std::vector<F2Vec> f2_left_kernel(const std::vector<F2Vec>& rows)
{
    const std::size_t m = rows.size();
    const std::size_t n = m ? rows[0].size() : 0;
    // augment [M | I] and row reduce on the M part
    std::vector<F2Vec> a;
    for (std::size_t i = 0; i < m; ++i) {
        F2Vec r(rows[i]);
        for (auto& e : r) e &= 1;
        r.resize(n + m, 0);
        r[n + i] = 1;
        a.push_back(std::move(r));
    }
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t p = row;
        while (p < m && !a[p][c]) ++p;
        if (p == m) continue;
        std::swap(a[p], a[row]);
        for (std::size_t i = 0; i < m; ++i)
            if (i != row && a[i][c])
                for (std::size_t j = 0; j < n + m; ++j) a[i][j] ^= a[row][j];
        ++row;
    }
    std::vector<F2Vec> ker;
    for (std::size_t i = row; i < m; ++i) ker.emplace_back(a[i].begin() + static_cast<long>(n), a[i].end());
    return ker;
}

inline std::size_t f2_rank(const std::vector<F2Vec>& rows) { return rows.size() - f2_left_kernel(rows).size(); }

// ---------------------------------------------------------------------------
// Round-2 saturation at 2

struct TwoMaximalOrder {
    RatMat basis;  // rows, power-basis coordinates
    RatMat basis_inv;
    Int index;     // [O : Z[T]]
    long v2_disc_f = 0;
    long v2_disc_order = 0;
    int iterations = 0;
    bool maximal = false;

    std::vector<Rat> coords(const LElem& x) const { return vec_mat(x.coords(), basis_inv); }
    /// True when x is 2-integral in O (coordinates without 2 in the denominator).
    bool contains(const LElem& x) const
    {
        for (auto& c : coords(x))
            if (!is_zero(c) && vp(c, Int(2)) < 0) return false;
        return true;
    }
};

namespace detail {

inline std::vector<LElem> basis_elems(const RatMat& b)
{
    std::vector<LElem> v;
    for (auto& r : b) v.push_back(LElem::from_coords(r));
    return v;
}

inline F2Vec mod2_coords(const std::vector<Rat>& c)
{
    F2Vec v;
    for (auto& e : c) {
        if (e.get_den() != 1) throw std::logic_error("Round-2: element left the order");
        v.push_back(mpz_odd_p(e.get_num_mpz_t()) ? 1 : 0);
    }
    return v;
}

inline RatMat lift_plus_two(const std::vector<F2Vec>& ker, const RatMat& b)
{
    RatMat gens;
    for (auto& a : ker) {
        std::vector<Rat> v(b[0].size(), Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i])
                for (std::size_t j = 0; j < v.size(); ++j) v[j] += b[i][j];
        gens.push_back(std::move(v));
    }
    for (auto& r : b) {
        std::vector<Rat> v;
        for (auto& e : r) v.push_back(e * 2);
        gens.push_back(std::move(v));
    }
    return lattice_basis(gens);
}

}  // namespace detail

inline TwoMaximalOrder two_maximal_order(int max_iterations = 6)
{
    const int n = l_modulus().degree();
    TwoMaximalOrder o;
    o.basis.assign(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    for (int i = 0; i < n; ++i) o.basis[i][i] = 1;
    o.v2_disc_f = vp(discriminant(l_modulus()), Int(2));
    for (int it = 0; it < max_iterations; ++it) {
        o.basis_inv = mat_inverse(o.basis);
        auto om = detail::basis_elems(o.basis);
        // radical of O/2O: kernel of x -> x^8 (8 >= degree)
        std::vector<F2Vec> frob;
        for (auto& w : om) frob.push_back(detail::mod2_coords(vec_mat(w.pow(8).coords(), o.basis_inv)));
        RatMat I = detail::lift_plus_two(f2_left_kernel(frob), o.basis);
        RatMat Iinv = mat_inverse(I);
        auto ie = detail::basis_elems(I);
        // U = {x in O : x I in 2 I}; the new order is U / 2
        std::vector<F2Vec> act;
        for (auto& w : om) {
            F2Vec row;
            for (auto& g : ie) {
                auto c = detail::mod2_coords(vec_mat((w * g).coords(), Iinv));
                row.insert(row.end(), c.begin(), c.end());
            }
            act.push_back(std::move(row));
        }
        RatMat U = detail::lift_plus_two(f2_left_kernel(act), o.basis);
        for (auto& r : U)
            for (auto& e : r) e /= 2;
        RatMat next = lattice_basis(U);
        o.iterations = it + 1;
        if (mat_det(next) == mat_det(o.basis)) {
            o.maximal = true;
            break;
        }
        o.basis = next;
    }
    o.basis_inv = mat_inverse(o.basis);
    Rat idx = 1 / mat_det(o.basis);
    if (idx < 0) idx = -idx;
    if (idx.get_den() != 1) throw std::logic_error("order index not integral");
    o.index = idx.get_num();
    o.v2_disc_order = o.v2_disc_f - 2 * vp(o.index, Int(2));
    if (!o.maximal) throw std::runtime_error("2-maximal order: saturation did not terminate");
    return o;
}

inline const TwoMaximalOrder& the_two_maximal_order()
{
    static const TwoMaximalOrder o = two_maximal_order();
    return o;
}

// ---------------------------------------------------------------------------
// Completions

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// f mod 2 == (x^3+x+1)^2, the e = 2, f = 3 shape at 2.
inline bool two_adic_shape_ok()
{
    auto c = reduce_mod(qpoly({1, 1, 0, 1}), Int(2));
    return reduce_mod(l_modulus(), Int(2)) == c * c;
}

/// v_P(x) for the unique prime P above 2 (residue degree 3).
inline long two_adic_valuation(const LElem& x)
{
    long v = vp(l_norm(x), Int(2));
    if (v % 3 != 0) throw std::logic_error("2-adic norm valuation not divisible by 3");
    return v / 3;
}

/// Split data at 3701: f = lin * quad * cubic over Z/p^k, with lin = x - 1371,
/// quad = (x-1727)^2 (ramified, component E) and cubic irreducible (component F).
struct Completion3701 {
    Int p = 3701;
    long k = 0;
    Int M;
    Poly<ModInt> lin, quad, cubic;
    Int root;         // lifted root of lin
    Int linear_residue = 1371, ramified_residue = 1727;
    Int qa, qb;       // quad(pi + 1727) = pi^2 + qa pi + qb
    bool residue_cubic_irreducible = false;
};

inline Completion3701 make_completion_3701(long k)
{
    Completion3701 c;
    c.k = k;
    const Int& p = c.p;
    c.M = ipow(p, static_cast<unsigned long>(k));
    auto fp = reduce_mod(l_modulus(), p);
    auto l0 = reduce_mod(qpoly({-1371, 1}), p);
    auto q0 = reduce_mod(qpoly({-1727, 1}), p);
    q0 = q0 * q0;
    auto [rest, r1] = divmod(fp, l0 * q0);
    if (!is_zero(r1)) throw std::logic_error("3701 split: expected factors do not divide f");
    c.residue_cubic_irreducible = (ddf_pattern(rest) == std::vector<int>{3});
    c.lin = hensel_lift(l_modulus(), l0, q0 * rest, p, k).g;
    c.quad = hensel_lift(l_modulus(), q0, l0 * rest, p, k).g;
    c.cubic = hensel_lift(l_modulus(), rest, l0 * q0, p, k).g;
    if (!(c.lin * c.quad * c.cubic == reduce_mod(l_modulus(), c.M)))
        throw std::logic_error("3701 split: lifted product differs from f");
    c.root = (-c.lin[0]).value();
    auto shifted = lift_mod(c.quad).compose(qpoly({1727, 1}));
    c.qa = ModInt(shifted[1].get_num(), c.M).value();
    c.qb = ModInt(shifted[0].get_num(), c.M).value();
    if (vp(c.qb, p) != 1) throw std::logic_error("3701 split: quadratic factor not Eisenstein");
    return c;
}

inline const Completion3701& completion_3701(long k = 8)
{
    static std::mutex mu;
    static std::map<long, std::unique_ptr<Completion3701>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[k];
    if (!slot) slot = std::make_unique<Completion3701>(make_completion_3701(k));
    return *slot;
}

enum class LPlace { Two, Q3701, E, F };

inline const char* place_name(LPlace p)
{
    switch (p) {
    case LPlace::Two: return "L_2";
    case LPlace::Q3701: return "Q_3701";
    case LPlace::E: return "E";
    case LPlace::F: return "F";
    }
    return "?";
}

struct LocalValue {
    long v = 0;
    std::optional<Int> residue;  // in F_p (Q_3701, E); norm to F_p of the residue (F)
};

namespace detail {

/// Largest power of p in a denominator of x.
inline long p_denominator(const LElem& x, const Int& p)
{
    long m = 0;
    for (auto& c : x.rep().coeffs())
        if (!is_zero(c)) m = std::max(m, vp(Int(c.get_den()), p));
    return m;
}

inline Int unit_part_mod_p(const Int& a, long v, const Int& p)
{
    Int u = a / ipow(p, static_cast<unsigned long>(v));
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline LocalValue local_3701(const QPoly& x, LPlace place, const Completion3701& c)
{
    const Int& p = c.p;
    auto xm = reduce_mod(x, c.M);
    LocalValue out;
    if (place == LPlace::Q3701) {
        Int val = is_zero(xm) ? Int(0) : xm.eval(ModInt(c.root, c.M)).value();
        if (is_zero(val)) throw PrecisionError("Q_3701 component vanishes to working precision");
        out.v = vp(val, p);
        out.residue = unit_part_mod_p(val, out.v, p);
        return out;
    }
    if (place == LPlace::E) {
        auto r = is_zero(xm) ? xm : xm % c.quad;
        ModInt A = r[0] + r[1] * ModInt(1727, c.M), B = r[1];
        long vA = is_zero(A) ? LONG_MAX : vp(A.value(), p);
        long vB = is_zero(B) ? LONG_MAX : vp(B.value(), p);
        if (vA >= c.k && vB >= c.k) throw PrecisionError("E component vanishes to working precision");
        // v_E(pi) = 1, v_E(p) = 2, pi^2 = -qb (1 + O(pi))
        Int bprime = c.qb / p;
        Int lead;
        long w;
        if (vA <= vB) {
            out.v = 2 * vA;
            w = vA;
            lead = A.value();
        } else {
            out.v = 2 * vB + 1;
            w = vB;
            lead = B.value();
        }
        ModInt u(unit_part_mod_p(lead, w, p), p);
        ModInt mb(Int(-bprime), p);
        out.residue = (u * mb.pow(Int(-w))).value();
        return out;
    }
    // F: norm of x mod cubic via the multiplication matrix
    auto r = is_zero(xm) ? xm : xm % c.cubic;
    if (is_zero(r)) throw PrecisionError("F component vanishes to working precision");
    std::vector<std::vector<ModInt>> m;
    Poly<ModInt> basis(ModInt(1, c.M));
    auto X = Poly<ModInt>::monomial(ModInt(1, c.M), 1);
    for (int i = 0; i < 3; ++i) {
        auto prod = (r * basis) % c.cubic;
        std::vector<ModInt> row;
        for (int j = 0; j < 3; ++j) row.push_back(prod.coeff(j).bound() ? prod.coeff(j) : ModInt(0, c.M));
        m.push_back(row);
        basis = basis * X;
    }
    Int nv = det_cofactor(m).value();
    if (is_zero(nv)) throw PrecisionError("F component norm vanishes to working precision");
    long vn = vp(nv, p);
    if (vn % 3 != 0) throw std::logic_error("F: norm valuation not divisible by 3");
    out.v = vn / 3;
    out.residue = unit_part_mod_p(nv, vn, p);
    return out;
}

}  // namespace detail

/// Valuation and residue datum of x at one place of L above 2 or 3701.
inline LocalValue local_valuation(const LElem& x, LPlace place)
{
    if (x.zero()) throw std::domain_error("local_valuation of zero");
    if (place == LPlace::Two) return LocalValue{two_adic_valuation(x), std::nullopt};
    const Int p = 3701;
    long m = detail::p_denominator(x, p);
    QPoly xi = x.rep() * Rat(ipow(p, static_cast<unsigned long>(2 * m)));
    auto run = [&](const Completion3701& c) {
        auto lv = detail::local_3701(xi, place, c);
        lv.v -= (place == LPlace::E ? 4 : 2) * m;
        if (place == LPlace::E && m > 0) {
            // (p / pi^2)^{2m} = b'^{-2m} on residues
            ModInt bp(Int(c.qb / p), p);
            lv.residue = (ModInt(*lv.residue, p) * bp.pow(Int(2 * m))).value();
        }
        return lv;
    };
    try {
        return run(completion_3701());
    } catch (const PrecisionError&) {
        return run(completion_3701(2 * completion_3701().k));
    }
}

struct SquareClassResult {
    bool trivial = false;
    std::optional<Rat> scalar;  // r with r x a square, when trivial
    long searched = 0;          // residues examined (p = 2)
    std::vector<std::string> notes;
};

namespace detail {

/// A unit u of O_P (P | 2) is a square iff z^2 = u mod P^5 for some z mod P^3.
inline bool two_adic_unit_is_square(const LElem& u, const LElem& alpha, long& searched)
{
    std::vector<LElem> reps;
    for (int c = 0; c < 8; ++c) reps.push_back(LElem(qpoly({c & 1, (c >> 1) & 1, (c >> 2) & 1})));
    const LElem a2 = alpha * alpha;
    for (auto& r0 : reps)
        for (auto& r1 : reps)
            for (auto& r2 : reps) {
                ++searched;
                LElem z = r0 + r1 * alpha + r2 * a2;
                LElem d = z * z - u;
                if (d.zero() || vp(l_norm(d), Int(2)) >= 15) return true;
            }
    return false;
}

}  // namespace detail

/// Class of x in L_p^* / L_p^{*2} Q_p^* for p in {2, 3701}: trivial iff r x is a
/// local square for one of the scalar representatives r.
inline SquareClassResult local_square_class_test(const LElem& x, long p, const LElem& alpha)
{
    if (x.zero()) throw std::domain_error("square class of zero");
    SquareClassResult out;
    if (p == 2) {
        if (!the_two_maximal_order().maximal || !two_adic_shape_ok())
            throw std::logic_error("2-adic data inconsistent");
        if (two_adic_valuation(alpha) != 1) throw std::logic_error("alpha is not a uniformizer at 2");
        for (long r : {1L, -1L, 2L, -2L, 3L, -3L, 6L, -6L}) {
            LElem y = LElem::scalar(Rat(r)) * x;
            long v = two_adic_valuation(y);
            if (v % 2) {
                out.notes.push_back(std::to_string(r) + ": odd valuation");
                continue;
            }
            LElem u = y * alpha.pow(-v);
            if (detail::two_adic_unit_is_square(u, alpha, out.searched)) {
                out.trivial = true;
                out.scalar = Rat(r);
                out.notes.push_back(std::to_string(r) + ": square");
                return out;
            }
            out.notes.push_back(std::to_string(r) + ": unit, no square root mod P^5");
        }
        return out;
    }
    if (p == 3701) {
        for (long r : {1L, 2L, 3701L, 7402L}) {
            LElem y = LElem::scalar(Rat(r)) * x;
            bool all = true;
            std::string why;
            for (LPlace pl : {LPlace::Q3701, LPlace::E, LPlace::F}) {
                auto lv = local_valuation(y, pl);
                bool sq = (lv.v % 2 == 0) && legendre(*lv.residue, Int(3701)) == 1;
                if (!sq) {
                    all = false;
                    why = place_name(pl);
                    break;
                }
            }
            if (all) {
                out.trivial = true;
                out.scalar = Rat(r);
                out.notes.push_back(std::to_string(r) + ": square");
                return out;
            }
            out.notes.push_back(std::to_string(r) + ": not a square in " + why);
        }
        return out;
    }
    throw std::domain_error("local_square_class_test: p must be 2 or 3701");
}

}  // namespace pentacycle

#endif  // PENTACYCLE_LFIELD_HPP
