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

// From the period-5 trace curve to y^2 = f(x): singular points, the
// substitution chain, and the c-map on the sextic model.

#ifndef PENTACYCLE_MODEL_HPP
#define PENTACYCLE_MODEL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pentacycle/exact.hpp"

namespace pentacycle {

struct SexticCurve {
    QPoly f;

    explicit SexticCurve(QPoly poly) : f(std::move(poly))
    {
        if (f.degree() != 6) throw std::domain_error("SexticCurve: degree must be 6");
        if (!is_squarefree(f)) throw std::domain_error("SexticCurve: f not squarefree");
    }
    Rat coeff(int i) const { return f[i]; }
    bool contains(const Rat& x, const Rat& y) const { return y * y == f.eval(x); }
};

inline SexticCurve the_curve() { return SexticCurve(qpoly({1, 6, 5, 22, 22, 8, 1})); }

// ---------------------------------------------------------------------------
// Dynamic evaluation over Q[c]/(m) with m squarefree: arithmetic as if m were
// irreducible, splitting m when a zero divisor shows up.

struct ZeroDivisorSplit : std::runtime_error {
    QPoly factor;
    explicit ZeroDivisorSplit(QPoly g) : std::runtime_error("zero divisor"), factor(std::move(g)) {}
};

class ResidueElem {
  public:
    ResidueElem(long v = 0) : r_(QPoly(Rat(v))) {}  // NOLINT(google-explicit-constructor)
    ResidueElem(QPoly r, const QPoly* m) : m_(m) { r_ = m ? r % *m : r; }

    const QPoly& rep() const { return r_; }
    friend bool is_zero(const ResidueElem& a) { return is_zero(a.r_); }
    friend ResidueElem operator+(const ResidueElem& a, const ResidueElem& b) { return {a.r_ + b.r_, mod(a, b)}; }
    friend ResidueElem operator-(const ResidueElem& a, const ResidueElem& b) { return {a.r_ - b.r_, mod(a, b)}; }
    ResidueElem operator-() const { return {-r_, m_}; }
    friend ResidueElem operator*(const ResidueElem& a, const ResidueElem& b) { return {a.r_ * b.r_, mod(a, b)}; }
    ResidueElem inv() const
    {
        if (!m_) {
            if (r_.degree() != 0) throw std::logic_error("ResidueElem: unbound non-constant");
            return ResidueElem(QPoly(Rat(1) / r_[0]), nullptr);
        }
        auto x = xgcd(r_, *m_);
        if (x.g.degree() > 0) throw ZeroDivisorSplit(x.g);
        return {x.s, m_};
    }
    friend ResidueElem exquo(const ResidueElem& a, const ResidueElem& b) { return a * b.inv(); }
    friend bool operator==(const ResidueElem& a, const ResidueElem& b) { return is_zero(a - b); }

  private:
    static const QPoly* mod(const ResidueElem& a, const ResidueElem& b) { return a.m_ ? a.m_ : b.m_; }
    QPoly r_;
    const QPoly* m_ = nullptr;
};

struct SingularFiber {
    std::string c_factor;  // m(c), pretty printed
    int factor_degree = 0;
    int gcd_degree = 0;  // degree in z of gcd(F, F_z, F_c) over Q[c]/(m)
};

struct SingularPoints {
    std::vector<std::pair<Rat, Rat>> rational;  // (z, c)
    std::vector<SingularFiber> fibers;
    bool complete = false;  // no singular points outside `rational`
};

namespace detail {

inline Poly<ResidueElem> specialize(const QQPoly& F, const QPoly* m)
{
    std::vector<ResidueElem> cs;
    for (int i = 0; i <= F.degree(); ++i) cs.emplace_back(F[i], m);
    return Poly<ResidueElem>(std::move(cs));
}

inline Poly<ResidueElem> gcd_any(Poly<ResidueElem> a, Poly<ResidueElem> b)
{
    while (!is_zero(b)) {
        Poly<ResidueElem> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Degree of gcd(F, F_z, F_c) above the roots of squarefree m, splitting m as needed.
inline void fiber_gcds(const std::vector<QQPoly>& polys, const QPoly& m, std::vector<SingularFiber>& out)
{
    try {
        Poly<ResidueElem> g;
        for (auto& p : polys) g = gcd_any(g, specialize(p, &m));
        SingularFiber fib;
        fib.c_factor = pretty(m, "c");
        fib.factor_degree = m.degree();
        fib.gcd_degree = is_zero(g) ? -1 : g.degree();
        out.push_back(fib);
    } catch (const ZeroDivisorSplit& s) {
        QPoly g = s.factor.monic();
        fiber_gcds(polys, g, out);
        fiber_gcds(polys, m / g, out);
    }
}

}  // namespace detail

/// Affine singular points of F(z,c) = 0 with a completeness certificate over the
/// algebraic closure. Variables: X = z, Y = c.
inline SingularPoints singular_points(const BiPoly& F)
{
    QQPoly Fz = F.in_x(), Dz = F.dx().in_x(), Dc = F.dy().in_x();
    QPoly r1 = resultant(Fz, Dz), r2 = resultant(Fz, Dc);
    if (is_zero(r1) && is_zero(r2)) throw std::domain_error("singular_points: eliminants vanish (common component)");
    QPoly g = is_zero(r1) ? r2.monic() : (is_zero(r2) ? r1.monic() : gcd(r1, r2));
    SingularPoints out;
    if (g.degree() <= 0) {
        out.complete = true;
        return out;
    }
    QPoly sq = squarefree_part(g).monic();
    QPoly rest = sq;
    for (const Rat& c0 : rational_roots(sq)) {
        rest = rest / QPoly(std::vector<Rat>{Rat(-c0), Rat(1)});
        QPoly a = F.at_y(c0), b = F.dx().at_y(c0), d = F.dy().at_y(c0);
        QPoly h;
        for (auto* p : {&a, &b, &d}) h = is_zero(h) ? p->monic() : (is_zero(*p) ? h : gcd(h, *p));
        if (is_zero(h)) throw std::domain_error("singular_points: whole fibre singular");
        SingularFiber fib;
        fib.c_factor = pretty(QPoly(std::vector<Rat>{Rat(-c0), Rat(1)}), "c");
        fib.factor_degree = 1;
        fib.gcd_degree = h.degree() > 0 ? squarefree_part(h).degree() : 0;
        out.fibers.push_back(fib);
        if (h.degree() > 0)
            for (auto& z0 : rational_roots(squarefree_part(h))) out.rational.emplace_back(z0, c0);
    }
    bool irrational_free = true;
    if (rest.degree() > 0) {
        std::vector<SingularFiber> fibs;
        detail::fiber_gcds({Fz, Dz, Dc}, rest.monic(), fibs);
        for (auto& fb : fibs) {
            if (fb.gcd_degree != 0) irrational_free = false;
            out.fibers.push_back(fb);
        }
    }
    // complete iff every rational fibre's gcd is accounted for by rational z's
    std::size_t expected = 0;
    for (auto& fb : out.fibers)
        if (fb.factor_degree == 1) expected += static_cast<std::size_t>(fb.gcd_degree);
    out.complete = irrational_free && expected == out.rational.size();
    return out;
}

/// Node test: after translating the point to the origin, the constant and
/// linear parts vanish and the quadratic part has nonzero discriminant.
inline bool node_check(const BiPoly& F, const Rat& z0, const Rat& c0)
{
    BiPoly G = F.substitute(BiPoly::X() + BiPoly(z0), BiPoly::Y() + BiPoly(c0));
    if (!is_zero(G.coeff(0, 0)) || !is_zero(G.coeff(1, 0)) || !is_zero(G.coeff(0, 1)))
        throw std::domain_error("node_check: point is not singular");
    Rat a = G.coeff(2, 0), b = G.coeff(1, 1), d = G.coeff(0, 2);
    if (is_zero(a) && is_zero(b) && is_zero(d)) return false;
    return !is_zero(Rat(b * b - 4 * a * d));
}

// ---------------------------------------------------------------------------
// The substitution chain

struct BirationalStep {
    std::string kind;  // translate, blowup, axis-shift, quadratic-discriminant, rescale
    std::string description;
    std::string vars_in, vars_out;
    Rat scale = 1;  // the result was multiplied by this to clear denominators
    BiPoly result;
};

struct ChainExpectations {
    BiPoly node_model, blown_up, axis_shifted;
    QPoly discriminant, sextic;
};

struct ChainResult {
    std::vector<BirationalStep> steps;
    QPoly f;
    // pieces of the quadratic in t, used by the composite map
    QPoly A, B, C;
};

namespace detail {

/// Multiply by the positive rational making the coefficients coprime integers.
inline std::pair<BiPoly, Rat> primitive_bipoly(const BiPoly& F)
{
    Int l = 1, g = 0;
    for (auto& [k, v] : F.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (auto& [k, v] : F.terms()) {
        Int n = Int(v.get_num() * (l / v.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    Rat s = make_rat(l, g);
    return {F.scale(s), s};
}

}  // namespace detail

/// Execute the chain on tau5(z,c). Each step's output is checked by the caller
/// against the expectations (see model_chain_matches).
inline ChainResult hyperelliptic_chain(const BiPoly& tau5, const Rat& node_z = Rat(-1), const Rat& node_c = Rat(-4, 3))
{
    ChainResult out;
    using B = BiPoly;

    // 1. node to the origin: z = r - 1, c = s - 4/3
    auto [node, s1] = detail::primitive_bipoly(tau5.substitute(B::X() + B(node_z), B::Y() + B(node_c)));
    out.steps.push_back({"translate", "z = r + (" + to_string(node_z) + "), c = s + (" + to_string(node_c) + ")", "z,c", "r,s", s1, node});

    // 2. blow up: s = r t, divide by r^2
    BiPoly bl = node.substitute(B::X(), B::X() * B::Y()).shift_down(2, 0);
    auto [blown, s2] = detail::primitive_bipoly(bl);
    out.steps.push_back({"blowup", "s = r t, divide by r^2", "r,s", "r,t", s2, blown});

    // 3. singular point at infinity on r + t = 0 moved to an axis: r = q - t
    auto [axis, s3] = detail::primitive_bipoly(blown.substitute(B::X() - B::Y(), B::Y()));
    out.steps.push_back({"axis-shift", "r = q - t", "r,t", "q,t", s3, axis});

    // 4. quadratic in t: A t^2 + B t + C; p^2 = B^2 - 4AC
    QQPoly in_t = axis.in_y();  // polynomial in t over Q[q]
    if (in_t.degree() != 2) throw std::logic_error("chain: axis model is not quadratic in t");
    out.A = in_t[2];
    out.B = in_t[1];
    out.C = in_t[0];
    QPoly disc = out.B * out.B - out.A * out.C * Rat(4);
    out.steps.push_back({"quadratic-discriminant", "p^2 = B(q)^2 - 4 A(q) C(q)", "q,t", "q,p", 1,
                         BiPoly::term(Rat(1), 0, 2) - BiPoly::in_var_x(disc)});

    // 5. p = 192 y, q = -1 - 4x/3, cancel 192^2
    QPoly qx = QPoly(std::vector<Rat>{Rat(-1), Rat(-4, 3)});
    QPoly f = disc.compose(qx).scale(Rat(1, 36864));
    out.f = f;
    out.steps.push_back({"rescale", "p = 192 y, q = -1 - 4x/3, divide by 36864", "q,p", "x,y", Rat(1, 36864),
                         BiPoly::term(Rat(1), 0, 2) - BiPoly::in_var_x(f)});
    return out;
}

struct ChainCheck {
    std::string step;
    bool matches = false;
};

inline std::vector<ChainCheck> model_chain_matches(const ChainResult& r, const ChainExpectations& e)
{
    std::vector<ChainCheck> out;
    out.push_back({"node_model", r.steps.at(0).result == e.node_model});
    out.push_back({"blown_up", r.steps.at(1).result == e.blown_up});
    out.push_back({"axis_shifted", r.steps.at(2).result == e.axis_shifted});
    out.push_back({"discriminant", r.B * r.B - r.A * r.C * Rat(4) == e.discriminant});
    out.push_back({"sextic", r.f == e.sextic});
    return out;
}

// ---------------------------------------------------------------------------
// Function-field elements (a + b y) / D^k on y^2 = f, used to pull tau5 back.

struct FFElem {
    QPoly a, b;
    int k = 0;
};

class FunctionField {
  public:
    FunctionField(QPoly f, QPoly D) : f_(std::move(f)), D_(std::move(D)) {}

    FFElem constant(const Rat& c) const { return {QPoly(c), QPoly(), 0}; }
    FFElem poly(const QPoly& p) const { return {p, QPoly(), 0}; }
    FFElem y() const { return {QPoly(), QPoly(Rat(1)), 0}; }

    FFElem lift(const FFElem& e, int k) const
    {
        if (k < e.k) throw std::logic_error("FunctionField: cannot lower denominator exponent");
        QPoly m = D_.pow(static_cast<unsigned>(k - e.k));
        return {e.a * m, e.b * m, k};
    }
    FFElem add(const FFElem& x, const FFElem& y) const
    {
        int k = std::max(x.k, y.k);
        FFElem a = lift(x, k), b = lift(y, k);
        return {a.a + b.a, a.b + b.b, k};
    }
    FFElem sub(const FFElem& x, const FFElem& y) const { return add(x, {-y.a, -y.b, y.k}); }
    FFElem mul(const FFElem& x, const FFElem& y) const
    {
        return {x.a * y.a + x.b * y.b * f_, x.a * y.b + x.b * y.a, x.k + y.k};
    }
    FFElem div_D(const FFElem& x) const { return {x.a, x.b, x.k + 1}; }
    bool is_zero_elem(const FFElem& x) const { return is_zero(x.a) && is_zero(x.b); }

    FFElem eval(const BiPoly& F, const FFElem& X, const FFElem& Y) const
    {
        std::vector<FFElem> xp{constant(1)}, yp{constant(1)};
        for (int i = 1; i <= F.degree_x(); ++i) xp.push_back(mul(xp.back(), X));
        for (int j = 1; j <= F.degree_y(); ++j) yp.push_back(mul(yp.back(), Y));
        FFElem acc = constant(0);
        for (auto& [key, v] : F.terms()) {
            FFElem t = mul(xp[key.first], yp[key.second]);
            acc = add(acc, {t.a * v, t.b * v, t.k});
        }
        return acc;
    }

  private:
    QPoly f_, D_;
};

struct CompositeMap {
    FFElem z, c;
    QPoly D;
    int t_sign = 1;  // t = (-B + t_sign * p) / (2A)
};

/// (x,y) -> (z,c) by retracing the chain.
inline CompositeMap composite_map(const ChainResult& r, int t_sign)
{
    QPoly qx = QPoly(std::vector<Rat>{Rat(-1), Rat(-4, 3)});
    QPoly A = r.A.compose(qx), B = r.B.compose(qx);
    QPoly D = A * Rat(2);
    FunctionField K(r.f, D);
    // t = (-B + sign*192 y) / D
    FFElem t{-B, QPoly(Rat(192 * t_sign)), 1};
    FFElem q = K.poly(qx);
    FFElem rr = K.sub(q, t);
    FFElem s = K.mul(rr, t);
    CompositeMap m;
    m.z = K.sub(rr, K.constant(1));
    m.c = K.sub(s, K.constant(Rat(4, 3)));
    m.D = D;
    m.t_sign = t_sign;
    return m;
}

inline bool pullback_vanishes(const BiPoly& tau5, const ChainResult& r, const CompositeMap& m)
{
    FunctionField K(r.f, m.D);
    return K.is_zero_elem(K.eval(tau5, m.z, m.c));
}

// ---------------------------------------------------------------------------
// The two c-formulas

struct CFormulas {
    QPoly P0 = qpoly({-9, -24, -95, -104, -46, -10, -1});
    QPoly P1 = qpoly({-9, 3, 6, 1});
    QPoly S = qpoly({64, 110, 325, 452, 271, 74, 8});
    QPoly den1 = qpoly({0, 0, 9, 6, 1}) * Rat(8);  // 8 x^2 (3+x)^2
};

/// P0^2 - P1^2 f == factor * x^2 (3+x)^2 S; returns the factor when the identity holds.
inline std::optional<Rat> c_formula_identity_factor(const CFormulas& F, const QPoly& f)
{
    QPoly lhs = F.P0 * F.P0 - F.P1 * F.P1 * f;
    QPoly base = qpoly({0, 0, 9, 6, 1}) * F.S;
    auto [q, rem] = divmod(lhs, base);
    if (!is_zero(rem) || q.degree() != 0) return std::nullopt;
    return q[0];
}

/// Does the chain's c equal (P0 + P1 y) / (8 x^2 (3+x)^2)?
inline bool chain_c_matches_formula(const CompositeMap& m, const CFormulas& F)
{
    QPoly Dk = m.D.pow(static_cast<unsigned>(m.c.k));
    return m.c.a * F.den1 == F.P0 * Dk && m.c.b * F.den1 == F.P1 * Dk;
}

struct CValue {
    bool pole = false;
    Rat value;
    int pole_order = 0;   // in x, when pole
    Rat leading;          // c ~ leading * x^pole_order
    std::string formula;  // which formula was determinate
    std::string to_string() const { return pole ? "inf" : value.get_str(); }
};

inline CValue c_map_affine(const Rat& x, const Rat& y, const CFormulas& F = {})
{
    Rat n2 = F.S.eval(x), d2 = 2 * (F.P0.eval(x) - F.P1.eval(x) * y);
    if (!is_zero(d2)) return {false, Rat(n2 / d2), 0, 0, "second"};
    if (!is_zero(n2)) return {true, 0, 0, 0, "second"};
    Rat n1 = F.P0.eval(x) + F.P1.eval(x) * y, d1 = F.den1.eval(x);
    if (!is_zero(d1)) return {false, Rat(n1 / d1), 0, 0, "first"};
    if (!is_zero(n1)) return {true, 0, 0, 0, "first"};
    throw std::logic_error("c_map: both formulas indeterminate");
}

/// Power series square root of F with F(0) a nonzero square in Q, to n terms.
inline QPoly sqrt_series(const QPoly& F, int n)
{
    Rat a0 = F[0];
    if (sgn(a0) <= 0) throw std::domain_error("sqrt_series: F(0) must be a positive square");
    Int num, den;
    mpz_sqrt(num.get_mpz_t(), a0.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), a0.get_den_mpz_t());
    Rat s0 = make_rat(num, den);
    if (s0 * s0 != a0) throw std::domain_error("sqrt_series: F(0) not a square");
    std::vector<Rat> s{s0};
    for (int k = 1; k < n; ++k) {
        Rat acc = F[k];
        for (int i = 1; i < k; ++i) acc -= s[i] * s[k - i];
        s.push_back(Rat(acc / (2 * s0)));
    }
    return QPoly(s);
}

/// Laurent expansion y = branch * (x^3 + ...), first k terms as (exponent, coefficient).
inline std::vector<std::pair<int, Rat>> infinity_expansion(const QPoly& f, int branch, int k)
{
    if (k < 1) throw std::domain_error("infinity_expansion: k >= 1");
    if (f.degree() != 6) throw std::domain_error("infinity_expansion: sextic only");
    QPoly S = sqrt_series(f.reversed(6), k);
    std::vector<std::pair<int, Rat>> out;
    for (int i = 0; i < k; ++i)
        if (!is_zero(S[i])) out.emplace_back(3 - i, Rat(branch * S[i]));
    return out;
}

/// c at infinity on the branch with y/x^3 -> branch (+1 or -1), via the first formula.
inline CValue c_map_infinity(const QPoly& f, int branch, const CFormulas& F = {}, int terms = 8)
{
    QPoly S = sqrt_series(f.reversed(6), terms);
    QPoly num = F.P0.reversed(6) + F.P1.reversed(3) * S * Rat(branch);
    num = num.truncate(terms);
    int v = 0;
    while (v < terms && is_zero(num[v])) ++v;
    if (v == terms) throw std::logic_error("c_map_infinity: numerator vanishes to working order");
    CValue out;
    out.formula = "first";
    if (v < 2) {
        out.pole = true;
        out.pole_order = 2 - v;
        out.leading = num[v] / 8;
        return out;
    }
    out.value = (v == 2) ? Rat(num[2] / 8) : Rat(0);
    return out;
}

}  // namespace pentacycle

#endif  // PENTACYCLE_MODEL_HPP
