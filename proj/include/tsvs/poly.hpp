#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "tsvs/errors.hpp"
#include "tsvs/rational.hpp"

namespace tsvs {

// Dense univariate polynomial over an exact field K. Coefficients are stored
// lowest degree first and kept normalized: the leading coefficient is nonzero
// unless the polynomial is zero (empty coefficient list, degree -1).
//
// K must provide value semantics, +, -, *, /, ==, and the free functions
// zero_like, one_like, from_int_like, is_zero.
template <class K>
class Poly {
  public:
    Poly() = default;
    explicit Poly(K constant) {
        if (!is_zero(constant)) c_.push_back(std::move(constant));
    }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Poly monomial(K coeff, int deg) {
        if (is_zero(coeff)) return Poly();
        std::vector<K> c;
        c.reserve(deg + 1);
        for (int i = 0; i < deg; ++i) c.push_back(zero_like(coeff));
        c.push_back(std::move(coeff));
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero_poly() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<K>& coeffs() const { return c_; }

    const K& operator[](std::size_t i) const { return c_[i]; }

    K coeff_or(std::size_t i, const K& zero) const {
        return i < c_.size() ? c_[i] : zero;
    }

    const K& lc() const {
        if (c_.empty()) throw Error("ZeroPolynomial", "leading coefficient of zero");
        return c_.back();
    }

    bool is_one() const { return c_.size() == 1 && is_zero(c_[0] - one_like(c_[0])); }

    bool is_monic() const { return !c_.empty() && is_zero(lc() - one_like(lc())); }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!is_zero(a.c_[i] - b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        std::vector<K> r;
        r.reserve(c_.size());
        for (const K& x : c_) r.push_back(-x);
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r;
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < a.c_.size() && i < b.c_.size())
                r.push_back(a.c_[i] + b.c_[i]);
            else if (i < a.c_.size())
                r.push_back(a.c_[i]);
            else
                r.push_back(b.c_[i]);
        }
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero_poly() || b.is_zero_poly()) return Poly();
        const K zero = zero_like(a.c_[0]);
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, zero);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }

    Poly scaled(const K& s) const {
        std::vector<K> r;
        r.reserve(c_.size());
        for (const K& x : c_) r.push_back(x * s);
        return Poly(std::move(r));
    }

    // Multiplies by X^k.
    Poly shifted_up(int k) const {
        if (is_zero_poly() || k == 0) return *this;
        std::vector<K> r;
        r.reserve(c_.size() + k);
        for (int i = 0; i < k; ++i) r.push_back(zero_like(c_[0]));
        for (const K& x : c_) r.push_back(x);
        return Poly(std::move(r));
    }

    K eval(const K& x) const {
        if (c_.empty()) return zero_like(x);
        K acc = c_.back();
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

  private:
    void normalize() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }

    std::vector<K> c_;
};

// --- free operations -------------------------------------------------------

template <class K>
Poly<K> make_monic(const Poly<K>& p) {
    if (p.is_zero_poly()) throw Error("ZeroPolynomial", "monic of zero polynomial");
    const K inv = one_like(p.lc()) / p.lc();
    return p.scaled(inv);
}

// Quotient and remainder with deg(rem) < deg(q). Exact over a field.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& p, const Poly<K>& q) {
    if (q.is_zero_poly()) throw Error("DivisionByZeroPoly", "polynomial division by zero");
    if (p.is_zero_poly()) return {Poly<K>(), Poly<K>()};
    const K zero = zero_like(p.lc());
    std::vector<K> rem(p.coeffs());
    int dq = q.degree();
    const K lq_inv = one_like(q.lc()) / q.lc();
    if (p.degree() < dq) return {Poly<K>(), p};
    std::vector<K> quot(p.degree() - dq + 1, zero);
    for (int i = p.degree(); i >= dq; --i) {
        if (is_zero(rem[i])) continue;
        K c = rem[i] * lq_inv;
        quot[i - dq] = c;
        for (int j = 0; j <= dq; ++j) rem[i - dq + j] = rem[i - dq + j] - c * q[j];
    }
    return {Poly<K>(std::move(quot)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> poly_mod(const Poly<K>& p, const Poly<K>& q) {
    return divmod(p, q).second;
}

// Quotient of an exact division; throws if the division leaves a remainder.
template <class K>
Poly<K> exact_div(const Poly<K>& p, const Poly<K>& q) {
    auto [quo, rem] = divmod(p, q);
    if (!rem.is_zero_poly()) throw Error("InvariantViolation", "division expected to be exact");
    return quo;
}

// Monic gcd via Euclid. gcd(p, 0) = monic(p).
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    if (a.is_zero_poly() && b.is_zero_poly()) throw Error("BothZero", "gcd(0, 0)");
    while (!b.is_zero_poly()) {
        Poly<K> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_egcd(const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero_poly() && b.is_zero_poly()) throw Error("BothZero", "egcd(0, 0)");
    Poly<K> r0 = a, r1 = b;
    const K one = one_like(a.is_zero_poly() ? b.lc() : a.lc());
    Poly<K> s0(one), s1, t0, t1(one);
    while (!r1.is_zero_poly()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<K> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<K> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const K inv = one / r0.lc();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class K>
Poly<K> derivative(const Poly<K>& p) {
    if (p.degree() <= 0) return Poly<K>();
    std::vector<K> r;
    r.reserve(p.degree());
    for (int i = 1; i <= p.degree(); ++i) r.push_back(p[i] * from_int_like(p[i], i));
    return Poly<K>(std::move(r));
}

// p(q(X)) by Horner.
template <class K>
Poly<K> compose(const Poly<K>& p, const Poly<K>& q) {
    Poly<K> acc;
    for (int i = p.degree(); i >= 0; --i) acc = acc * q + Poly<K>(p[i]);
    return acc;
}

template <class K>
Poly<K> poly_pow(const Poly<K>& p, int e) {
    if (e < 0) throw Error("InvariantViolation", "negative polynomial power");
    if (e == 0) {
        if (p.is_zero_poly()) throw Error("ZeroPolynomial", "0^0 polynomial power");
        return Poly<K>(one_like(p.lc()));
    }
    Poly<K> acc = p;
    Poly<K> result;
    bool started = false;
    int k = e;
    while (k > 0) {
        if (k & 1) {
            result = started ? result * acc : acc;
            started = true;
        }
        k >>= 1;
        if (k > 0) acc = acc * acc;
    }
    return result;
}

// Yun's squarefree decomposition (characteristic 0): returns monic pairwise
// coprime squarefree parts with multiplicities; the product of part^mult
// times lc(p) reconstructs p.
template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K>& p) {
    if (p.is_zero_poly()) throw Error("ZeroPolynomial", "squarefree decomposition of zero");
    std::vector<std::pair<Poly<K>, int>> parts;
    Poly<K> f = make_monic(p);
    if (f.degree() < 1) return parts;
    Poly<K> fp = derivative(f);
    Poly<K> g = poly_gcd(f, fp);
    Poly<K> w = exact_div(f, g);
    int i = 1;
    while (w.degree() > 0) {
        Poly<K> y = poly_gcd(w, g);
        Poly<K> z = exact_div(w, y);
        if (z.degree() > 0) parts.emplace_back(make_monic(z), i);
        w = std::move(y);
        g = exact_div(g, w);
        ++i;
    }
    return parts;
}

template <class K>
bool is_squarefree(const Poly<K>& p) {
    if (p.degree() <= 1) return !p.is_zero_poly();
    return poly_gcd(p, derivative(p)).degree() == 0;
}

namespace detail {

template <class K>
K field_pow(K base, int e) {
    K acc = one_like(base);
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

// lc(B)^(deg A - deg B + 1) * A mod B.
template <class K>
Poly<K> pseudo_rem(const Poly<K>& a, const Poly<K>& b) {
    int delta = a.degree() - b.degree();
    K scale = field_pow(b.lc(), delta + 1);
    return poly_mod(a.scaled(scale), b);
}

// Sylvester resultant Res(A, B) = lc(A)^deg(B) * prod B(roots of A) for
// nonzero A, B, computed by the subresultant PRS so that every intermediate
// division is exact.
template <class K>
K sylvester_resultant(Poly<K> a, Poly<K> b) {
    const K one = one_like(a.lc());
    if (a.degree() == 0 && b.degree() == 0) return one;
    if (a.degree() == 0) return field_pow(a.lc(), b.degree());
    if (b.degree() == 0) return field_pow(b.lc(), a.degree());

    bool negate = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2) && (b.degree() % 2)) negate = !negate;
    }
    K g = one, h = one;
    while (true) {
        int delta = a.degree() - b.degree();
        if ((a.degree() % 2) && (b.degree() % 2)) negate = !negate;
        Poly<K> r = pseudo_rem(a, b);
        a = b;
        K div = g * field_pow(h, delta);
        b = r.scaled(one / div);
        if (b.is_zero_poly()) return zero_like(one);
        g = a.lc();
        if (delta > 0) h = field_pow(g, delta) / field_pow(h, delta - 1);
        if (b.degree() == 0) break;
    }
    K res = field_pow(b.lc(), a.degree()) / field_pow(h, a.degree() - 1);
    return negate ? -res : res;
}

}  // namespace detail

// Resultant with the frozen convention
//     res(p, q) = lc(q)^deg(p) * prod over roots s of q of p(s),
// i.e. the Sylvester resultant Res(q, p). Consequences: res(x-a, x-b) = b-a,
// res(p, c) = c^deg(p) for constants c != 0, res(p, 0) = 0, and the resultant
// of two nonzero constants is 1.
template <class K>
K resultant(const Poly<K>& p, const Poly<K>& q) {
    if (p.is_zero_poly() || q.is_zero_poly()) {
        if (!p.is_zero_poly()) return zero_like(p.lc());
        if (!q.is_zero_poly()) return zero_like(q.lc());
        throw Error("ZeroPolynomial", "resultant of two zero polynomials");
    }
    return detail::sylvester_resultant(q, p);
}

// Lagrange interpolation through (xs[i], ys[i]) with distinct nodes.
template <class K>
Poly<K> interpolate(const std::vector<K>& xs, const std::vector<K>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw Error("InvariantViolation", "interpolation point mismatch");
    const K one = one_like(xs[0]);
    Poly<K> full(one);
    for (const K& x : xs) full = full * Poly<K>(std::vector<K>{-x, one});
    Poly<K> result;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        Poly<K> lj = exact_div(full, Poly<K>(std::vector<K>{-xs[j], one}));
        K denom = lj.eval(xs[j]);
        result = result + lj.scaled(ys[j] / denom);
    }
    return result;
}

using RatPoly = Poly<Rational>;

}  // namespace tsvs
