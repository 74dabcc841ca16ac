#include "tsvs/funcfield.hpp"

#include "tsvs/errors.hpp"
#include "tsvs/linalg.hpp"

namespace tsvs {

RatFunc::RatFunc(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero_poly()) throw Error("DivisionByZero", "rational function with zero denominator");
    if (num_.is_zero_poly()) {
        den_ = RatPoly(Rational(1));
        return;
    }
    RatPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
    }
    Rational lead = den_.lc();
    den_ = den_.scaled(lead.inverse());
    num_ = num_.scaled(lead.inverse());
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num() * b.num(), a.den() * b.den());
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of the zero rational function");
    return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

int order_compare(const RatFunc& a, const RatFunc& b) {
    auto poly_cmp = [](const RatPoly& p, const RatPoly& q) {
        if (p.degree() != q.degree()) return p.degree() < q.degree() ? -1 : 1;
        for (int i = p.degree(); i >= 0; --i) {
            int c = order_compare(p[i], q[i]);
            if (c != 0) return c;
        }
        return 0;
    };
    int c = poly_cmp(a.den(), b.den());
    if (c != 0) return c;
    return poly_cmp(a.num(), b.num());
}

namespace {

RatPoly hasse_poly(int j, const RatPoly& p) {
    if (j == 0) return p;
    if (p.degree() < j) return RatPoly();
    std::vector<Rational> c;
    c.reserve(p.degree() - j + 1);
    for (int n = j; n <= p.degree(); ++n)
        c.push_back(p[n] * Rational::binomial(static_cast<unsigned long>(n),
                                              static_cast<unsigned long>(j)));
    return RatPoly(std::move(c));
}

}  // namespace

std::vector<RatFunc> hasse_all(const RatFunc& x, int m) {
    std::vector<RatFunc> d;
    d.reserve(m + 1);
    d.push_back(x);
    if (x.is_polynomial()) {
        for (int l = 1; l <= m; ++l) d.emplace_back(hasse_poly(l, x.num()));
        return d;
    }
    // D_l(num) = sum_{i+j=l} D_i(x) D_j(den), solved for D_l(x)
    RatFunc v{x.den()};
    for (int l = 1; l <= m; ++l) {
        RatFunc acc{hasse_poly(l, x.num())};
        for (int j = 1; j <= l; ++j)
            acc = acc - RatFunc(hasse_poly(j, x.den())) * d[l - j];
        d.push_back(acc / v);
    }
    return d;
}

RatFunc hasse_apply(int j, const RatFunc& x) {
    if (j < 0) throw Error("InvariantViolation", "negative Hasse order");
    return hasse_all(x, j)[j];
}

DiffOperator DiffOperator::term(RatFunc coeff, int j) {
    DiffOperator op;
    if (!coeff.is_zero()) op.terms_.emplace(j, std::move(coeff));
    return op;
}

RatFunc DiffOperator::apply(const RatFunc& x) const {
    if (terms_.empty()) return RatFunc();
    std::vector<RatFunc> d = hasse_all(x, max_order());
    RatFunc acc;
    for (const auto& [j, c] : terms_) acc = acc + c * d[j];
    return acc;
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
    DiffOperator r = a;
    for (const auto& [j, c] : b.terms_) {
        auto it = r.terms_.find(j);
        if (it == r.terms_.end()) {
            r.terms_.emplace(j, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

DiffOperator DiffOperator::operator-() const {
    DiffOperator r;
    for (const auto& [j, c] : terms_) r.terms_.emplace(j, -c);
    return r;
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) { return a + (-b); }

DiffOperator DiffOperator::scaled(const RatFunc& c) const {
    DiffOperator r;
    if (c.is_zero()) return r;
    for (const auto& [j, coeff] : terms_) r.terms_.emplace(j, coeff * c);
    return r;
}

DiffOperator compose(const DiffOperator& outer, const DiffOperator& inner) {
    DiffOperator r;
    for (const auto& [i, c] : outer.terms()) {
        for (const auto& [j, e] : inner.terms()) {
            // (c D_i)(e D_j) = sum_{a+b=i} c D_a(e) C(b+j, b) D_{b+j}
            std::vector<RatFunc> de = hasse_all(e, i);
            for (int a = 0; a <= i; ++a) {
                int b = i - a;
                RatFunc coeff = c * de[a] *
                                RatFunc(Rational::binomial(static_cast<unsigned long>(b + j),
                                                           static_cast<unsigned long>(b)));
                r = r + DiffOperator::term(coeff, b + j);
            }
        }
    }
    return r;
}

DiffOperator fit_operator(const std::vector<std::pair<RatFunc, RatFunc>>& samples, int max_order) {
    if (samples.empty()) throw Error("NoFit", "no samples supplied");
    const int unknowns = max_order + 1;
    const RatFunc zero;
    Matrix<RatFunc> sys(static_cast<int>(samples.size()), unknowns, zero);
    std::vector<RatFunc> rhs;
    rhs.reserve(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        std::vector<RatFunc> d = hasse_all(samples[s].first, max_order);
        for (int j = 0; j < unknowns; ++j) sys.at(static_cast<int>(s), j) = d[j];
        rhs.push_back(samples[s].second);
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw Error("NoFit", "samples are inconsistent with the operator ansatz");
    DiffOperator op;
    for (int j = 0; j < unknowns; ++j) op = op + DiffOperator::term((*sol)[j], j);
    for (const auto& [x, y] : samples)
        if (op.apply(x) != y) throw Error("NoFit", "fitted operator fails on a sample");
    return op;
}

}  // namespace tsvs
