#include "tsvs/canonical.hpp"

#include "tsvs/config.hpp"

namespace tsvs {

namespace {

RatFunc substitute(const RatFunc& x, const RatFunc& image) {
    // x(t) with t replaced by image; both num and den evaluated by Horner
    RatFunc num;
    for (int i = x.num().degree(); i >= 0; --i) num = num * image + RatFunc(x.num()[i]);
    RatFunc den;
    for (int i = x.den().degree(); i >= 0; --i) den = den * image + RatFunc(x.den()[i]);
    return num / den;
}

RatFunc tpow(int n) {
    RatFunc t = RatFunc::t();
    RatFunc acc(Rational(1));
    for (int i = 0; i < n; ++i) acc = acc * t;
    return acc;
}

}  // namespace

HigherDerivation HigherDerivation::identity_led(std::vector<DiffOperator> tail) {
    std::vector<TailMap> maps;
    maps.reserve(tail.size());
    for (auto& op : tail) maps.emplace_back(std::move(op));
    HigherDerivation d(std::nullopt, std::move(maps));
    require_leibniz(d, LeibnizLevel::Quick);
    return d;
}

HigherDerivation HigherDerivation::endo_led(RatFunc t_image, std::vector<TailMap> tail) {
    if (t_image == RatFunc::t()) return HigherDerivation(std::nullopt, std::move(tail));
    HigherDerivation d(std::optional<RatFunc>(std::move(t_image)), std::move(tail));
    require_leibniz(d, LeibnizLevel::Quick);
    return d;
}

HigherDerivation HigherDerivation::unchecked(std::optional<RatFunc> t_image,
                                             std::vector<TailMap> tail) {
    return HigherDerivation(std::move(t_image), std::move(tail));
}

RatFunc HigherDerivation::apply(int l, const RatFunc& x) const {
    if (l < 0 || l > order()) throw Error("InvariantViolation", "derivation index out of range");
    if (l == 0) return d0_subst_ ? substitute(x, *d0_subst_) : x;
    return tail_[l - 1].apply(x);
}

bool leibniz_holds(const HigherDerivation& d, LeibnizLevel level, std::string* witness) {
    const int m = d.order();
    auto check_pair = [&](const RatFunc& x, const RatFunc& y) {
        for (int l = 0; l <= m; ++l) {
            RatFunc lhs = d.apply(l, x * y);
            RatFunc rhs;
            for (int i = 0; i <= l; ++i) rhs = rhs + d.apply(i, x) * d.apply(l - i, y);
            if (lhs != rhs) {
                if (witness) *witness = "order " + std::to_string(l);
                return false;
            }
        }
        return true;
    };
    const int max_total = level == LeibnizLevel::Full ? 30 : 10;
    for (int a = 0; a <= max_total; ++a)
        for (int b = 0; b <= max_total - a; ++b)
            if (!check_pair(tpow(a), tpow(b))) return false;
    const int random_pairs = level == LeibnizLevel::Full ? 100 : 10;
    Rng rng(global_config().seed ^ 0x4c31u);
    auto random_ratfunc = [&]() {
        auto rand_poly = [&](bool nonzero) {
            std::vector<Rational> c;
            int deg = static_cast<int>(rng.uniform(0, 2));
            for (int i = 0; i <= deg; ++i) c.emplace_back(rng.uniform(-4, 4));
            RatPoly p{std::move(c)};
            if (nonzero && p.is_zero_poly()) p = RatPoly(Rational(1));
            return p;
        };
        return RatFunc(rand_poly(false), rand_poly(true));
    };
    for (int trial = 0; trial < random_pairs; ++trial)
        if (!check_pair(random_ratfunc(), random_ratfunc())) return false;
    return true;
}

void require_leibniz(const HigherDerivation& d, LeibnizLevel level) {
    std::string witness;
    if (!leibniz_holds(d, level, &witness))
        throw Error("LeibnizViolation", "derivation identity fails at " + witness);
}

HigherDerivation hs_product_raw(const HigherDerivation& a, const HigherDerivation& b) {
    if (a.order() == 0) {
        // delta_l = d_0 o d_l'
        if (a.identity_d0()) return b;
        const RatFunc sigma = *a.d0_subst();
        std::optional<RatFunc> d0 =
            b.identity_d0() ? std::optional<RatFunc>(sigma)
                            : std::optional<RatFunc>(substitute(*b.d0_subst(), sigma));
        std::vector<TailMap> tail;
        for (const TailMap& m : b.tail())
            tail.emplace_back([m, sigma](const RatFunc& x) { return substitute(m.apply(x), sigma); },
                              "composed " + m.label());
        return HigherDerivation::unchecked(std::move(d0), std::move(tail));
    }
    if (b.order() == 0) {
        // delta_l = d_l o d_0'
        if (b.identity_d0()) return a;
        const RatFunc sigma = *b.d0_subst();
        std::optional<RatFunc> d0 =
            a.identity_d0() ? std::optional<RatFunc>(sigma)
                            : std::optional<RatFunc>(substitute(sigma, *a.d0_subst()));
        std::vector<TailMap> tail;
        for (const TailMap& m : a.tail())
            tail.emplace_back([m, sigma](const RatFunc& x) { return m.apply(substitute(x, sigma)); },
                              "composed " + m.label());
        return HigherDerivation::unchecked(std::move(d0), std::move(tail));
    }
    if (!a.identity_d0() || !b.identity_d0() || !a.closed_form() || !b.closed_form())
        throw Error("NotComposable",
                    "product needs closed operator tails with identity-led factors");

    const int m = a.order(), n = b.order();
    auto op_at = [](const HigherDerivation& d, int i) {
        if (i == 0) return DiffOperator::hasse(0);
        return d.tail()[i - 1].op();
    };
    std::vector<TailMap> tail;
    for (int l = 1; l <= m + n; ++l) {
        DiffOperator acc;
        for (int i = 0; i <= l; ++i) {
            int j = l - i;
            if (i > m || j > n) continue;
            acc = acc + compose(op_at(a, i), op_at(b, j));
        }
        tail.emplace_back(std::move(acc));
    }
    return HigherDerivation::unchecked(std::nullopt, std::move(tail));
}

HigherDerivation hs_product(const HigherDerivation& a, const HigherDerivation& b) {
    HigherDerivation d = hs_product_raw(a, b);
    require_leibniz(d, LeibnizLevel::Quick);
    return d;
}

MatrixHom<RatFunc> toeplitz_hom(const HigherDerivation& d) {
    require_leibniz(d, LeibnizLevel::Quick);
    const int n = d.order() + 1;
    const RatFunc t = RatFunc::t();
    Matrix<RatFunc> a(n, n, RatFunc());
    for (int k = 0; k < n; ++k) {
        RatFunc v = d.apply(k, t);
        for (int i = 0; i + k < n; ++i) a.at(i, i + k) = v;
    }
    MatrixHom<RatFunc> h{std::move(a)};
    hom_validate(h);
    return h;
}

ScalingCertificate scaled_derivation_similar(const HigherDerivation& d, const RatFunc& x) {
    if (d.order() != 1) throw Error("OrderMismatch", "scaling certificate needs order 1");
    if (x.is_zero()) throw Error("DivisionByZero", "scaling element must be nonzero");

    std::vector<TailMap> scaled_tail;
    const TailMap& d1 = d.tail()[0];
    if (d1.closed_form()) {
        scaled_tail.emplace_back(d1.op().scaled(x));
    } else {
        scaled_tail.emplace_back([d1, x](const RatFunc& v) { return x * d1.apply(v); },
                                 "scaled " + d1.label());
    }
    HigherDerivation scaled = HigherDerivation::unchecked(d.d0_subst(), std::move(scaled_tail));
    require_leibniz(scaled, LeibnizLevel::Quick);

    Matrix<RatFunc> p(2, 2, RatFunc());
    p.at(0, 0) = x;
    p.at(1, 1) = RatFunc(Rational(1));

    MatrixHom<RatFunc> before = toeplitz_hom(d);
    MatrixHom<RatFunc> after = toeplitz_hom(scaled);
    if (p * before.gen_image * inverse(p) != after.gen_image)
        throw Error("InvariantViolation", "diag(x,1) conjugation failed verification");
    return ScalingCertificate{std::move(p), std::move(scaled)};
}

std::pair<Matrix<NFElement>, MatrixHom<NFElement>> triangularize_commuting(
    const MatrixHom<NFElement>& h) {
    const NumberField k = h.proto().field();
    Poly<NFElement> mp = minpoly(h.gen_image);
    std::vector<NFElement> eigenvalues;
    for (const auto& [factor, mult] : factor_over_K(mp, k)) {
        if (factor.degree() != 1)
            throw Error("DoesNotSplit", "minimal polynomial has a factor of degree > 1 over K");
        eigenvalues.push_back(-factor[0]);
    }
    return triangularize_commuting(h, eigenvalues);
}

std::pair<Matrix<RatFunc>, MatrixHom<RatFunc>> triangularize_commuting(
    const MatrixHom<RatFunc>& h) {
    if (!h.gen_image.is_upper_triangular())
        throw Error("DoesNotSplit",
                    "over Q(t) the generator image must be upper triangular or an eigenvalue "
                    "list must be supplied");
    return {Matrix<RatFunc>::identity(h.n(), h.proto()), h};
}

}  // namespace tsvs
