#include "tsvs/numfield.hpp"

#include <algorithm>

#include "tsvs/config.hpp"
#include "tsvs/errors.hpp"

namespace tsvs {

// --- NumberField ---------------------------------------------------------

NumberField NumberField::make(const RatPoly& f, std::string gen_name) {
    if (f.is_zero_poly() || !f.is_monic()) throw Error("NotMonic", "defining polynomial must be monic");
    if (f.degree() < 1) throw Error("NotMonic", "defining polynomial must have degree >= 1");
    if (f.degree() > global_config().max_defining_degree)
        throw Error("DegreeCapExceeded", "defining polynomial degree above configured cap");
    if (f.degree() > 1 && !is_irreducible_over_Q(f))
        throw Error("NotIrreducible", "defining polynomial is reducible over Q");
    return NumberField(std::make_shared<const Data>(Data{f, std::move(gen_name)}));
}

NumberField NumberField::rationals() {
    static NumberField q = make(RatPoly(std::vector<Rational>{Rational(-1), Rational(1)}), "g");
    return q;
}

NFElement NumberField::element(RatPoly coords) const {
    if (coords.degree() >= degree()) coords = poly_mod(coords, data_->f);
    return NFElement(*this, std::move(coords));
}

NFElement NumberField::from_rational(const Rational& r) const { return NFElement(*this, RatPoly(r)); }

NFElement NumberField::zero() const { return NFElement(*this, RatPoly()); }

NFElement NumberField::one() const { return NFElement(*this, RatPoly(Rational(1))); }

NFElement NumberField::gen() const {
    return element(RatPoly(std::vector<Rational>{Rational(0), Rational(1)}));
}

// --- NFElement -------------------------------------------------------------

NFElement::NFElement(NumberField field, RatPoly coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (coords_.degree() >= field_.degree()) coords_ = poly_mod(coords_, field_.defining_poly());
}

Rational NFElement::rational_value() const {
    if (!is_rational()) throw Error("FieldMismatch", "element is not rational");
    return coords_.is_zero_poly() ? Rational(0) : coords_[0];
}

namespace {
void check_same_field(const NFElement& a, const NFElement& b) {
    if (a.field() != b.field())
        throw Error("FieldMismatch", "operands live in different number fields");
}
}  // namespace

NFElement operator+(const NFElement& a, const NFElement& b) {
    check_same_field(a, b);
    return NFElement(a.field(), a.coords() + b.coords());
}

NFElement operator-(const NFElement& a, const NFElement& b) {
    check_same_field(a, b);
    return NFElement(a.field(), a.coords() - b.coords());
}

NFElement operator*(const NFElement& a, const NFElement& b) {
    check_same_field(a, b);
    return NFElement(a.field(), poly_mod(a.coords() * b.coords(), a.field().defining_poly()));
}

NFElement NFElement::inverse() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero field element");
    // s*coords + t*f = 1 since f is irreducible and deg(coords) < deg(f)
    auto [g, s, t] = poly_egcd(coords_, field_.defining_poly());
    if (!g.is_one()) throw Error("InvariantViolation", "defining polynomial not irreducible");
    return NFElement(field_, poly_mod(s, field_.defining_poly()));
}

NFElement operator/(const NFElement& a, const NFElement& b) {
    check_same_field(a, b);
    return a * b.inverse();
}

bool operator==(const NFElement& a, const NFElement& b) {
    return a.field() == b.field() && a.coords() == b.coords();
}

int order_compare(const NFElement& a, const NFElement& b) {
    int d = std::max(a.coords().degree(), b.coords().degree());
    for (int i = 0; i <= d; ++i) {
        Rational ca = a.coords().coeff_or(i, Rational(0));
        Rational cb = b.coords().coeff_or(i, Rational(0));
        int c = order_compare(ca, cb);
        if (c != 0) return c;
    }
    return 0;
}

KPoly kpoly_from_ratpoly(const RatPoly& p, const NumberField& k) {
    std::vector<NFElement> c;
    c.reserve(p.coeffs().size());
    for (const Rational& r : p.coeffs()) c.push_back(k.from_rational(r));
    return KPoly(std::move(c));
}

int kpoly_order_compare(const KPoly& a, const KPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        int c = order_compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

// --- Trager factorization ----------------------------------------------------

namespace {

// Norm of q in K[X] down to Q[X]: resultant in the generator variable,
// computed by evaluation at X = 0, 1, 2, ... and interpolation. Each sample
// is res(u, f) = product of u over the conjugates of the generator, with
// u(y) = q(x0) written as a polynomial in the generator.
RatPoly trager_norm(const KPoly& q, const NumberField& k) {
    const int d = k.degree();
    const int target_deg = d * q.degree();
    const int npts = target_deg + 1;
    std::vector<Rational> xs, ys;
    xs.reserve(npts);
    ys.reserve(npts);
    for (int j = 0; j < npts; ++j) {
        Rational x0(j);
        // u(y) = sum_i coords(q_i)(y) * x0^i
        RatPoly u;
        Rational pw(1);
        for (int i = 0; i <= q.degree(); ++i) {
            u = u + q[i].coords().scaled(pw);
            pw = pw * x0;
        }
        Rational v = u.is_zero_poly() ? Rational(0) : resultant(u, k.defining_poly());
        xs.push_back(x0);
        ys.push_back(v);
    }
    return interpolate(xs, ys);
}

// q(X - s*gen).
KPoly gamma_shift(const KPoly& q, const NumberField& k, long s) {
    NFElement shift = k.from_rational(Rational(-s)) * k.gen();
    KPoly lin(std::vector<NFElement>{shift, k.one()});
    return compose(q, lin);
}

// Monic squarefree q of degree >= 2 over K.
std::vector<KPoly> trager_squarefree(const KPoly& q, const NumberField& k) {
    if (static_cast<long>(q.degree()) * k.degree() > global_config().max_norm_degree)
        throw Error("DegreeCapExceeded", "Trager norm degree above configured cap");
    long s = 0;
    RatPoly norm;
    KPoly shifted = q;
    for (;; ++s) {
        if (s > 200) throw Error("InvariantViolation", "no squarefree Trager shift found");
        shifted = gamma_shift(q, k, s);
        norm = trager_norm(shifted, k);
        if (norm.degree() != k.degree() * q.degree()) continue;  // defensive; should not happen
        if (is_squarefree(norm)) break;
    }
    std::vector<KPoly> out;
    for (const auto& [ni, mult] : factor_over_Q(norm)) {
        // gi = gcd(q(X), Ni(X + s*gen))
        KPoly ni_k = kpoly_from_ratpoly(ni, k);
        NFElement shift_back = k.from_rational(Rational(s)) * k.gen();
        KPoly lin(std::vector<NFElement>{shift_back, k.one()});
        KPoly gi = poly_gcd(q, compose(ni_k, lin));
        if (gi.degree() >= 1) out.push_back(make_monic(gi));
    }
    // the gcds of a squarefree q against the distinct norm factors are its
    // irreducible factors; together they must rebuild q
    KPoly prod(k.one());
    for (const KPoly& g : out) prod = prod * g;
    if (prod != make_monic(q))
        throw Error("InvariantViolation", "Trager factors do not reconstruct input");
    return out;
}

}  // namespace

std::vector<std::pair<KPoly, int>> factor_over_K(const KPoly& p, const NumberField& k) {
    if (p.is_zero_poly()) throw Error("ZeroPolynomial", "factorization of the zero polynomial");
    std::vector<std::pair<KPoly, int>> result;
    if (p.degree() == 0) return result;

    if (k.is_rationals()) {
        // coordinates are plain rationals; reuse the Q machinery
        std::vector<Rational> rc;
        for (const NFElement& c : p.coeffs()) rc.push_back(c.rational_value());
        for (const auto& [f, m] : factor_over_Q(RatPoly(std::move(rc))))
            result.emplace_back(kpoly_from_ratpoly(f, k), m);
        return result;
    }

    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        if (part.degree() == 1) {
            result.emplace_back(part, mult);
            continue;
        }
        for (const KPoly& g : trager_squarefree(part, k)) result.emplace_back(g, mult);
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        return kpoly_order_compare(a.first, b.first) < 0;
    });
    KPoly prod(k.one());
    for (const auto& [g, m] : result) prod = prod * poly_pow(g, m);
    if (prod.scaled(p.lc()) != p)
        throw Error("InvariantViolation", "factorization over K does not reconstruct input");
    return result;
}

bool is_irreducible_over_K(const KPoly& p, const NumberField& k) {
    if (p.degree() < 1) return false;
    auto factors = factor_over_K(p, k);
    return factors.size() == 1 && factors[0].second == 1;
}

// --- RelativeExtension -------------------------------------------------------

RelativeExtension RelativeExtension::make(const NumberField& base, const KPoly& modulus,
                                          const std::vector<KPoly>& basis_in) {
    if (modulus.degree() < 1 || !modulus.is_monic())
        throw Error("NotIrreducibleOverK", "modulus must be monic of degree >= 1");
    if (!is_irreducible_over_K(modulus, base))
        throw Error("NotIrreducibleOverK", "modulus is reducible over the base field");
    const int m = modulus.degree();

    std::vector<KPoly> basis;
    if (basis_in.empty()) {
        for (int i = 0; i < m; ++i) basis.push_back(KPoly::monomial(base.one(), i));
    } else {
        if (static_cast<int>(basis_in.size()) != m)
            throw Error("BadBasis", "basis size must equal the extension degree");
        for (const KPoly& b : basis_in) basis.push_back(poly_mod(b, modulus));
    }

    // change of basis: column j holds the power-basis coordinates of basis_j
    Matrix<NFElement> bm(m, m, base.zero());
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) bm.at(i, j) = basis[j].coeff_or(i, base.zero());
    if (!is_invertible(bm)) throw Error("BadBasis", "basis is K-linearly dependent");
    Matrix<NFElement> bm_inv = inverse(bm);

    // structure constants from products reduced mod g
    std::vector<NFElement> beta;
    beta.reserve(static_cast<std::size_t>(m) * m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            KPoly prod = poly_mod(basis[i] * basis[j], modulus);
            std::vector<NFElement> pw(m, base.zero());
            for (int t = 0; t < m; ++t) pw[t] = prod.coeff_or(t, base.zero());
            std::vector<NFElement> coords = bm_inv.apply(pw);
            for (int t = 0; t < m; ++t) beta.push_back(coords[t]);
        }

    RelativeExtension ext(base, modulus, std::move(basis), std::move(bm), std::move(bm_inv),
                          std::move(beta));

    // commutativity of K[X]/(g) forces beta symmetric in the first two slots
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j)
            for (int t = 0; t < m; ++t)
                if (ext.beta(i, j, t) != ext.beta(j, i, t))
                    throw Error("InvariantViolation", "structure constants not symmetric");

    // multiplicativity of the embedding on generator powers: the coordinates
    // of lambda(x*y) must equal the beta expansion of lambda(x) lambda(y)
    {
        std::vector<NFElement> samples{base.gen(), base.gen() * base.gen() + base.one()};
        for (const NFElement& x : samples)
            for (const NFElement& y : samples) {
                auto lx = ext.lambda_coords(x);
                auto ly = ext.lambda_coords(y);
                auto lxy = ext.lambda_coords(x * y);
                for (int t = 0; t < m; ++t) {
                    NFElement acc = base.zero();
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < m; ++j) acc = acc + lx[i] * ly[j] * ext.beta(i, j, t);
                    if (acc != lxy[t])
                        throw Error("InvariantViolation",
                                    "embedding is not multiplicative through the basis");
                }
            }
    }
    return ext;
}

std::vector<NFElement> RelativeExtension::coords_in_basis(const KPoly& x) const {
    const int m = extension_degree();
    KPoly red = reduce(x);
    std::vector<NFElement> pw(m, base_.zero());
    for (int t = 0; t < m; ++t) pw[t] = red.coeff_or(t, base_.zero());
    return basis_mat_inv_.apply(pw);
}

KPoly RelativeExtension::lambda_image(const NFElement& x) const {
    // substitute the class of X for the generator in the coordinates of x
    KPoly img;
    for (int i = 0; i <= x.coords().degree(); ++i) {
        NFElement c = base_.from_rational(x.coords()[i]);
        img = img + KPoly::monomial(c, i);
    }
    return reduce(img);
}

std::vector<NFElement> RelativeExtension::lambda_coords(const NFElement& x) const {
    if (x.field() != base_) throw Error("FieldMismatch", "element not in the base field");
    return coords_in_basis(lambda_image(x));
}

KPoly RelativeExtension::min_poly_over_K(const KPoly& x) const {
    const int m = extension_degree();
    KPoly acc(base_.one());
    std::vector<KPoly> powers{acc};
    for (int k = 1; k <= m; ++k) {
        acc = mul(acc, x);
        powers.push_back(acc);
        Matrix<NFElement> sys(m, k, base_.zero());
        std::vector<NFElement> rhs(m, base_.zero());
        for (int i = 0; i < m; ++i) {
            for (int p = 0; p < k; ++p) sys.at(i, p) = powers[p].coeff_or(i, base_.zero());
            rhs[i] = powers[k].coeff_or(i, base_.zero());
        }
        auto sol = solve(sys, rhs);
        if (sol) {
            std::vector<NFElement> coeffs(k + 1, base_.zero());
            for (int p = 0; p < k; ++p) coeffs[p] = -(*sol)[p];
            coeffs[k] = base_.one();
            return KPoly(std::move(coeffs));
        }
    }
    throw Error("InvariantViolation", "minimal polynomial not found in relative extension");
}

}  // namespace tsvs
