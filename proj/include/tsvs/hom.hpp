#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tsvs/funcfield.hpp"
#include "tsvs/linalg.hpp"
#include "tsvs/numfield.hpp"

namespace tsvs {

// Representation of a field element as num/den polynomials over Q in the
// field generator; the den is 1 for number field elements.
inline std::pair<RatPoly, RatPoly> gen_rep(const NFElement& x) {
    return {x.coords(), RatPoly(Rational(1))};
}
inline std::pair<RatPoly, RatPoly> gen_rep(const RatFunc& x) { return {x.num(), x.den()}; }

inline NFElement from_rational_like(const NFElement& x, const Rational& r) {
    return x.field().from_rational(r);
}
inline RatFunc from_rational_like(const RatFunc&, const Rational& r) { return RatFunc(r); }
inline Rational from_rational_like(const Rational&, const Rational& r) { return r; }

inline bool same_field(const NFElement& a, const NFElement& b) { return a.field() == b.field(); }
inline bool same_field(const RatFunc&, const RatFunc&) { return true; }
inline bool same_field(const Rational&, const Rational&) { return true; }

// Ring homomorphism K -> M_n(K), stored solely as the image of the field
// generator; every evaluation is polynomial (or rational) in it.
template <class F>
struct MatrixHom {
    Matrix<F> gen_image;

    int n() const { return gen_image.rows(); }
    const F& proto() const { return gen_image.proto(); }

    friend bool operator==(const MatrixHom& a, const MatrixHom& b) {
        return a.gen_image == b.gen_image;
    }
    friend bool operator!=(const MatrixHom& a, const MatrixHom& b) { return !(a == b); }
};

// p(M) with rational coefficients acting as scalars.
template <class F>
Matrix<F> eval_ratpoly_at(const RatPoly& p, const Matrix<F>& m) {
    Matrix<F> acc(m.rows(), m.cols(), m.proto());
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * m;
        F c = from_rational_like(m.proto(), p[i]);
        for (int k = 0; k < m.rows(); ++k) acc.at(k, k) = acc.at(k, k) + c;
    }
    return acc;
}

// phi(x): polynomial in the generator image for number fields,
// p(A) q(A)^-1 for rational functions.
template <class F>
Matrix<F> hom_eval(const MatrixHom<F>& h, const F& x) {
    if (!same_field(h.proto(), x)) throw Error("FieldMismatch", "element not in the hom's field");
    auto [num, den] = gen_rep(x);
    Matrix<F> pn = eval_ratpoly_at(num, h.gen_image);
    if (den.is_one()) return pn;
    Matrix<F> qd = eval_ratpoly_at(den, h.gen_image);
    if (!is_invertible(qd))
        throw Error("NonInvertibleDenominator", "denominator evaluates to a singular matrix");
    return pn * inverse(qd);
}

struct HomCertificate {
    std::string summary;
};

// A matrix A defines a homomorphism of the number field iff f(A) = 0.
HomCertificate hom_validate(const MatrixHom<NFElement>& h);

// Over Q(t) validity is lazy; this checks invertibility of q(A) for every
// denominator in the test set (default {t, t^2 + 1}).
HomCertificate hom_validate(const MatrixHom<RatFunc>& h,
                            const std::vector<RatPoly>& denominator_test_set = {});

template <class F>
MatrixHom<F> direct_sum(const MatrixHom<F>& a, const MatrixHom<F>& b) {
    if (!same_field(a.proto(), b.proto()))
        throw Error("FieldMismatch", "direct sum of homs over different fields");
    Matrix<F> m(a.n() + b.n(), a.n() + b.n(), a.proto());
    m.paste(0, 0, a.gen_image);
    m.paste(a.n(), a.n(), b.gen_image);
    return MatrixHom<F>{std::move(m)};
}

template <class F>
MatrixHom<F> conjugate_hom(const MatrixHom<F>& h, const Matrix<F>& p) {
    return MatrixHom<F>{p * h.gen_image * inverse(p)};
}

// --- classification of simples over a number field ---------------------------

struct Orbit {
    int id = 0;       // 1-based, ordered by (size, factor lexicographic order)
    KPoly factor;     // monic irreducible factor of f over K
    int size = 0;     // = deg factor = dimension of the simple
    bool trivial = false;  // factor = X - gen
};

struct OrbitTable {
    NumberField field;
    std::vector<Orbit> orbits;

    const Orbit& by_id(int id) const;
    const Orbit& trivial_orbit() const;
};

// Orbits of embeddings, realized as the monic irreducible factors of the
// defining polynomial over K. Exactly one orbit is trivial and sizes sum to
// deg f. Results are memoized per field.
OrbitTable classify(const NumberField& k);

// Simple two-sided vector space attached to an orbit: the relative extension
// K(lambda) = K[X]/(g) with a chosen basis, the matrix homomorphism with
// entries phi_ij = sum_k beta(j, k, i) lambda_k evaluated at the generator,
// and the row eigenvector (basis_1, ..., basis_m) over K(lambda).
struct SimpleBimodule {
    NumberField field;
    int orbit_id;
    RelativeExtension ext;
    MatrixHom<NFElement> hom;
    std::vector<KPoly> eigenvector;

    int dim() const { return hom.n(); }
};

SimpleBimodule simple_from_orbit(const NumberField& k, int orbit_id,
                                 const std::vector<KPoly>& basis = {});

// The matrices M(p) with M(p)_ij = beta(p, j, i): a K-basis of the
// endomorphism ring, isomorphic to K(lambda) via M(p) -> basis_p (the
// isomorphism depends on the chosen basis and is reported alongside it).
// Verifies pairwise commutation, commutation with the hom image, and that
// each M(p) kills the minimal polynomial of basis_p over K.
std::vector<Matrix<NFElement>> endomorphism_basis(const SimpleBimodule& s);

}  // namespace tsvs
