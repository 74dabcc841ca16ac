#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tsvs/factor.hpp"
#include "tsvs/linalg.hpp"
#include "tsvs/poly.hpp"
#include "tsvs/rational.hpp"

namespace tsvs {

class NFElement;

// Number field K = Q[g]/(f) with f monic irreducible over Q. Degree 1 means
// K = Q. Value handle; copies share the immutable definition.
class NumberField {
  public:
    static NumberField make(const RatPoly& f, std::string gen_name = "g");

    // Q presented as a degree-1 field (f = x - 1).
    static NumberField rationals();

    int degree() const { return data_->f.degree(); }
    const RatPoly& defining_poly() const { return data_->f; }
    const std::string& gen_name() const { return data_->gen_name; }
    bool is_rationals() const { return degree() == 1; }

    NFElement element(RatPoly coords) const;
    NFElement from_rational(const Rational& r) const;
    NFElement zero() const;
    NFElement one() const;
    NFElement gen() const;  // the class of g

    // Mathematical identity: same defining polynomial (generator name is
    // presentation only).
    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.data_ == b.data_ || a.data_->f == b.data_->f;
    }
    friend bool operator!=(const NumberField& a, const NumberField& b) { return !(a == b); }

  private:
    struct Data {
        RatPoly f;
        std::string gen_name;
    };
    explicit NumberField(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

// Element of a number field, stored as a polynomial in the generator of
// degree < [K:Q]. All arithmetic reduces modulo the defining polynomial.
class NFElement {
  public:
    NFElement(NumberField field, RatPoly coords);

    const NumberField& field() const { return field_; }
    const RatPoly& coords() const { return coords_; }

    bool is_zero() const { return coords_.is_zero_poly(); }
    bool is_one() const { return coords_.is_one(); }
    bool is_rational() const { return coords_.degree() <= 0; }
    Rational rational_value() const;  // requires is_rational()

    NFElement operator-() const { return NFElement(field_, -coords_); }
    friend NFElement operator+(const NFElement& a, const NFElement& b);
    friend NFElement operator-(const NFElement& a, const NFElement& b);
    friend NFElement operator*(const NFElement& a, const NFElement& b);
    friend NFElement operator/(const NFElement& a, const NFElement& b);
    friend bool operator==(const NFElement& a, const NFElement& b);
    friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }

    NFElement inverse() const;

  private:
    NumberField field_;
    RatPoly coords_;
};

inline NFElement zero_like(const NFElement& x) { return x.field().zero(); }
inline NFElement one_like(const NFElement& x) { return x.field().one(); }
inline NFElement from_int_like(const NFElement& x, long v) {
    return x.field().from_rational(Rational(v));
}
inline bool is_zero(const NFElement& x) { return x.is_zero(); }

// Total order for deterministic sorting only: lexicographic on coordinates.
int order_compare(const NFElement& a, const NFElement& b);

// Polynomials over K.
using KPoly = Poly<NFElement>;

KPoly kpoly_from_ratpoly(const RatPoly& p, const NumberField& k);

// Deterministic factor order: by degree, then coefficients compared from the
// leading one down.
int kpoly_order_compare(const KPoly& a, const KPoly& b);

// Trager factorization of p over K: monic irreducible factors with
// multiplicities; the product times lc(p) reconstructs p.
std::vector<std::pair<KPoly, int>> factor_over_K(const KPoly& p, const NumberField& k);

bool is_irreducible_over_K(const KPoly& p, const NumberField& k);

// Relative extension K(lambda) = K[X]/(g) with a chosen K-basis, its
// structure constants beta[i][j][k] (basis_i * basis_j = sum_k beta_ijk
// basis_k), and the coordinate maps lambda_k of the embedding that sends the
// field generator to the class of X.
class RelativeExtension {
  public:
    // basis: optional; defaults to the power basis 1, X, ..., X^(m-1). Each
    // element is given as a polynomial in X over K and is reduced mod g.
    static RelativeExtension make(const NumberField& base, const KPoly& modulus,
                                  const std::vector<KPoly>& basis = {});

    const NumberField& base() const { return base_; }
    const KPoly& modulus() const { return modulus_; }
    int extension_degree() const { return modulus_.degree(); }
    const std::vector<KPoly>& basis() const { return basis_; }
    const NFElement& beta(int i, int j, int k) const {
        return beta_[(i * extension_degree() + j) * extension_degree() + k];
    }

    // Residue-class arithmetic in K[X]/(g).
    KPoly reduce(const KPoly& p) const { return poly_mod(p, modulus_); }
    KPoly mul(const KPoly& a, const KPoly& b) const { return reduce(a * b); }

    // Coordinates of an element of K[X]/(g) in the chosen basis.
    std::vector<NFElement> coords_in_basis(const KPoly& x) const;

    // lambda_k(x): coordinates of the image of x under the embedding
    // g -> class of X, expressed in the chosen basis.
    std::vector<NFElement> lambda_coords(const NFElement& x) const;

    // The image lambda(x) itself as an element of K[X]/(g).
    KPoly lambda_image(const NFElement& x) const;

    // Monic minimal polynomial over K of an element of K[X]/(g).
    KPoly min_poly_over_K(const KPoly& x) const;

  private:
    RelativeExtension(NumberField base, KPoly modulus, std::vector<KPoly> basis,
                      Matrix<NFElement> basis_mat, Matrix<NFElement> basis_mat_inv,
                      std::vector<NFElement> beta)
        : base_(std::move(base)),
          modulus_(std::move(modulus)),
          basis_(std::move(basis)),
          basis_mat_(std::move(basis_mat)),
          basis_mat_inv_(std::move(basis_mat_inv)),
          beta_(std::move(beta)) {}

    NumberField base_;
    KPoly modulus_;
    std::vector<KPoly> basis_;
    Matrix<NFElement> basis_mat_;      // column j = power-basis coords of basis_j
    Matrix<NFElement> basis_mat_inv_;
    std::vector<NFElement> beta_;
};

}  // namespace tsvs
