#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tsvs/hom.hpp"

namespace tsvs {

// Kronecker composition: the hom of the tensor product. Row/column pairs
// (i1, i2) are ordered lexicographically, so the flat index is i1*n + i2;
// the ((i1,i2),(j1,j2)) entry is phi_{i1 j1}(psi(gen)_{i2 j2}).
template <class F>
MatrixHom<F> kronecker_compose(const MatrixHom<F>& h1, const MatrixHom<F>& h2) {
    if (!same_field(h1.proto(), h2.proto()))
        throw Error("FieldMismatch", "Kronecker composition over different fields");
    const int m = h1.n(), n = h2.n();
    Matrix<F> result(m * n, m * n, h1.proto());
    for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2) {
            Matrix<F> block = hom_eval(h1, h2.gen_image.at(i2, j2));
            for (int i1 = 0; i1 < m; ++i1)
                for (int j1 = 0; j1 < m; ++j1)
                    result.at(i1 * n + i2, j1 * n + j2) = block.at(i1, j1);
        }
    return MatrixHom<F>{std::move(result)};
}

// Kronecker product of plain matrices (same index convention).
template <class F>
Matrix<F> kronecker_matrix(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> r(a.rows() * b.rows(), a.cols() * b.cols(), a.proto());
    for (int i1 = 0; i1 < a.rows(); ++i1)
        for (int j1 = 0; j1 < a.cols(); ++j1)
            for (int i2 = 0; i2 < b.rows(); ++i2)
                for (int j2 = 0; j2 < b.cols(); ++j2)
                    r.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = a.at(i1, j1) * b.at(i2, j2);
    return r;
}

// phi tensor B for a matrix B: entry phi_{i1 j1}(b_{i2 j2}).
template <class F>
Matrix<F> hom_tensor_matrix(const MatrixHom<F>& h, const Matrix<F>& b) {
    const int m = h.n(), n = b.rows();
    Matrix<F> r(m * n, m * b.cols(), h.proto());
    for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < b.cols(); ++j2) {
            Matrix<F> block = hom_eval(h, b.at(i2, j2));
            for (int i1 = 0; i1 < m; ++i1)
                for (int j1 = 0; j1 < m; ++j1)
                    r.at(i1 * n + i2, j1 * b.cols() + j2) = block.at(i1, j1);
        }
    return r;
}

// Multiset of simple constituents of a valid number-field hom: multiplicity
// of orbit g is nullity(g(A)) / deg g.
struct Decomposition {
    NumberField field;
    int n = 0;
    std::vector<std::pair<int, int>> parts;  // (orbit id, multiplicity), sorted by id

    friend bool operator==(const Decomposition& a, const Decomposition& b) {
        return a.field == b.field && a.n == b.n && a.parts == b.parts;
    }
};

Decomposition decompose(const MatrixHom<NFElement>& h);

// Similarity = bimodule isomorphism. Over a number field both sides are
// semisimple, so decompositions are compared; over Q(t) this falls back to
// the bounded intertwiner search (SimilarityUndecided may propagate).
bool hom_similar(const MatrixHom<NFElement>& h1, const MatrixHom<NFElement>& h2);
bool hom_similar(const MatrixHom<RatFunc>& h1, const MatrixHom<RatFunc>& h2);

// Presentation of the Grothendieck ring: one generator per nontrivial orbit,
// relations x_i x_j = sum_l alpha_ijl x_l + alpha_ij from tensor
// decompositions of the simples.
struct K0Relation {
    int alpha_const = 0;
    std::map<int, int> alpha;  // generator index -> coefficient
};

struct K0Presentation {
    NumberField field;
    std::vector<int> generator_orbits;            // orbit id per generator, 1-based generators
    std::vector<std::vector<K0Relation>> table;   // table[i][j] for generators i, j (0-based)
    bool group_ring = false;                      // all orbits are singletons
    bool cyclic_group = false;
    int group_order = 0;
};

K0Presentation k0_presentation(const NumberField& k);

// Symbolic summand data for the K-groups: each orbit with the defining
// modulus of its field K(lambda). Higher K_i are not computed.
std::vector<std::pair<Orbit, KPoly>> k0_group_structure(const NumberField& k);

}  // namespace tsvs
