#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tsvs/config.hpp"
#include "tsvs/errors.hpp"
#include "tsvs/poly.hpp"

namespace tsvs {

// Dense matrix over an exact field. Carries a prototype zero element so that
// fields whose elements hold context (number field elements) work the same
// way as plain rationals.
template <class T>
class Matrix {
  public:
    Matrix(int rows, int cols, const T& proto)
        : rows_(rows), cols_(cols), zero_(zero_like(proto)), e_(rows * cols, zero_like(proto)) {}

    static Matrix identity(int n, const T& proto) {
        Matrix m(n, n, proto);
        for (int i = 0; i < n; ++i) m.at(i, i) = one_like(proto);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty() || rows[0].empty())
            throw Error("InvariantViolation", "matrix needs at least one entry");
        Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), rows[0][0]);
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != m.cols_)
                throw Error("InvariantViolation", "ragged matrix rows");
            for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    const T& proto() const { return zero_; }

    T& at(int i, int j) { return e_[i * cols_ + j]; }
    const T& at(int i, int j) const { return e_[i * cols_ + j]; }

    bool is_zero_matrix() const {
        for (const T& x : e_)
            if (!is_zero(x)) return false;
        return true;
    }

    bool is_identity() const {
        if (!square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                T expect = i == j ? one_like(zero_) : zero_;
                if (!is_zero(at(i, j) - expect)) return false;
            }
        return true;
    }

    bool is_upper_triangular() const {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < std::min(i, cols_); ++j)
                if (!is_zero(at(i, j))) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (!is_zero(a.e_[i] - b.e_[i])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.e_) x = -x;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error("InvariantViolation", "matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_, a.zero_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (is_zero(a.at(i, k))) continue;
                for (int j = 0; j < b.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    Matrix scaled(const T& s) const {
        Matrix r = *this;
        for (auto& x : r.e_) x = x * s;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, zero_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix submatrix(int r0, int c0, int r, int c) const {
        Matrix m(r, c, zero_);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = at(r0 + i, c0 + j);
        return m;
    }

    void paste(int r0, int c0, const Matrix& block) {
        for (int i = 0; i < block.rows(); ++i)
            for (int j = 0; j < block.cols(); ++j) at(r0 + i, c0 + j) = block.at(i, j);
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> r(rows_, zero_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    T trace() const {
        T t = zero_;
        for (int i = 0; i < rows_; ++i) t = t + at(i, i);
        return t;
    }

  private:
    int rows_, cols_;
    T zero_;
    std::vector<T> e_;
};

template <class T>
struct RrefResult {
    Matrix<T> reduced;
    Matrix<T> transform;  // transform * input = reduced
    int rank = 0;
    std::vector<int> pivot_cols;
};

// Reduced row echelon form by exact Gauss-Jordan; pivots are chosen
// leftmost-first, scanning rows top-down.
template <class T>
RrefResult<T> rref(const Matrix<T>& m) {
    RrefResult<T> out{m, Matrix<T>::identity(m.rows(), m.proto()), 0, {}};
    Matrix<T>& a = out.reduced;
    Matrix<T>& e = out.transform;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!is_zero(a.at(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
            for (int j = 0; j < e.cols(); ++j) std::swap(e.at(piv, j), e.at(r, j));
        }
        T inv = one_like(a.proto()) / a.at(r, c);
        for (int j = 0; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
        for (int j = 0; j < e.cols(); ++j) e.at(r, j) = e.at(r, j) * inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || is_zero(a.at(i, c))) continue;
            T f = a.at(i, c);
            for (int j = 0; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
            for (int j = 0; j < e.cols(); ++j) e.at(i, j) = e.at(i, j) - f * e.at(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

template <class T>
int rank(const Matrix<T>& m) {
    return rref(m).rank;
}

// Nullspace basis as column vectors, one per free column in ascending order;
// each has 1 at its free position and reduced entries at the pivots.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
    RrefResult<T> r = rref(m);
    const T zero = zero_like(m.proto());
    const T one = one_like(m.proto());
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<T> v(m.cols(), zero);
        v[c] = one;
        for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
            v[r.pivot_cols[p]] = -r.reduced.at(static_cast<int>(p), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A x = b (free variables set to zero), or nullopt when
// inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
    Matrix<T> aug(a.rows(), a.cols() + 1, a.proto());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult<T> r = rref(aug);
    for (int c : r.pivot_cols)
        if (c == a.cols()) return std::nullopt;
    std::vector<T> x(a.cols(), zero_like(a.proto()));
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
        x[r.pivot_cols[p]] = r.reduced.at(static_cast<int>(p), a.cols());
    return x;
}

template <class T>
bool is_invertible(const Matrix<T>& m) {
    return m.square() && rank(m) == m.rows();
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (!m.square()) throw Error("NotSquare", "inverse of non-square matrix");
    RrefResult<T> r = rref(m);
    if (r.rank != m.rows()) throw Error("NotInvertible", "matrix is singular");
    return r.transform;
}

template <class T>
T det(const Matrix<T>& m) {
    if (!m.square()) throw Error("NotSquare", "determinant of non-square matrix");
    Matrix<T> a = m;
    T d = one_like(m.proto());
    for (int c = 0; c < a.cols(); ++c) {
        int piv = -1;
        for (int i = c; i < a.rows(); ++i)
            if (!is_zero(a.at(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) return zero_like(m.proto());
        if (piv != c) {
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(c, j));
            d = -d;
        }
        d = d * a.at(c, c);
        T inv = one_like(m.proto()) / a.at(c, c);
        for (int i = c + 1; i < a.rows(); ++i) {
            if (is_zero(a.at(i, c))) continue;
            T f = a.at(i, c) * inv;
            for (int j = c; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(c, j);
        }
    }
    return d;
}

// p(M) by Horner; coefficients act as scalars.
template <class T>
Matrix<T> eval_poly_at(const Poly<T>& p, const Matrix<T>& m) {
    if (!m.square()) throw Error("NotSquare", "polynomial of a non-square matrix");
    Matrix<T> acc(m.rows(), m.cols(), m.proto());
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * m;
        for (int k = 0; k < m.rows(); ++k) acc.at(k, k) = acc.at(k, k) + p[i];
    }
    return acc;
}

// Monic characteristic polynomial by the Faddeev-LeVerrier recurrence
// (exact; needs characteristic zero for the integer divisions).
template <class T>
Poly<T> charpoly(const Matrix<T>& m) {
    if (!m.square()) throw Error("NotSquare", "characteristic polynomial of non-square matrix");
    const int n = m.rows();
    const T one = one_like(m.proto());
    std::vector<T> c(n + 1, zero_like(m.proto()));
    c[n] = one;
    Matrix<T> mk = m;
    c[n - 1] = -mk.trace();
    for (int k = 2; k <= n; ++k) {
        Matrix<T> shifted = mk;
        for (int i = 0; i < n; ++i) shifted.at(i, i) = shifted.at(i, i) + c[n - k + 1];
        mk = m * shifted;
        c[n - k] = -(mk.trace() / from_int_like(one, k));
    }
    return Poly<T>(std::move(c));
}

// Monic minimal polynomial: the first power of M that is linearly dependent
// on the lower powers, found by exact elimination on flattened matrices.
template <class T>
Poly<T> minpoly(const Matrix<T>& m) {
    if (!m.square()) throw Error("NotSquare", "minimal polynomial of non-square matrix");
    const int n = m.rows();
    const int nn = n * n;
    std::vector<Matrix<T>> powers;
    powers.push_back(Matrix<T>::identity(n, m.proto()));
    for (int k = 1; k <= n; ++k) {
        powers.push_back(powers.back() * m);
        Matrix<T> sys(nn, k, m.proto());
        std::vector<T> rhs;
        rhs.reserve(nn);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (int p = 0; p < k; ++p) sys.at(i * n + j, p) = powers[p].at(i, j);
                rhs.push_back(powers[k].at(i, j));
            }
        auto x = solve(sys, rhs);
        if (x) {
            std::vector<T> coeffs(k + 1, zero_like(m.proto()));
            for (int p = 0; p < k; ++p) coeffs[p] = -(*x)[p];
            coeffs[k] = one_like(m.proto());
            return Poly<T>(std::move(coeffs));
        }
    }
    throw Error("InvariantViolation", "minimal polynomial not found within dimension bound");
}

// --- Jordan canonical form ---------------------------------------------------

template <class T>
struct JordanForm {
    std::vector<T> eigenvalues;            // in input order
    std::vector<std::vector<int>> blocks;  // per eigenvalue, sizes decreasing
    Matrix<T> conjugator;                  // P with P * A * P^-1 = jcf
    Matrix<T> jcf;
};

namespace detail {

// Row echelon span with exact reduction, used for incremental independence
// tests during chain construction.
template <class T>
class EchelonSpan {
  public:
    explicit EchelonSpan(const T& proto) : zero_(zero_like(proto)) {}

    // Reduces v against the stored rows; returns the residual.
    std::vector<T> reduce(std::vector<T> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const T& x = v[lead_[r]];
            if (is_zero(x)) continue;
            T f = x;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * rows_[r][j];
        }
        return v;
    }

    bool contains(const std::vector<T>& v) const {
        for (const T& x : reduce(v))
            if (!is_zero(x)) return false;
        return true;
    }

    // Returns true and absorbs v when it is independent of the span.
    bool insert(std::vector<T> v) {
        v = reduce(std::move(v));
        int lead = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!is_zero(v[j])) {
                lead = static_cast<int>(j);
                break;
            }
        if (lead < 0) return false;
        T inv = one_like(zero_) / v[lead];
        for (auto& x : v) x = x * inv;
        rows_.push_back(std::move(v));
        lead_.push_back(lead);
        return true;
    }

    std::size_t dimension() const { return rows_.size(); }

  private:
    T zero_;
    std::vector<std::vector<T>> rows_;
    std::vector<int> lead_;
};

}  // namespace detail

// Algebraic multiplicities of the given (distinct) eigenvalues, by repeated
// synthetic deflation of the characteristic polynomial. Throws DoesNotSplit
// unless the product of (X - lambda_i)^m_i exhausts it.
template <class T>
std::vector<int> split_multiplicities(const Poly<T>& cp, const std::vector<T>& eigenvalues) {
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
            if (is_zero(eigenvalues[i] - eigenvalues[j]))
                throw Error("BadEigenvalueList", "duplicate eigenvalue supplied");
    Poly<T> rem = cp;
    std::vector<int> mult(eigenvalues.size(), 0);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        Poly<T> lin(std::vector<T>{-eigenvalues[i], one_like(eigenvalues[i])});
        while (!rem.is_constant()) {
            auto [q, r] = divmod(rem, lin);
            if (!r.is_zero_poly()) break;
            rem = q;
            ++mult[i];
        }
        if (mult[i] == 0) throw Error("BadEigenvalueList", "supplied value is not an eigenvalue");
    }
    if (!rem.is_constant())
        throw Error("DoesNotSplit", "characteristic polynomial has roots outside the field");
    return mult;
}

// Jordan canonical form over the coefficient field. Eigenvalues must be
// supplied (and are verified to split the characteristic polynomial exactly);
// chains are built from the highest nilpotency index downward, picking new
// chain tops from the kernel bases leftmost-first, so the conjugator is
// reproducible. Blocks per eigenvalue come out in decreasing size.
template <class T>
JordanForm<T> jcf(const Matrix<T>& m, const std::vector<T>& eigenvalues) {
    if (!m.square()) throw Error("NotSquare", "jcf of non-square matrix");
    const int n = m.rows();
    const T one = one_like(m.proto());
    Poly<T> cp = charpoly(m);
    std::vector<int> mult = split_multiplicities(cp, eigenvalues);

    Matrix<T> v(n, n, m.proto());
    int col = 0;
    std::vector<std::vector<int>> all_blocks;
    for (std::size_t e = 0; e < eigenvalues.size(); ++e) {
        Matrix<T> nmat = m;
        for (int i = 0; i < n; ++i) nmat.at(i, i) = nmat.at(i, i) - eigenvalues[e];
        // kernels of N^1, N^2, ... up to the algebraic multiplicity
        std::vector<std::vector<std::vector<T>>> kernels;  // kernels[k-1] = basis of ker N^k
        Matrix<T> pw = nmat;
        while (true) {
            kernels.push_back(nullspace(pw));
            if (static_cast<int>(kernels.back().size()) >= mult[e]) break;
            if (static_cast<int>(kernels.size()) > n)
                throw Error("InvariantViolation", "kernel chain exceeded dimension");
            pw = pw * nmat;
        }
        const int s = static_cast<int>(kernels.size());
        std::vector<std::vector<std::vector<T>>> chains;  // each chain: top .. down
        std::vector<std::vector<T>> carried;              // vectors pushed down from longer chains
        for (int k = s; k >= 1; --k) {
            detail::EchelonSpan<T> span(m.proto());
            if (k >= 2)
                for (const auto& w : kernels[k - 2]) span.insert(w);
            std::vector<std::vector<T>> next_carried;
            for (const auto& t : carried) {
                if (!span.insert(t))
                    throw Error("InvariantViolation", "jordan chain images collapsed");
                next_carried.push_back(nmat.apply(t));
            }
            for (const auto& cand : kernels[k - 1]) {
                if (span.insert(cand)) {
                    // new chain of length k
                    std::vector<std::vector<T>> chain{cand};
                    next_carried.push_back(nmat.apply(cand));
                    chains.push_back(std::move(chain));
                }
            }
            // grow existing chains downward: regenerate from tops at the end
            carried = std::move(next_carried);
        }
        std::vector<int> blocks;
        for (const auto& chain : chains) {
            const auto& top = chain[0];
            // chain vectors: N^(k-1) top, ..., N top, top
            std::vector<std::vector<T>> full{top};
            while (true) {
                std::vector<T> down = nmat.apply(full.back());
                bool zero = true;
                for (const T& x : down)
                    if (!is_zero(x)) {
                        zero = false;
                        break;
                    }
                if (zero) break;
                full.push_back(std::move(down));
            }
            blocks.push_back(static_cast<int>(full.size()));
            for (auto it = full.rbegin(); it != full.rend(); ++it) {
                for (int i = 0; i < n; ++i) v.at(i, col) = (*it)[i];
                ++col;
            }
        }
        all_blocks.push_back(std::move(blocks));
    }
    if (col != n) throw Error("DoesNotSplit", "generalized eigenvectors do not fill the space");

    Matrix<T> j(n, n, m.proto());
    int pos = 0;
    for (std::size_t e = 0; e < eigenvalues.size(); ++e)
        for (int b : all_blocks[e]) {
            for (int i = 0; i < b; ++i) {
                j.at(pos + i, pos + i) = eigenvalues[e];
                if (i + 1 < b) j.at(pos + i, pos + i + 1) = one;
            }
            pos += b;
        }
    Matrix<T> p = inverse(v);
    if (p * m * v != j) throw Error("InvariantViolation", "jcf conjugation failed verification");
    return JordanForm<T>{eigenvalues, std::move(all_blocks), std::move(p), std::move(j)};
}

// Eigenvalue list read off the diagonal (first occurrence order); requires an
// upper triangular input.
template <class T>
JordanForm<T> jcf(const Matrix<T>& m) {
    if (!m.is_upper_triangular())
        throw Error("BadEigenvalueList", "eigenvalue list required for non-triangular input");
    std::vector<T> eig;
    for (int i = 0; i < m.rows(); ++i) {
        bool seen = false;
        for (const T& x : eig)
            if (is_zero(x - m.at(i, i))) {
                seen = true;
                break;
            }
        if (!seen) eig.push_back(m.at(i, i));
    }
    return jcf(m, eig);
}

// Searches the intertwiner space {X : X A1 = A2 X} for an invertible element:
// the nullspace basis vectors first, then a budget of seeded random
// small-integer combinations. Returns nullopt when non-similarity is provable
// (charpoly or minpoly differ, or the intertwiner space is trivial); throws
// SimilarityUndecided when the budget runs out without a certificate.
template <class T>
std::optional<Matrix<T>> similarity_solve(const Matrix<T>& a1, const Matrix<T>& a2) {
    if (!a1.square() || !a2.square() || a1.rows() != a2.rows())
        throw Error("NotSquare", "similarity needs square matrices of equal size");
    const int n = a1.rows();
    if (charpoly(a1) != charpoly(a2)) return std::nullopt;
    if (minpoly(a1) != minpoly(a2)) return std::nullopt;

    const int nn = n * n;
    Matrix<T> sys(nn, nn, a1.proto());
    // column (k,l): vec(E_kl A1 - A2 E_kl)
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            int c = k * n + l;
            for (int j = 0; j < n; ++j)
                sys.at(k * n + j, c) = sys.at(k * n + j, c) + a1.at(l, j);
            for (int i = 0; i < n; ++i)
                sys.at(i * n + l, c) = sys.at(i * n + l, c) - a2.at(i, k);
        }
    auto basis = nullspace(sys);
    if (basis.empty()) return std::nullopt;

    auto unflatten = [&](const std::vector<T>& v) {
        Matrix<T> x(n, n, a1.proto());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x.at(i, j) = v[i * n + j];
        return x;
    };
    for (const auto& v : basis) {
        Matrix<T> x = unflatten(v);
        if (is_invertible(x)) return x;
    }
    Rng rng(global_config().seed ^ 0x51u);
    for (int attempt = 0; attempt < global_config().similarity_budget; ++attempt) {
        std::vector<T> combo(nn, zero_like(a1.proto()));
        for (const auto& v : basis) {
            long c = rng.uniform(-3, 3);
            if (c == 0) continue;
            T cf = from_int_like(a1.proto(), c);
            for (int i = 0; i < nn; ++i) combo[i] = combo[i] + cf * v[i];
        }
        Matrix<T> x = unflatten(combo);
        if (is_invertible(x)) return x;
    }
    throw Error("SimilarityUndecided", "no invertible intertwiner found within the search budget");
}

}  // namespace tsvs
