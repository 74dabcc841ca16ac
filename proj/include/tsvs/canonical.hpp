#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsvs/hom.hpp"
#include "tsvs/tensor_k0.hpp"

namespace tsvs {

inline NFElement generator_like(const NFElement& x) { return x.field().gen(); }
inline RatFunc generator_like(const RatFunc&) { return RatFunc::t(); }

// --- higher derivations over Q(t) ---------------------------------------------

// One map of a derivation sequence: either a closed-form differential
// operator or an opaque evaluation closure (e.g. extracted from a conjugated
// hom).
class TailMap {
  public:
    TailMap(DiffOperator op) : op_(std::move(op)) {}  // NOLINT: implicit by design
    TailMap(std::function<RatFunc(const RatFunc&)> fn, std::string label)
        : fn_(std::move(fn)), label_(std::move(label)) {}

    bool closed_form() const { return op_.has_value(); }
    const DiffOperator& op() const {
        if (!op_) throw Error("NotComposable", "map has no closed operator form");
        return *op_;
    }
    const std::string& label() const { return label_; }

    RatFunc apply(const RatFunc& x) const { return op_ ? op_->apply(x) : fn_(x); }

  private:
    std::optional<DiffOperator> op_;
    std::function<RatFunc(const RatFunc&)> fn_;
    std::string label_;
};

// Sequence d_0, ..., d_m on Q(t) with d_l(xy) = sum_{i+j=l} d_i(x) d_j(y).
// d_0 is the identity unless an explicit endomorphism t -> g(t) is set;
// endomorphisms live only here, never inside DiffOperator.
class HigherDerivation {
  public:
    static HigherDerivation identity_led(std::vector<DiffOperator> tail);
    static HigherDerivation endo_led(RatFunc t_image, std::vector<TailMap> tail);
    // no Leibniz check; used by tests to build deliberately invalid sequences
    static HigherDerivation unchecked(std::optional<RatFunc> t_image, std::vector<TailMap> tail);

    int order() const { return static_cast<int>(tail_.size()); }
    bool identity_d0() const { return !d0_subst_.has_value(); }
    const std::optional<RatFunc>& d0_subst() const { return d0_subst_; }
    const std::vector<TailMap>& tail() const { return tail_; }

    bool closed_form() const {
        for (const TailMap& m : tail_)
            if (!m.closed_form()) return false;
        return true;
    }

    RatFunc apply(int l, const RatFunc& x) const;

  private:
    HigherDerivation(std::optional<RatFunc> subst, std::vector<TailMap> tail)
        : d0_subst_(std::move(subst)), tail_(std::move(tail)) {}

    std::optional<RatFunc> d0_subst_;
    std::vector<TailMap> tail_;
};

enum class LeibnizLevel {
    Quick,  // construction-time: monomial pairs with small total degree + a few random pairs
    Full,   // monomial pairs with total degree <= 30 + 100 seeded random pairs
};

bool leibniz_holds(const HigherDerivation& d, LeibnizLevel level, std::string* witness = nullptr);
void require_leibniz(const HigherDerivation& d, LeibnizLevel level);

// Composition formula delta_l = sum_{i+j=l} d_i d_j' of order m+n, without
// any validity check. An order-0 factor composes with anything (the result is
// the coefficientwise composite, a ring homomorphism again); two identity-led
// sequences with closed-form operator tails compose in closed form; anything
// else is NotComposable.
//
// Caution: for truncated sequences the formula can leave HS — the cross
// terms d_i(x) d_j(y) with i + j beyond one factor's order have nothing to
// cancel against. hs_product re-verifies the identity and reports
// LeibnizViolation in that case; hs_product_raw returns the formula result
// as-is.
HigherDerivation hs_product_raw(const HigherDerivation& a, const HigherDerivation& b);
HigherDerivation hs_product(const HigherDerivation& a, const HigherDerivation& b);

// The hom of size order+1 whose generator image is the upper triangular
// Toeplitz matrix with i-th superdiagonal d_i(t). Runs the Leibniz check
// (LeibnizViolation) and the lazy Q(t) hom validation.
MatrixHom<RatFunc> toeplitz_hom(const HigherDerivation& d);

struct ScalingCertificate {
    Matrix<RatFunc> conjugator;  // diag(x, 1)
    HigherDerivation scaled;     // {d_0, x d_1}
};

// Order-1 scaling equivalence: conjugating by diag(x, 1) carries phi({d0,d1})
// to phi({d0, x d1}); returns the verified certificate.
ScalingCertificate scaled_derivation_similar(const HigherDerivation& d, const RatFunc& x);

// --- simultaneous triangularization ------------------------------------------

namespace detail {

// Recursive eigenvector triangularization: returns P with P A P^-1 upper
// triangular, processing the supplied (distinct) eigenvalues in order.
template <class F>
Matrix<F> triangularize_matrix(const Matrix<F>& a, const std::vector<F>& eigenvalues) {
    const int n = a.rows();
    const F one = one_like(a.proto());
    if (n <= 1 || a.is_upper_triangular()) return Matrix<F>::identity(n, a.proto());
    std::vector<F> v;
    for (const F& lam : eigenvalues) {
        Matrix<F> shifted = a;
        for (int i = 0; i < n; ++i) shifted.at(i, i) = shifted.at(i, i) - lam;
        auto ker = nullspace(shifted);
        if (!ker.empty()) {
            v = ker.front();
            break;
        }
    }
    if (v.empty()) throw Error("DoesNotSplit", "no eigenvector over the field");

    // complete v to a basis greedily with standard basis vectors
    Matrix<F> s(n, n, a.proto());
    detail::EchelonSpan<F> span(a.proto());
    span.insert(v);
    for (int i = 0; i < n; ++i) s.at(i, 0) = v[i];
    int col = 1;
    for (int j = 0; j < n && col < n; ++j) {
        std::vector<F> e(n, zero_like(a.proto()));
        e[j] = one;
        if (span.insert(e)) {
            s.at(j, col) = one;
            ++col;
        }
    }
    if (col != n) throw Error("InvariantViolation", "basis completion failed");
    Matrix<F> s_inv = inverse(s);
    Matrix<F> b = s_inv * a * s;
    Matrix<F> sub = b.submatrix(1, 1, n - 1, n - 1);
    Matrix<F> q = triangularize_matrix(sub, eigenvalues);
    Matrix<F> r = Matrix<F>::identity(n, a.proto());
    r.paste(1, 1, q);
    return r * s_inv;
}

}  // namespace detail

// Triangularizes the whole image of phi: eigenvectors of the generator image
// are common eigenvectors of every phi(x). Returns (P, conjugated hom) with
// P = I when the generator image is already upper triangular.
template <class F>
std::pair<Matrix<F>, MatrixHom<F>> triangularize_commuting(const MatrixHom<F>& h,
                                                           const std::vector<F>& eigenvalues) {
    if (h.gen_image.is_upper_triangular())
        return {Matrix<F>::identity(h.n(), h.proto()), h};
    Matrix<F> p = detail::triangularize_matrix(h.gen_image, eigenvalues);
    MatrixHom<F> tri = conjugate_hom(h, p);
    if (!tri.gen_image.is_upper_triangular())
        throw Error("DoesNotSplit", "triangularization failed over the field");
    return {std::move(p), std::move(tri)};
}

// Number field: eigenvalues are found by factoring the minimal polynomial
// over K; every factor must be linear.
std::pair<Matrix<NFElement>, MatrixHom<NFElement>> triangularize_commuting(
    const MatrixHom<NFElement>& h);

// Q(t): the generator image must already be upper triangular (eigenvalues are
// read off the diagonal) or an explicit eigenvalue list must be supplied.
std::pair<Matrix<RatFunc>, MatrixHom<RatFunc>> triangularize_commuting(const MatrixHom<RatFunc>& h);

// --- homogeneous structure -----------------------------------------------------

// Result of reducing an a-homogeneous hom: conjugator, block partition,
// per-block derivation maps d_0..d_{s-1} (d_0 = a), raw off-diagonal block
// extraction, and closed operator forms where fitting succeeded (Q(t), a = Id).
template <class F>
struct HomogeneousForm {
    Matrix<F> conjugator;
    std::vector<int> block_sizes;
    MatrixHom<F> conjugated;  // C = P phi P^-1 by generator image
    std::vector<std::vector<std::function<F(const F&)>>> derivation_maps;  // per block
    std::vector<std::vector<std::optional<DiffOperator>>> fitted;          // per block, index >= 1

    Matrix<F> offdiag_block(int bi, int bj, const F& x) const {
        int r0 = 0, c0 = 0;
        for (int i = 0; i < bi; ++i) r0 += block_sizes[i];
        for (int j = 0; j < bj; ++j) c0 += block_sizes[j];
        Matrix<F> m = hom_eval(conjugated, x);
        return m.submatrix(r0, c0, block_sizes[bi], block_sizes[bj]);
    }
};

namespace detail {

template <class F>
std::vector<F> homogeneous_samples(const F& proto, int count) {
    std::vector<F> out;
    F g = generator_like(proto);
    F acc = one_like(proto);
    for (int i = 0; i < count; ++i) {
        acc = acc * g;
        out.push_back(acc);
        out.push_back(acc + from_int_like(proto, i + 2));
    }
    return out;
}

}  // namespace detail

// Reduction of an a-homogeneous hom (minimal polynomial (X - a(gen))^s):
// triangularize, split where the first superdiagonal of the triangularized
// generator image vanishes, check the superdiagonal proportionality inside
// each block, and conjugate each block's generator image to a single Jordan
// block, which makes the whole block Toeplitz for every x. Superdiagonal maps
// are extracted as closures and fitted to operators over Q(t) when a = Id.
template <class F>
HomogeneousForm<F> homogeneous_structure(const MatrixHom<F>& h, const MatrixHom<F>& a) {
    if (a.n() != 1) throw Error("NotHomogeneous", "diagonal part must be a 1x1 hom");
    if (!same_field(h.proto(), a.proto()))
        throw Error("FieldMismatch", "hom and diagonal part over different fields");
    const F mu = a.gen_image.at(0, 0);
    const F one = one_like(h.proto());
    const int n = h.n();

    Poly<F> mp = minpoly(h.gen_image);
    Poly<F> lin(std::vector<F>{-mu, one});
    if (mp != poly_pow(lin, mp.degree()))
        throw Error("NotHomogeneous", "minimal polynomial is not a power of (X - a(gen))");

    auto [p1, tri] = triangularize_commuting(h, std::vector<F>{mu});
    const Matrix<F>& t = tri.gen_image;

    // split at vanishing first-superdiagonal entries; zero-testing one entry of
    // the generator image suffices: p(B)_{i,i+1} = p'(mu) B_{i,i+1} on a
    // constant-diagonal upper triangular B, and char 0 keeps p'(mu) != 0 for p = X
    std::vector<int> block_sizes;
    {
        int start = 0;
        for (int i = 0; i + 1 < n; ++i) {
            if (is_zero(t.at(i, i + 1))) {
                block_sizes.push_back(i + 1 - start);
                start = i + 1;
            }
        }
        block_sizes.push_back(n - start);
    }

    // proportionality inside each block, confirmed on 20 samples
    {
        std::vector<F> samples = detail::homogeneous_samples(h.proto(), 10);
        int off = 0;
        for (int s : block_sizes) {
            for (int r = off; r + 2 <= off + s - 1; ++r) {
                const F& top = t.at(r, r + 1);
                const F& nxt = t.at(r + 1, r + 2);
                if (is_zero(top) || is_zero(nxt))
                    throw Error("ProportionalityFailure",
                                "vanishing superdiagonal inside a block at row " +
                                    std::to_string(r));
                F alpha = nxt / top;
                for (const F& x : samples) {
                    Matrix<F> px = hom_eval(tri, x);
                    if (!is_zero(px.at(r + 1, r + 2) - alpha * px.at(r, r + 1)))
                        throw Error("ProportionalityFailure",
                                    "superdiagonal proportionality fails at rows " +
                                        std::to_string(r) + "," + std::to_string(r + 1));
                }
            }
            off += s;
        }
    }

    // conjugate each diagonal block to a single Jordan block
    Matrix<F> block_conj = Matrix<F>::identity(n, h.proto());
    {
        int off = 0;
        for (int s : block_sizes) {
            if (s > 1) {
                Matrix<F> sub = t.submatrix(off, off, s, s);
                JordanForm<F> jf = jcf(sub, std::vector<F>{mu});
                if (jf.blocks[0] != std::vector<int>{s})
                    throw Error("InvariantViolation", "block did not reduce to one Jordan block");
                block_conj.paste(off, off, jf.conjugator);
            }
            off += s;
        }
    }
    Matrix<F> p = block_conj * p1;
    MatrixHom<F> conj = conjugate_hom(h, p);

    HomogeneousForm<F> form{std::move(p), block_sizes, conj, {}, {}};

    // extract the derivation maps per block and verify the Toeplitz shape on samples
    std::vector<F> samples = detail::homogeneous_samples(h.proto(), 6);
    int off = 0;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        const int s = block_sizes[b];
        std::vector<std::function<F(const F&)>> maps;
        for (int k = 0; k < s; ++k) {
            MatrixHom<F> c = conj;
            int row = off, col = off + k;
            maps.push_back([c, row, col](const F& x) { return hom_eval(c, x).at(row, col); });
        }
        for (const F& x : samples) {
            Matrix<F> m = hom_eval(conj, x);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) {
                    F expect = j >= i ? m.at(off, off + (j - i)) : zero_like(h.proto());
                    if (!is_zero(m.at(off + i, off + j) - expect))
                        throw Error("InvariantViolation",
                                    "diagonal block is not Toeplitz at a sample");
                }
            // everything below the block row range must vanish
            for (int i = off; i < off + s; ++i)
                for (int j = 0; j < off; ++j)
                    if (!is_zero(m.at(i, j)))
                        throw Error("InvariantViolation", "conjugated hom not block triangular");
        }
        form.derivation_maps.push_back(std::move(maps));
        form.fitted.emplace_back(s, std::nullopt);
        off += s;
    }

    // closed forms over Q(t) when the diagonal is the identity embedding
    if constexpr (std::is_same_v<F, RatFunc>) {
        if (mu == RatFunc::t()) {
            for (std::size_t b = 0; b < form.block_sizes.size(); ++b) {
                const int s = form.block_sizes[b];
                for (int k = 1; k < s; ++k) {
                    std::vector<std::pair<RatFunc, RatFunc>> pts;
                    RatFunc tt = RatFunc::t();
                    RatFunc acc(Rational(1));
                    for (int deg = 1; deg <= s + 2; ++deg) {
                        acc = acc * tt;
                        pts.emplace_back(acc, form.derivation_maps[b][k](acc));
                    }
                    try {
                        form.fitted[b][k] = fit_operator(pts, s);
                    } catch (const Error& e) {
                        if (e.name() != "NoFit") throw;
                    }
                }
            }
        }
    }
    return form;
}

// Cocycle check A_ij(xy) = sum_l A_il(x) A_lj(y) on sampled pairs.
template <class F>
void verify_cocycle(const HomogeneousForm<F>& form, const std::vector<std::pair<F, F>>& pairs) {
    const int r = static_cast<int>(form.block_sizes.size());
    for (const auto& [x, y] : pairs) {
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) {
                Matrix<F> lhs = form.offdiag_block(i, j, x * y);
                Matrix<F> acc(form.block_sizes[i], form.block_sizes[j],
                              zero_like(form.conjugator.proto()));
                for (int l = i; l <= j; ++l)
                    acc = acc + form.offdiag_block(i, l, x) * form.offdiag_block(l, j, y);
                if (lhs != acc) throw Error("InvariantViolation", "cocycle relation failed");
            }
    }
}

// --- Jordan-ordered matrices ---------------------------------------------------

// Block-diagonal Jordan matrix with the given block sizes in layout order.
template <class F>
Matrix<F> jordan_from_blocks(const std::vector<int>& blocks, const F& lambda, const F& proto) {
    int n = 0;
    for (int b : blocks) n += b;
    Matrix<F> j(n, n, proto);
    int pos = 0;
    for (int b : blocks) {
        for (int i = 0; i < b; ++i) {
            j.at(pos + i, pos + i) = lambda;
            if (i + 1 < b) j.at(pos + i, pos + i + 1) = one_like(lambda);
        }
        pos += b;
    }
    return j;
}

namespace detail {

template <class F>
void require_single_eigenvalue_triangular(const Matrix<F>& a) {
    if (!a.square() || !a.is_upper_triangular())
        throw Error("NotTriangular", "matrix must be square upper triangular");
    for (int i = 1; i < a.rows(); ++i)
        if (!is_zero(a.at(i, i) - a.at(0, 0)))
            throw Error("MultipleEigenvalues", "diagonal is not constant");
}

// Decreasing Jordan block sizes from kernel dimensions of powers.
template <class F>
std::vector<int> weyr_blocks(const Matrix<F>& a, const F& lambda) {
    const int n = a.rows();
    Matrix<F> nil = a;
    for (int i = 0; i < n; ++i) nil.at(i, i) = nil.at(i, i) - lambda;
    std::vector<int> kdims{0};
    Matrix<F> pw = nil;
    while (true) {
        int d = n - rank(pw);
        kdims.push_back(d);
        if (d == n || d == kdims[kdims.size() - 2]) break;
        pw = pw * nil;
    }
    std::vector<int> ge;  // ge[k] = #blocks of size >= k+1
    for (std::size_t k = 1; k < kdims.size(); ++k) ge.push_back(kdims[k] - kdims[k - 1]);
    std::vector<int> blocks;
    for (std::size_t k = 0; k < ge.size(); ++k) {
        int exact = ge[k] - (k + 1 < ge.size() ? ge[k + 1] : 0);
        for (int c = 0; c < exact; ++c) blocks.push_back(static_cast<int>(k) + 1);
    }
    std::sort(blocks.rbegin(), blocks.rend());
    return blocks;
}

}  // namespace detail

// A is Jordan-ordered when the eigenspace dimension of every leading
// principal minor A_i equals the smallest j with n_1 + ... + n_j >= i, the
// n_k being A's decreasing Jordan block sizes.
template <class F>
bool is_jordan_ordered(const Matrix<F>& a) {
    detail::require_single_eigenvalue_triangular(a);
    const int n = a.rows();
    const F lambda = a.at(0, 0);
    std::vector<int> blocks = detail::weyr_blocks(a, lambda);
    for (int i = 1; i <= n; ++i) {
        Matrix<F> ai = a.submatrix(0, 0, i, i);
        for (int r = 0; r < i; ++r) ai.at(r, r) = ai.at(r, r) - lambda;
        int eig_dim = i - rank(ai);
        int cum = 0, j = 0;
        while (cum < i) cum += blocks[j++];
        if (eig_dim != j) return false;
    }
    return true;
}

// Upper triangular conjugation of a Jordan-ordered matrix to Jordan canonical
// form with decreasing blocks. Extends the leading minor one row at a time:
// the new column is sheared into the image of (lambda I - B), which forces
// zeros at the block-end positions; depending on whether the eigenspace grew,
// either a fresh 1x1 block is appended or the last block is extended and the
// chain entry rescaled to 1.
template <class F>
std::pair<Matrix<F>, Matrix<F>> jordan_order_conjugate(const Matrix<F>& a) {
    detail::require_single_eigenvalue_triangular(a);
    if (!is_jordan_ordered(a)) throw Error("NotJordanOrdered", "input is not Jordan-ordered");
    const int n = a.rows();
    const F lambda = a.at(0, 0);
    const F zero = zero_like(a.proto());
    const F one = one_like(a.proto());

    Matrix<F> p(1, 1, a.proto());
    p.at(0, 0) = one;
    std::vector<int> blocks{1};

    for (int k = 1; k < n; ++k) {
        // conjugated extension column
        std::vector<F> col(k, zero);
        for (int i = 0; i < k; ++i) col[i] = a.at(i, k);
        std::vector<F> v = p.apply(col);

        // current JCF B of the leading minor, by block layout
        Matrix<F> b = jordan_from_blocks(blocks, lambda, a.proto());
        std::vector<int> ends;
        {
            int acc = 0;
            for (int s : blocks) {
                acc += s;
                ends.push_back(acc - 1);
            }
        }
        Matrix<F> ak1 = a.submatrix(0, 0, k + 1, k + 1);
        for (int i = 0; i <= k; ++i) ak1.at(i, i) = ak1.at(i, i) - lambda;
        int dim_ea = (k + 1) - rank(ak1);
        int dim_eb = static_cast<int>(blocks.size());

        bool extend_last;
        if (dim_ea == dim_eb + 1) {
            extend_last = false;
        } else if (dim_ea == dim_eb) {
            extend_last = true;
        } else {
            throw Error("NotJordanOrdered",
                        "eigenspace dimensions inconsistent at minor " + std::to_string(k + 1));
        }

        // block-end components are invariant under the shear and must vanish
        // (all of them for a new block; all but the last when extending)
        for (std::size_t e = 0; e < ends.size(); ++e) {
            bool must_vanish = !extend_last || (e + 1 < ends.size());
            if (must_vanish && !is_zero(v[ends[e]]))
                throw Error("NotJordanOrdered", "forced zero pattern violated at minor " +
                                                    std::to_string(k + 1));
        }
        if (extend_last) {
            if (blocks.size() >= 2 && blocks[blocks.size() - 2] < blocks.back() + 1)
                throw Error("NotJordanOrdered",
                            "block extension breaks decreasing order at minor " +
                                std::to_string(k + 1));
            if (is_zero(v[ends.back()]))
                throw Error("NotJordanOrdered", "vanishing chain entry at minor " +
                                                    std::to_string(k + 1));
        }

        // shear: solve (lambda I - B) y = residual with block ends zeroed
        std::vector<F> rhs(k, zero);
        for (int i = 0; i < k; ++i) rhs[i] = -v[i];
        F c = extend_last ? v[ends.back()] : zero;
        if (extend_last) rhs[ends.back()] = zero;
        Matrix<F> lib(k, k, a.proto());
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                F e = i == j ? lambda - b.at(i, j) : -b.at(i, j);
                lib.at(i, j) = e;
            }
        auto y = solve(lib, rhs);
        if (!y) throw Error("NotJordanOrdered", "shear system unsolvable at minor " +
                                                    std::to_string(k + 1));

        // P_step = D * [[I, y],[0,1]] * diag(P, 1)
        Matrix<F> pk1(k + 1, k + 1, a.proto());
        pk1.paste(0, 0, p);
        pk1.at(k, k) = one;
        Matrix<F> shear = Matrix<F>::identity(k + 1, a.proto());
        for (int i = 0; i < k; ++i) shear.at(i, k) = (*y)[i];
        Matrix<F> next_p = shear * pk1;
        if (extend_last) {
            Matrix<F> d = Matrix<F>::identity(k + 1, a.proto());
            d.at(k, k) = c;
            next_p = d * next_p;
            blocks.back() += 1;
        } else {
            blocks.push_back(1);
        }
        p = std::move(next_p);
    }

    Matrix<F> j = jordan_from_blocks(blocks, lambda, a.proto());
    if (!p.is_upper_triangular() || !is_invertible(p))
        throw Error("InvariantViolation", "conjugator is not upper triangular invertible");
    if (p * a * inverse(p) != j)
        throw Error("InvariantViolation", "Jordan-order conjugation failed verification");
    return {std::move(p), std::move(j)};
}

// --- commutant shape -----------------------------------------------------------

struct JordanBlockInfo {
    int start = 0;
    int size = 0;
    int eig_index = 0;  // index into the distinct eigenvalue list
};

struct ToeplitzShape {
    struct Cell {
        int p = 0, q = 0;  // block indices
        int rows = 0, cols = 0;
        bool same_eigenvalue = false;
        bool ok = false;
    };
    std::vector<Cell> cells;
    bool all_ok = true;
};

namespace detail {

template <class F>
std::vector<JordanBlockInfo> parse_jcf(const Matrix<F>& j, std::vector<F>* eigenvalues) {
    if (!j.square()) throw Error("NotJCF", "matrix is not square");
    const int n = j.rows();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (r == c || (c == r + 1)) continue;
            if (!is_zero(j.at(r, c))) throw Error("NotJCF", "entry outside the Jordan pattern");
        }
    std::vector<JordanBlockInfo> blocks;
    std::vector<F> eigs;
    int start = 0;
    for (int r = 0; r < n; ++r) {
        bool block_ends = true;
        if (r + 1 < n) {
            const F& sd = j.at(r, r + 1);
            if (is_zero(sd)) {
                block_ends = true;
            } else if (is_zero(sd - one_like(sd))) {
                if (!is_zero(j.at(r, r) - j.at(r + 1, r + 1)))
                    throw Error("NotJCF", "chain crosses different eigenvalues");
                block_ends = false;
            } else {
                throw Error("NotJCF", "superdiagonal entry is neither 0 nor 1");
            }
        }
        if (block_ends) {
            JordanBlockInfo info;
            info.start = start;
            info.size = r - start + 1;
            const F lam = j.at(start, start);
            int idx = -1;
            for (std::size_t e = 0; e < eigs.size(); ++e)
                if (is_zero(eigs[e] - lam)) idx = static_cast<int>(e);
            if (idx < 0) {
                eigs.push_back(lam);
                idx = static_cast<int>(eigs.size()) - 1;
            }
            info.eig_index = idx;
            blocks.push_back(info);
            start = r + 1;
        }
    }
    if (eigenvalues) *eigenvalues = eigs;
    return blocks;
}

// (0 T) for wide, (T; 0) for tall, T upper triangular Toeplitz.
template <class F>
bool generalized_toeplitz_ok(const Matrix<F>& m) {
    const int r = m.rows(), c = m.cols();
    const int s = std::min(r, c);
    int row0 = 0, col0 = c - s;  // wide: zeros on the left
    if (r > c) {
        row0 = 0;
        col0 = 0;  // tall: T on top, zero rows below
        for (int i = s; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (!is_zero(m.at(i, j))) return false;
    } else {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c - s; ++j)
                if (!is_zero(m.at(i, j))) return false;
    }
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            if (j < i) {
                if (!is_zero(m.at(row0 + i, col0 + j))) return false;
            } else if (i > 0) {
                if (!is_zero(m.at(row0 + i, col0 + j) - m.at(row0 + i - 1, col0 + j - 1)))
                    return false;
            }
        }
    return true;
}

}  // namespace detail

// Shape test for matrices commuting with a Jordan matrix J: same-eigenvalue
// block cells must be generalized upper triangular Toeplitz, cross-eigenvalue
// cells zero. The shape holds exactly when X J = J X.
template <class F>
std::pair<bool, ToeplitzShape> commutant_shape_check(const Matrix<F>& j, const Matrix<F>& x) {
    std::vector<F> eigs;
    auto blocks = detail::parse_jcf(j, &eigs);
    if (!x.square() || x.rows() != j.rows())
        throw Error("NotJCF", "test matrix size does not match the Jordan matrix");
    ToeplitzShape shape;
    for (std::size_t p = 0; p < blocks.size(); ++p)
        for (std::size_t q = 0; q < blocks.size(); ++q) {
            Matrix<F> cell =
                x.submatrix(blocks[p].start, blocks[q].start, blocks[p].size, blocks[q].size);
            ToeplitzShape::Cell info;
            info.p = static_cast<int>(p);
            info.q = static_cast<int>(q);
            info.rows = blocks[p].size;
            info.cols = blocks[q].size;
            info.same_eigenvalue = blocks[p].eig_index == blocks[q].eig_index;
            info.ok = info.same_eigenvalue ? detail::generalized_toeplitz_ok(cell)
                                           : cell.is_zero_matrix();
            shape.all_ok = shape.all_ok && info.ok;
            shape.cells.push_back(info);
        }
    return {shape.all_ok, shape};
}

// dim of the commutant of a single-eigenvalue J: sum of min(n_p, n_q).
template <class F>
int commutant_dimension_formula(const Matrix<F>& j) {
    std::vector<F> eigs;
    auto blocks = detail::parse_jcf(j, &eigs);
    int dim = 0;
    for (const auto& bp : blocks)
        for (const auto& bq : blocks)
            if (bp.eig_index == bq.eig_index) dim += std::min(bp.size, bq.size);
    return dim;
}

}  // namespace tsvs
