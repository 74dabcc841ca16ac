#pragma once

#include <vector>

#include "tsvs/config.hpp"
#include "tsvs/funcfield.hpp"
#include "tsvs/linalg.hpp"
#include "tsvs/numfield.hpp"

namespace helpers {

using namespace tsvs;

inline RatPoly P(std::vector<long> coeffs) {  // ascending
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return RatPoly(std::move(c));
}

inline NumberField q_cbrt2() { return NumberField::make(P({-2, 0, 0, 1})); }
inline NumberField q_sqrt2() { return NumberField::make(P({-2, 0, 1})); }
inline NumberField q_gauss() { return NumberField::make(P({1, 0, 1})); }
inline NumberField q_5throot2() { return NumberField::make(P({-2, 0, 0, 0, 0, 1})); }

inline Matrix<Rational> qmat(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        std::vector<Rational> x;
        for (long v : row) x.emplace_back(v);
        r.push_back(std::move(x));
    }
    return Matrix<Rational>::from_rows(r);
}

// Random invertible integer matrix built from elementary row operations
// (determinant +-1, entries stay small).
template <class T>
Matrix<T> random_invertible(Rng& rng, int n, const T& proto, int ops = 0) {
    Matrix<T> m = Matrix<T>::identity(n, proto);
    if (ops == 0) ops = 2 * n;
    for (int k = 0; k < ops; ++k) {
        int i = static_cast<int>(rng.uniform(0, n - 1));
        int j = static_cast<int>(rng.uniform(0, n - 1));
        if (i == j) continue;
        T c = from_int_like(proto, rng.uniform(-2, 2));
        for (int col = 0; col < n; ++col) m.at(i, col) = m.at(i, col) + c * m.at(j, col);
    }
    return m;
}

// Random unipotent upper triangular integer matrix.
template <class T>
Matrix<T> random_unipotent_upper(Rng& rng, int n, const T& proto, long bound = 3) {
    Matrix<T> m = Matrix<T>::identity(n, proto);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.at(i, j) = from_int_like(proto, rng.uniform(-bound, bound));
    return m;
}

// Jordan matrix with the given blocks (sizes in layout order), one eigenvalue.
template <class T>
Matrix<T> jordan_matrix(const std::vector<int>& blocks, const T& lambda) {
    int n = 0;
    for (int b : blocks) n += b;
    Matrix<T> j(n, n, lambda);
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

inline RatFunc rf(long v) { return RatFunc(Rational(v)); }

inline RatFunc rf_t() { return RatFunc::t(); }

inline RatFunc random_ratfunc(Rng& rng, int max_deg = 3, long bound = 5) {
    auto rand_poly = [&](int deg_cap, bool nonzero) {
        std::vector<Rational> c;
        int deg = static_cast<int>(rng.uniform(0, deg_cap));
        for (int i = 0; i <= deg; ++i) c.emplace_back(rng.uniform(-bound, bound));
        RatPoly p{std::move(c)};
        if (nonzero && p.is_zero_poly()) p = RatPoly(Rational(1));
        return p;
    };
    return RatFunc(rand_poly(max_deg, false), rand_poly(max_deg, true));
}

inline NFElement random_element(Rng& rng, const NumberField& k, long bound = 5) {
    std::vector<Rational> c;
    for (int i = 0; i < k.degree(); ++i) c.emplace_back(rng.uniform(-bound, bound));
    return k.element(RatPoly(std::move(c)));
}

}  // namespace helpers
