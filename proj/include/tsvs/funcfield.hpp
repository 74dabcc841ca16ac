#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tsvs/poly.hpp"
#include "tsvs/rational.hpp"

namespace tsvs {

// Element of Q(t): numerator/denominator in lowest terms, denominator monic.
class RatFunc {
  public:
    RatFunc() : num_(), den_(RatPoly(Rational(1))) {}
    RatFunc(Rational c) : num_(RatPoly(std::move(c))), den_(RatPoly(Rational(1))) {}  // NOLINT
    explicit RatFunc(RatPoly num) : num_(std::move(num)), den_(RatPoly(Rational(1))) {}
    RatFunc(RatPoly num, RatPoly den);

    static RatFunc t() {
        return RatFunc(RatPoly(std::vector<Rational>{Rational(0), Rational(1)}));
    }

    const RatPoly& num() const { return num_; }
    const RatPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero_poly(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc inverse() const;

  private:
    RatPoly num_;
    RatPoly den_;
};

inline RatFunc zero_like(const RatFunc&) { return RatFunc(); }
inline RatFunc one_like(const RatFunc&) { return RatFunc(Rational(1)); }
inline RatFunc from_int_like(const RatFunc&, long v) { return RatFunc(Rational(v)); }
inline bool is_zero(const RatFunc& x) { return x.is_zero(); }

int order_compare(const RatFunc& a, const RatFunc& b);

// j-th Hasse derivative: D_j(t^n) = C(n, j) t^(n-j), extended to quotients by
// solving the Leibniz identity for the numerator.
RatFunc hasse_apply(int j, const RatFunc& x);

// D_0(x), ..., D_m(x) in one pass.
std::vector<RatFunc> hasse_all(const RatFunc& x, int m);

// Q-linear differential operator sum_j c_j(t) * D_j with at most one term per
// Hasse order; zero coefficients are dropped.
class DiffOperator {
  public:
    DiffOperator() = default;
    static DiffOperator hasse(int j) { return term(RatFunc(Rational(1)), j); }
    static DiffOperator term(RatFunc coeff, int j);

    const std::map<int, RatFunc>& terms() const { return terms_; }
    bool is_zero_op() const { return terms_.empty(); }
    bool is_identity() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one();
    }
    int max_order() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    RatFunc apply(const RatFunc& x) const;

    friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
    friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
    DiffOperator operator-() const;
    DiffOperator scaled(const RatFunc& c) const;

    // Operator composition; closed in this space because
    // D_i(c * y) = sum_{a+b=i} D_a(c) D_b(y) and D_b D_j = C(b+j, b) D_{b+j}.
    friend DiffOperator compose(const DiffOperator& outer, const DiffOperator& inner);

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

  private:
    std::map<int, RatFunc> terms_;
};

inline RatFunc op_apply(const DiffOperator& op, const RatFunc& x) { return op.apply(x); }

// Finds c_0..c_max_order in Q(t) with sum_j c_j D_j(x) = y on every sample;
// throws NoFit when the samples are inconsistent with any such operator (the
// ansatz may not exhaust order-m derivation tails with d_0 = Id, so NoFit is
// reported, never silently assumed impossible). Free coefficients are set to
// zero and the fit is re-verified against all samples.
DiffOperator fit_operator(const std::vector<std::pair<RatFunc, RatFunc>>& samples, int max_order);

}  // namespace tsvs
