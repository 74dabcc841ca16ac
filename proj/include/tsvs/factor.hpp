#pragma once

#include <utility>
#include <vector>

#include "tsvs/config.hpp"
#include "tsvs/poly.hpp"

namespace tsvs {

// Factors p over Q into monic irreducible powers: the product of
// factor^multiplicity times lc(p) reconstructs p exactly. Factors are sorted
// by (degree, lexicographic coefficient order from the leading coefficient
// down). Throws ZeroPolynomial for p = 0; a nonzero constant has no factors.
//
// FactorAlgorithm::Zassenhaus (and Auto) run squarefree decomposition
// followed by modular factorization with Hensel lifting; Exhaustive is the
// degree <= 4 integer-coefficient search kept as an independent cross-check.
std::vector<std::pair<RatPoly, int>> factor_over_Q(const RatPoly& p);
std::vector<std::pair<RatPoly, int>> factor_over_Q(const RatPoly& p, FactorAlgorithm algorithm);

bool is_irreducible_over_Q(const RatPoly& p);

// Drops all memoized factorizations (in-memory only; disk cache untouched).
void clear_factor_cache();

}  // namespace tsvs
