#pragma once

#include "pconvex/types.hpp"

namespace pconvex {

/// sum(sign_i * lambda_i * gens[index_i]) accumulated in term order.
Vector eval_combination(const PCombination& comb, const GeneratorSet& gens);

/// p-weight sum(lambda_i^p); 0 for the empty combination.
double combination_weight(const PCombination& comb, PExponent p);

/// Rewrites a combination of weight w, 0 < w <= 1, as one with the same
/// value and weight exactly 1, by splitting the largest coefficient
/// lambda_1 into k parts: the minimal k with
/// k^(1-p) * lambda_1^p + (rest) >= 1, one part t*lambda_1 plus (k-1)
/// equal parts, t found by bisection on the decreasing branch
/// t in [1/k, 1]. Splitting cannot raise the weight past 1 for p = 1,
/// so that case is rejected unless the weight is already 1.
PCombination split_to_unit_weight(const PCombination& comb, PExponent p);

}  // namespace pconvex
