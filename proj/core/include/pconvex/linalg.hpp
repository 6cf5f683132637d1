#pragma once

#include "pconvex/types.hpp"

#include <optional>
#include <vector>

namespace pconvex {

/// Indices of a maximal linearly independent subset, chosen greedily in
/// index order by row-pivoted elimination on normalized columns. The
/// result is invariant under rescaling of individual points.
std::vector<int> independent_subset(const std::vector<Vector>& points, double tol = kDefaultTol);

/// Unique coefficients c with x = sum c_i * points[i], for linearly
/// independent points (k <= n). Returns nothing when x is outside the
/// span: residual >= tol * |x|_2 (or >= tol when x = 0).
std::optional<Eigen::VectorXd> solve_representation(const std::vector<Vector>& points,
                                                    const Vector& x, double tol = kDefaultTol);

/// Deterministic orthonormal basis (n x k matrix) of span(points) for k
/// independent points: Householder QR with columns flipped so that the
/// diagonal of R is nonnegative.
Matrix orthonormal_basis(const std::vector<Vector>& points);

}  // namespace pconvex
