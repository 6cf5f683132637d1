#pragma once

#include "pconvex/types.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace pconvex {

/// Outcome of an iterative reduction. Positive-coefficient terms of
/// `combination` reference linearly independent points (at most n of
/// them), except for the zero case where up to n+1 are allowed.
struct ReductionResult {
    PCombination combination;
    int iterations = 0;
    double weight_before = 0.0;
    double weight_after = 0.0;
};

/// Drop-one search for the single-step reduction: given n independent
/// points, an extra point q and a combination over all n+1 with weight
/// <= 1 + tol, returns coefficients (aligned [points..., q]) for the
/// same value supported on at most n of the points, all >= 0, weight
/// <= 1 + tol.
///
/// Candidates are tried dropping q first, then each point in index
/// order; for a rank-deficient candidate whose span contains the value,
/// the weight is minimized over the feasibility segment endpoints only
/// (t -> sum (a_i + t b_i)^p is concave on the feasible interval).
/// Throws NumericalError when no candidate is found, which signals a
/// violated precondition: a candidate always exists for valid input.
std::vector<double> lemma4_reduce(const std::vector<Vector>& points, const Vector& q,
                                  const std::vector<double>& lambdas, PExponent p,
                                  double tol = kDefaultTol);

/// Full iterative reduction of a combination with nonzero value to at
/// most n terms on linearly independent points, without increasing the
/// weight. Each pass rescales the sub-combination on a maximal
/// independent subset plus one more support point to weight 1, maps it
/// to span coordinates, applies lemma4_reduce and merges back.
ReductionResult caratheodory_reduce(const PCombination& comb, const GeneratorSet& gens,
                                    PExponent p, double tol = kDefaultTol);

/// Reduction of a combination representing 0 (|eval| <= tol) to at most
/// n+1 terms, weight not increased.
ReductionResult caratheodory_zero(const PCombination& comb, const GeneratorSet& gens,
                                  PExponent p, double tol = kDefaultTol);

/// Precomputed LU factorizations of every linearly independent size-n
/// subset of the generators, in lexicographic index order. Every
/// independent subset of fewer than n generators extends to a size-n
/// independent subset of a spanning set, and the unique solution over
/// the extension pads zeros, so minimizing over size-n subsets only is
/// exact.
class SubsetTable {
public:
    SubsetTable(const GeneratorSet& gens, double tol = kDefaultTol);

    struct Entry {
        std::vector<int> indices;
        Eigen::PartialPivLU<Matrix> lu;
    };

    const GeneratorSet& generators() const { return gens_; }
    int dim() const { return gens_.dim(); }
    const std::vector<Entry>& entries() const { return entries_; }
    double tol() const { return tol_; }

    /// Gauge of x with a minimizing representation. The witness carries
    /// weight gauge(x)^p.
    std::pair<double, PCombination> gauge(const Vector& x, PExponent p) const;

private:
    GeneratorSet gens_;
    double tol_;
    std::vector<Entry> entries_;
};

/// Exact gauge by exhaustive independent-subset enumeration:
/// gauge(x)^p = min over independent signed-generator subsets S with
/// x in span(S) of the weight of the unique nonnegative representation.
/// Guarded by C(2m, n) <= 10^6; throws BudgetError beyond that.
std::pair<double, PCombination> gauge_bruteforce(const Vector& x, const PBody& body,
                                                 double tol = kDefaultTol);

/// Membership in the body: gauge(x) <= 1 + tol, with a witness
/// combination when inside.
std::pair<bool, std::optional<PCombination>> membership(const Vector& x, const PBody& body,
                                                        double tol = kDefaultTol);

}  // namespace pconvex
