#pragma once

#include "pconvex/caratheodory.hpp"
#include "pconvex/types.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace pconvex {

/// Finite-dimensional p-normed space; the body is the unit ball. Keeps
/// the subset table for gauge evaluation, so construction pays the
/// enumeration cost once. Immutable and safe to share across threads.
class PNormedSpace {
public:
    explicit PNormedSpace(PBody body, double tol = kDefaultTol);

    const PBody& body() const { return body_; }
    PExponent p() const { return body_.p(); }
    int dim() const { return body_.dim(); }
    double tol() const { return tol_; }
    const SubsetTable& table() const { return *table_; }

private:
    PBody body_;
    double tol_;
    std::shared_ptr<const SubsetTable> table_;
};

/// Minkowski functional of the unit ball (exact, via the subset table).
double gauge(const Vector& x, const PNormedSpace& space);

struct AxiomReport {
    long samples = 0;
    long positivity_violations = 0;
    long homogeneity_violations = 0;
    long triangle_violations = 0;
    /// Worst relative homogeneity error of gauge(a x) against |a| gauge(x).
    double worst_homogeneity = 0.0;
    /// Worst p-triangle excess gauge(x+y)^p - gauge(x)^p - gauge(y)^p.
    double worst_triangle = -std::numeric_limits<double>::infinity();

    bool clean() const {
        return positivity_violations == 0 && homogeneity_violations == 0 &&
               triangle_violations == 0;
    }
};

/// Samples random vector pairs and checks positivity, absolute
/// homogeneity and the p-triangle inequality with tolerance 1e-9.
/// Violations are reported, not raised.
AxiomReport check_pnorm_axioms(const PNormedSpace& space, long samples, std::uint64_t seed);

/// max over signed generators g of `from` of gauge(T g, to). Every
/// unit-ball point is sum(lambda_i g_i) with sum(lambda_i^p) <= 1, so
/// |T x|^p <= sum lambda_i^p |T g_i|^p <= max_i |T g_i|^p.
double operator_norm(const LinearMap& t, const PNormedSpace& from, const PNormedSpace& to);

struct DistanceEstimate {
    double upper_bound = 1.0;
    LinearMap best_map;
    long evaluations = 0;
    std::uint64_t seed = 0;
};

/// Upper bound on the Banach-Mazur distance d(X, Y): minimizes
/// log|T|_{X->Y} + log|T^-1|_{Y->X} over invertible T by Nelder-Mead
/// local search from deterministic restarts (identity and axis
/// permutations) plus `restarts` random ones; candidates are rescaled to
/// |det| = 1 and rejected above condition number 1e8. `initial_maps`
/// are extra user-supplied restart points. No lower-bound certificate is
/// produced.
DistanceEstimate distance_estimate(const PNormedSpace& x, const PNormedSpace& y, long budget,
                                   int restarts, std::uint64_t seed,
                                   const std::vector<LinearMap>& initial_maps = {},
                                   int threads = 1);

/// Space with the same generators and exponent q, p <= q <= 1: the
/// q-convex envelope of the unit ball (q = 1 gives the Banach envelope,
/// q = p the space itself).
PNormedSpace q_envelope(const PNormedSpace& space, PExponent q);

struct SandwichReport {
    long samples = 0;
    long violations = 0;
    /// max over samples of |x|_X / |x|_{X^q}; empirical lower bound for
    /// d(X, X^q).
    double max_ratio = 1.0;
    /// n^(1/p - 1/q), the theoretical cap on the ratio.
    double bound = 1.0;
};

/// Verifies |x|_{X^q} <= |x|_X <= n^(1/p-1/q) |x|_{X^q} on random
/// samples (tolerance 1e-9 relative).
SandwichReport envelope_sandwich_check(const PNormedSpace& space, PExponent q, long samples,
                                       std::uint64_t seed);

}  // namespace pconvex
