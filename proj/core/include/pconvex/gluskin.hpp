#pragma once

#include "pconvex/norms.hpp"
#include "pconvex/rng.hpp"
#include "pconvex/types.hpp"

#include <cstdint>
#include <vector>

namespace pconvex {

/// Parameters of a random space Q_p(A) = p-conv{+-e_i, +-P_i} with the
/// P_i drawn from the Haar measure on the Euclidean sphere.
struct RandomSpaceSpec {
    int n = 1;
    PExponent p;
    std::uint64_t seed = 0;
};

/// Haar-uniform point on S^(n-1): normalized standard-normal vector.
Vector sample_sphere(int n, CounterRng& rng);

/// Q_p(A) with 2n generators e_1..e_n, P_1..P_n. Each P_i is re-drawn
/// from its own substream while {P_1..P_i} is numerically dependent
/// (probability zero), so the construction is bit-reproducible per seed.
PNormedSpace random_gluskin_space(const RandomSpaceSpec& spec);

/// Lebesgue volume of the unit ball of l_p^n for 0 < p <= 1:
/// 2^n Gamma(1+1/p)^n / Gamma(1+n/p), evaluated through log-Gamma.
double ball_volume_lp(int n, PExponent p);

/// Volume of the Euclidean unit ball B_{l_2^n}.
double euclidean_ball_volume(int n);

struct VolumeEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

/// Rejection sampling inside B_{l_2^n}; requires every generator to have
/// Euclidean norm <= 1 so that the body is contained in the ball
/// (sum lambda_i <= (sum lambda_i^p)^(1/p) for p < 1). Deterministic per
/// (seed, sample index) and independent of the worker count.
VolumeEstimate volume_mc(const PNormedSpace& space, long samples, std::uint64_t seed,
                         int threads = 1);

/// Union bound C(4n, n) * |B_{l_p^n}| / 2^n with Hadamard's |det| <= 1
/// for unit generators (an over-count of the union; 4n counts the signed
/// generators of a Q_p(A) body). With exact_determinants the per-subset
/// determinants are summed instead, which is tighter but costs a pass
/// over all size-n subsets.
double volume_upper_bound(const PNormedSpace& space, bool exact_determinants = false);

struct Lemma7Report {
    long trials = 0;
    double t = 0.0;
    /// 2^(1/p) * t, the per-point gauge threshold defining the event.
    double threshold = 0.0;
    double empirical = 0.0;
    double empirical_std_error = 0.0;
    double bound = 0.0;
    double bound_std_error = 0.0;
    VolumeEstimate volume;
    /// The bound exceeds 1 and certifies nothing.
    bool vacuous = false;
    /// empirical <= bound + 3 * combined sigma (true when vacuous).
    bool within_bound = true;
};

/// Estimates P{A : |T P_i|_{Q_p(A')} <= 2^(1/p) t for all i} over fresh
/// sphere tuples A and compares it against
/// (2^(1/p) t)^(n^2) (|Q_p(A')| / |B_{l_2^n}|)^n with |Q_p(A')| from
/// volume_mc. T is |det|-normalized on input.
Lemma7Report lemma7_experiment(const LinearMap& t_map, const PNormedSpace& fixed_space, double t,
                               long trials, std::uint64_t seed, long volume_samples = 200000,
                               int threads = 1);

struct ScalingRow {
    int n = 0;
    double p = 0.0;
    int pair_index = 0;
    double distance_upper = 1.0;
    /// Peck's cap n^(2/p-1) on diam(M_n^p).
    double reference = 1.0;
    /// Envelope-ratio lower bounds for d(X, X^1) of the two spaces.
    double envelope_lb_a = 1.0;
    double envelope_lb_b = 1.0;
};

/// Draws pairs (Q_p(A), Q_p(A')) per dimension, estimates their distance
/// and tabulates against the n^(2/p-1) reference. A trend table, not a
/// reproduction of the probabilistic lower bound.
std::vector<ScalingRow> diameter_experiment(const std::vector<int>& n_values, PExponent p,
                                            int pairs_per_n, long budget, std::uint64_t seed,
                                            int restarts = 8, int threads = 1, int max_n = 5);

}  // namespace pconvex
