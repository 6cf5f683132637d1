#include "pconvex/gluskin.hpp"

#include "pconvex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace pconvex {

namespace {
constexpr std::uint64_t kStreamGluskin = 0x21;
constexpr std::uint64_t kStreamVolume = 0x22;
constexpr std::uint64_t kStreamLemma7 = 0x23;
constexpr std::uint64_t kStreamLemma7Volume = 0x24;
constexpr std::uint64_t kStreamDiameter = 0x25;

/// Splits [0, count) into contiguous chunks and runs fn(begin, end, slot)
/// on each; per-slot results keep reductions order-independent.
template <typename Fn>
void parallel_chunks(long count, int threads, Fn&& fn) {
    int workers = std::max(1, threads);
    if (count < workers) workers = static_cast<int>(std::max<long>(1, count));
    if (workers <= 1) {
        fn(0L, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long begin = static_cast<long>(w) * chunk;
        const long end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end, w]() { fn(begin, end, w); });
    }
    for (auto& th : pool) th.join();
}

double binomial(int a, int b) {
    double c = 1.0;
    for (int i = 1; i <= b; ++i) {
        c *= static_cast<double>(a - b + i) / static_cast<double>(i);
    }
    return c;
}

}  // namespace

Vector sample_sphere(int n, CounterRng& rng) {
    if (n < 1) throw ValidationError("sample_sphere: n must be >= 1");
    for (;;) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.normal();
        const double norm = v.norm();
        if (norm > 1e-12) return v / norm;
    }
}

PNormedSpace random_gluskin_space(const RandomSpaceSpec& spec) {
    if (spec.n < 1) throw ValidationError("random_gluskin_space: n must be >= 1");
    const int n = spec.n;
    std::vector<Vector> points;
    points.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) points.push_back(Vector::Unit(n, i));

    std::vector<Vector> random_part;
    for (int i = 0; i < n; ++i) {
        CounterRng rng = CounterRng(spec.seed, kStreamGluskin).substream(static_cast<std::uint64_t>(i));
        for (;;) {
            Vector p = sample_sphere(n, rng);
            random_part.push_back(p);
            if (static_cast<int>(independent_subset(random_part).size()) ==
                static_cast<int>(random_part.size())) {
                break;
            }
            random_part.pop_back();
        }
    }
    points.insert(points.end(), random_part.begin(), random_part.end());
    return PNormedSpace(PBody(GeneratorSet(n, std::move(points)), spec.p));
}

double ball_volume_lp(int n, PExponent p) {
    if (n < 1) throw ValidationError("ball_volume_lp: n must be >= 1");
    const double inv_p = 1.0 / p.value();
    return std::exp(n * std::numbers::ln2 + n * std::lgamma(1.0 + inv_p) -
                    std::lgamma(1.0 + n * inv_p));
}

double euclidean_ball_volume(int n) {
    if (n < 1) throw ValidationError("euclidean_ball_volume: n must be >= 1");
    return std::exp(0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0));
}

VolumeEstimate volume_mc(const PNormedSpace& space, long samples, std::uint64_t seed,
                         int threads) {
    if (samples < 1) throw ValidationError("volume_mc: samples must be >= 1");
    const int n = space.dim();
    for (const Vector& g : space.body().generators().points()) {
        if (g.norm() > 1.0 + 1e-9) {
            throw ValidationError("volume_mc requires generators with Euclidean norm <= 1");
        }
    }
    const PExponent p = space.p();
    const double ball = euclidean_ball_volume(n);

    const int workers = std::max(1, threads);
    std::vector<long> hits(static_cast<std::size_t>(workers), 0L);
    parallel_chunks(samples, workers, [&](long begin, long end, int slot) {
        long h = 0;
        for (long i = begin; i < end; ++i) {
            CounterRng rng = CounterRng(seed, kStreamVolume).substream(static_cast<std::uint64_t>(i));
            const Vector dir = sample_sphere(n, rng);
            const double r = std::pow(rng.uniform01(), 1.0 / n);
            if (space.table().gauge(r * dir, p).first <= 1.0) ++h;
        }
        hits[static_cast<std::size_t>(slot)] = h;
    });
    long total = 0;
    for (long h : hits) total += h;

    const double frac = static_cast<double>(total) / static_cast<double>(samples);
    VolumeEstimate est;
    est.samples = samples;
    est.mean = frac * ball;
    est.std_error = ball * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return est;
}

double volume_upper_bound(const PNormedSpace& space, bool exact_determinants) {
    const int n = space.dim();
    const auto& points = space.body().generators().points();
    for (const Vector& g : points) {
        if (std::abs(g.norm() - 1.0) > 1e-9) {
            throw ValidationError("volume_upper_bound requires unit-norm generators");
        }
    }
    const double cell = ball_volume_lp(n, space.p()) / std::pow(2.0, n);
    const int m = static_cast<int>(points.size());

    if (!exact_determinants) {
        return binomial(4 * n, n) * cell;
    }

    // Tighter mode: sum |det| over unsigned size-n subsets; each unsigned
    // subset stands for 2^n sign choices of equal |det|.
    double sum = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    Matrix a(n, n);
    while (true) {
        for (int j = 0; j < n; ++j) a.col(j) = points[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        sum += std::abs(a.determinant());
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - n + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return sum * std::pow(2.0, n) * cell;
}

Lemma7Report lemma7_experiment(const LinearMap& t_map, const PNormedSpace& fixed_space, double t,
                               long trials, std::uint64_t seed, long volume_samples,
                               int threads) {
    if (!(t > 0.0)) throw ValidationError("lemma7_experiment: t must be > 0");
    if (trials < 1) throw ValidationError("lemma7_experiment: trials must be >= 1");
    const int n = fixed_space.dim();
    if (t_map.dim() != n) throw ValidationError("lemma7_experiment: map dimension mismatch");

    const LinearMap tn = t_map.normalized_det();
    const double pv = fixed_space.p().value();
    const double threshold = std::pow(2.0, 1.0 / pv) * t;

    const int workers = std::max(1, threads);
    std::vector<long> hits(static_cast<std::size_t>(workers), 0L);
    parallel_chunks(trials, workers, [&](long begin, long end, int slot) {
        long h = 0;
        for (long i = begin; i < end; ++i) {
            CounterRng rng = CounterRng(seed, kStreamLemma7).substream(static_cast<std::uint64_t>(i));
            bool all_small = true;
            for (int j = 0; j < n && all_small; ++j) {
                const Vector pj = sample_sphere(n, rng);
                all_small = gauge(tn.matrix() * pj, fixed_space) <= threshold;
            }
            if (all_small) ++h;
        }
        hits[static_cast<std::size_t>(slot)] = h;
    });
    long total = 0;
    for (long h : hits) total += h;

    Lemma7Report report;
    report.trials = trials;
    report.t = t;
    report.threshold = threshold;
    report.empirical = static_cast<double>(total) / static_cast<double>(trials);
    report.empirical_std_error =
        std::sqrt(report.empirical * (1.0 - report.empirical) / static_cast<double>(trials));

    report.volume = volume_mc(fixed_space, volume_samples,
                              CounterRng::word(seed, kStreamLemma7Volume, 0), threads);
    const double ball = euclidean_ball_volume(n);
    const double ratio = report.volume.mean / ball;
    report.bound = std::pow(threshold, static_cast<double>(n) * n) * std::pow(ratio, n);
    report.bound_std_error = std::pow(threshold, static_cast<double>(n) * n) * n *
                             std::pow(ratio, n - 1) * (report.volume.std_error / ball);

    report.vacuous = report.bound >= 1.0;
    if (report.vacuous) {
        report.within_bound = true;
    } else {
        const double sigma = std::sqrt(report.empirical_std_error * report.empirical_std_error +
                                       report.bound_std_error * report.bound_std_error);
        report.within_bound = report.empirical <= report.bound + 3.0 * sigma;
    }
    return report;
}

std::vector<ScalingRow> diameter_experiment(const std::vector<int>& n_values, PExponent p,
                                            int pairs_per_n, long budget, std::uint64_t seed,
                                            int restarts, int threads, int max_n) {
    if (pairs_per_n < 1) throw ValidationError("diameter_experiment: pairs_per_n must be >= 1");
    for (int n : n_values) {
        if (n < 1) throw ValidationError("diameter_experiment: n must be >= 1");
        if (n > max_n) {
            throw BudgetError("diameter_experiment: n = " + std::to_string(n) +
                              " exceeds the gauge budget cap " + std::to_string(max_n));
        }
    }
    const double pv = p.value();
    std::vector<ScalingRow> rows;
    for (int n : n_values) {
        for (int pair = 0; pair < pairs_per_n; ++pair) {
            const auto encode = [n, pair](int side) {
                return (static_cast<std::uint64_t>(n) << 32) |
                       (static_cast<std::uint64_t>(pair) << 2) | static_cast<std::uint64_t>(side);
            };
            const PNormedSpace x =
                random_gluskin_space({n, p, CounterRng::word(seed, kStreamDiameter, encode(0))});
            const PNormedSpace y =
                random_gluskin_space({n, p, CounterRng::word(seed, kStreamDiameter, encode(1))});
            const DistanceEstimate est = distance_estimate(
                x, y, budget, restarts, CounterRng::word(seed, kStreamDiameter, encode(2)), {},
                threads);

            ScalingRow row;
            row.n = n;
            row.p = pv;
            row.pair_index = pair;
            row.distance_upper = est.upper_bound;
            row.reference = std::pow(static_cast<double>(n), 2.0 / pv - 1.0);
            row.envelope_lb_a = envelope_sandwich_check(
                                    x, PExponent(1.0), 200,
                                    CounterRng::word(seed, kStreamDiameter, encode(3)))
                                    .max_ratio;
            row.envelope_lb_b = envelope_sandwich_check(
                                    y, PExponent(1.0), 200,
                                    CounterRng::word(seed, kStreamDiameter, encode(3) + (1ULL << 48)))
                                    .max_ratio;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace pconvex
