#include "pconvex/norms.hpp"

#include "pconvex/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace pconvex {

namespace {
constexpr double kAxiomTol = 1e-9;
constexpr double kConditionCap = 1e8;
constexpr std::uint64_t kStreamAxioms = 0x11;
constexpr std::uint64_t kStreamSandwich = 0x12;
constexpr std::uint64_t kStreamDistance = 0x13;
}  // namespace

PNormedSpace::PNormedSpace(PBody body, double tol)
    : body_(std::move(body)),
      tol_(tol),
      table_(std::make_shared<const SubsetTable>(body_.generators(), tol)) {}

double gauge(const Vector& x, const PNormedSpace& space) {
    return space.table().gauge(x, space.p()).first;
}

namespace {

Vector random_vector(CounterRng& rng, int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    return v;
}

}  // namespace

AxiomReport check_pnorm_axioms(const PNormedSpace& space, long samples, std::uint64_t seed) {
    if (samples < 1) throw ValidationError("check_pnorm_axioms: samples must be >= 1");
    const int n = space.dim();
    const double pv = space.p().value();
    AxiomReport report;
    report.samples = samples;

    for (long i = 0; i < samples; ++i) {
        CounterRng rng = CounterRng(seed, kStreamAxioms).substream(static_cast<std::uint64_t>(i));
        const Vector x = random_vector(rng, n);
        const Vector y = random_vector(rng, n);
        double a = -10.0 + 20.0 * rng.uniform01();
        if (std::abs(a) < 0.01) a = a < 0 ? -0.01 : 0.01;

        const double gx = gauge(x, space);
        const double gy = gauge(y, space);
        const double gxy = gauge(x + y, space);
        const double gax = gauge(a * x, space);

        if (!(gx > 0.0) || !(gy > 0.0)) ++report.positivity_violations;

        const double hom_err = std::abs(gax - std::abs(a) * gx) / (std::abs(a) * gx);
        report.worst_homogeneity = std::max(report.worst_homogeneity, hom_err);
        if (hom_err > kAxiomTol) ++report.homogeneity_violations;

        const double excess = std::pow(gxy, pv) - std::pow(gx, pv) - std::pow(gy, pv);
        report.worst_triangle = std::max(report.worst_triangle, excess);
        if (excess > kAxiomTol) ++report.triangle_violations;
    }
    return report;
}

double operator_norm(const LinearMap& t, const PNormedSpace& from, const PNormedSpace& to) {
    if (t.dim() != from.dim() || from.dim() != to.dim()) {
        throw ValidationError("operator_norm: dimension mismatch");
    }
    // gauge(-v) == gauge(v), so the unsigned half-set suffices.
    double best = 0.0;
    for (const Vector& g : from.body().generators().points()) {
        best = std::max(best, gauge(t.matrix() * g, to));
    }
    return best;
}

namespace {

struct Objective {
    const PNormedSpace& x;
    const PNormedSpace& y;

    /// Product |T|_{X->Y} * |T^-1|_{Y->X} after |det|=1 rescaling;
    /// +inf for singular or ill-conditioned candidates.
    double operator()(const Matrix& m) const {
        const int n = static_cast<int>(m.rows());
        if (!m.allFinite()) return std::numeric_limits<double>::infinity();
        Eigen::PartialPivLU<Matrix> lu(m);
        const double det = std::abs(lu.determinant());
        if (!std::isfinite(det) || det < 1e-300) return std::numeric_limits<double>::infinity();
        const Matrix t = m / std::pow(det, 1.0 / n);
        Eigen::JacobiSVD<Matrix> svd(t);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        if (!(smin > 0.0) || smax / smin > kConditionCap) {
            return std::numeric_limits<double>::infinity();
        }
        const Matrix tinv = Eigen::PartialPivLU<Matrix>(t).inverse();
        const double a = operator_norm(LinearMap(t), x, y);
        const double b = operator_norm(LinearMap(tinv), y, x);
        return a * b;
    }
};

struct StartResult {
    double product = std::numeric_limits<double>::infinity();
    Matrix map;
    long evals = 0;
};

/// Nelder-Mead on the flattened matrix entries. Tracks the best point
/// ever evaluated, not just the final simplex.
StartResult nelder_mead(const Objective& obj, const Matrix& start, long max_evals) {
    const int n = static_cast<int>(start.rows());
    const int dim = n * n;
    using Point = Eigen::VectorXd;
    auto unflatten = [n](const Point& v) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
        return m;
    };
    auto flatten = [n](const Matrix& m) {
        Point v(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v(i * n + j) = m(i, j);
        return v;
    };

    StartResult best;
    best.map = start;
    auto eval = [&](const Point& v) {
        const Matrix m = unflatten(v);
        const double f = obj(m);
        ++best.evals;
        if (f < best.product) {
            best.product = f;
            best.map = m;
        }
        return f;
    };

    std::vector<Point> simplex;
    std::vector<double> fv;
    simplex.reserve(static_cast<std::size_t>(dim) + 1);
    simplex.push_back(flatten(start));
    fv.push_back(eval(simplex[0]));
    for (int i = 0; i < dim && best.evals < max_evals; ++i) {
        Point v = simplex[0];
        v(i) += 0.25;
        simplex.push_back(v);
        fv.push_back(eval(v));
    }
    if (simplex.size() != static_cast<std::size_t>(dim) + 1) return best;

    std::vector<int> order(simplex.size());
    while (best.evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fv[static_cast<std::size_t>(a)] < fv[static_cast<std::size_t>(b)]; });
        {
            std::vector<Point> s2(simplex.size());
            std::vector<double> f2(fv.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                s2[i] = simplex[static_cast<std::size_t>(order[i])];
                f2[i] = fv[static_cast<std::size_t>(order[i])];
            }
            simplex = std::move(s2);
            fv = std::move(f2);
        }

        double diameter = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            diameter = std::max(diameter, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
        }
        if (diameter < 1e-8) break;

        Point centroid = Point::Zero(dim);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i];
        centroid /= static_cast<double>(dim);

        const Point& worst = simplex.back();
        const Point reflected = centroid + (centroid - worst);
        const double fr = eval(reflected);

        if (fr < fv[0]) {
            const Point expanded = centroid + 2.0 * (centroid - worst);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex.back() = expanded;
                fv.back() = fe;
            } else {
                simplex.back() = reflected;
                fv.back() = fr;
            }
        } else if (fr < fv[fv.size() - 2]) {
            simplex.back() = reflected;
            fv.back() = fr;
        } else {
            const bool outside = fr < fv.back();
            Point contracted;
            if (outside) {
                contracted = centroid + 0.5 * (reflected - centroid);
            } else {
                contracted = centroid - 0.5 * (centroid - worst);
            }
            const double fc = eval(contracted);
            if (fc < std::min(fr, fv.back())) {
                simplex.back() = contracted;
                fv.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
                    fv[i] = eval(simplex[i]);
                    if (best.evals >= max_evals) break;
                }
            }
        }
    }
    return best;
}

std::vector<Matrix> permutation_matrices(int n) {
    std::vector<Matrix> out;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Matrix m = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) m(perm[static_cast<std::size_t>(i)], i) = 1.0;
        out.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

DistanceEstimate distance_estimate(const PNormedSpace& x, const PNormedSpace& y, long budget,
                                   int restarts, std::uint64_t seed,
                                   const std::vector<LinearMap>& initial_maps, int threads) {
    if (x.dim() != y.dim()) throw ValidationError("distance_estimate: dimension mismatch");
    if (budget < 1) throw ValidationError("distance_estimate: budget must be >= 1");
    if (restarts < 0) throw ValidationError("distance_estimate: restarts must be >= 0");
    const int n = x.dim();

    // Deterministic restarts first: identity, then all axis permutations
    // (n <= 5 keeps n! manageable; larger n is past the gauge budget
    // anyway), then caller-provided maps, then random ones.
    std::vector<Matrix> starts;
    starts.push_back(Matrix::Identity(n, n));
    if (n <= 5) {
        for (Matrix& m : permutation_matrices(n)) {
            if (!m.isIdentity(0.0)) starts.push_back(std::move(m));
        }
    }
    for (const LinearMap& m : initial_maps) {
        starts.push_back(m.normalized_det().matrix());
    }
    for (int r = 0; r < restarts; ++r) {
        CounterRng rng = CounterRng(seed, kStreamDistance).substream(static_cast<std::uint64_t>(r));
        Matrix m(n, n);
        double det = 0.0;
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
            det = std::abs(m.determinant());
        } while (!(det > 1e-12));
        starts.push_back(m / std::pow(det, 1.0 / n));
    }

    const long per_start = std::max<long>(2L * n * n + 6, budget / static_cast<long>(starts.size()));
    const Objective obj{x, y};

    std::vector<StartResult> results(starts.size());
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(starts.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < starts.size(); ++i) {
            results[i] = nelder_mead(obj, starts[i], per_start);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < starts.size(); i = next.fetch_add(1)) {
                    results[i] = nelder_mead(obj, starts[i], per_start);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    long total_evals = 0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        total_evals += results[i].evals;
        if (results[i].product < results[best_i].product) best_i = i;
    }
    if (!std::isfinite(results[best_i].product)) {
        throw NumericalError("distance_estimate: every candidate map was singular");
    }

    const Matrix best = results[best_i].map;
    const double det = std::abs(best.determinant());
    return DistanceEstimate{std::max(1.0, results[best_i].product),
                            LinearMap(best / std::pow(det, 1.0 / n)), total_evals, seed};
}

PNormedSpace q_envelope(const PNormedSpace& space, PExponent q) {
    // q == p is the identity envelope; only q < p is rejected.
    if (q.value() < space.p().value()) {
        throw ValidationError("q_envelope requires q >= p");
    }
    return PNormedSpace(PBody(space.body().generators(), q, space.tol()), space.tol());
}

SandwichReport envelope_sandwich_check(const PNormedSpace& space, PExponent q, long samples,
                                       std::uint64_t seed) {
    if (samples < 1) throw ValidationError("envelope_sandwich_check: samples must be >= 1");
    const PNormedSpace env = q_envelope(space, q);
    const int n = space.dim();
    const double pv = space.p().value();
    const double qv = q.value();

    SandwichReport report;
    report.samples = samples;
    report.bound = std::pow(static_cast<double>(n), 1.0 / pv - 1.0 / qv);

    for (long i = 0; i < samples; ++i) {
        CounterRng rng = CounterRng(seed, kStreamSandwich).substream(static_cast<std::uint64_t>(i));
        const Vector v = random_vector(rng, n);
        const double gx = gauge(v, space);
        const double gq = gauge(v, env);
        const bool lower_ok = gq <= gx * (1.0 + kAxiomTol);
        const bool upper_ok = gx <= report.bound * gq * (1.0 + kAxiomTol);
        if (!lower_ok || !upper_ok) ++report.violations;
        if (gq > 0.0) report.max_ratio = std::max(report.max_ratio, gx / gq);
    }
    return report;
}

}  // namespace pconvex
