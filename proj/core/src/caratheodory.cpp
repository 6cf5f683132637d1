#include "pconvex/caratheodory.hpp"

#include "pconvex/combination.hpp"
#include "pconvex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pconvex {

namespace {

double pow_p(double x, double p) { return std::pow(x, p); }

double clamped_weight(const std::vector<double>& lambdas, double p) {
    double w = 0.0;
    for (double l : lambdas) {
        if (l > kCoeffClamp) w += pow_p(l, p);
    }
    return w;
}

/// Candidate solution for one drop index: coefficients over the
/// remaining vectors, already clamped nonnegative, plus its weight.
struct DropCandidate {
    bool feasible = false;
    std::vector<double> lambdas;  // aligned with the remaining vectors
    double weight = std::numeric_limits<double>::infinity();
};

DropCandidate solve_drop(const std::vector<Vector>& remaining, const Vector& m_value, double p,
                         double tol) {
    DropCandidate cand;
    const int n = static_cast<int>(m_value.size());
    const int k = static_cast<int>(remaining.size());
    Matrix a(n, k);
    for (int j = 0; j < k; ++j) a.col(j) = remaining[static_cast<std::size_t>(j)];

    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol);
    const int rank = static_cast<int>(svd.rank());

    const double res_threshold = (m_value.norm() > 0.0) ? tol * m_value.norm() : tol;

    if (rank == k) {
        Eigen::VectorXd c = svd.solve(m_value);
        if ((a * c - m_value).norm() >= res_threshold) return cand;
        cand.lambdas.assign(c.data(), c.data() + c.size());
        for (double& l : cand.lambdas) {
            if (l < -tol) return cand;  // infeasible, keep feasible=false
            if (l < kCoeffClamp) l = 0.0;
        }
        cand.weight = clamped_weight(cand.lambdas, p);
        cand.feasible = true;
        return cand;
    }

    if (rank != k - 1) return cand;  // cannot happen with n-1 independent points

    // Rank-deficient candidate: the solution set is a line c0 + t*d.
    Eigen::VectorXd c0 = svd.solve(m_value);  // minimum-norm least squares
    if ((a * c0 - m_value).norm() >= res_threshold) return cand;
    Eigen::VectorXd d = svd.matrixV().col(k - 1);  // kernel direction

    // Feasibility interval for c0 + t*d >= 0.
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        if (d(i) > 1e-14) {
            t_lo = std::max(t_lo, -c0(i) / d(i));
        } else if (d(i) < -1e-14) {
            t_hi = std::min(t_hi, -c0(i) / d(i));
        } else if (c0(i) < -tol) {
            return cand;
        }
    }
    if (t_lo > t_hi + tol) return cand;
    if (t_lo > t_hi) {
        const double mid = 0.5 * (t_lo + t_hi);
        t_lo = mid;
        t_hi = mid;
    }

    // Weight along the segment is concave, so the minimum is attained at
    // an endpoint; unbounded directions blow the weight up and are never
    // minimal.
    auto eval_at = [&](double t) {
        std::vector<double> l(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            double v = c0(i) + t * d(i);
            if (v < 0.0) v = 0.0;  // binding constraints land exactly at 0
            l[static_cast<std::size_t>(i)] = v;
        }
        return l;
    };
    double best_w = std::numeric_limits<double>::infinity();
    std::vector<double> best_l;
    for (double t : {t_lo, t_hi}) {
        if (!std::isfinite(t)) continue;
        auto l = eval_at(t);
        const double w = clamped_weight(l, p);
        if (w < best_w) {
            best_w = w;
            best_l = std::move(l);
        }
    }
    if (best_l.empty()) return cand;
    cand.lambdas = std::move(best_l);
    cand.weight = best_w;
    cand.feasible = true;
    return cand;
}

}  // namespace

std::vector<double> lemma4_reduce(const std::vector<Vector>& points, const Vector& q,
                                  const std::vector<double>& lambdas, PExponent p, double tol) {
    const int n = static_cast<int>(points.size());
    if (lambdas.size() != static_cast<std::size_t>(n) + 1) {
        throw ValidationError("lemma4_reduce: expected n+1 coefficients");
    }
    for (double l : lambdas) {
        if (l < 0.0 || !std::isfinite(l)) throw ValidationError("lemma4_reduce: negative coefficient");
    }
    const double pv = p.value();
    double weight = 0.0;
    for (double l : lambdas) {
        if (l > 0.0) weight += pow_p(l, pv);
    }
    if (weight > 1.0 + tol) {
        throw ValidationError("lemma4_reduce: weight exceeds 1");
    }

    // Already supported on <= n of the n+1 points: nothing to drop.
    if (std::any_of(lambdas.begin(), lambdas.end(), [](double l) { return l == 0.0; })) {
        return lambdas;
    }

    Vector m_value = Vector::Zero(q.size());
    for (int i = 0; i < n; ++i) m_value += lambdas[static_cast<std::size_t>(i)] * points[static_cast<std::size_t>(i)];
    m_value += lambdas[static_cast<std::size_t>(n)] * q;

    // Candidate j = 0 drops q; candidate j >= 1 drops points[j-1]. The
    // first feasible candidate wins; a strict weight<=1 pass runs before
    // accepting anything that only fits within the loose tolerance, so
    // the caller's weight-monotonicity contract survives round-off.
    std::vector<DropCandidate> cands(static_cast<std::size_t>(n) + 1);
    std::vector<bool> solved(static_cast<std::size_t>(n) + 1, false);

    auto candidate = [&](int j) -> const DropCandidate& {
        if (!solved[static_cast<std::size_t>(j)]) {
            std::vector<Vector> remaining;
            remaining.reserve(static_cast<std::size_t>(n));
            if (j == 0) {
                remaining = points;
            } else {
                for (int i = 0; i < n; ++i) {
                    if (i != j - 1) remaining.push_back(points[static_cast<std::size_t>(i)]);
                }
                remaining.push_back(q);
            }
            cands[static_cast<std::size_t>(j)] = solve_drop(remaining, m_value, pv, tol);
            solved[static_cast<std::size_t>(j)] = true;
        }
        return cands[static_cast<std::size_t>(j)];
    };

    auto to_full = [&](int j, const std::vector<double>& l) {
        std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
        if (j == 0) {
            for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)];
        } else {
            int pos = 0;
            for (int i = 0; i < n; ++i) {
                if (i != j - 1) out[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(pos++)];
            }
            out[static_cast<std::size_t>(n)] = l[static_cast<std::size_t>(pos)];
        }
        return out;
    };

    for (double slack : {kCoeffClamp, tol}) {
        for (int j = 0; j <= n; ++j) {
            const DropCandidate& c = candidate(j);
            if (c.feasible && c.weight <= 1.0 + slack) {
                return to_full(j, c.lambdas);
            }
        }
    }
    throw NumericalError("lemma4_reduce: no drop candidate found (precondition violated?)");
}

namespace {

struct SupportEntry {
    Term term;
    Vector point;  // sign * generator
};

std::vector<SupportEntry> collect_support(const PCombination& comb, const GeneratorSet& gens) {
    std::vector<SupportEntry> entries;
    for (const Term& t : comb.terms()) {
        if (t.index >= gens.size()) {
            throw ValidationError("combination references generator index out of range");
        }
        if (t.lambda > 0.0) {
            entries.push_back({t, t.sign * gens.point(t.index)});
        }
    }
    return entries;
}

/// One Theorem-1 pass: reorders the support so a maximal independent
/// subset comes first, rescales the leading m+1 coefficients to weight
/// one, reduces them with lemma4_reduce in span coordinates and drops
/// the zeroed entries. Returns false when the stop condition
/// support <= independent_count + slack is reached.
bool reduction_pass(std::vector<SupportEntry>& entries, PExponent p, double tol, int stop_slack) {
    std::vector<Vector> pts;
    pts.reserve(entries.size());
    for (const auto& e : entries) pts.push_back(e.point);
    const std::vector<int> ind = independent_subset(pts, tol);
    const int m = static_cast<int>(ind.size());
    if (static_cast<int>(entries.size()) <= m + stop_slack) return false;

    std::vector<SupportEntry> reordered;
    reordered.reserve(entries.size());
    std::vector<bool> taken(entries.size(), false);
    for (int i : ind) {
        reordered.push_back(entries[static_cast<std::size_t>(i)]);
        taken[static_cast<std::size_t>(i)] = true;
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!taken[i]) reordered.push_back(entries[i]);
    }
    entries = std::move(reordered);

    const double pv = p.value();
    const int head = m + 1;
    double s_p = 0.0;
    for (int i = 0; i < head; ++i) s_p += pow_p(entries[static_cast<std::size_t>(i)].term.lambda, pv);
    const double s = std::pow(s_p, 1.0 / pv);

    std::vector<Vector> basis_pts;
    basis_pts.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) basis_pts.push_back(entries[static_cast<std::size_t>(i)].point);
    const Matrix u = orthonormal_basis(basis_pts);

    std::vector<Vector> coord_points;
    coord_points.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) coord_points.push_back(u.transpose() * entries[static_cast<std::size_t>(i)].point);
    const Vector coord_q = u.transpose() * entries[static_cast<std::size_t>(m)].point;

    std::vector<double> scaled(static_cast<std::size_t>(head));
    for (int i = 0; i < head; ++i) scaled[static_cast<std::size_t>(i)] = entries[static_cast<std::size_t>(i)].term.lambda / s;

    const std::vector<double> reduced = lemma4_reduce(coord_points, coord_q, scaled, p, tol);

    for (int i = 0; i < head; ++i) {
        entries[static_cast<std::size_t>(i)].term.lambda = s * reduced[static_cast<std::size_t>(i)];
    }
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [](const SupportEntry& e) { return e.term.lambda <= 0.0; }),
                  entries.end());
    return true;
}

ReductionResult run_reduction(const PCombination& comb, const GeneratorSet& gens, PExponent p,
                              double tol, int stop_slack) {
    const double weight_before = combination_weight(comb, p);
    if (weight_before > 1.0 + tol) {
        throw ValidationError("reduction input has weight > 1");
    }
    std::vector<SupportEntry> entries = collect_support(comb, gens);

    int iterations = 0;
    const int max_passes = static_cast<int>(entries.size()) + 4;
    while (reduction_pass(entries, p, tol, stop_slack)) {
        if (++iterations > max_passes) {
            throw NumericalError("reduction did not terminate");
        }
    }

    std::vector<Term> terms;
    terms.reserve(entries.size());
    for (const auto& e : entries) terms.push_back(e.term);
    PCombination out(comb.dim(), std::move(terms));
    const double weight_after = combination_weight(out, p);
    return ReductionResult{std::move(out), iterations, weight_before, weight_after};
}

}  // namespace

ReductionResult caratheodory_reduce(const PCombination& comb, const GeneratorSet& gens,
                                    PExponent p, double tol) {
    return run_reduction(comb, gens, p, tol, /*stop_slack=*/0);
}

ReductionResult caratheodory_zero(const PCombination& comb, const GeneratorSet& gens, PExponent p,
                                  double tol) {
    const Vector value = eval_combination(comb, gens);
    if (value.norm() > tol) {
        throw ValidationError("caratheodory_zero: input value is not ~ 0");
    }
    const double w = combination_weight(comb, p);
    if (w <= 0.0) {
        throw ValidationError("caratheodory_zero: weight must be positive");
    }
    // Nonzero representations of 0 are dependent, so the support can
    // never drop below (independent count) + 1.
    return run_reduction(comb, gens, p, tol, /*stop_slack=*/1);
}

namespace {

double binomial_guard(int a, int b) {
    double c = 1.0;
    for (int i = 1; i <= b; ++i) {
        c *= static_cast<double>(a - b + i) / static_cast<double>(i);
        if (c > 1e15) return c;
    }
    return c;
}

}  // namespace

SubsetTable::SubsetTable(const GeneratorSet& gens, double tol) : gens_(gens), tol_(tol) {
    const int n = gens_.dim();
    const int m = gens_.size();
    if (m < n) {
        throw ValidationError("generator set cannot span: fewer generators than dimensions");
    }
    if (binomial_guard(2 * m, n) > 1e6) {
        throw BudgetError("gauge enumeration budget exceeded: C(2m, n) > 10^6");
    }

    Matrix a(n, n);
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;

    // Lexicographic enumeration of all size-n index subsets.
    while (true) {
        for (int j = 0; j < n; ++j) a.col(j) = gens_.point(idx[static_cast<std::size_t>(j)]);
        Eigen::ColPivHouseholderQR<Matrix> qr(a);
        qr.setThreshold(tol);
        if (qr.rank() == n) {
            entries_.push_back(Entry{idx, Eigen::PartialPivLU<Matrix>(a)});
        }
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - n + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (entries_.empty()) {
        throw ValidationError("generators do not span the ambient space");
    }
}

std::pair<double, PCombination> SubsetTable::gauge(const Vector& x, PExponent p) const {
    const int n = gens_.dim();
    if (x.size() != n) throw ValidationError("gauge: vector dimension mismatch");
    if (!x.allFinite()) throw ValidationError("gauge: non-finite vector");
    if (x.norm() == 0.0) {
        return {0.0, PCombination::empty(n)};
    }
    const double pv = p.value();

    double best_w = std::numeric_limits<double>::infinity();
    const Entry* best_entry = nullptr;
    Eigen::VectorXd best_c;
    Eigen::VectorXd c(n);
    for (const Entry& e : entries_) {
        c = e.lu.solve(x);
        double w = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = std::abs(c(i));
            if (a > kCoeffClamp) w += pow_p(a, pv);
        }
        if (w < best_w) {
            best_w = w;
            best_entry = &e;
            best_c = c;
        }
    }
    const double value = std::pow(best_w, 1.0 / pv);
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(best_c(i));
        if (a > kCoeffClamp) {
            terms.push_back(Term{best_entry->indices[static_cast<std::size_t>(i)],
                                 best_c(i) > 0.0 ? 1 : -1, a});
        }
    }
    return {value, PCombination(n, std::move(terms))};
}

std::pair<double, PCombination> gauge_bruteforce(const Vector& x, const PBody& body, double tol) {
    SubsetTable table(body.generators(), tol);
    return table.gauge(x, body.p());
}

std::pair<bool, std::optional<PCombination>> membership(const Vector& x, const PBody& body,
                                                        double tol) {
    auto [value, witness] = gauge_bruteforce(x, body, tol);
    if (value <= 1.0 + tol) {
        return {true, std::move(witness)};
    }
    return {false, std::nullopt};
}

}  // namespace pconvex
