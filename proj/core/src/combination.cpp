#include "pconvex/combination.hpp"

#include <algorithm>
#include <cmath>

namespace pconvex {

Vector eval_combination(const PCombination& comb, const GeneratorSet& gens) {
    if (comb.dim() != gens.dim()) {
        throw ValidationError("combination/generator dimension mismatch");
    }
    Vector out = Vector::Zero(gens.dim());
    for (const Term& t : comb.terms()) {
        if (t.index >= gens.size()) {
            throw ValidationError("combination references generator index " +
                                  std::to_string(t.index) + " out of range");
        }
        out += (t.sign * t.lambda) * gens.point(t.index);
    }
    return out;
}

double combination_weight(const PCombination& comb, PExponent p) {
    double w = 0.0;
    for (const Term& t : comb.terms()) {
        if (t.lambda > 0.0) w += std::pow(t.lambda, p.value());
    }
    return w;
}

PCombination split_to_unit_weight(const PCombination& comb, PExponent p) {
    const double pv = p.value();
    const double weight = combination_weight(comb, p);
    if (weight > 1.0 + kCoeffClamp) {
        throw ValidationError("split_to_unit_weight: weight exceeds 1");
    }
    if (weight <= 0.0) {
        throw ValidationError("split_to_unit_weight: all coefficients are zero");
    }
    if (std::abs(weight - 1.0) <= kCoeffClamp) {
        return comb;
    }
    if (pv == 1.0) {
        // Splitting preserves sum(lambda) when p = 1.
        throw ValidationError("split_to_unit_weight: weight < 1 cannot be repaired for p = 1");
    }

    // Largest coefficient, first on ties.
    std::size_t split_at = 0;
    for (std::size_t i = 1; i < comb.terms().size(); ++i) {
        if (comb.terms()[i].lambda > comb.terms()[split_at].lambda) split_at = i;
    }
    const Term head = comb.terms()[split_at];
    const double head_wp = std::pow(head.lambda, pv);
    const double rest = weight - head_wp;

    // Minimal k with k^(1-p) * lambda_1^p + rest >= 1.
    long k = static_cast<long>(std::ceil(std::pow((1.0 - rest) / head_wp, 1.0 / (1.0 - pv))));
    k = std::max<long>(k, 1);
    while (std::pow(static_cast<double>(k), 1.0 - pv) * head_wp + rest < 1.0) ++k;
    while (k > 1 && std::pow(static_cast<double>(k - 1), 1.0 - pv) * head_wp + rest >= 1.0) --k;
    if (k > 1000000) {
        throw BudgetError("split_to_unit_weight: split into " + std::to_string(k) +
                          " parts exceeds the term budget");
    }

    // Bisection in the split-off mass mu = (1 - t) * lambda_1 rather
    // than in t itself: near t = 1 the weight is ~mu^p, so t has a
    // resolution cliff while mu keeps uniform relative precision.
    // g(mu) = (lambda_1 - mu)^p + (k-1)^(1-p) mu^p + rest grows from the
    // original weight <= 1 at mu = 0 to >= 1 at mu = (1 - 1/k) lambda_1.
    const double km1 = static_cast<double>(k - 1);
    auto g = [&](double mu) {
        return std::pow(head.lambda - mu, pv) + std::pow(km1, 1.0 - pv) * std::pow(mu, pv) + rest;
    };
    double lo = 0.0;
    double hi = (1.0 - 1.0 / static_cast<double>(k)) * head.lambda;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) >= 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double mu = (std::abs(g(hi) - 1.0) < std::abs(g(lo) - 1.0)) ? hi : lo;

    std::vector<Term> terms = comb.terms();
    terms[split_at].lambda = head.lambda - mu;
    const double part = mu / km1;
    for (long i = 0; i < k - 1; ++i) {
        terms.push_back(Term{head.index, head.sign, part});
    }
    return PCombination(comb.dim(), std::move(terms));
}

}  // namespace pconvex
