#include "pconvex/types.hpp"

#include "pconvex/linalg.hpp"

#include <cmath>

namespace pconvex {

PExponent::PExponent(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0 || value > 1.0) {
        throw ValidationError("exponent p must lie in (0, 1], got " + std::to_string(value));
    }
}

GeneratorSet::GeneratorSet(int dim, std::vector<Vector> points)
    : dim_(dim), points_(std::move(points)) {
    if (dim_ < 1) {
        throw ValidationError("generator set dimension must be >= 1");
    }
    if (points_.empty()) {
        throw ValidationError("generator set must contain at least one point");
    }
    for (const Vector& v : points_) {
        if (v.size() != dim_) {
            throw ValidationError("generator dimension mismatch");
        }
        if (!v.allFinite()) {
            throw ValidationError("generator has non-finite entries");
        }
        if (v.norm() == 0.0) {
            throw ValidationError("zero generator is not allowed");
        }
    }
}

PCombination::PCombination(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
    if (dim_ < 1) {
        throw ValidationError("combination dimension must be >= 1");
    }
    for (Term& t : terms_) {
        if (t.sign != 1 && t.sign != -1) {
            throw ValidationError("term sign must be +1 or -1");
        }
        if (!std::isfinite(t.lambda)) {
            throw ValidationError("term coefficient must be finite");
        }
        if (t.lambda < 0.0) {
            if (t.lambda >= -kCoeffClamp) {
                t.lambda = 0.0;  // clamp solver round-off
            } else {
                throw ValidationError("negative coefficient in combination");
            }
        }
        if (t.index < 0) {
            throw ValidationError("negative generator index");
        }
    }
}

int PCombination::support_size() const {
    int k = 0;
    for (const Term& t : terms_) {
        if (t.lambda > 0.0) ++k;
    }
    return k;
}

PBody::PBody(GeneratorSet generators, PExponent p, double tol)
    : generators_(std::move(generators)), p_(p) {
    const auto idx = independent_subset(generators_.points(), tol);
    if (static_cast<int>(idx.size()) != generators_.dim()) {
        throw ValidationError("generators do not span the ambient space (rank " +
                              std::to_string(idx.size()) + " < " +
                              std::to_string(generators_.dim()) + ")");
    }
}

LinearMap::LinearMap(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
        throw ValidationError("linear map must be a square matrix");
    }
    if (!matrix_.allFinite()) {
        throw ValidationError("linear map has non-finite entries");
    }
}

double LinearMap::determinant() const {
    return matrix_.determinant();
}

double LinearMap::condition_number() const {
    Eigen::JacobiSVD<Matrix> svd(matrix_);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

LinearMap LinearMap::inverse() const {
    Eigen::PartialPivLU<Matrix> lu(matrix_);
    const double det = lu.determinant();
    if (!std::isfinite(det) || det == 0.0) {
        throw NumericalError("linear map is singular");
    }
    return LinearMap(lu.inverse());
}

LinearMap LinearMap::normalized_det() const {
    const int n = dim();
    const double det = std::abs(determinant());
    if (!std::isfinite(det) || det < 1e-300) {
        throw NumericalError("cannot normalize map with |det| ~ 0");
    }
    return LinearMap(matrix_ / std::pow(det, 1.0 / n));
}

}  // namespace pconvex
