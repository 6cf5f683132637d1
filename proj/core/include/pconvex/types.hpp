#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pconvex {

/// Errors are split by how the CLI maps them to exit codes:
/// ValidationError -> 2, BudgetError -> 3, NumericalError -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default relative tolerance for every rank / residual decision.
/// p-power arithmetic amplifies noise near lambda = 0, so this is kept
/// well above machine epsilon.
inline constexpr double kDefaultTol = 1e-10;

/// Coefficients in [-kCoeffClamp, 0) coming out of linear solves are
/// clamped to 0 and treated as nonnegative.
inline constexpr double kCoeffClamp = 1e-12;

/// Exponent p of a p-convex body. Valid range is (0, 1]; p = 1 only
/// arises for convex envelopes.
class PExponent {
public:
    explicit PExponent(double value);

    double value() const { return value_; }

private:
    double value_;
};

/// Half-set of generators of a symmetric body: the effective generator
/// set is {+points[i], -points[i]}.
class GeneratorSet {
public:
    GeneratorSet(int dim, std::vector<Vector> points);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<Vector>& points() const { return points_; }
    const Vector& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }

private:
    int dim_;
    std::vector<Vector> points_;
};

/// One signed term of a combination: sign * lambda * generators[index].
struct Term {
    int index = 0;
    int sign = 1;  // +1 or -1
    double lambda = 0.0;
};

/// Signed nonnegative combination of generators. The p-weight
/// sum(lambda_i^p) is the quantity Caratheodory reduction controls.
class PCombination {
public:
    PCombination(int dim, std::vector<Term> terms);

    static PCombination empty(int dim) { return PCombination(dim, {}); }

    int dim() const { return dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    int support_size() const;

private:
    int dim_;
    std::vector<Term> terms_;
};

/// Symmetric p-convex body given by finitely many generators. The
/// generators must span R^n, otherwise the gauge is not finite-valued.
class PBody {
public:
    PBody(GeneratorSet generators, PExponent p, double tol = kDefaultTol);

    const GeneratorSet& generators() const { return generators_; }
    PExponent p() const { return p_; }
    int dim() const { return generators_.dim(); }

private:
    GeneratorSet generators_;
    PExponent p_;
};

/// Invertible n x n real matrix acting between p-normed spaces.
class LinearMap {
public:
    explicit LinearMap(Matrix matrix);

    static LinearMap identity(int n) { return LinearMap(Matrix::Identity(n, n)); }

    const Matrix& matrix() const { return matrix_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

    double determinant() const;
    double condition_number() const;
    /// Throws NumericalError when the matrix is numerically singular.
    LinearMap inverse() const;
    /// Rescales so |det| = 1; throws NumericalError when det ~ 0.
    LinearMap normalized_det() const;

private:
    Matrix matrix_;
};

}  // namespace pconvex
