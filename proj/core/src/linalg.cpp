#include "pconvex/linalg.hpp"

#include <cmath>

namespace pconvex {

std::vector<int> independent_subset(const std::vector<Vector>& points, double tol) {
    std::vector<int> selected;
    if (points.empty()) return selected;
    const int n = static_cast<int>(points.front().size());

    // Eliminated pivot columns; pivots_[k] is normalized so that its
    // entry at pivot_rows_[k] is 1 and earlier pivot rows are 0.
    std::vector<Vector> pivots;
    std::vector<int> pivot_rows;
    std::vector<bool> row_used(static_cast<std::size_t>(n), false);

    for (int j = 0; j < static_cast<int>(points.size()); ++j) {
        const double scale = points[static_cast<std::size_t>(j)].norm();
        if (scale == 0.0) continue;
        Vector v = points[static_cast<std::size_t>(j)] / scale;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            v -= v(pivot_rows[k]) * pivots[k];
        }
        int best_row = -1;
        double best_abs = tol;
        for (int r = 0; r < n; ++r) {
            if (row_used[static_cast<std::size_t>(r)]) continue;
            const double a = std::abs(v(r));
            if (a > best_abs) {
                best_abs = a;
                best_row = r;
            }
        }
        if (best_row < 0) continue;
        pivots.push_back(v / v(best_row));
        pivot_rows.push_back(best_row);
        row_used[static_cast<std::size_t>(best_row)] = true;
        selected.push_back(j);
        if (static_cast<int>(selected.size()) == n) break;
    }
    return selected;
}

std::optional<Eigen::VectorXd> solve_representation(const std::vector<Vector>& points,
                                                    const Vector& x, double tol) {
    if (points.empty()) {
        if (x.norm() < tol) return Eigen::VectorXd(0);
        return std::nullopt;
    }
    const int n = static_cast<int>(x.size());
    const int k = static_cast<int>(points.size());
    Matrix a(n, k);
    for (int j = 0; j < k; ++j) a.col(j) = points[static_cast<std::size_t>(j)];

    Eigen::VectorXd c = a.colPivHouseholderQr().solve(x);
    const double xn = x.norm();
    const double residual = (a * c - x).norm();
    const double threshold = (xn > 0.0) ? tol * xn : tol;
    if (residual >= threshold) return std::nullopt;
    return c;
}

Matrix orthonormal_basis(const std::vector<Vector>& points) {
    if (points.empty()) throw ValidationError("orthonormal_basis of empty set");
    const int n = static_cast<int>(points.front().size());
    const int k = static_cast<int>(points.size());
    Matrix a(n, k);
    for (int j = 0; j < k; ++j) a.col(j) = points[static_cast<std::size_t>(j)];

    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(n, k);
    const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

}  // namespace pconvex
