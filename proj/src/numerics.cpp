#include "altproj/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace altproj {

void TolerancePolicy::validate() const {
    auto in_range = [](double v) { return v > 0.0 && v < 1.0; };
    if (rank_tol && !in_range(*rank_tol)) throw InvalidArgument("rank_tol must lie in (0, 1)");
    if (!in_range(eig_tol)) throw InvalidArgument("eig_tol must lie in (0, 1)");
    if (!in_range(check_tol)) throw InvalidArgument("check_tol must lie in (0, 1)");
}

double TolerancePolicy::rank_cutoff(Index rows, Index cols, double sigma_max) const {
    const double rel = rank_tol.value_or(static_cast<double>(std::max(rows, cols)) *
                                         std::numeric_limits<double>::epsilon());
    return rel * sigma_max;
}

void require_finite(const Matrix& a, const char* what) {
    if (!a.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

Matrix orthonormalize_columns(const Matrix& columns, const TolerancePolicy& tol) {
    require_finite(columns, "orthonormalize");
    const Index d = columns.rows();
    if (d < 1) throw InvalidArgument("orthonormalize: ambient dimension must be >= 1");
    if (columns.cols() == 0) return Matrix(d, 0);

    Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double cutoff = tol.rank_cutoff(d, columns.cols(), s(0));
    Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff && s(rank) > 0.0) ++rank;
    return svd.matrixU().leftCols(rank);
}

Matrix orthonormalize(std::span<const Vector> vectors, Index dim, const TolerancePolicy& tol) {
    if (dim < 1) throw InvalidArgument("orthonormalize: ambient dimension must be >= 1");
    Matrix stacked(dim, static_cast<Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != dim)
            throw InvalidArgument("orthonormalize: vector " + std::to_string(j) + " has length " +
                                  std::to_string(vectors[j].size()) + ", expected " +
                                  std::to_string(dim));
        stacked.col(static_cast<Index>(j)) = vectors[j];
    }
    return orthonormalize_columns(stacked, tol);
}

double operator_norm(const Matrix& a) {
    require_finite(a, "operator_norm");
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

RestrictedMinSingular restricted_min_singular(const Matrix& a, const Matrix& basis) {
    if (a.cols() != basis.rows())
        throw InvalidArgument("restricted_min_singular: incompatible dimensions");
    if (basis.cols() == 0)
        return {std::numeric_limits<double>::infinity(), true};
    const Matrix ab = a * basis;
    if (ab.rows() < ab.cols()) return {0.0, false};  // nontrivial kernel inside span(basis)
    Eigen::JacobiSVD<Matrix> svd(ab);
    const auto& s = svd.singularValues();
    return {s(s.size() - 1), false};
}

Matrix principal_eigenspace(const Matrix& s, double target, const TolerancePolicy& tol) {
    require_finite(s, "principal_eigenspace");
    if (s.rows() != s.cols()) throw InvalidArgument("principal_eigenspace: matrix is not square");
    if (s.size() > 0 && operator_norm(s - s.transpose()) > tol.check_tol)
        throw InvalidArgument("principal_eigenspace: matrix is not symmetric");
    if (s.rows() == 0) return Matrix(0, 0);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
    const auto& values = eig.eigenvalues();
    Matrix basis(s.rows(), 0);
    std::vector<Index> keep;
    for (Index i = 0; i < values.size(); ++i)
        if (std::abs(values(i) - target) <= tol.eig_tol) keep.push_back(i);
    basis.resize(s.rows(), static_cast<Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        basis.col(static_cast<Index>(j)) = eig.eigenvectors().col(keep[j]);
    return basis;
}

Matrix complement_basis(const Matrix& orthonormal_basis) {
    const Index d = orthonormal_basis.rows();
    const Index k = orthonormal_basis.cols();
    if (k == 0) return Matrix::Identity(d, d);
    if (k >= d) return Matrix(d, 0);
    Eigen::HouseholderQR<Matrix> qr(orthonormal_basis);
    const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    return q.rightCols(d - k);
}

double orthonormality_defect(const Matrix& basis) {
    if (basis.cols() == 0) return 0.0;
    return operator_norm(basis.transpose() * basis - Matrix::Identity(basis.cols(), basis.cols()));
}

}  // namespace altproj
