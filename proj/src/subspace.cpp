#include "altproj/subspace.hpp"

#include <algorithm>

namespace altproj {

namespace {

Matrix compute_intersection_basis(const std::vector<Matrix>& projectors, Index d,
                                  const TolerancePolicy& tol) {
    Matrix avg = Matrix::Zero(d, d);
    for (const auto& p : projectors) avg += p;
    avg /= static_cast<double>(projectors.size());
    // exact symmetrization; B B^T is symmetric only up to rounding
    avg = 0.5 * (avg + avg.transpose()).eval();
    return principal_eigenspace(avg, 1.0, tol);
}

// Basis of M_j ∩ M^⊥: the complement of B_j^T Q_M inside the coordinates of M_j.
Matrix reduced_basis(const Matrix& bj, const Matrix& qm) {
    if (bj.cols() == 0 || qm.cols() == 0) return bj;
    const Matrix coords = bj.transpose() * qm;  // k_j x m, orthonormal columns since M ⊆ M_j
    if (coords.cols() >= coords.rows()) return Matrix(bj.rows(), 0);
    Eigen::HouseholderQR<Matrix> qr(coords);
    const Index kj = coords.rows();
    const Matrix q = qr.householderQ() * Matrix::Identity(kj, kj);
    return bj * q.rightCols(kj - coords.cols());
}

}  // namespace

Subspace Subspace::from_spanning(const Matrix& spanning_columns, std::string name,
                                 const TolerancePolicy& tol) {
    return Subspace(orthonormalize_columns(spanning_columns, tol), std::move(name));
}

Subspace Subspace::from_orthonormal(Matrix basis, std::string name, const TolerancePolicy& tol) {
    require_finite(basis, "Subspace");
    if (basis.rows() < 1) throw InvalidArgument("Subspace: ambient dimension must be >= 1");
    if (basis.cols() > basis.rows()) throw InvalidArgument("Subspace: more basis vectors than d");
    if (orthonormality_defect(basis) > tol.check_tol)
        throw InvalidArgument("Subspace: basis columns are not orthonormal");
    return Subspace(std::move(basis), std::move(name));
}

Subspace Subspace::zero(Index ambient_dim, std::string name) {
    if (ambient_dim < 1) throw InvalidArgument("Subspace: ambient dimension must be >= 1");
    return Subspace(Matrix(ambient_dim, 0), std::move(name));
}

Subspace Subspace::full(Index ambient_dim, std::string name) {
    if (ambient_dim < 1) throw InvalidArgument("Subspace: ambient dimension must be >= 1");
    return Subspace(Matrix::Identity(ambient_dim, ambient_dim), std::move(name));
}

double Subspace::max_distance(const Matrix& vectors) const {
    if (vectors.rows() != ambient_dim()) throw InvalidArgument("max_distance: dimension mismatch");
    if (vectors.cols() == 0) return 0.0;
    const Matrix residual = vectors - basis_ * (basis_.transpose() * vectors);
    return residual.colwise().norm().maxCoeff();
}

Projector::Projector(const Subspace& s) : matrix_(s.basis() * s.basis().transpose()) {
    matrix_ = 0.5 * (matrix_ + matrix_.transpose()).eval();
}

double Projector::projector_defect() const {
    return std::max(operator_norm(matrix_ * matrix_ - matrix_),
                    operator_norm(matrix_.transpose() - matrix_));
}

Projector projector(const Subspace& s) { return Projector(s); }

Subspace orthogonal_complement(const Subspace& s) {
    return Subspace::from_orthonormal(complement_basis(s.basis()),
                                      s.name().empty() ? std::string{} : s.name() + "^perp");
}

SubspaceSystem::SubspaceSystem(std::vector<Subspace> subspaces, TolerancePolicy tol)
    : subspaces_(std::move(subspaces)), tol_(tol) {
    tol_.validate();
    if (subspaces_.size() < 2) throw InvalidArgument("SubspaceSystem: need at least 2 subspaces");
    ambient_dim_ = subspaces_.front().ambient_dim();
    for (const auto& s : subspaces_)
        if (s.ambient_dim() != ambient_dim_)
            throw InvalidArgument("SubspaceSystem: subspaces live in different ambient spaces");

    projectors_.reserve(subspaces_.size());
    for (const auto& s : subspaces_) projectors_.push_back(Projector(s).matrix());

    intersection_ = Subspace::from_orthonormal(
        compute_intersection_basis(projectors_, ambient_dim_, tol_), "M", tol_);
    intersection_projector_ = Projector(intersection_).matrix();

    for (const auto& s : subspaces_) {
        if (s.max_distance(intersection_.basis()) > tol_.check_tol)
            throw NumericalFailure("SubspaceSystem: intersection basis leaves subspace " + s.name());
    }

    reduced_.reserve(subspaces_.size());
    for (const auto& s : subspaces_) {
        Matrix rb = reduced_basis(s.basis(), intersection_.basis());
        if (rb.cols() > 0 && operator_norm(intersection_.basis().transpose() * rb) > tol_.check_tol)
            throw NumericalFailure("SubspaceSystem: reduced subspace not orthogonal to M");
        reduced_.push_back(Subspace::from_orthonormal(
            std::move(rb), s.name().empty() ? std::string{} : s.name() + "~", tol_));
    }
}

Matrix SubspaceSystem::average_projector() const {
    Matrix avg = Matrix::Zero(ambient_dim_, ambient_dim_);
    for (const auto& p : projectors_) avg += p;
    return avg / static_cast<double>(projectors_.size());
}

bool SubspaceSystem::degenerate() const {
    return std::all_of(reduced_.begin(), reduced_.end(),
                       [](const Subspace& s) { return s.is_zero(); });
}

Subspace intersection(const SubspaceSystem& system) { return system.intersection(); }

SubspaceSystem reduce_mod_intersection(const SubspaceSystem& system) {
    SubspaceSystem reduced(system.reduced(), system.tolerance());
    if (!reduced.intersection().is_zero())
        throw NumericalFailure("reduce_mod_intersection: reduced system has nontrivial intersection");
    return reduced;
}

}  // namespace altproj
