#pragma once

#include "altproj/numerics.hpp"

#include <string>
#include <vector>

namespace altproj {

/// A linear subspace of R^d carried by an orthonormal basis (d x k, k may be 0).
class Subspace {
public:
    /// Orthonormalizes an arbitrary spanning set given as columns.
    static Subspace from_spanning(const Matrix& spanning_columns, std::string name = {},
                                  const TolerancePolicy& tol = {});
    /// Takes an already orthonormal basis; rejects it if |B^T B - I| > check_tol.
    static Subspace from_orthonormal(Matrix basis, std::string name = {},
                                     const TolerancePolicy& tol = {});
    static Subspace zero(Index ambient_dim, std::string name = {});
    static Subspace full(Index ambient_dim, std::string name = {});

    [[nodiscard]] Index ambient_dim() const { return basis_.rows(); }
    [[nodiscard]] Index dim() const { return basis_.cols(); }
    [[nodiscard]] bool is_zero() const { return basis_.cols() == 0; }
    [[nodiscard]] const Matrix& basis() const { return basis_; }
    [[nodiscard]] const std::string& name() const { return name_; }

    /// Distance from each column of `vectors` to this subspace, maximized.
    [[nodiscard]] double max_distance(const Matrix& vectors) const;

private:
    Subspace(Matrix basis, std::string name) : basis_(std::move(basis)), name_(std::move(name)) {}

    Matrix basis_;
    std::string name_;
};

/// Orthogonal projector B B^T; symmetric and idempotent.
class Projector {
public:
    explicit Projector(const Subspace& s);

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] Index ambient_dim() const { return matrix_.rows(); }

    /// max(|P^2 - P|, |P^T - P|)
    [[nodiscard]] double projector_defect() const;

private:
    Matrix matrix_;
};

Projector projector(const Subspace& s);

/// Orthogonal complement, dimension exactly d - k.
Subspace orthogonal_complement(const Subspace& s);

/// N >= 2 subspaces of a common R^d. The intersection M, the reduced
/// subspaces M_j ∩ M^⊥ and every projector are computed at construction.
class SubspaceSystem {
public:
    explicit SubspaceSystem(std::vector<Subspace> subspaces, TolerancePolicy tol = {});

    [[nodiscard]] Index ambient_dim() const { return ambient_dim_; }
    [[nodiscard]] std::size_t size() const { return subspaces_.size(); }
    [[nodiscard]] const std::vector<Subspace>& subspaces() const { return subspaces_; }
    [[nodiscard]] const Subspace& subspace(std::size_t j) const { return subspaces_.at(j); }
    [[nodiscard]] const Subspace& intersection() const { return intersection_; }
    [[nodiscard]] const std::vector<Subspace>& reduced() const { return reduced_; }
    [[nodiscard]] const TolerancePolicy& tolerance() const { return tol_; }

    [[nodiscard]] const Matrix& projector_matrix(std::size_t j) const { return projectors_.at(j); }
    [[nodiscard]] const Matrix& intersection_projector() const { return intersection_projector_; }
    /// (P_1 + ... + P_N) / N
    [[nodiscard]] Matrix average_projector() const;

    /// Every reduced subspace is {0}, i.e. M_j = M for all j.
    [[nodiscard]] bool degenerate() const;

private:
    Index ambient_dim_ = 0;
    std::vector<Subspace> subspaces_;
    TolerancePolicy tol_;
    std::vector<Matrix> projectors_;
    Subspace intersection_ = Subspace::zero(1);
    Matrix intersection_projector_;
    std::vector<Subspace> reduced_;
};

/// Eigenvalue-1 eigenspace of the average projector.
Subspace intersection(const SubspaceSystem& system);

/// The system (M_1 ∩ M^⊥, ..., M_N ∩ M^⊥); its own intersection is {0}.
SubspaceSystem reduce_mod_intersection(const SubspaceSystem& system);

}  // namespace altproj
