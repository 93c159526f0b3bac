#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace altproj {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Bad shapes, bad parameters, malformed input.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A post-condition failed to hold within tolerance.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested quantity has no meaning for this input (e.g. M = H).
class UndefinedQuantity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct TolerancePolicy {
    /// Relative rank threshold; unset means max(rows, cols) * machine epsilon.
    std::optional<double> rank_tol;
    double eig_tol = 1e-8;
    double check_tol = 1e-8;

    void validate() const;

    /// Absolute cutoff below which a singular value of a rows x cols input
    /// with largest singular value sigma_max counts as zero.
    [[nodiscard]] double rank_cutoff(Index rows, Index cols, double sigma_max) const;
};

void require_finite(const Matrix& a, const char* what);

/// Orthonormal basis (d x k) of the column span; k is the numerical rank.
Matrix orthonormalize_columns(const Matrix& columns, const TolerancePolicy& tol = {});

/// Same, from a list of vectors of length `dim`. An empty list yields d x 0.
Matrix orthonormalize(std::span<const Vector> vectors, Index dim, const TolerancePolicy& tol = {});

/// Largest singular value; 0 for empty matrices.
double operator_norm(const Matrix& a);

struct RestrictedMinSingular {
    double value;       // +inf when the domain is empty
    bool empty_domain;
};

/// min over unit y in span(basis) of |A y|, i.e. sigma_min(A * basis).
RestrictedMinSingular restricted_min_singular(const Matrix& a, const Matrix& basis);

/// Orthonormal basis of the eigenvectors of symmetric `s` whose eigenvalue lies
/// within tol.eig_tol of `target`.
Matrix principal_eigenspace(const Matrix& s, double target, const TolerancePolicy& tol = {});

/// Orthonormal basis of the orthogonal complement of the span of an
/// orthonormal basis (full QR, so the dimension is exact).
Matrix complement_basis(const Matrix& orthonormal_basis);

/// |B^T B - I|_2 for a basis with orthonormal columns.
double orthonormality_defect(const Matrix& basis);

}  // namespace altproj
