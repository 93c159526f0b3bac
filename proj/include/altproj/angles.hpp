#pragma once

#include "altproj/subspace.hpp"

#include <cstdint>
#include <vector>

namespace altproj {

// Angle parameters of a system (M_1, ..., M_N) with intersection M.
//
// When every M_j equals M the defining suprema range over an empty set. In that
// case c = 0 and kappa = 1/N, and the report is flagged `degenerate`. The same
// convention applies to c0 / kappa0 when every M_j is {0}.

struct InclinationEstimate {
    double lower = 0.0;     // 1 - sqrt(kappa)
    double upper = 1.0;     // min(1, sqrt(2N (1 - sqrt(kappa))))
    double estimate = 0.0;  // best objective value found; always >= the true inclination
    bool certified = false;
};

struct InclinationBudget {
    int starts = 32;
    int iterations = 400;
    double initial_step = 0.5;
    double smoothing_power = 16.0;
    std::uint64_t seed = 1;
};

struct AngleReport {
    double c0 = 0.0;
    double c = 0.0;
    double kappa0 = 0.0;
    double kappa = 0.0;
    Matrix pairwise_dixmier_reduced;
    std::vector<double> prefix_friedrichs;  // c_2, ..., c_N
    InclinationEstimate inclination;
    bool inclination_defined = true;  // false when M = R^d
    bool degenerate = false;
};

/// Cartesian product C = M_1 x ... x M_N and diagonal D inside R^{Nd}.
struct ProductSpacePair {
    Subspace c;
    Subspace d;
    Subspace cd;  // diag(M)
    /// Largest deviation between the closed-form projectors onto C, D, C∩D
    /// and the generic B B^T construction.
    double projector_formula_deviation = 0.0;
};

/// kappa = |(P_1 + ... + P_N)/N - P_M|.
double configuration_constant(const SubspaceSystem& system);

/// c = N/(N-1) kappa - 1/(N-1); throws NumericalFailure outside [-tol, 1+tol].
double friedrichs_number(const SubspaceSystem& system);

struct DixmierNumbers {
    double c0;
    double kappa0;
};
/// kappa0 = |P_D P_C|^2 in the product space, c0 by the affine relation.
DixmierNumbers dixmier_number(const SubspaceSystem& system);

ProductSpacePair product_space(const SubspaceSystem& system);

/// |P_2 P_1 - P_{S1 ∩ S2}|, cross-checked against the two-subspace
/// configuration-constant formula.
double pairwise_friedrichs(const Subspace& s1, const Subspace& s2, const TolerancePolicy& tol = {});

/// Table of c0(M_i ∩ M^⊥, M_j ∩ M^⊥) = |Q_i Q_j|.
Matrix pairwise_dixmier_reduced(const SubspaceSystem& system);

/// c_j = c(M_1 ∩ ... ∩ M_{j-1}, M_j) for j = 2..N.
std::vector<double> prefix_friedrichs(const SubspaceSystem& system);

/// (1/N) |G(v_1, ..., v_N)| for unit v_j in M_j ∩ M^⊥.
double gramian_sample(const SubspaceSystem& system, const std::vector<Vector>& unit_vectors);

/// Multistart block-coordinate ascent on the Gramian sample; returns the best value.
double maximize_gramian(const SubspaceSystem& system, int starts, std::uint64_t seed);

/// max_j dist(y, M_j), the objective behind the inclination.
double inclination_objective(const SubspaceSystem& system, const Vector& y);

/// Multistart projected subgradient minimization of max_j dist(y, M_j) over
/// unit y in M^⊥. Throws UndefinedQuantity when M = R^d.
InclinationEstimate inclination(const SubspaceSystem& system, const InclinationBudget& budget = {});

/// Interval [1 - sqrt(kappa), min(1, sqrt(2N(1 - sqrt(kappa))))] bracketing the inclination.
InclinationEstimate inclination_bounds(double kappa, std::size_t n);

AngleReport angle_report(const SubspaceSystem& system, const InclinationBudget& budget = {});

}  // namespace altproj
