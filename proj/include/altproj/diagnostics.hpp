#pragma once

#include "altproj/angles.hpp"
#include "altproj/dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace altproj {

/// One measured-vs-bound comparison. For series, margin = min_n (bound_n - measured_n).
struct BoundEntry {
    std::string name;
    std::vector<double> measured;
    std::vector<double> bound;
    double margin = 0.0;
    bool satisfied = false;
    std::string note;
};

struct BoundReport {
    std::vector<BoundEntry> entries;
    bool degenerate = false;

    [[nodiscard]] const BoundEntry* find(const std::string& name) const;
    [[nodiscard]] bool all_satisfied() const;
};

struct DichotomyVerdict {
    double c = 0.0;
    double kappa = 0.0;
    double cyclic_error_norm = 0.0;  // |T - P_M|
    double min_modulus = 0.0;        // gamma(I - T)
    InclinationEstimate inclination;
    std::string verdict = "QUC";
    double margin = 0.0;  // 1 - c
    bool near_asc = false;
    bool consistent = false;  // c < 1, |T - P_M| < 1, gamma > 0 hold together
    std::string note;
};

/// Margin below which a verdict is flagged as near the ASC boundary.
inline constexpr double near_asc_margin = 1e-3;

/// Build an entry from series; satisfied = margin >= -tol.
BoundEntry make_entry(std::string name, std::vector<double> measured, std::vector<double> bound,
                      double tol);

/// max_n | |(P_2 P_1)^n - P_M| - c^{2n-1} |, reported as a (negated) margin. N = 2 only.
BoundEntry kw_check(const SubspaceSystem& system, std::size_t n_max);

/// |T^n - P_M| <= (1 - ((1 - c)/(4N))^2)^{n/2}. Rejects degenerate systems.
BoundEntry cor_main_check(const SubspaceSystem& system, std::size_t n_max);

/// |T^n - P_M| <= c_{1N}^{n-1} c_{12}^n ... c_{N-1,N}^n with reduced Dixmier numbers.
BoundEntry dehu_check(const SubspaceSystem& system, std::size_t n_max);

/// c against 1 - (1/(N-1)) prod (1 - sqrt((c_j+1)/2))^2 ("estimC") and against
/// 1 - prod (1 - c_j)^2 / ((N-1) 4^{N-1}) ("estimC2").
std::vector<BoundEntry> estimc_check(const SubspaceSystem& system);

/// |T - P_M| <= sqrt(1 - l^2/N^2) with l = 1 - sqrt(kappa).
BoundEntry eq_norm_check(const SubspaceSystem& system);

/// l^2/(2N^2) <= gamma(T - I) <= (2^N - 1) l, lower side with l = 1 - sqrt(kappa),
/// upper side with the inclination estimate (an upper bound on l).
std::vector<BoundEntry> eq_qua_check(const SubspaceSystem& system, const InclinationEstimate& incl);

/// |P_{i_k} ... P_{i_1} - P_M| <= sqrt(1 - l^2/k^2) over covering index lists.
BoundEntry remark_check(const SubspaceSystem& system,
                        const std::vector<std::vector<std::size_t>>& index_lists);

/// Cyclic, reversed, doubled and seeded random covering lists of length N..2N.
std::vector<std::vector<std::size_t>> covering_index_lists(std::size_t n, std::size_t random_count,
                                                           std::uint64_t seed);

DichotomyVerdict dichotomy_report(const SubspaceSystem& system, const InclinationBudget& budget = {});

/// Every applicable entry. Degenerate systems get a partial report.
BoundReport bound_report(const SubspaceSystem& system, std::size_t n_max,
                         const InclinationBudget& budget = {});

}  // namespace altproj
