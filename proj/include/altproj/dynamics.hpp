#pragma once

#include "altproj/subspace.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace altproj {

/// Sequence of projection indices. Indices are 0-based here; the CLI speaks 1-based.
class IndexSchedule {
public:
    enum class Kind { cyclic, random, explicit_list };

    static IndexSchedule cyclic(std::size_t n);
    /// Uniform random indices. With a coverage window w (w >= n), every run of w
    /// consecutive indices contains all n indices.
    static IndexSchedule random(std::size_t n, std::uint64_t seed,
                                std::optional<std::size_t> coverage_window = std::nullopt);
    /// Repeats `indices` cyclically.
    static IndexSchedule explicit_list(std::size_t n, std::vector<std::size_t> indices);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] std::size_t subspace_count() const { return n_; }
    [[nodiscard]] std::optional<std::size_t> coverage_window() const { return window_; }

    /// First `count` indices; deterministic for a given schedule.
    [[nodiscard]] std::vector<std::size_t> take(std::size_t count) const;

private:
    IndexSchedule(Kind kind, std::size_t n) : kind_(kind), n_(n) {}

    Kind kind_;
    std::size_t n_;
    std::uint64_t seed_ = 0;
    std::optional<std::size_t> window_;
    std::vector<std::size_t> list_;
};

/// Error series with bound curves evaluated at the same steps.
struct ConvergenceTrace {
    std::vector<std::size_t> steps;
    std::vector<double> errors;
    std::map<std::string, std::vector<double>> bounds;
};

/// T = P_N ... P_1 (P_1 applied first).
Matrix cyclic_operator(const SubspaceSystem& system);

/// P_{i_k} ... P_{i_1} with 0-based indices.
Matrix product_operator(const SubspaceSystem& system, const std::vector<std::size_t>& indices);

/// x_n = P_{i_n} x_{n-1}. Cyclic schedules record |x - P_M x0| after each
/// full pass (n_max passes); other schedules record after each step.
ConvergenceTrace iterate_vector(const SubspaceSystem& system, const Vector& x0,
                                const IndexSchedule& schedule, std::size_t n_max);

/// e_n = |T^n - P_M| for n = 1..n_max.
ConvergenceTrace operator_error_norms(const SubspaceSystem& system, std::size_t n_max);

/// gamma(I - T) = min over unit y in M^⊥ of |(I - T) y|. Throws UndefinedQuantity when M = R^d.
double reduced_min_modulus(const SubspaceSystem& system);

/// |P_{i_k} ... P_{i_1} - P_M| for a nonempty 0-based index list.
double random_product_norm(const SubspaceSystem& system, const std::vector<std::size_t>& indices);

/// Positive null sequence a_1, a_2, ...
class SlowSequence {
public:
    /// a_n = (n + 2)^{-p}
    static SlowSequence power(double p);
    /// a_n = 1 / log(n + 2)
    static SlowSequence log_decay();
    /// a_n = values[n - 1]; shorter than the horizon is an error at evaluation.
    static SlowSequence explicit_values(std::vector<double> values);

    [[nodiscard]] double operator()(std::size_t n) const;
    /// a_1..a_horizon; throws if a value is negative, non-finite or the tail increases.
    [[nodiscard]] std::vector<double> values(std::size_t horizon) const;

private:
    enum class Kind { power, log, list };
    SlowSequence(Kind kind, double p) : kind_(kind), p_(p) {}
    Kind kind_;
    double p_ = 0.0;
    std::vector<double> list_;
};

struct SlowProbeResult {
    Vector x;
    ConvergenceTrace trace;   // measured |T^n x - P_M x| alongside the target a_n
    bool success = false;
    std::size_t achieved_horizon = 0;
    double norm = 0.0;
    double norm_budget = 0.0;
};

/// Builds x = sum_k alpha_k u_k on a two-subspace block system where
/// |T^n u_k| = cos^{2n}(theta_k), so that |T^n x - P_M x| >= a_n for n up to the
/// horizon while |x| stays within sup a_n + slack.
SlowProbeResult slow_vector_probe(const std::vector<double>& angles, const SlowSequence& seq,
                                  std::size_t horizon, double slack = 0.1);

}  // namespace altproj
