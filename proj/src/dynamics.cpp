#include "altproj/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace altproj {

// ---------------------------------------------------------------- schedules

IndexSchedule IndexSchedule::cyclic(std::size_t n) {
    if (n < 1) throw InvalidArgument("IndexSchedule: need at least one subspace");
    return IndexSchedule(Kind::cyclic, n);
}

IndexSchedule IndexSchedule::random(std::size_t n, std::uint64_t seed,
                                    std::optional<std::size_t> coverage_window) {
    if (n < 1) throw InvalidArgument("IndexSchedule: need at least one subspace");
    if (coverage_window && *coverage_window < n)
        throw InvalidArgument("IndexSchedule: coverage window must be >= number of subspaces");
    IndexSchedule s(Kind::random, n);
    s.seed_ = seed;
    s.window_ = coverage_window;
    return s;
}

IndexSchedule IndexSchedule::explicit_list(std::size_t n, std::vector<std::size_t> indices) {
    if (indices.empty()) throw InvalidArgument("IndexSchedule: explicit list is empty");
    for (auto i : indices)
        if (i >= n) throw InvalidArgument("IndexSchedule: index out of range");
    IndexSchedule s(Kind::explicit_list, n);
    s.list_ = std::move(indices);
    return s;
}

std::vector<std::size_t> IndexSchedule::take(std::size_t count) const {
    std::vector<std::size_t> out;
    out.reserve(count);
    switch (kind_) {
    case Kind::cyclic:
        for (std::size_t t = 0; t < count; ++t) out.push_back(t % n_);
        break;
    case Kind::explicit_list:
        for (std::size_t t = 0; t < count; ++t) out.push_back(list_[t % list_.size()]);
        break;
    case Kind::random: {
        std::mt19937_64 rng(seed_);
        if (!window_) {
            std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
            for (std::size_t t = 0; t < count; ++t) out.push_back(pick(rng));
            break;
        }
        // deadline[i]: last position by which index i must occur again.
        // A choice is admissible when the remaining deadlines stay
        // schedulable one per step (earliest-deadline-first feasibility).
        const std::size_t w = *window_;
        std::vector<std::size_t> deadline(n_, w - 1);
        auto feasible = [&](std::size_t next_t) {
            std::vector<std::size_t> sorted = deadline;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < sorted.size(); ++i)
                if (sorted[i] < next_t + i) return false;
            return true;
        };
        for (std::size_t t = 0; t < count; ++t) {
            std::vector<std::size_t> admissible;
            for (std::size_t i = 0; i < n_; ++i) {
                const std::size_t saved = deadline[i];
                deadline[i] = t + w;
                if (feasible(t + 1)) admissible.push_back(i);
                deadline[i] = saved;
            }
            std::uniform_int_distribution<std::size_t> pick(0, admissible.size() - 1);
            const std::size_t chosen = admissible[pick(rng)];
            deadline[chosen] = t + w;
            out.push_back(chosen);
        }
        break;
    }
    }
    return out;
}

// ---------------------------------------------------------------- operators

Matrix product_operator(const SubspaceSystem& system, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw InvalidArgument("product_operator: empty index list");
    Matrix prod = Matrix::Identity(system.ambient_dim(), system.ambient_dim());
    for (auto i : indices) {
        if (i >= system.size()) throw InvalidArgument("product_operator: index out of range");
        prod = system.projector_matrix(i) * prod;
    }
    return prod;
}

Matrix cyclic_operator(const SubspaceSystem& system) {
    std::vector<std::size_t> idx(system.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return product_operator(system, idx);
}

ConvergenceTrace iterate_vector(const SubspaceSystem& system, const Vector& x0,
                                const IndexSchedule& schedule, std::size_t n_max) {
    if (x0.size() != system.ambient_dim())
        throw InvalidArgument("iterate_vector: x0 has the wrong dimension");
    if (schedule.subspace_count() != system.size())
        throw InvalidArgument("iterate_vector: schedule built for a different number of subspaces");
    require_finite(x0, "iterate_vector");

    const Vector limit = system.intersection_projector() * x0;
    ConvergenceTrace trace;
    Vector x = x0;
    const bool per_pass = schedule.kind() == IndexSchedule::Kind::cyclic;
    const std::size_t stride = per_pass ? system.size() : 1;
    const auto indices = schedule.take(n_max * stride);
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t s = 0; s < stride; ++s)
            x = system.projector_matrix(indices[(n - 1) * stride + s]) * x;
        trace.steps.push_back(n);
        trace.errors.push_back((x - limit).norm());
    }
    return trace;
}

ConvergenceTrace operator_error_norms(const SubspaceSystem& system, std::size_t n_max) {
    const Matrix t = cyclic_operator(system);
    const Matrix& pm = system.intersection_projector();
    // T^n - P_M = (T - P_M)^n since T P_M = P_M T = P_M; powers of the
    // difference avoid cancellation once the error is tiny.
    const Matrix a = t - pm;
    const double tol = system.tolerance().check_tol;

    const auto reduced = system.reduced();
    Matrix q = Matrix::Identity(system.ambient_dim(), system.ambient_dim());
    for (const auto& r : reduced) q = Projector(r).matrix() * q;

    ConvergenceTrace trace;
    Matrix power = a;
    Matrix t_power = t;
    Matrix q_power = q;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n > 1) power = a * power;
        trace.steps.push_back(n);
        trace.errors.push_back(operator_norm(power));
        if (n <= 2) {
            if (n == 2) {
                t_power = t * t_power;
                q_power = q * q_power;
            }
            if (operator_norm(power - (t_power - pm)) > tol ||
                operator_norm(power - q_power) > tol)
                throw NumericalFailure("operator_error_norms: reduced-system cross-check failed");
        }
    }
    return trace;
}

double reduced_min_modulus(const SubspaceSystem& system) {
    const Matrix perp = complement_basis(system.intersection().basis());
    if (perp.cols() == 0) throw UndefinedQuantity("reduced_min_modulus: M^⊥ is {0}");
    const Index d = system.ambient_dim();
    return restricted_min_singular(Matrix::Identity(d, d) - cyclic_operator(system), perp).value;
}

double random_product_norm(const SubspaceSystem& system, const std::vector<std::size_t>& indices) {
    return operator_norm(product_operator(system, indices) - system.intersection_projector());
}

// ---------------------------------------------------------------- slow probe

SlowSequence SlowSequence::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidArgument("SlowSequence: power must be > 0");
    return SlowSequence(Kind::power, p);
}

SlowSequence SlowSequence::log_decay() { return SlowSequence(Kind::log, 0.0); }

SlowSequence SlowSequence::explicit_values(std::vector<double> values) {
    SlowSequence s(Kind::list, 0.0);
    s.list_ = std::move(values);
    return s;
}

double SlowSequence::operator()(std::size_t n) const {
    if (n < 1) throw InvalidArgument("SlowSequence: indices start at 1");
    switch (kind_) {
    case Kind::power: return std::pow(static_cast<double>(n) + 2.0, -p_);
    case Kind::log: return 1.0 / std::log(static_cast<double>(n) + 2.0);
    case Kind::list:
        if (n > list_.size()) throw InvalidArgument("SlowSequence: list shorter than horizon");
        return list_[n - 1];
    }
    return 0.0;
}

std::vector<double> SlowSequence::values(std::size_t horizon) const {
    std::vector<double> out;
    for (std::size_t n = 1; n <= horizon; ++n) {
        const double a = (*this)(n);
        if (!std::isfinite(a) || a < 0.0) throw InvalidArgument("SlowSequence: invalid value");
        if (!out.empty() && a > out.back())
            throw InvalidArgument("SlowSequence: sequence increases at n = " + std::to_string(n));
        out.push_back(a);
    }
    return out;
}

SlowProbeResult slow_vector_probe(const std::vector<double>& angles, const SlowSequence& seq,
                                  std::size_t horizon, double slack) {
    if (horizon < 1) throw InvalidArgument("slow_vector_probe: horizon must be >= 1");
    if (angles.empty()) throw InvalidArgument("slow_vector_probe: need at least one block");
    if (!(slack > 0.0)) throw InvalidArgument("slow_vector_probe: slack must be > 0");
    for (double th : angles)
        if (!(th > 0.0 && th <= M_PI / 2)) throw InvalidArgument("slow_vector_probe: angle outside (0, pi/2]");

    const auto a = seq.values(horizon);
    const auto k = static_cast<Index>(angles.size());
    const Index d = 2 * k;

    Matrix line1 = Matrix::Zero(d, k);
    Matrix line2 = Matrix::Zero(d, k);
    for (Index b = 0; b < k; ++b) {
        line1(2 * b, b) = 1.0;
        line2(2 * b, b) = std::cos(angles[b]);
        line2(2 * b + 1, b) = std::sin(angles[b]);
    }
    const SubspaceSystem system({Subspace::from_orthonormal(line1, "M1"),
                                 Subspace::from_orthonormal(line2, "M2")});

    // Slowest block first.
    std::vector<Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index l, Index r) { return std::cos(angles[l]) > std::cos(angles[r]); });

    SlowProbeResult result;
    result.norm_budget = *std::max_element(a.begin(), a.end()) + slack;
    Vector alpha = Vector::Zero(k);
    std::size_t next_block = 0;
    std::size_t achieved = 0;
    constexpr double margin = 1.0 + 1e-9;

    const bool trivial = std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
    if (trivial) {
        alpha(order[0]) = 1.0;
        achieved = horizon;
    } else {
        for (std::size_t n = 1; n <= horizon; ++n) {
            double e2 = 0.0;
            for (Index b = 0; b < k; ++b)
                e2 += alpha(b) * alpha(b) * std::pow(std::cos(angles[b]), 4.0 * static_cast<double>(n));
            const double target = a[n - 1] * margin;
            if (std::sqrt(e2) < target) {
                if (next_block == order.size()) break;
                const Index b = order[next_block];
                const double decay = std::pow(std::cos(angles[b]), 2.0 * static_cast<double>(n));
                const double coeff = std::sqrt(target * target - e2) / decay;
                Vector trial = alpha;
                trial(b) = coeff;
                if (!std::isfinite(coeff) || trial.norm() > result.norm_budget) break;
                alpha = trial;
                ++next_block;
            }
            achieved = n;
        }
    }

    // u_k is the unit vector spanning the M2 line of block k.
    result.x = line2 * alpha;
    result.norm = result.x.norm();
    result.trace = iterate_vector(system, result.x, IndexSchedule::cyclic(2), horizon);
    result.trace.bounds["a_n"] = a;
    for (std::size_t n = 1; n <= achieved; ++n)
        if (result.trace.errors[n - 1] < a[n - 1]) {
            achieved = n - 1;
            break;
        }
    result.achieved_horizon = achieved;
    result.success = achieved == horizon;
    return result;
}

}  // namespace altproj
