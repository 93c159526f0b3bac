#include "altproj/angles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace altproj {

namespace {

double affine_from_kappa(double kappa, std::size_t n) {
    const double nn = static_cast<double>(n);
    return nn / (nn - 1.0) * kappa - 1.0 / (nn - 1.0);
}

// Clamp a cosine-like quantity into [0, 1], tolerating check_tol of slack.
double clamp_unit(double value, double tol, const char* what) {
    if (value < -tol || value > 1.0 + tol)
        throw NumericalFailure(std::string(what) + " = " + std::to_string(value) +
                               " lies outside [0, 1]");
    return std::clamp(value, 0.0, 1.0);
}

Matrix kron_ones(std::size_t n, const Matrix& block, double scale) {
    const Index d = block.rows();
    const Index k = block.cols();
    const auto nn = static_cast<Index>(n);
    Matrix out(nn * d, nn * k);
    for (Index i = 0; i < nn; ++i)
        for (Index j = 0; j < nn; ++j) out.block(i * d, j * k, d, k) = scale * block;
    return out;
}

Matrix stacked_copies(std::size_t n, const Matrix& block, double scale) {
    const auto nn = static_cast<Index>(n);
    Matrix out(nn * block.rows(), block.cols());
    for (Index i = 0; i < nn; ++i) out.middleRows(i * block.rows(), block.rows()) = scale * block;
    return out;
}

Matrix block_diagonal_bases(const SubspaceSystem& system) {
    const Index d = system.ambient_dim();
    Index total = 0;
    for (const auto& s : system.subspaces()) total += s.dim();
    Matrix out = Matrix::Zero(static_cast<Index>(system.size()) * d, total);
    Index col = 0;
    for (std::size_t j = 0; j < system.size(); ++j) {
        const auto& b = system.subspace(j).basis();
        out.block(static_cast<Index>(j) * d, col, d, b.cols()) = b;
        col += b.cols();
    }
    return out;
}

Vector random_unit_in(const Matrix& basis, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector coords(basis.cols());
    do {
        for (Index i = 0; i < coords.size(); ++i) coords(i) = gauss(rng);
    } while (coords.norm() == 0.0);
    return basis * coords.normalized();
}

}  // namespace

double configuration_constant(const SubspaceSystem& system) {
    if (system.degenerate()) return 1.0 / static_cast<double>(system.size());
    return operator_norm(system.average_projector() - system.intersection_projector());
}

double friedrichs_number(const SubspaceSystem& system) {
    if (system.degenerate()) return 0.0;
    return clamp_unit(affine_from_kappa(configuration_constant(system), system.size()),
                      system.tolerance().check_tol, "Friedrichs number");
}

DixmierNumbers dixmier_number(const SubspaceSystem& system) {
    const auto n = system.size();
    const bool all_zero = std::all_of(system.subspaces().begin(), system.subspaces().end(),
                                      [](const Subspace& s) { return s.is_zero(); });
    if (all_zero) return {0.0, 1.0 / static_cast<double>(n)};

    // |P_D P_C| = |B_D^T B_C| with B_C block diagonal and B_D = (I, ..., I)/sqrt(N).
    const Matrix bc = block_diagonal_bases(system);
    const Matrix bd = stacked_copies(n, Matrix::Identity(system.ambient_dim(), system.ambient_dim()),
                                     1.0 / std::sqrt(static_cast<double>(n)));
    const double cos_cd = operator_norm(bd.transpose() * bc);
    const double kappa0 = cos_cd * cos_cd;
    const double c0 = clamp_unit(affine_from_kappa(kappa0, n), system.tolerance().check_tol,
                                 "Dixmier number");
    return {c0, kappa0};
}

ProductSpacePair product_space(const SubspaceSystem& system) {
    const auto n = system.size();
    const Index d = system.ambient_dim();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const auto& tol = system.tolerance();

    ProductSpacePair pair{
        Subspace::from_orthonormal(block_diagonal_bases(system), "C", tol),
        Subspace::from_orthonormal(stacked_copies(n, Matrix::Identity(d, d), inv_sqrt_n), "D", tol),
        Subspace::from_orthonormal(stacked_copies(n, system.intersection().basis(), inv_sqrt_n),
                                   "CD", tol),
        0.0};

    const auto nn = static_cast<Index>(n);
    Matrix pc = Matrix::Zero(nn * d, nn * d);
    for (std::size_t j = 0; j < n; ++j)
        pc.block(static_cast<Index>(j) * d, static_cast<Index>(j) * d, d, d) =
            system.projector_matrix(j);
    const double inv_n = 1.0 / static_cast<double>(n);
    const Matrix pd = kron_ones(n, Matrix::Identity(d, d), inv_n);
    const Matrix pcd = kron_ones(n, system.intersection_projector(), inv_n);

    pair.projector_formula_deviation =
        std::max({operator_norm(pc - Projector(pair.c).matrix()),
                  operator_norm(pd - Projector(pair.d).matrix()),
                  operator_norm(pcd - Projector(pair.cd).matrix())});
    if (pair.projector_formula_deviation > tol.check_tol)
        throw NumericalFailure("product_space: projector formulas disagree with B B^T");
    return pair;
}

double pairwise_friedrichs(const Subspace& s1, const Subspace& s2, const TolerancePolicy& tol) {
    const SubspaceSystem pair({s1, s2}, tol);
    if (pair.degenerate()) return 0.0;
    const double direct = operator_norm(pair.projector_matrix(1) * pair.projector_matrix(0) -
                                        pair.intersection_projector());
    const double via_kappa = 2.0 * configuration_constant(pair) - 1.0;
    if (std::abs(direct - via_kappa) > tol.check_tol)
        throw NumericalFailure("pairwise_friedrichs: product and average-projector routes disagree (" +
                               std::to_string(direct) + " vs " + std::to_string(via_kappa) + ")");
    return clamp_unit(direct, tol.check_tol, "pairwise Friedrichs number");
}

Matrix pairwise_dixmier_reduced(const SubspaceSystem& system) {
    const auto n = static_cast<Index>(system.size());
    Matrix table = Matrix::Zero(n, n);
    const auto& red = system.reduced();
    for (Index i = 0; i < n; ++i) {
        table(i, i) = red[i].is_zero() ? 0.0 : 1.0;
        for (Index j = i + 1; j < n; ++j) {
            const double v = operator_norm(red[i].basis().transpose() * red[j].basis());
            table(i, j) = table(j, i) = std::min(v, 1.0);
        }
    }
    return table;
}

std::vector<double> prefix_friedrichs(const SubspaceSystem& system) {
    std::vector<double> out;
    const auto& subs = system.subspaces();
    for (std::size_t j = 1; j < subs.size(); ++j) {
        if (j == 1) {
            out.push_back(pairwise_friedrichs(subs[0], subs[1], system.tolerance()));
            continue;
        }
        const SubspaceSystem prefix(std::vector<Subspace>(subs.begin(), subs.begin() + j),
                                    system.tolerance());
        out.push_back(pairwise_friedrichs(prefix.intersection(), subs[j], system.tolerance()));
    }
    return out;
}

double gramian_sample(const SubspaceSystem& system, const std::vector<Vector>& unit_vectors) {
    const auto n = system.size();
    if (unit_vectors.size() != n)
        throw InvalidArgument("gramian_sample: need exactly one vector per subspace");
    const auto& tol = system.tolerance();
    Matrix v(system.ambient_dim(), static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const auto& red = system.reduced()[j];
        if (red.is_zero())
            throw InvalidArgument("gramian_sample: reduced subspace " + std::to_string(j + 1) +
                                  " is {0}; no unit vector is admissible");
        if (unit_vectors[j].size() != system.ambient_dim())
            throw InvalidArgument("gramian_sample: vector dimension mismatch");
        if (std::abs(unit_vectors[j].norm() - 1.0) > tol.check_tol)
            throw InvalidArgument("gramian_sample: vector " + std::to_string(j + 1) + " is not unit");
        if (red.max_distance(unit_vectors[j]) > tol.check_tol)
            throw InvalidArgument("gramian_sample: vector " + std::to_string(j + 1) +
                                  " is not in M_j ∩ M^⊥");
        v.col(static_cast<Index>(j)) = unit_vectors[j];
    }
    return operator_norm(v.transpose() * v) / static_cast<double>(n);
}

double maximize_gramian(const SubspaceSystem& system, int starts, std::uint64_t seed) {
    const auto n = system.size();
    for (const auto& red : system.reduced())
        if (red.is_zero()) throw InvalidArgument("maximize_gramian: some reduced subspace is {0}");
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (int s = 0; s < starts; ++s) {
        std::vector<Vector> v;
        for (const auto& red : system.reduced()) v.push_back(random_unit_in(red.basis(), rng));
        double value = gramian_sample(system, v);
        for (int it = 0; it < 500; ++it) {
            Matrix vm(system.ambient_dim(), static_cast<Index>(n));
            for (std::size_t j = 0; j < n; ++j) vm.col(static_cast<Index>(j)) = v[j];
            Eigen::SelfAdjointEigenSolver<Matrix> eig(vm.transpose() * vm);
            Vector x = eig.eigenvectors().col(static_cast<Index>(n) - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (x(static_cast<Index>(j)) < 0) {
                    x(static_cast<Index>(j)) = -x(static_cast<Index>(j));
                    v[j] = -v[j];
                }
            Vector y = Vector::Zero(system.ambient_dim());
            for (std::size_t j = 0; j < n; ++j) y += x(static_cast<Index>(j)) * v[j];
            for (std::size_t j = 0; j < n; ++j) {
                const auto& b = system.reduced()[j].basis();
                Vector proj = b * (b.transpose() * y);
                if (proj.norm() > 0.0) v[j] = proj.normalized();
            }
            const double next = gramian_sample(system, v);
            const bool stalled = next - value < 1e-15;
            value = std::max(value, next);
            if (stalled) break;
        }
        best = std::max(best, value);
    }
    return best;
}

double inclination_objective(const SubspaceSystem& system, const Vector& y) {
    double worst = 0.0;
    for (const auto& s : system.subspaces()) worst = std::max(worst, s.max_distance(y));
    return worst;
}

InclinationEstimate inclination_bounds(double kappa, std::size_t n) {
    const double root = std::sqrt(std::clamp(kappa, 0.0, 1.0));
    InclinationEstimate est;
    est.lower = std::max(0.0, 1.0 - root);
    est.upper = std::min(1.0, std::sqrt(2.0 * static_cast<double>(n) * (1.0 - root)));
    return est;
}

InclinationEstimate inclination(const SubspaceSystem& system, const InclinationBudget& budget) {
    const Matrix q = complement_basis(system.intersection().basis());
    const Index m = q.cols();
    if (m == 0) throw UndefinedQuantity("inclination: M is the whole space");
    if (budget.starts < 1 || budget.iterations < 0 || budget.initial_step <= 0.0 ||
        budget.smoothing_power < 2.0)
        throw InvalidArgument("inclination: invalid budget");

    // Quadratic forms z -> dist(Qz, M_j)^2 on coordinates of M^⊥.
    std::vector<Matrix> forms;
    Matrix total = Matrix::Zero(m, m);
    for (std::size_t j = 0; j < system.size(); ++j) {
        const Matrix r = q - system.projector_matrix(j) * q;
        forms.push_back(r.transpose() * r);
        total += forms.back();
    }
    auto objective = [&](const Vector& z) {
        double worst = 0.0;
        for (const auto& a : forms) worst = std::max(worst, z.dot(a * z));
        return std::sqrt(std::max(worst, 0.0));
    };
    const double p = budget.smoothing_power;
    // Descent direction of the L^p surrogate (sum_j r_j^p)^{1/p}, tangent to the sphere.
    auto direction = [&](const Vector& z) -> Vector {
        std::vector<double> r;
        double rmax = 0.0;
        for (const auto& a : forms) {
            r.push_back(std::sqrt(std::max(z.dot(a * z), 0.0)));
            rmax = std::max(rmax, r.back());
        }
        Vector g = Vector::Zero(m);
        if (rmax == 0.0) return g;
        for (std::size_t j = 0; j < forms.size(); ++j)
            g += std::pow(r[j] / rmax, p - 2.0) * (forms[j] * z);
        g -= z.dot(g) * z;
        const double gn = g.norm();
        return gn > 0.0 ? Vector(g / gn) : g;
    };

    std::mt19937_64 rng(budget.seed);
    std::normal_distribution<double> gauss;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(total);

    Vector best_z = eig.eigenvectors().col(0);
    double best = objective(best_z);
    for (int s = 0; s < budget.starts && m > 1; ++s) {
        Vector z(m);
        if (s == 0) {
            z = eig.eigenvectors().col(0);
        } else {
            for (Index i = 0; i < m; ++i) z(i) = gauss(rng);
            z.normalize();
        }
        Vector local_best = z;
        double local_value = objective(z);
        for (int t = 0; t < budget.iterations; ++t) {
            const Vector dir = direction(z);
            if (dir.norm() == 0.0) break;
            z = (z - budget.initial_step / std::sqrt(t + 1.0) * dir).normalized();
            const double v = objective(z);
            if (v < local_value) {
                local_value = v;
                local_best = z;
            }
        }
        // Polish with step halving on the true objective.
        z = local_best;
        double step = budget.initial_step / std::sqrt(budget.iterations + 1.0);
        for (int polish = 0; polish < 4 * budget.iterations && step > 1e-12; ++polish) {
            const Vector dir = direction(z);
            if (dir.norm() == 0.0) break;
            const Vector trial = (z - step * dir).normalized();
            const double v = objective(trial);
            if (v < local_value) {
                local_value = v;
                z = trial;
            } else {
                step *= 0.5;
            }
        }
        if (local_value < best) {
            best = local_value;
            best_z = z;
        }
    }

    InclinationEstimate est = inclination_bounds(configuration_constant(system), system.size());
    est.estimate = best;
    const double tol = system.tolerance().check_tol;
    est.certified = best >= est.lower - tol && best <= est.upper + tol;
    return est;
}

AngleReport angle_report(const SubspaceSystem& system, const InclinationBudget& budget) {
    AngleReport report;
    report.degenerate = system.degenerate();
    report.kappa = configuration_constant(system);
    report.c = friedrichs_number(system);
    const auto dix = dixmier_number(system);
    report.c0 = dix.c0;
    report.kappa0 = dix.kappa0;
    report.pairwise_dixmier_reduced = pairwise_dixmier_reduced(system);
    report.prefix_friedrichs = prefix_friedrichs(system);
    if (system.intersection().dim() == system.ambient_dim()) {
        report.inclination_defined = false;
        report.inclination = inclination_bounds(report.kappa, system.size());
    } else {
        report.inclination = inclination(system, budget);
    }
    return report;
}

}  // namespace altproj
