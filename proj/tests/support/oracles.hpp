#pragma once

// Independent reference computations for the tests. None of these route
// through the library algorithm they are used to check.

#include "altproj/corpus.hpp"
#include "altproj/subspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using altproj::Index;
using altproj::Matrix;
using altproj::Vector;

/// Classical Gram-Schmidt with a fixed drop threshold.
inline Matrix gram_schmidt(const Matrix& cols, double drop = 1e-10) {
    std::vector<Vector> out;
    for (Index j = 0; j < cols.cols(); ++j) {
        Vector v = cols.col(j);
        for (const auto& q : out) v -= q.dot(v) * q;
        for (const auto& q : out) v -= q.dot(v) * q;  // second pass
        if (v.norm() > drop) out.push_back(v.normalized());
    }
    Matrix b(cols.rows(), static_cast<Index>(out.size()));
    for (std::size_t j = 0; j < out.size(); ++j) b.col(static_cast<Index>(j)) = out[j];
    return b;
}

/// Largest singular value by power iteration on A^T A.
inline double power_norm(const Matrix& a, int iters = 2000) {
    if (a.size() == 0) return 0.0;
    Vector v = Vector::Ones(a.cols()) + Vector::LinSpaced(a.cols(), 0.0, 0.37);
    double est = 0.0;
    for (int i = 0; i < iters; ++i) {
        Vector w = a.transpose() * (a * v);
        const double n = w.norm();
        if (n == 0.0) return 0.0;
        v = w / n;
        est = std::sqrt(n);
    }
    return est;
}

/// Singular values of a 2x2 matrix in closed form, descending.
inline std::array<double, 2> singular_values_2x2(const Matrix& a) {
    const Matrix g = a.transpose() * a;
    const double tr = g.trace();
    const double det = g.determinant();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {std::sqrt(tr / 2.0 + disc), std::sqrt(std::max(0.0, tr / 2.0 - disc))};
}

/// Cosine of the Friedrichs angle from principal angles: the largest
/// singular value of B1^T B2 that is not (numerically) 1.
inline double friedrichs_principal(const Matrix& b1, const Matrix& b2, double one_tol = 1e-7) {
    if (b1.cols() == 0 || b2.cols() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(b1.transpose() * b2);
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) < 1.0 - one_tol) return svd.singularValues()(i);
    return 0.0;
}

/// Orthonormal basis of M^⊥ via an LU kernel, independent of the library's QR route.
inline Matrix perp_basis(const Matrix& m_basis, Index d) {
    if (m_basis.cols() == 0) return Matrix::Identity(d, d);
    Eigen::FullPivLU<Matrix> lu(m_basis.transpose());
    return gram_schmidt(lu.kernel());
}

/// Minimizes f over unit vectors of a space of dimension m <= 4 on a
/// hyperspherical grid with geodesic spacing `h`. Antipodal symmetry of f is
/// assumed (f(-z) = f(z)).
inline double sphere_grid_min(Index m, double h, const std::function<double(const double*)>& f) {
    double best = std::numeric_limits<double>::infinity();
    double z[4];
    if (m == 1) {
        z[0] = 1.0;
        return f(z);
    }
    if (m == 2) {
        for (double a = 0.0; a < M_PI; a += h) {
            z[0] = std::cos(a);
            z[1] = std::sin(a);
            best = std::min(best, f(z));
        }
        return best;
    }
    if (m == 3) {
        for (double a = 0.0; a <= M_PI / 2 + 1e-12; a += h) {
            const double sa = std::sin(a);
            const double step = sa > h ? h / sa : 2 * M_PI;
            for (double b = 0.0; b < 2 * M_PI; b += step) {
                z[0] = std::cos(a);
                z[1] = sa * std::cos(b);
                z[2] = sa * std::sin(b);
                best = std::min(best, f(z));
            }
        }
        return best;
    }
    if (m == 4) {
        for (double a = 0.0; a <= M_PI + 1e-12; a += h) {
            const double sa = std::sin(a);
            const double step_b = sa > h ? h / sa : M_PI;
            for (double b = 0.0; b <= M_PI + 1e-12; b += step_b) {
                const double sb = std::sin(b);
                const double ssab = sa * sb;
                const double step_c = ssab > h ? h / ssab : M_PI;
                for (double c = 0.0; c < M_PI; c += step_c) {
                    z[0] = std::cos(a);
                    z[1] = sa * std::cos(b);
                    z[2] = ssab * std::cos(c);
                    z[3] = ssab * std::sin(c);
                    best = std::min(best, f(z));
                }
            }
        }
        return best;
    }
    throw std::invalid_argument("sphere_grid_min: m must be in 1..4");
}

/// Exhaustive grid estimate of inf over unit y in M^⊥ of max_j dist(y, M_j).
inline double grid_inclination(const altproj::SubspaceSystem& system, double h = 0.01) {
    const Index d = system.ambient_dim();
    const Matrix q = perp_basis(system.intersection().basis(), d);
    const Index m = q.cols();
    std::vector<Matrix> forms;
    for (const auto& s : system.subspaces()) {
        const Matrix r = q - s.basis() * (s.basis().transpose() * q);
        forms.push_back(r.transpose() * r);
    }
    return sphere_grid_min(m, h, [&](const double* z) {
        double worst = 0.0;
        for (const auto& a : forms) {
            double v = 0.0;
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < m; ++j) v += z[i] * a(i, j) * z[j];
            worst = std::max(worst, v);
        }
        return std::sqrt(std::max(worst, 0.0));
    });
}

/// min over the unit circle of |A y| (A has 2 columns): grid with spacing h,
/// then golden-section refinement around the best grid point.
inline double circle_min(const Matrix& a, double h = 1e-4) {
    auto f = [&](double t) {
        Vector y(2);
        y << std::cos(t), std::sin(t);
        return (a * y).norm();
    };
    double best_t = 0.0, best = f(0.0);
    for (double t = h; t < M_PI; t += h)
        if (const double v = f(t); v < best) {
            best = v;
            best_t = t;
        }
    double lo = best_t - h, hi = best_t + h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200; ++i) {
        const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        if (f(x1) < f(x2)) hi = x2;
        else lo = x1;
    }
    return std::min(best, f(0.5 * (lo + hi)));
}

/// Twenty small systems (d <= 4) on which the grid oracle is affordable.
inline std::vector<altproj::SubspaceSystem> grid_corpus() {
    using namespace altproj::corpus;
    std::vector<altproj::SubspaceSystem> out;
    for (double th : {0.3, 0.7, M_PI / 3, 1.3, M_PI / 2}) out.push_back(two_lines(th));
    out.push_back(coordinate_axes(3));
    for (std::uint64_t s : {1, 2, 3}) out.push_back(random_system(3, {2, 2}, s));
    for (std::uint64_t s : {4, 5}) out.push_back(random_system(3, {1, 2}, s));
    out.push_back(random_system(3, {2, 2, 2}, 6));
    out.push_back(random_system(3, {1, 1, 1}, 7));
    out.push_back(random_system(4, {2, 2}, 8));
    out.push_back(random_system(4, {2, 3}, 9));
    out.push_back(random_system(4, {3, 3, 2}, 21));
    out.push_back(random_system(4, {3, 3}, 14));
    out.push_back(common_core(3, {2, 2}, 1, 11));
    out.push_back(common_core(4, {2, 3}, 1, 12));
    out.push_back(common_core(4, {3, 3, 3}, 2, 13));
    return out;
}

/// Random triples in R^9 with dims (3, 3, 3), seeds 1..20.
inline std::vector<altproj::SubspaceSystem> random_triples() {
    std::vector<altproj::SubspaceSystem> out;
    for (std::uint64_t s = 1; s <= 20; ++s) out.push_back(altproj::corpus::random_system(9, {3, 3, 3}, s));
    return out;
}

/// Ten systems with a shared core of dimension >= 1.
inline std::vector<altproj::SubspaceSystem> core_systems() {
    std::vector<altproj::SubspaceSystem> out;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const Index core = 1 + static_cast<Index>(s % 2);
        if (s % 3 == 0) out.push_back(altproj::corpus::common_core(6, {3, 4}, core, 100 + s));
        else out.push_back(altproj::corpus::common_core(8, {3, 4, 5}, core, 100 + s));
    }
    return out;
}

inline Vector gaussian_vector(Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector v(d);
    for (Index i = 0; i < d; ++i) v(i) = g(rng);
    return v;
}

}  // namespace oracle
