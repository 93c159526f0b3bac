#include "altproj/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace altproj::corpus {

namespace {

Subspace coordinate_subspace(Index d, const std::vector<Index>& indices, std::string name) {
    Matrix b = Matrix::Zero(d, static_cast<Index>(indices.size()));
    for (std::size_t c = 0; c < indices.size(); ++c) b(indices[c], static_cast<Index>(c)) = 1.0;
    return Subspace::from_orthonormal(std::move(b), std::move(name));
}

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = g(rng);
    return m;
}

void check_dims(Index d, const std::vector<Index>& dims) {
    if (d < 1) throw InvalidArgument("dimension must be >= 1");
    if (dims.size() < 2) throw InvalidArgument("need at least 2 subspaces");
    for (auto k : dims)
        if (k < 0 || k > d) throw InvalidArgument("subspace dimension outside [0, d]");
}

}  // namespace

SubspaceSystem example3(Index d) {
    if (d < 4) throw InvalidArgument("example3: d must be >= 4");
    std::vector<Index> i1, i2{0}, i3{1, 3};
    for (Index i = 0; i < d; ++i) {
        if (i % 3 == 0) i1.push_back(i);
        if (i % 3 == 1) i2.push_back(i);
        if (i % 3 == 2) i3.push_back(i);
    }
    std::sort(i2.begin(), i2.end());
    std::sort(i3.begin(), i3.end());
    return SubspaceSystem({coordinate_subspace(d, i1, "M1"), coordinate_subspace(d, i2, "M2"),
                           coordinate_subspace(d, i3, "M3")});
}

SubspaceSystem two_lines(double theta) {
    if (!(theta > 0.0 && theta <= M_PI / 2 + 1e-12))
        throw InvalidArgument("two_lines: theta must lie in (0, pi/2]");
    return tilted_pairs({theta});
}

SubspaceSystem tilted_pairs(const std::vector<double>& angles) {
    if (angles.empty()) throw InvalidArgument("tilted_pairs: K must be >= 1");
    const auto k = static_cast<Index>(angles.size());
    Matrix b1 = Matrix::Zero(2 * k, k);
    Matrix b2 = Matrix::Zero(2 * k, k);
    for (Index j = 0; j < k; ++j) {
        const double th = angles[static_cast<std::size_t>(j)];
        if (!(th > 0.0 && th <= M_PI / 2 + 1e-12))
            throw InvalidArgument("tilted_pairs: angles must lie in (0, pi/2]");
        b1(2 * j, j) = 1.0;
        b2(2 * j, j) = std::cos(th);
        b2(2 * j + 1, j) = std::sin(th);
    }
    return SubspaceSystem({Subspace::from_orthonormal(b1, "M1"), Subspace::from_orthonormal(b2, "M2")});
}

std::vector<double> inverse_k_angles(std::size_t k) {
    std::vector<double> out;
    for (std::size_t j = 1; j <= k; ++j) out.push_back(1.0 / static_cast<double>(j));
    return out;
}

SubspaceSystem random_system(Index d, const std::vector<Index>& dims, std::uint64_t seed) {
    check_dims(d, dims);
    std::mt19937_64 rng(seed);
    std::vector<Subspace> subs;
    for (std::size_t j = 0; j < dims.size(); ++j)
        subs.push_back(Subspace::from_spanning(gaussian(d, dims[j], rng), "M" + std::to_string(j + 1)));
    return SubspaceSystem(std::move(subs));
}

SubspaceSystem common_core(Index d, const std::vector<Index>& dims, Index core_dim,
                           std::uint64_t seed) {
    check_dims(d, dims);
    if (core_dim < 0 || core_dim > *std::min_element(dims.begin(), dims.end()))
        throw InvalidArgument("common_core: core_dim must be <= every subspace dimension");
    std::mt19937_64 rng(seed);
    const Matrix core = orthonormalize_columns(gaussian(d, core_dim, rng));
    std::vector<Subspace> subs;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        Matrix span(d, dims[j]);
        span.leftCols(core_dim) = core;
        span.rightCols(dims[j] - core_dim) = gaussian(d, dims[j] - core_dim, rng);
        subs.push_back(Subspace::from_spanning(span, "M" + std::to_string(j + 1)));
    }
    return SubspaceSystem(std::move(subs));
}

SubspaceSystem coordinate_axes(Index n) {
    if (n < 2) throw InvalidArgument("coordinate_axes: need n >= 2");
    std::vector<Subspace> subs;
    for (Index j = 0; j < n; ++j) subs.push_back(coordinate_subspace(n, {j}, "M" + std::to_string(j + 1)));
    return SubspaceSystem(std::move(subs));
}

}  // namespace altproj::corpus
