#pragma once

#include "altproj/subspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace altproj::corpus {

/// Three coordinate subspaces of R^d built from the residues of the index
/// modulo 3, plus the exceptional vectors e_0 (in M2) and e_1, e_3 (in M3).
/// Requires d >= 4.
SubspaceSystem example3(Index d = 12);

/// span{e_1} and span{cos θ e_1 + sin θ e_2} in R^2, 0 < θ <= π/2.
SubspaceSystem two_lines(double theta);

/// K planar blocks in R^{2K}; block k holds the pair of lines at angle θ_k.
SubspaceSystem tilted_pairs(const std::vector<double>& angles);

/// θ_k = 1/k for k = 1..K.
std::vector<double> inverse_k_angles(std::size_t k);

/// Subspaces spanned by seeded Gaussian vectors.
SubspaceSystem random_system(Index d, const std::vector<Index>& dims, std::uint64_t seed);

/// Every subspace contains a shared seeded core of dimension core_dim.
SubspaceSystem common_core(Index d, const std::vector<Index>& dims, Index core_dim,
                           std::uint64_t seed);

/// N pairwise orthogonal coordinate lines in R^N (N >= 2).
SubspaceSystem coordinate_axes(Index n);

}  // namespace altproj::corpus
