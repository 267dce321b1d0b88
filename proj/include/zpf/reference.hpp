#pragma once

#include <cstdint>
#include <vector>

#include "zpf/gf_matrix.hpp"
#include "zpf/group.hpp"

/// Slow reference deciders used as test oracles. They work on coordinate
/// vectors with plain integer arithmetic and complex exponential sums, and
/// share no code with the optimized searchers.
namespace zpf::reference {

/// |sum_x exp(2 pi i (m . x) / p)| below 1e-9 for all distinct l, l' in L.
bool is_spectrum(std::uint64_t p, const std::vector<Coords>& e, const std::vector<Coords>& l);

/// Tries every |E|-subset of Z_p^d containing 0 as a spectrum.
bool spectral(const PointSet& e);

/// Tries every (p^d / |E|)-subset of Z_p^d containing 0 as a tiling set.
bool tiles(const PointSet& e);

/// log_p of the number of distinct linear combinations of the rows.
/// Throws std::invalid_argument when p^rows exceeds 2^22.
Index span_rank(const GFMatrix& m);

/// Pairwise row differences checked with complex exponential sums.
bool is_log_hadamard(const GFMatrix& m);

}  // namespace zpf::reference
