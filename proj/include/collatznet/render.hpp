#pragma once

#include <string>
#include <vector>

#include "collatznet/equivalence.hpp"
#include "collatznet/nat.hpp"
#include "collatznet/network.hpp"
#include "collatznet/reduction.hpp"

namespace collatznet {

/// Space-separated terms, "..." appended when truncated, newline-terminated.
std::string render_terms(const std::vector<Nat>& terms, bool truncated = false);

/// The n/m/l rows of a coupling report followed by the coupled term
/// relations with concrete indices.
std::string render_coupling(const CouplingReport& rep);

/// Decomposition cell of a reduction-table row: 2^k x n + 1, with k = 2
/// expanded into the full jump sum down to the odd base.
std::string render_a_decomposition(const Nat& a);

/// Reduction table: one "b | a | d/e | 3d/3e" line per row.
std::string render_reduction_table(const std::vector<ReductionRow>& rows);

/// Diagonal array: top row, filled rows, then the diagonal and its
/// merge-target row.
std::string render_network(const DiagonalArray& arr);

}  // namespace collatznet
