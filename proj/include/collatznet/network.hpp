#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatznet/equivalence.hpp"
#include "collatznet/nat.hpp"

namespace collatznet {

/// A diagonal array for n (n not congruent to 1 mod 3):
///   top row      u_0 = 4n+1, u_j = 2u_{j-1}+1
///   diagonal     v_{k,k} = 3v_{k-1,k-1}+2
///   row fill     v_{i,j} = 2v_{i,j-1}+1 for j > i
/// Column j >= 1 is the beginning of the odd trace of u_j.
struct DiagonalArray {
  Nat n;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  // v[i] holds columns i..cols-1; v[0] is the top row u.
  std::vector<std::vector<Nat>> v;

  const Nat& u(std::uint64_t j) const { return v[0][j]; }
  const Nat& at(std::uint64_t i, std::uint64_t j) const { return v[i][j - i]; }
  const Nat& diag(std::uint64_t i) const { return v[i][0]; }
};

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::string witness;  // offending cell / values when failed
};

struct ArrayPropertyReport {
  Nat n;
  std::vector<PropertyCheck> checks;
  std::vector<std::string> deviations;
  // A merge probe ran out of budget; the affected claim is undecided, not failed.
  bool budget_exhausted = false;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Merge partner of the diagonal entry v_{i,i}: the odd number its column
/// funnels into. one_mod3 is false only for odd n whose u_0 is a multiple
/// of 3, where the value is reported as u_0 and flagged.
struct MergeTarget {
  Nat value;
  bool one_mod3 = false;
  bool merged = false;
  std::optional<Nat> common;
};

struct LocateResult {
  Nat n;
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  Nat value;
};

/// Materializes the (rows x cols) window. Requires n != 1 mod 3, rows <= cols.
DiagonalArray build_array(const Nat& n, std::uint64_t rows = 8, std::uint64_t cols = 13);

/// Single cell of the array for n without materializing the window.
Nat array_cell(const Nat& n, std::uint64_t i, std::uint64_t j);

/// The nine structural and merging properties of a diagonal array.
ArrayPropertyReport verify_array_properties(const DiagonalArray& arr,
                                            std::uint64_t budget = kDefaultBudget);

/// Merge-target value only (no merge search); t_i pairs up along the
/// diagonal according to the parity of n.
Nat merge_target_value(const DiagonalArray& arr, std::uint64_t i);

/// Merge target with the merge confirmed within the budget.
MergeTarget merge_target(const DiagonalArray& arr, std::uint64_t i,
                         std::uint64_t budget = kDefaultBudget);

/// The unique cell holding odd a: reverse odd steps (2p-1)/3 while p = 2
/// mod 3 fix the row, halving steps (x-1)/2 while x = 3 mod 4 fix the
/// column, and the final value 4n+1 names the array.
LocateResult locate(const Nat& a);

}  // namespace collatznet
