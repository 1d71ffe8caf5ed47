#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "collatznet/equivalence.hpp"
#include "collatznet/nat.hpp"

namespace collatznet {

enum class ReductionCase {
  Unit,      // a_prev = 1
  Mod4_3,    // a_prev = 3 mod 4
  KGt2,      // a_prev = 2^k n + 1 with k > 2
  KEq2R1,    // k = 2, odd jump base P = 2q+1
  KEq2RGt2,  // k = 2, odd jump base P = 1 or P = 2^r q + 1 with r > 2
};

/// One companion value b of the 24t+21 reduction. Every b is odd, divisible
/// by 3, congruent to 9 mod 12 and congruent to 21 mod 24.
struct ReductionStep {
  Nat a_prev;
  ReductionCase kind = ReductionCase::Unit;
  std::optional<Nat> p_base;  // the jump base used by the k = 2 cases
  Nat b;
};

struct ReductionRow {
  Nat a;
  Nat b;
};

struct RepresentativeMerge {
  Nat value;   // 24t + 21
  Nat target;  // 1, p = 2t+1, or 2p+1 depending on the two-adic k of p
  MergeReport report;
};

/// Companion of the starting number, chosen by a mod 3. b_zero(1) = 21.
Nat b_zero(const Nat& a);

/// Companion of the odd number following a_prev, chosen by a_prev mod 4 and
/// the decomposition of a_prev (see ReductionCase).
ReductionStep b_step(const Nat& a_prev);

/// Pairs (a_i, b_i) along the odd trace of a: b_0 = b_zero(a) and
/// b_i = b_step(a_{i-1}). Stops at a_i = 1 (with b = 21) or at the budget.
std::vector<ReductionRow> b_trace(const Nat& a, std::uint64_t max_steps = kDefaultBudget);

/// (b, t) with b = b_zero(a) = 24t + 21.
std::pair<Nat, Nat> reduce_to_residue21(const Nat& a);

/// For v = 24t+21 and p = 2t+1: the merge partner is 1 when t = 0, p when
/// the two-adic k of p exceeds 2, and 2p+1 otherwise; the merge itself is
/// confirmed within the budget.
RepresentativeMerge representative_merge(const Nat& t, std::uint64_t budget = kDefaultBudget);

}  // namespace collatznet
