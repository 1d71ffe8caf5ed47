#pragma once

#include <cstdint>
#include <vector>

#include "collatznet/nat.hpp"

namespace collatznet {

/// One step between consecutive odd numbers of a Collatz sequence:
/// 3*from + 1 = to * 2^halvings, with to odd and halvings >= 1.
struct OddStep {
  Nat from;
  Nat to;
  std::uint64_t halvings = 0;
};

/// The odd numbers of a Collatz sequence, from the start to the first 1
/// (the trailing 4,2,1 cycle is never emitted). steps[i] connects
/// terms[i] to terms[i+1].
struct OddTrace {
  std::vector<Nat> terms;
  std::vector<OddStep> steps;
  bool truncated = false;
};

/// A raw Collatz sequence (odd and even terms), stopped at the first 1.
struct RawTrace {
  std::vector<Nat> terms;
  bool truncated = false;
};

/// 3x+1 if x is odd, x/2 if x is even. Requires x >= 1.
Nat collatz_step(const Nat& x);

/// Full sequence from a to the first 1, or the first max_steps+1 terms
/// with the truncated flag set.
RawTrace collatz_trace(const Nat& a, std::uint64_t max_steps = kDefaultBudget);

/// The next odd number after odd a: (3a+1) / 2^nu2(3a+1), plus the
/// halving count consumed.
OddStep odd_successor(const Nat& a);

/// Odd numbers from odd a to the first 1 inclusive, budgeted in odd steps.
OddTrace odd_trace(const Nat& a, std::uint64_t max_odd_steps = kDefaultBudget);

}  // namespace collatznet
