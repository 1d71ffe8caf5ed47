#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatznet/core.hpp"
#include "collatznet/nat.hpp"

namespace collatznet {

/// Earliest common odd value of two Collatz sequences, searched within a
/// budget of odd steps per trace.
struct MergeReport {
  Nat a;
  Nat b;
  bool merged = false;
  std::optional<Nat> common_value;
  std::optional<std::uint64_t> index_in_a;
  std::optional<std::uint64_t> index_in_b;
  bool budget_exhausted = false;
};

enum class MergeCase {
  K2_M_MERGES_N,    // k = 2: the m-sequence joins the n-sequence
  KGT2_L_MERGES_M,  // k > 2: the l-sequence joins the m-sequence
};

/// Coupled behaviour of the odd traces of n0, m0 = 2*n0+1 and l0 = 4*n0+3.
/// r is the smallest index whose step n_r -> n_{r+1} uses k > 1 halvings.
struct CouplingReport {
  Nat n0;
  std::uint64_t r = 0;
  std::uint64_t k = 0;
  std::uint64_t j = 0;  // halvings on the m-step r+1 -> r+2
  bool relations_verified = false;
  MergeCase merge_case = MergeCase::K2_M_MERGES_N;
  std::vector<Nat> n_terms;
  std::vector<Nat> m_terms;
  std::vector<Nat> l_terms;
  bool budget_exhausted = false;
  std::string failure;  // first violated relation, empty when verified
};

/// Single-halving prefix of an odd trace: terms[0..r] with terms[r] the
/// first value congruent to 1 mod 4, followed by a step of k >= 2 halvings.
struct DescentPrefix {
  std::uint64_t r = 0;
  std::vector<Nat> terms;
  std::uint64_t k = 0;
};

/// Closed-form odd iterates of a = 2^k * n + 1 for k > 2:
/// a_i = 2^(k-2i) * 3^i * n + 1, checked against the actual trace.
/// For even k the chain ends at 4*(3^(j-1) n)+1 and the trace is expected
/// to continue like the trace of 3^(j-1) * n.
struct IteratePrediction {
  Nat a;
  Nat n;
  std::uint64_t k = 0;
  std::uint64_t j = 0;
  unsigned r0 = 0;  // k = 2j + r0
  std::vector<Nat> predicted;
  bool matches = false;
  std::optional<Nat> merge_base;
  bool merge_ok = true;
};

/// The second odd number of the Collatz sequence of odd a.
Nat second_odd(const Nat& a);

/// Two odd starts are equivalent when their second odd numbers coincide.
bool are_equivalent(const Nat& a, const Nat& b);

/// Checks equivalence of a with each of its images under x -> 4x+1,
/// iterated `steps` times.
bool fourfold_chain_equivalent(const Nat& a, std::uint64_t steps);

/// Walks the odd trace until the first term congruent to 1 mod 4, verifying
/// one halving per step before it and k >= 2 halvings at it. Throws if the
/// budget runs out before such a term appears.
DescentPrefix descent_prefix(const Nat& a, std::uint64_t budget = kDefaultBudget);

/// Requires a = 2^k * n + 1 with k > 2.
IteratePrediction predict_odd_iterates(const Nat& a);

/// For a = 5 mod 8 (two-adic k = 2): the second odd number computed through
/// the maximal jump base, (3p+1)/2^i with i = 1 for odd p and 0 otherwise.
Nat kequals2_next(const Nat& a);

/// Earliest term of a's odd trace that occurs in b's odd trace, both
/// truncated at `budget` odd steps.
MergeReport merge_within(const Nat& a, const Nat& b, std::uint64_t budget = kDefaultBudget);

/// Verifies the coupled term relations between the odd traces of n0,
/// 2*n0+1 and 4*n0+3 (see CouplingReport).
CouplingReport coupling_analysis(const Nat& n0, std::uint64_t budget = kDefaultBudget);

}  // namespace collatznet
