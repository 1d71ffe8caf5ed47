#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "collatznet/nat.hpp"

namespace collatznet {

enum class ReverseStatus {
  Trivial,          // the start itself is a multiple of 3; no predecessor exists
  Converged,        // the trace reached a multiple of 3 after >= 1 steps
  BudgetExhausted,  // no multiple of 3 within the budget
};

/// Odd-level reverse Collatz trace: each term is the smallest odd number
/// preceding the previous one in any Collatz sequence. Terms stop at the
/// first multiple of 3, which has no predecessor.
struct ReverseTrace {
  std::vector<Nat> terms;
  ReverseStatus status = ReverseStatus::Trivial;
  std::optional<Nat> converged_value;
};

enum class Member { Self, TwicePlusOne, QuadPlusOne };  // a, 2a+1, 4a+1

/// Which of {a, 2a+1, 4a+1} provably reverse-converges, with the multiple
/// of 3 reached and the index at which it appears in that reverse trace.
struct CollabReport {
  Nat a;
  unsigned class_mod3 = 0;
  std::vector<Member> provable_convergers;
  Nat witness;
  std::uint64_t witness_index = 0;
  bool relations_checked = false;
};

/// For a = 3^n * b (b not divisible by 3): the closed-form reverse iterates
/// q_i = 2^(2i+1) * 3^(n-i) * b + 1 of 2a+1 and f_i = 2^(2i+2) * 3^(n-i) * b + 1
/// of 4a+1, for i = 1..n, checked term by term. Exactly one of q_n, f_n is a
/// multiple of 3, decided by b mod 3.
struct ThreeAdicReverse {
  Nat a;
  Nat b;
  std::uint64_t n = 0;
  std::vector<Nat> q;  // q[0] = 2a+1, q[1..n] the iterates
  std::vector<Nat> f;  // f[0] = 4a+1, f[1..n] the iterates
  bool q_matches = false;
  bool f_matches = false;
  unsigned b_mod3 = 0;
  bool branch_confirmed = false;
};

/// (x-1)/3 if x is even and x = 1 mod 3; otherwise 2x. Requires x >= 1.
Nat reverse_step(const Nat& x);

/// The smallest odd number before p in any Collatz sequence:
/// (2p-1)/3 for p = 2 mod 3, (4p-1)/3 for p = 1 mod 3, none for p = 0 mod 3.
std::optional<Nat> reverse_odd_successor(const Nat& p);

/// Iterates reverse_odd_successor until a multiple of 3 or the budget.
ReverseTrace reverse_odd_trace(const Nat& a, std::uint64_t budget = kDefaultBudget);

/// First reverse term of b = 2^k * a + 1 in closed form:
/// 2^(k+2) * (a/3) + 1 when 3 | a, else 2*((2^k a - 1)/3) + 1.
/// Requires b not divisible by 3.
Nat reverse_first_of_power_form(const Nat& a, std::uint64_t k);

/// Smallest k >= 0 with p_k not congruent to 2 mod 3 along the reverse odd
/// trace of a. Needs no budget: the step (2p-1)/3 strictly decreases.
/// Requires a not divisible by 3.
std::pair<std::uint64_t, Nat> first_non_two_mod3(const Nat& a);

/// Requires odd a divisible by 3.
ThreeAdicReverse three_adic_reverse(const Nat& a);

/// Case analysis on a mod 3; never searches unboundedly.
CollabReport collaborative_convergence(const Nat& a);

}  // namespace collatznet
