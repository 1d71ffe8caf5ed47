#pragma once

#include <cstdint>

#include "collatznet/nat.hpp"

namespace collatznet {

/// a = 2^k * n + 1 with n odd and k >= 1. Unique for every odd a > 1.
struct TwoAdicForm {
  Nat a;
  std::uint64_t k = 0;
  Nat n;
};

/// a = 4^d * p + (4^d - 1)/3, i.e. a jump from p of height d.
/// maximal means p is not congruent to 1 mod 4, so the height cannot grow.
struct JumpForm {
  Nat a;
  Nat p;
  std::uint64_t d = 0;
  bool maximal = false;
};

/// Unique decomposition a = 2^k * n + 1 (k = nu2(a-1)). Requires odd a > 1.
TwoAdicForm two_adic_decompose(const Nat& a);

/// 4^d * p + (4^d - 1)/3; the height-0 jump is p itself.
Nat jump_from(const Nat& p, std::uint64_t d);

/// Strip height-1 jumps x -> (x-1)/4 while x = 1 mod 4. The base p is the
/// first value not congruent to 1 mod 4 (possibly even, possibly 0).
/// Requires a = 1 mod 4.
JumpForm max_jump_base(const Nat& a);

/// The last odd value of the unjump chain that is not itself a jump from an
/// odd number: the base used by the 24t+21 reduction. If the maximal base is
/// even (including 0), the base is one chain step earlier, 4*p + 1.
/// Requires a = 5 mod 8 (an odd number whose 2-adic form has k = 2).
JumpForm odd_jump_base(const Nat& a);

/// 3 * jump_from(p, d) + 1 == 4^d * (3p + 1); holds for every p, d.
bool jump_identity_check(const Nat& p, std::uint64_t d);

}  // namespace collatznet
