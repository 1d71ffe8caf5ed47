#include "collatznet/decompose.hpp"

#include <cassert>

namespace collatznet {

TwoAdicForm two_adic_decompose(const Nat& a) {
  require_odd(a, "two_adic_decompose");
  if (a == 1) throw std::domain_error("two_adic_decompose: 1 has no form 2^k*n + 1");
  Nat m = a - 1;
  const std::uint64_t k = nu2(m);
  m >>= k;
  return TwoAdicForm{a, k, std::move(m)};
}

Nat jump_from(const Nat& p, std::uint64_t d) {
  if (d == 0) return p;
  const Nat four_d = pow2(2 * d);
  return four_d * p + (four_d - 1) / 3;
}

JumpForm max_jump_base(const Nat& a) {
  if (a < 1 || mod_small(a, 4) != 1)
    throw std::domain_error("max_jump_base: expected a = 1 mod 4, got " + a.str());
  Nat p = a;
  std::uint64_t d = 0;
  while (mod_small(p, 4) == 1) {
    p = (p - 1) >> 2;
    ++d;
  }
  return JumpForm{a, std::move(p), d, true};
}

JumpForm odd_jump_base(const Nat& a) {
  if (a < 5 || mod_small(a, 8) != 5)
    throw std::domain_error("odd_jump_base: expected a = 5 mod 8, got " + a.str());
  JumpForm form = max_jump_base(a);
  if (is_odd(form.p)) return form;
  // The maximal base is even; back up one chain step to the last odd base.
  assert(form.d >= 2);
  form.p = 4 * form.p + 1;
  form.d -= 1;
  form.maximal = mod_small(form.p, 4) != 1;
  return form;
}

bool jump_identity_check(const Nat& p, std::uint64_t d) {
  return 3 * jump_from(p, d) + 1 == pow2(2 * d) * (3 * p + 1);
}

}  // namespace collatznet
