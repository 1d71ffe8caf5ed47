#include "collatznet/reduction.hpp"

#include <cassert>

#include "collatznet/decompose.hpp"

namespace collatznet {

Nat b_zero(const Nat& a) {
  require_odd(a, "b_zero");
  if (a == 1) return 21;
  switch (mod_small(a, 3)) {
    case 0: return 12 * (16 * (a / 3) + 1) + 9;
    case 1: return 12 * ((4 * a - 1) / 3) + 9;
    default: return 12 * ((2 * a - 1) / 3) + 9;
  }
}

ReductionStep b_step(const Nat& a_prev) {
  require_odd(a_prev, "b_step");
  ReductionStep step;
  step.a_prev = a_prev;
  if (a_prev == 1) {
    step.kind = ReductionCase::Unit;
    step.b = 21;
    return step;
  }
  if (mod_small(a_prev, 4) == 3) {
    step.kind = ReductionCase::Mod4_3;
    step.b = 12 * ((a_prev - 1) >> 1) + 9;
    return step;
  }
  const std::uint64_t k = nu2(a_prev - 1);
  if (k > 2) {
    step.kind = ReductionCase::KGt2;
    step.b = 12 * a_prev + 9;
    return step;
  }
  // k = 2: a_prev is a jump from an odd number; descend to the odd base P
  // that is not itself a jump from an odd number.
  const JumpForm base = odd_jump_base(a_prev);
  step.p_base = base.p;
  if (base.p == 1) {
    step.kind = ReductionCase::KEq2RGt2;
    step.b = 21;
    return step;
  }
  const std::uint64_t r = nu2(base.p - 1);
  assert(r != 2);
  if (r == 1) {
    step.kind = ReductionCase::KEq2R1;
    step.b = 12 * ((base.p - 1) >> 1) + 9;
  } else {
    step.kind = ReductionCase::KEq2RGt2;
    step.b = 12 * base.p + 9;
  }
  return step;
}

std::vector<ReductionRow> b_trace(const Nat& a, std::uint64_t max_steps) {
  require_odd(a, "b_trace");
  if (a == 1) return {ReductionRow{1, 21}};
  std::vector<ReductionRow> rows;
  rows.push_back(ReductionRow{a, b_zero(a)});
  for (std::uint64_t i = 0; rows.back().a != 1 && i < max_steps; ++i) {
    const Nat& prev = rows.back().a;
    Nat next = odd_successor(prev).to;
    Nat b = b_step(prev).b;
    rows.push_back(ReductionRow{std::move(next), std::move(b)});
  }
  return rows;
}

std::pair<Nat, Nat> reduce_to_residue21(const Nat& a) {
  Nat b = b_zero(a);
  assert(mod_small(b, 24) == 21);
  Nat t = (b - 21) / 24;
  return {std::move(b), std::move(t)};
}

RepresentativeMerge representative_merge(const Nat& t, std::uint64_t budget) {
  if (t < 0) throw std::domain_error("representative_merge: t must be >= 0");
  RepresentativeMerge out;
  out.value = 24 * t + 21;
  if (t == 0) {
    out.target = 1;
  } else {
    const Nat p = 2 * t + 1;
    const std::uint64_t k = nu2(p - 1);
    out.target = k > 2 ? p : 2 * p + 1;
  }
  out.report = merge_within(out.value, out.target, budget);
  return out;
}

}  // namespace collatznet
