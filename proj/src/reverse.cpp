#include "collatznet/reverse.hpp"

namespace collatznet {

Nat reverse_step(const Nat& x) {
  require_positive(x, "reverse_step");
  if (is_even(x) && mod_small(x, 3) == 1) return (x - 1) / 3;
  return 2 * x;
}

std::optional<Nat> reverse_odd_successor(const Nat& p) {
  require_odd(p, "reverse_odd_successor");
  switch (mod_small(p, 3)) {
    case 0: return std::nullopt;
    case 2: return (2 * p - 1) / 3;
    default: return (4 * p - 1) / 3;
  }
}

ReverseTrace reverse_odd_trace(const Nat& a, std::uint64_t budget) {
  require_odd(a, "reverse_odd_trace");
  ReverseTrace trace;
  trace.terms.push_back(a);
  if (mod_small(a, 3) == 0) {
    trace.status = ReverseStatus::Trivial;
    trace.converged_value = a;
    return trace;
  }
  for (std::uint64_t step = 0;; ++step) {
    if (step >= budget) {
      trace.status = ReverseStatus::BudgetExhausted;
      return trace;
    }
    trace.terms.push_back(*reverse_odd_successor(trace.terms.back()));
    if (mod_small(trace.terms.back(), 3) == 0) {
      trace.status = ReverseStatus::Converged;
      trace.converged_value = trace.terms.back();
      return trace;
    }
  }
}

Nat reverse_first_of_power_form(const Nat& a, std::uint64_t k) {
  require_odd(a, "reverse_first_of_power_form");
  if (k < 1) throw std::domain_error("reverse_first_of_power_form: k must be >= 1");
  const Nat b = pow2(k) * a + 1;
  if (mod_small(b, 3) == 0)
    throw std::domain_error("reverse_first_of_power_form: " + b.str() +
                            " is a multiple of 3 and has no reverse successor");
  if (mod_small(a, 3) == 0) return pow2(k + 2) * (a / 3) + 1;
  return 2 * ((pow2(k) * a - 1) / 3) + 1;
}

std::pair<std::uint64_t, Nat> first_non_two_mod3(const Nat& a) {
  require_odd(a, "first_non_two_mod3");
  if (mod_small(a, 3) == 0)
    throw std::domain_error("first_non_two_mod3: argument must not be a multiple of 3");
  std::uint64_t k = 0;
  Nat x = a;
  while (mod_small(x, 3) == 2) {
    x = (2 * x - 1) / 3;  // strictly decreasing, so no budget is needed
    ++k;
  }
  return {k, std::move(x)};
}

ThreeAdicReverse three_adic_reverse(const Nat& a) {
  require_odd(a, "three_adic_reverse");
  if (mod_small(a, 3) != 0)
    throw std::domain_error("three_adic_reverse: argument must be a multiple of 3");
  ThreeAdicReverse out;
  out.a = a;
  out.b = a;
  while (mod_small(out.b, 3) == 0) {
    out.b /= 3;
    ++out.n;
  }
  out.b_mod3 = mod_small(out.b, 3);

  out.q.push_back(2 * a + 1);
  out.f.push_back(4 * a + 1);
  Nat three_pow = pow_nat(3, out.n);
  for (std::uint64_t i = 1; i <= out.n; ++i) {
    three_pow /= 3;  // 3^(n-i)
    out.q.push_back(pow2(2 * i + 1) * three_pow * out.b + 1);
    out.f.push_back(pow2(2 * i + 2) * three_pow * out.b + 1);
  }

  auto matches = [&](const std::vector<Nat>& predicted) {
    Nat x = predicted[0];
    for (std::uint64_t i = 1; i <= out.n; ++i) {
      const auto next = reverse_odd_successor(x);
      if (!next || *next != predicted[i]) return false;
      x = *next;
    }
    return true;
  };
  out.q_matches = matches(out.q);
  out.f_matches = matches(out.f);
  out.branch_confirmed = out.b_mod3 == 1 ? mod_small(out.q[out.n], 3) == 0
                                         : mod_small(out.f[out.n], 3) == 0;
  return out;
}

namespace {

// Scan p_1, p_2, ... from p1 until the first term not congruent to 2 mod 3.
std::pair<std::uint64_t, std::vector<Nat>> scan_from(const Nat& p0, Nat p1) {
  std::vector<Nat> p{p0, std::move(p1)};
  std::uint64_t k = 1;
  while (mod_small(p.back(), 3) == 2) {
    p.push_back((2 * p.back() - 1) / 3);
    ++k;
  }
  return {k, std::move(p)};
}

}  // namespace

CollabReport collaborative_convergence(const Nat& a) {
  require_odd(a, "collaborative_convergence");
  CollabReport rep;
  rep.a = a;
  rep.class_mod3 = mod_small(a, 3);

  if (rep.class_mod3 == 0) {
    const ThreeAdicReverse tar = three_adic_reverse(a);
    rep.relations_checked = tar.q_matches && tar.f_matches && tar.branch_confirmed;
    if (tar.b_mod3 == 1) {
      rep.provable_convergers = {Member::TwicePlusOne};
      rep.witness = tar.q[tar.n];
    } else {
      rep.provable_convergers = {Member::QuadPlusOne};
      rep.witness = tar.f[tar.n];
    }
    rep.witness_index = tar.n;
    return rep;
  }

  const bool class_one = rep.class_mod3 == 1;
  // p-trace of a, scanned past index 1 until the residue leaves class 2.
  auto [k, p] = scan_from(a, *reverse_odd_successor(a));

  // Companion trace: 4a+1 when a = 1 mod 3 (2a+1 is then a multiple of 3),
  // 2a+1 when a = 2 mod 3 (4a+1 is then the trivial one).
  std::vector<Nat> c{class_one ? 4 * a + 1 : 2 * a + 1};
  bool relations = true;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const auto next = reverse_odd_successor(c.back());
    if (!next) {
      relations = false;
      break;
    }
    c.push_back(*next);
    if (c[i] != 2 * p[i] + 1) relations = false;
  }

  const Nat& pk = p[k];
  if (mod_small(pk, 3) == 0) {
    rep.provable_convergers = {Member::Self};
    rep.witness = pk;
    rep.witness_index = k;
    // The companion continues one more step, to 2^3 (p_k / 3) + 1.
    if (relations && c.size() == k + 1) {
      const auto next = reverse_odd_successor(c.back());
      relations = next && *next == 8 * (pk / 3) + 1;
    }
  } else {
    rep.provable_convergers = {class_one ? Member::QuadPlusOne : Member::TwicePlusOne};
    if (relations && c.size() == k + 1) relations = mod_small(c[k], 3) == 0;
    rep.witness = c.back();
    rep.witness_index = k;
  }
  rep.relations_checked = relations;
  return rep;
}

}  // namespace collatznet
