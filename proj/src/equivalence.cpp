#include "collatznet/equivalence.hpp"

#include <cassert>
#include <map>

#include "collatznet/decompose.hpp"

namespace collatznet {

Nat second_odd(const Nat& a) { return odd_successor(a).to; }

bool are_equivalent(const Nat& a, const Nat& b) { return second_odd(a) == second_odd(b); }

bool fourfold_chain_equivalent(const Nat& a, std::uint64_t steps) {
  const Nat target = second_odd(a);
  Nat c = a;
  for (std::uint64_t i = 0; i < steps; ++i) {
    c = 4 * c + 1;
    if (second_odd(c) != target) return false;
  }
  return true;
}

DescentPrefix descent_prefix(const Nat& a, std::uint64_t budget) {
  require_odd(a, "descent_prefix");
  DescentPrefix out;
  out.terms.push_back(a);
  while (mod_small(out.terms.back(), 4) != 1) {
    if (out.r >= budget)
      throw std::runtime_error("descent_prefix: budget exhausted before a term = 1 mod 4");
    OddStep s = odd_successor(out.terms.back());
    assert(s.halvings == 1);
    out.terms.push_back(std::move(s.to));
    ++out.r;
  }
  out.k = odd_successor(out.terms.back()).halvings;
  assert(out.k >= 2);
  return out;
}

IteratePrediction predict_odd_iterates(const Nat& a) {
  const TwoAdicForm form = two_adic_decompose(a);
  if (form.k <= 2)
    throw std::domain_error("predict_odd_iterates: expected 2-adic exponent k > 2, got k = " +
                            std::to_string(form.k));
  IteratePrediction out;
  out.a = a;
  out.n = form.n;
  out.k = form.k;
  out.j = form.k / 2;
  out.r0 = static_cast<unsigned>(form.k % 2);
  const std::uint64_t count = out.r0 == 0 ? out.j - 1 : out.j;

  Nat three_i = 1;
  for (std::uint64_t i = 1; i <= count; ++i) {
    three_i *= 3;
    out.predicted.push_back(pow2(form.k - 2 * i) * three_i * form.n + 1);
  }

  out.matches = true;
  Nat x = a;
  for (const Nat& expected : out.predicted) {
    x = odd_successor(x).to;
    if (x != expected) {
      out.matches = false;
      break;
    }
  }

  if (out.r0 == 0) {
    Nat base = pow_nat(3, out.j - 1) * form.n;
    out.merge_ok = are_equivalent(4 * base + 1, base);
    out.merge_base = std::move(base);
  }
  return out;
}

Nat kequals2_next(const Nat& a) {
  if (a < 5 || mod_small(a, 8) != 5)
    throw std::domain_error("kequals2_next: expected a = 5 mod 8 (2-adic k = 2), got " + a.str());
  const JumpForm form = max_jump_base(a);
  const unsigned i = is_odd(form.p) ? 1 : 0;
  return (3 * form.p + 1) >> i;
}

MergeReport merge_within(const Nat& a, const Nat& b, std::uint64_t budget) {
  require_odd(a, "merge_within");
  require_odd(b, "merge_within");
  MergeReport report;
  report.a = a;
  report.b = b;

  const OddTrace trace_b = odd_trace(b, budget);
  std::map<Nat, std::uint64_t> index_of;
  for (std::uint64_t i = 0; i < trace_b.terms.size(); ++i)
    index_of.emplace(trace_b.terms[i], i);

  Nat x = a;
  bool a_truncated = false;
  for (std::uint64_t i = 0;; ++i) {
    if (auto it = index_of.find(x); it != index_of.end()) {
      report.merged = true;
      report.common_value = x;
      report.index_in_a = i;
      report.index_in_b = it->second;
      break;
    }
    if (x == 1) break;
    if (i >= budget) {
      a_truncated = true;
      break;
    }
    x = odd_successor(x).to;
  }
  if (!report.merged) report.budget_exhausted = a_truncated || trace_b.truncated;
  return report;
}

namespace {

// Extends a partially materialized odd trace up to index `upto` inclusive,
// recording per-step halvings. Returns false when the budget is hit first.
bool extend_trace(std::vector<Nat>& terms, std::vector<std::uint64_t>& halvings,
                  std::uint64_t upto, std::uint64_t budget) {
  while (terms.size() <= upto) {
    if (halvings.size() >= budget) return false;
    OddStep s = odd_successor(terms.back());
    halvings.push_back(s.halvings);
    terms.push_back(std::move(s.to));
  }
  return true;
}

}  // namespace

CouplingReport coupling_analysis(const Nat& n0, std::uint64_t budget) {
  require_odd(n0, "coupling_analysis");
  CouplingReport rep;
  rep.n0 = n0;

  std::vector<Nat> n_terms{n0};
  std::vector<std::uint64_t> n_halv;
  // Smallest r whose step n_r -> n_{r+1} needs more than one halving. The
  // step 1 -> 1 uses two halvings, so r exists on every trace head.
  std::uint64_t r = 0;
  for (;; ++r) {
    if (!extend_trace(n_terms, n_halv, r + 1, budget)) {
      rep.budget_exhausted = true;
      rep.failure = "budget exhausted before the first multi-halving step";
      return rep;
    }
    if (n_halv[r] > 1) break;
  }
  rep.r = r;
  rep.k = n_halv[r];

  std::vector<Nat> m_terms{2 * n0 + 1};
  std::vector<std::uint64_t> m_halv;
  std::vector<Nat> l_terms{2 * m_terms[0] + 1};
  std::vector<std::uint64_t> l_halv;
  if (!extend_trace(m_terms, m_halv, r + 2, budget) ||
      !extend_trace(l_terms, l_halv, r + 2, budget)) {
    rep.budget_exhausted = true;
    rep.failure = "budget exhausted while materializing the coupled traces";
    return rep;
  }
  rep.j = m_halv[r + 1];

  auto fail = [&](std::string what) {
    rep.failure = std::move(what);
    rep.relations_verified = false;
  };

  rep.relations_verified = true;
  for (std::uint64_t i = 0; i <= r && rep.relations_verified; ++i)
    if (m_terms[i] != 2 * n_terms[i] + 1) fail("m_" + std::to_string(i) + " != 2*n+1");
  if (rep.relations_verified && m_terms[r + 1] != pow2(rep.k) * n_terms[r + 1] + 1)
    fail("m_{r+1} != 2^k*n_{r+1}+1");
  for (std::uint64_t i = 0; i <= r + 1 && rep.relations_verified; ++i)
    if (l_terms[i] != 2 * m_terms[i] + 1) fail("l_" + std::to_string(i) + " != 2*m+1");
  if (rep.relations_verified && rep.j <= 1) fail("m-step r+1 -> r+2 uses a single halving");
  if (rep.relations_verified && l_terms[r + 2] != pow2(rep.j) * m_terms[r + 2] + 1)
    fail("l_{r+2} != 2^j*m_{r+2}+1");

  if (rep.k == 2) {
    rep.merge_case = MergeCase::K2_M_MERGES_N;
    // m_i = n_i from index r+2 on; walk both to 1.
    std::uint64_t i = r + 2;
    while (rep.relations_verified) {
      if (!extend_trace(n_terms, n_halv, i, budget) || !extend_trace(m_terms, m_halv, i, budget)) {
        rep.budget_exhausted = true;
        break;
      }
      if (m_terms[i] != n_terms[i]) {
        fail("m_" + std::to_string(i) + " != n_" + std::to_string(i));
        break;
      }
      if (n_terms[i] == 1 && m_terms[i] == 1) break;
      ++i;
    }
  } else {
    rep.merge_case = MergeCase::KGT2_L_MERGES_M;
    if (rep.relations_verified && l_terms[r + 2] != 4 * m_terms[r + 2] + 1)
      fail("l_{r+2} != 4*m_{r+2}+1");
    std::uint64_t i = r + 3;
    while (rep.relations_verified) {
      if (!extend_trace(m_terms, m_halv, i, budget) || !extend_trace(l_terms, l_halv, i, budget)) {
        rep.budget_exhausted = true;
        break;
      }
      if (l_terms[i] != m_terms[i]) {
        fail("l_" + std::to_string(i) + " != m_" + std::to_string(i));
        break;
      }
      if (l_terms[i] == 1 && m_terms[i] == 1) break;
      ++i;
    }
  }

  rep.n_terms = std::move(n_terms);
  rep.m_terms = std::move(m_terms);
  rep.l_terms = std::move(l_terms);
  return rep;
}

}  // namespace collatznet
