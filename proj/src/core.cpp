#include "collatznet/core.hpp"

namespace collatznet {

Nat collatz_step(const Nat& x) {
  require_positive(x, "collatz_step");
  if (is_odd(x)) return 3 * x + 1;
  return x >> 1;
}

RawTrace collatz_trace(const Nat& a, std::uint64_t max_steps) {
  require_positive(a, "collatz_trace");
  RawTrace trace;
  trace.terms.push_back(a);
  Nat x = a;
  for (std::uint64_t step = 0; x != 1; ++step) {
    if (step >= max_steps) {
      trace.truncated = true;
      break;
    }
    x = collatz_step(x);
    trace.terms.push_back(x);
  }
  return trace;
}

OddStep odd_successor(const Nat& a) {
  require_odd(a, "odd_successor");
  Nat y = 3 * a + 1;
  const std::uint64_t e = nu2(y);
  y >>= e;
  return OddStep{a, std::move(y), e};
}

OddTrace odd_trace(const Nat& a, std::uint64_t max_odd_steps) {
  require_odd(a, "odd_trace");
  OddTrace trace;
  trace.terms.push_back(a);
  for (std::uint64_t step = 0; trace.terms.back() != 1; ++step) {
    if (step >= max_odd_steps) {
      trace.truncated = true;
      break;
    }
    OddStep s = odd_successor(trace.terms.back());
    trace.terms.push_back(s.to);
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

}  // namespace collatznet
