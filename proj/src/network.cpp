#include "collatznet/network.hpp"

#include <cassert>

#include "collatznet/decompose.hpp"
#include "collatznet/reverse.hpp"

namespace collatznet {

DiagonalArray build_array(const Nat& n, std::uint64_t rows, std::uint64_t cols) {
  if (n < 0) throw std::domain_error("build_array: n must be >= 0");
  if (mod_small(n, 3) == 1)
    throw std::domain_error("build_array: no array exists for n = 1 mod 3 (n = " + n.str() + ")");
  if (rows < 1 || cols < rows)
    throw std::domain_error("build_array: need 1 <= rows <= cols");

  DiagonalArray arr;
  arr.n = n;
  arr.rows = rows;
  arr.cols = cols;
  arr.v.resize(rows);

  arr.v[0].reserve(cols);
  arr.v[0].push_back(4 * n + 1);
  for (std::uint64_t j = 1; j < cols; ++j) arr.v[0].push_back(2 * arr.v[0].back() + 1);

  for (std::uint64_t i = 1; i < rows; ++i) {
    arr.v[i].reserve(cols - i);
    arr.v[i].push_back(3 * arr.v[i - 1][0] + 2);
    for (std::uint64_t j = i + 1; j < cols; ++j) arr.v[i].push_back(2 * arr.v[i].back() + 1);
  }
  return arr;
}

Nat array_cell(const Nat& n, std::uint64_t i, std::uint64_t j) {
  if (mod_small(n, 3) == 1)
    throw std::domain_error("array_cell: no array exists for n = 1 mod 3");
  if (j < i) throw std::domain_error("array_cell: cells exist only for j >= i");
  Nat x = 4 * n + 1;
  for (std::uint64_t step = 0; step < i; ++step) x = 3 * x + 2;  // down the diagonal
  const Nat shift = pow2(j - i);
  return shift * x + (shift - 1);  // right along the row
}

namespace {

std::string cell_name(std::uint64_t i, std::uint64_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

ArrayPropertyReport verify_array_properties(const DiagonalArray& arr, std::uint64_t budget) {
  ArrayPropertyReport report;
  report.n = arr.n;
  auto& checks = report.checks;
  auto add = [&](std::string name) -> PropertyCheck& {
    checks.push_back(PropertyCheck{std::move(name), true, ""});
    return checks.back();
  };
  auto fail = [](PropertyCheck& c, std::string witness) {
    if (c.passed) {
      c.passed = false;
      c.witness = std::move(witness);
    }
  };

  // 1: residues mod 3.
  {
    auto& c = add("mod3_pattern");
    for (std::uint64_t j = 0; j < arr.cols; ++j)
      if (mod_small(arr.u(j), 3) == 2) fail(c, "u_" + std::to_string(j));
    for (std::uint64_t i = 1; i < arr.rows; ++i)
      for (std::uint64_t j = i; j < arr.cols; ++j)
        if (mod_small(arr.at(i, j), 3) != 2) fail(c, cell_name(i, j));
  }

  // 2: residues mod 4.
  {
    auto& c = add("mod4_pattern");
    if (mod_small(arr.u(0), 4) != 1) fail(c, "u_0");
    for (std::uint64_t j = 1; j < arr.cols; ++j)
      if (mod_small(arr.u(j), 4) == 1) fail(c, "u_" + std::to_string(j));
    for (std::uint64_t i = 1; i < arr.rows; ++i)
      for (std::uint64_t j = i; j < arr.cols; ++j) {
        const bool want_one = i == j;
        if ((mod_small(arr.at(i, j), 4) == 1) != want_one) fail(c, cell_name(i, j));
      }
  }

  // 3: the top row alternates between 1 and 0 mod 3.
  {
    auto& c = add("u_mod3_alternation");
    for (std::uint64_t j = 0; j + 1 < arr.cols; ++j) {
      const unsigned cur = mod_small(arr.u(j), 3);
      const unsigned nxt = mod_small(arr.u(j + 1), 3);
      if (cur == 1 && nxt != 0) fail(c, "u_" + std::to_string(j));
      if (cur == 0 && nxt != 1) fail(c, "u_" + std::to_string(j));
    }
  }

  // 4: the multiples of 3 in the top row are 3 * (jumps of increasing height).
  {
    auto& c = add("u_jump_relation");
    const bool u0_mult3 = mod_small(arr.u(0), 3) == 0;
    const std::uint64_t offset = u0_mult3 ? 0 : 1;
    if (!u0_mult3)
      report.deviations.push_back("jump-indexing-offset: u_(2i+1) = 3*j_i, u_(2i+2) = 6*j_i + 1");
    const Nat base = arr.u(offset) / 3;
    for (std::uint64_t i = 0; 2 * i + offset < arr.cols; ++i) {
      const Nat j_i = jump_from(base, i);
      if (arr.u(2 * i + offset) != 3 * j_i) fail(c, "u_" + std::to_string(2 * i + offset));
      if (2 * i + offset + 1 < arr.cols && arr.u(2 * i + offset + 1) != 6 * j_i + 1)
        fail(c, "u_" + std::to_string(2 * i + offset + 1));
    }
  }

  // 5: each column j >= 1 is an odd-trace prefix of u_j, one halving per step.
  {
    auto& c = add("columns_are_trace_prefixes");
    for (std::uint64_t j = 1; j < arr.cols; ++j) {
      const std::uint64_t depth = std::min<std::uint64_t>(j, arr.rows - 1);
      for (std::uint64_t i = 0; i < depth; ++i) {
        const OddStep s = odd_successor(arr.at(i, j));
        if (s.to != arr.at(i + 1, j) || s.halvings != 1) fail(c, cell_name(i, j));
      }
    }
  }

  // 6: skew relation v_(i,j) = 3 v_(i-1,j-1) + 2.
  {
    auto& c = add("skew_relation");
    for (std::uint64_t i = 1; i < arr.rows; ++i)
      for (std::uint64_t j = i; j < arr.cols; ++j)
        if (arr.at(i, j) != 3 * arr.at(i - 1, j - 1) + 2) fail(c, cell_name(i, j));
  }

  // 7: successors of diagonal entries, paired by the parity of n.
  {
    auto& c = add("diagonal_successors");
    const bool n_even = is_even(arr.n);
    const std::uint64_t first = n_even ? 0 : 1;
    for (std::uint64_t d = first; d < arr.rows; d += 2) {
      const Nat& vd = arr.diag(d);
      const Nat a = odd_successor(vd).to;
      if (mod_small(a, 3) != 1) fail(c, "succ of diagonal " + std::to_string(d) + " mod 3");
      if (!(a < vd) && vd != 1) fail(c, "succ of diagonal " + std::to_string(d) + " not smaller");
      if (d + 1 < arr.rows && arr.diag(d + 1) != 4 * a + 1)
        fail(c, "diagonal " + std::to_string(d + 1) + " != 4a+1");
    }
  }

  // 8: consecutive top-row entries merge, paired by the parity of n.
  {
    auto& c = add("u_pair_merges");
    const bool n_even = is_even(arr.n);
    const std::uint64_t first = n_even ? 0 : 1;
    for (std::uint64_t j = first; j + 1 < arr.cols; j += 2) {
      const MergeReport m = merge_within(arr.u(j), arr.u(j + 1), budget);
      if (!m.merged) {
        if (m.budget_exhausted)
          report.budget_exhausted = true;
        else
          fail(c, "u_" + std::to_string(j) + " / u_" + std::to_string(j + 1));
      }
    }
  }

  // 9: u_0 merges with a smaller value not congruent to 2 mod 3 (n > 0).
  {
    auto& c = add("u0_merges_with_smaller");
    if (arr.n > 0) {
      Nat a;
      if (is_even(arr.n)) {
        a = odd_successor(arr.u(0)).to;
      } else if (mod_small(arr.n, 3) == 0) {
        a = arr.n;
      } else {
        a = first_non_two_mod3(arr.n).second;
      }
      if (mod_small(a, 3) == 2) fail(c, "candidate " + a.str() + " = 2 mod 3");
      if (!(a < arr.u(0))) fail(c, "candidate " + a.str() + " not smaller than u_0");
      const MergeReport m = merge_within(arr.u(0), a, budget);
      if (!m.merged) {
        if (m.budget_exhausted)
          report.budget_exhausted = true;
        else
          fail(c, "u_0 / " + a.str());
      }
    }
  }

  if (is_odd(arr.n) && mod_small(arr.u(0), 3) == 0)
    report.deviations.push_back("t0-flag: u_0 is a multiple of 3; t_0 reported as u_0");
  return report;
}

Nat merge_target_value(const DiagonalArray& arr, std::uint64_t i) {
  if (i >= arr.rows) throw std::domain_error("merge_target: index beyond the diagonal window");
  if (is_even(arr.n)) {
    const std::uint64_t base = i - (i % 2);
    return odd_successor(arr.diag(base)).to;
  }
  if (i == 0) return arr.u(0);
  const std::uint64_t base = (i % 2 == 1) ? i : i - 1;
  return odd_successor(arr.diag(base)).to;
}

MergeTarget merge_target(const DiagonalArray& arr, std::uint64_t i, std::uint64_t budget) {
  MergeTarget out;
  out.value = merge_target_value(arr, i);
  out.one_mod3 = mod_small(out.value, 3) == 1;
  const MergeReport m = merge_within(arr.diag(i), out.value, budget);
  out.merged = m.merged;
  out.common = m.common_value;
  return out;
}

LocateResult locate(const Nat& a) {
  require_odd(a, "locate");
  LocateResult res;
  res.value = a;
  Nat x = a;
  while (mod_small(x, 3) == 2) {  // up the column; strictly decreasing
    x = (2 * x - 1) / 3;
    ++res.i;
  }
  while (mod_small(x, 4) == 3) {  // down the top row towards u_0
    x = (x - 1) >> 1;
    ++res.j;
  }
  res.n = (x - 1) >> 2;
  assert(res.i <= res.j);
  assert(array_cell(res.n, res.i, res.j) == a);
  return res;
}

}  // namespace collatznet
