#include "collatznet/render.hpp"

#include <sstream>

#include "collatznet/decompose.hpp"

namespace collatznet {

std::string render_terms(const std::vector<Nat>& terms, bool truncated) {
  std::ostringstream out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out << ' ';
    out << terms[i];
  }
  if (truncated) out << " ...";
  out << '\n';
  return out.str();
}

std::string render_coupling(const CouplingReport& rep) {
  std::ostringstream out;
  auto row = [&](const char* label, const std::vector<Nat>& terms) {
    out << label << ':';
    for (const Nat& t : terms) out << ' ' << t;
    out << '\n';
  };
  row("n_i", rep.n_terms);
  row("m_i", rep.m_terms);
  row("l_i", rep.l_terms);
  if (rep.budget_exhausted && rep.m_terms.size() < rep.r + 3) return out.str();

  const std::uint64_t r = rep.r;
  out << "m_i = 2n_i+1 for 0 <= i <= " << r << '\n';
  out << "m_" << r + 1 << " = 2^" << rep.k << " n_" << r + 1 << " + 1 = " << rep.m_terms[r + 1]
      << '\n';
  out << "l_i = 2m_i+1 for 0 <= i <= " << r + 1 << '\n';
  if (rep.merge_case == MergeCase::KGT2_L_MERGES_M) {
    out << "l_" << r + 2 << " = 4 m_" << r + 2 << " + 1 = " << rep.l_terms[r + 2] << '\n';
    out << "l_i = m_i for i >= " << r + 3 << '\n';
  } else {
    out << "l_" << r + 2 << " = 2^" << rep.j << " m_" << r + 2 << " + 1 = " << rep.l_terms[r + 2]
        << '\n';
    out << "m_i = n_i for i >= " << r + 2 << '\n';
  }
  return out.str();
}

namespace {

void append_power_of_4(std::ostringstream& out, std::uint64_t e) {
  if (e == 0)
    out << "1";
  else if (e == 1)
    out << "4";
  else
    out << "4^" << e;
}

}  // namespace

std::string render_a_decomposition(const Nat& a) {
  std::ostringstream out;
  if (a == 1) {
    out << "1";
    return out.str();
  }
  const TwoAdicForm form = two_adic_decompose(a);
  if (form.k == 2) {
    // Expand the jump sum down to the odd base: 4^d x P + 4^(d-1) + ... + 4 + 1.
    const JumpForm base = odd_jump_base(a);
    out << a << " = ";
    append_power_of_4(out, base.d);
    out << " x " << base.p;
    for (std::uint64_t e = base.d; e-- > 0;) {
      out << " + ";
      append_power_of_4(out, e);
    }
  } else if (form.k == 1) {
    out << a << " = 2 x " << form.n << " + 1";
  } else {
    out << a << " = 2^" << form.k << " x " << form.n << " + 1";
  }
  return out.str();
}

std::string render_reduction_table(const std::vector<ReductionRow>& rows) {
  std::ostringstream out;
  for (const ReductionRow& row : rows) {
    out << row.b << " = 12 x " << (row.b - 9) / 12 << " + 9 | " << render_a_decomposition(row.a);
    if (row.a != 1) {
      const ReductionStep step = b_step(row.a);
      switch (step.kind) {
        case ReductionCase::Mod4_3: {
          const Nat d = 2 * row.a + 1;
          out << " | d = " << d << " | 3d = " << 3 * d;
          break;
        }
        case ReductionCase::KGt2: {
          const Nat e = 4 * row.a + 3;
          out << " | e = " << e << " | 3e = " << 3 * e;
          break;
        }
        case ReductionCase::KEq2R1: {
          const Nat d = 2 * *step.p_base + 1;
          out << " | d = " << d << " | 3d = " << 3 * d;
          break;
        }
        case ReductionCase::KEq2RGt2: {
          const Nat e = 4 * *step.p_base + 3;
          out << " | e = " << e << " | 3e = " << 3 * e;
          break;
        }
        case ReductionCase::Unit:
          break;
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string render_network(const DiagonalArray& arr) {
  std::ostringstream out;
  out << "u_i:";
  for (std::uint64_t j = 0; j < arr.cols; ++j) out << ' ' << arr.u(j);
  out << '\n';
  for (std::uint64_t i = 1; i < arr.rows; ++i) {
    out << "v_" << i << ",i:";
    for (std::uint64_t j = i; j < arr.cols; ++j) out << ' ' << arr.at(i, j);
    out << '\n';
  }
  out << "v_i,i:";
  for (std::uint64_t i = 0; i < arr.rows; ++i) out << ' ' << arr.diag(i);
  out << '\n';
  out << "t_i:";
  for (std::uint64_t i = 0; i < arr.rows; ++i) out << ' ' << merge_target_value(arr, i);
  out << '\n';
  return out.str();
}

}  // namespace collatznet
