#include "collatznet/harness.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "collatznet/core.hpp"
#include "collatznet/decompose.hpp"
#include "collatznet/equivalence.hpp"
#include "collatznet/network.hpp"
#include "collatznet/reduction.hpp"
#include "collatznet/render.hpp"
#include "collatznet/reverse.hpp"

#ifndef COLLATZNET_GOLDEN_DIR
#define COLLATZNET_GOLDEN_DIR "tests/golden"
#endif

namespace collatznet {

const char* suite_name(SuiteId id) {
  switch (id) {
    case SuiteId::EquivFourAPlusOne: return "EQUIV_4A1";
    case SuiteId::Coupling: return "COUPLING";
    case SuiteId::PredictIterates: return "PREDICT_ITERATES";
    case SuiteId::ReverseCollab: return "REVERSE_COLLAB";
    case SuiteId::ThreeAdic: return "THREE_ADIC";
    case SuiteId::Reduction21: return "REDUCTION_21";
    case SuiteId::ReductionMerge: return "REDUCTION_MERGE";
    case SuiteId::RepresentativeMerge: return "REPRESENTATIVE_MERGE";
    case SuiteId::NetworkProps: return "NETWORK_PROPS";
    case SuiteId::LocateRoundtrip: return "LOCATE_ROUNDTRIP";
    case SuiteId::GoldenTables: return "GOLDEN_TABLES";
  }
  return "?";
}

std::optional<SuiteId> suite_from_name(std::string_view name) {
  std::string upper(name);
  for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (SuiteId id : kAllSuites)
    if (upper == suite_name(id)) return id;
  return std::nullopt;
}

std::string resolve_golden_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("COLLATZNET_GOLDEN_DIR"); env && *env) return env;
  return COLLATZNET_GOLDEN_DIR;
}

namespace {

struct ChunkResult {
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::vector<Failure> failed;
  std::vector<Nat> budget_exhausted;
  std::vector<Deviation> deviations;
};

void merge_into(SuiteReport& report, ChunkResult&& chunk) {
  report.checked += chunk.checked;
  report.passed += chunk.passed;
  for (auto& f : chunk.failed) report.failed.push_back(std::move(f));
  for (auto& b : chunk.budget_exhausted) report.budget_exhausted.push_back(std::move(b));
  for (auto& d : chunk.deviations) report.deviations.push_back(std::move(d));
}

enum class Domain { OddValues, AllValues };

using CheckFn = std::function<void(const Nat&, std::uint64_t budget, ChunkResult&)>;

// Processes the spec's range chunk-parallel and merges chunk results in
// range order, so the report does not depend on the worker count.
void run_range(const SuiteSpec& spec, Domain domain, const CheckFn& check, SuiteReport& report) {
  const Nat step = domain == Domain::OddValues ? 2 : 1;
  Nat first = spec.lo < 0 ? Nat(0) : spec.lo;
  if (domain == Domain::OddValues) {
    if (first < 1) first = 1;
    if (is_even(first)) ++first;
  }
  if (spec.hi < first) return;
  const Nat count = (spec.hi - first) / step + 1;

  const unsigned workers =
      spec.workers < 1 ? 1u : (count < spec.workers ? static_cast<unsigned>(count) : spec.workers);
  std::vector<ChunkResult> chunks(workers);

  auto worker_body = [&](unsigned w) {
    const Nat begin_idx = count * w / workers;
    const Nat end_idx = count * (w + 1) / workers;
    ChunkResult& chunk = chunks[w];
    Nat value = first + begin_idx * step;
    for (Nat idx = begin_idx; idx < end_idx; ++idx, value += step)
      check(value, spec.budget, chunk);
  };

  if (workers <= 1) {
    if (workers == 1) worker_body(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker_body, w);
    for (auto& t : threads) t.join();
  }
  for (auto& chunk : chunks) merge_into(report, std::move(chunk));
}

void check_equiv_4a1(const Nat& a, std::uint64_t, ChunkResult& chunk) {
  ++chunk.checked;
  if (are_equivalent(a, 4 * a + 1)) {
    ++chunk.passed;
  } else {
    chunk.failed.push_back(Failure{a, "second_odd(a) == second_odd(4a+1)",
                                   "second_odd(a) = " + second_odd(a).str()});
  }
}

void check_coupling(const Nat& n0, std::uint64_t budget, ChunkResult& chunk) {
  ++chunk.checked;
  const CouplingReport rep = coupling_analysis(n0, budget);
  if (rep.relations_verified && !rep.budget_exhausted) {
    ++chunk.passed;
  } else if (rep.budget_exhausted) {
    chunk.budget_exhausted.push_back(n0);
  } else {
    chunk.failed.push_back(Failure{n0, "coupled term relations", rep.failure});
  }
}

void check_predict_iterates(const Nat& a, std::uint64_t, ChunkResult& chunk) {
  if (a == 1 || mod_small(a, 4) != 1) return;
  if (nu2(a - 1) <= 2) return;
  ++chunk.checked;
  const IteratePrediction pred = predict_odd_iterates(a);
  if (pred.matches && pred.merge_ok) {
    ++chunk.passed;
  } else {
    chunk.failed.push_back(Failure{a, "predicted odd iterates and merge base",
                                   pred.matches ? "merge base mismatch" : "iterate mismatch"});
  }
}

void check_reverse_collab(const Nat& a, std::uint64_t budget, ChunkResult& chunk) {
  ++chunk.checked;
  const CollabReport rep = collaborative_convergence(a);
  std::string problem;
  if (rep.provable_convergers.empty()) problem = "no provable converger";
  if (problem.empty() && !rep.relations_checked) problem = "coupled relations failed";
  if (problem.empty() && mod_small(rep.witness, 3) != 0) problem = "witness not a multiple of 3";
  if (problem.empty()) {
    Nat start = rep.a;
    if (rep.provable_convergers[0] == Member::TwicePlusOne) start = 2 * rep.a + 1;
    if (rep.provable_convergers[0] == Member::QuadPlusOne) start = 4 * rep.a + 1;
    const ReverseTrace trace = reverse_odd_trace(start, budget);
    if (trace.status == ReverseStatus::BudgetExhausted) {
      chunk.budget_exhausted.push_back(a);
      return;
    }
    if (!trace.converged_value || *trace.converged_value != rep.witness)
      problem = "reverse trace does not end at the witness";
    else if (trace.terms.size() - 1 != rep.witness_index)
      problem = "witness index mismatch";
  }
  if (problem.empty()) {
    ++chunk.passed;
  } else {
    chunk.failed.push_back(Failure{a, "provable reverse convergence", std::move(problem)});
  }
}

void check_three_adic(const Nat& a, std::uint64_t, ChunkResult& chunk) {
  if (mod_small(a, 3) != 0) return;
  ++chunk.checked;
  const ThreeAdicReverse tar = three_adic_reverse(a);
  if (tar.q_matches && tar.f_matches && tar.branch_confirmed) {
    ++chunk.passed;
  } else {
    std::string witness = !tar.q_matches   ? "q iterates mismatch"
                          : !tar.f_matches ? "f iterates mismatch"
                                           : "final iterate not a multiple of 3";
    chunk.failed.push_back(Failure{a, "closed-form reverse iterates", std::move(witness)});
  }
}

void check_reduction_21(const Nat& a, std::uint64_t budget, ChunkResult& chunk) {
  if (a < 3) return;
  ++chunk.checked;
  const std::vector<ReductionRow> rows = b_trace(a, budget);
  if (rows.back().a != 1) {
    chunk.budget_exhausted.push_back(a);
    return;
  }
  std::string problem;
  for (std::size_t i = 0; i < rows.size() && problem.empty(); ++i) {
    const Nat& b = rows[i].b;
    if (mod_small(b, 24) != 21) {
      problem = "b_" + std::to_string(i) + " = " + b.str() + " != 21 mod 24";
      break;
    }
    if (i == 0) continue;
    const Nat& prev = rows[i - 1].a;
    const Nat& cur = rows[i].a;
    if (prev == 1) {
      if (b != 21) problem = "b after 1 != 21";
      continue;
    }
    const std::uint64_t k = nu2(prev - 1);
    if (mod_small(prev, 4) == 3) {
      if (b != 3 * (2 * prev + 1)) problem = "closed form 3(2a+1) at index " + std::to_string(i);
      if (problem.empty() && b != 4 * cur + 1)
        problem = "height-1 jump relation at index " + std::to_string(i);
    } else if (k > 2) {
      if (b != 3 * (4 * prev + 3)) problem = "closed form 3(4a+3) at index " + std::to_string(i);
      if (problem.empty() && b != 16 * cur + 5)
        problem = "height-2 jump relation at index " + std::to_string(i);
    } else {
      const JumpForm base = odd_jump_base(prev);
      const Nat expected = (base.p > 1 && nu2(base.p - 1) == 1) ? 3 * (2 * base.p + 1)
                                                                : 3 * (4 * base.p + 3);
      if (b != expected) problem = "k=2 closed form at index " + std::to_string(i);
    }
  }
  if (problem.empty()) {
    ++chunk.passed;
  } else {
    chunk.failed.push_back(Failure{a, "companion-value laws", std::move(problem)});
  }
}

void check_reduction_merge(const Nat& a, std::uint64_t budget, ChunkResult& chunk) {
  if (a < 3) return;
  ++chunk.checked;
  const Nat b0 = b_zero(a);
  const MergeReport m = merge_within(a, b0, budget);
  if (!m.merged) {
    if (m.budget_exhausted)
      chunk.budget_exhausted.push_back(a);
    else
      chunk.failed.push_back(Failure{a, "a merges with b_zero(a)", "b_0 = " + b0.str()});
    return;
  }
  if (!are_equivalent(a, b0)) {
    // Strict second-odd equivalence holds except when b_0 descends from
    // 2a+1, which happens exactly in the 2 mod 3 class.
    if (mod_small(a, 3) == 2) {
      chunk.deviations.push_back(Deviation{a, "strict-equivalence miss (2 mod 3 class)"});
    } else {
      chunk.failed.push_back(
          Failure{a, "strict equivalence outside the 2 mod 3 class", "b_0 = " + b0.str()});
      return;
    }
  }
  ++chunk.passed;
}

void check_representative_merge(const Nat& t, std::uint64_t budget, ChunkResult& chunk) {
  ++chunk.checked;
  const RepresentativeMerge rm = representative_merge(t, budget);
  if (rm.report.merged) {
    ++chunk.passed;
  } else if (rm.report.budget_exhausted) {
    chunk.budget_exhausted.push_back(t);
  } else {
    chunk.failed.push_back(
        Failure{t, "24t+21 merges with its partner", "partner = " + rm.target.str()});
  }
}

void check_network_props(const Nat& n, std::uint64_t budget, ChunkResult& chunk) {
  if (mod_small(n, 3) == 1) return;
  ++chunk.checked;
  const ArrayPropertyReport rep = verify_array_properties(build_array(n, 8, 13), budget);
  for (const std::string& note : rep.deviations) chunk.deviations.push_back(Deviation{n, note});
  if (rep.budget_exhausted) {
    chunk.budget_exhausted.push_back(n);
    return;
  }
  if (rep.all_passed()) {
    ++chunk.passed;
    return;
  }
  for (const PropertyCheck& check : rep.checks)
    if (!check.passed) {
      chunk.failed.push_back(Failure{n, check.name, check.witness});
      return;
    }
}

void check_locate_roundtrip(const Nat& a, std::uint64_t, ChunkResult& chunk) {
  ++chunk.checked;
  const LocateResult res = locate(a);
  if (mod_small(res.n, 3) != 1 && res.i <= res.j && array_cell(res.n, res.i, res.j) == a) {
    ++chunk.passed;
  } else {
    chunk.failed.push_back(Failure{a, "located cell rebuilds to the input",
                                   "n = " + res.n.str() + ", i = " + std::to_string(res.i) +
                                       ", j = " + std::to_string(res.j)});
  }
}

std::string first_difference(const std::string& expected, const std::string& actual) {
  std::size_t pos = 0;
  while (pos < expected.size() && pos < actual.size() && expected[pos] == actual[pos]) ++pos;
  std::ostringstream out;
  out << "first difference at byte " << pos;
  if (pos >= expected.size())
    out << " (expected output ends)";
  else if (pos >= actual.size())
    out << " (actual output ends)";
  else
    out << ": expected '" << expected[pos] << "', got '" << actual[pos] << "'";
  return out.str();
}

void run_golden_tables(const SuiteSpec& spec, SuiteReport& report) {
  const std::string dir = resolve_golden_dir(spec.golden_dir);
  struct Item {
    const char* file;
    std::function<std::string()> render;
  };
  const Item items[] = {
      {"example1_collatz27.txt", [] { return render_terms(collatz_trace(27).terms); }},
      {"example2_odds27.txt", [] { return render_terms(odd_trace(27).terms); }},
      {"coupling_n3.txt", [] { return render_coupling(coupling_analysis(3)); }},
      {"table_319.txt", [] { return render_reduction_table(b_trace(319)); }},
      {"network_n0.txt", [] { return render_network(build_array(0, 8, 13)); }},
      {"network_n3.txt", [] { return render_network(build_array(3, 7, 12)); }},
  };
  Nat index = 0;
  for (const Item& item : items) {
    ++index;
    ++report.checked;
    std::ifstream in(dir + "/" + item.file, std::ios::binary);
    if (!in) {
      report.failed.push_back(Failure{index, item.file, "file not found under " + dir});
      continue;
    }
    std::ostringstream content;
    content << in.rdbuf();
    const std::string expected = content.str();
    const std::string actual = item.render();
    if (expected == actual) {
      ++report.passed;
    } else {
      report.failed.push_back(Failure{index, item.file, first_difference(expected, actual)});
    }
  }
}

}  // namespace

SuiteReport run_suite(const SuiteSpec& spec) {
  SuiteReport report;
  report.suite = spec.suite;
  const auto start = std::chrono::steady_clock::now();
  switch (spec.suite) {
    case SuiteId::EquivFourAPlusOne:
      run_range(spec, Domain::OddValues, check_equiv_4a1, report);
      break;
    case SuiteId::Coupling:
      run_range(spec, Domain::OddValues, check_coupling, report);
      break;
    case SuiteId::PredictIterates:
      run_range(spec, Domain::OddValues, check_predict_iterates, report);
      break;
    case SuiteId::ReverseCollab:
      run_range(spec, Domain::OddValues, check_reverse_collab, report);
      break;
    case SuiteId::ThreeAdic:
      run_range(spec, Domain::OddValues, check_three_adic, report);
      break;
    case SuiteId::Reduction21:
      run_range(spec, Domain::OddValues, check_reduction_21, report);
      break;
    case SuiteId::ReductionMerge:
      run_range(spec, Domain::OddValues, check_reduction_merge, report);
      break;
    case SuiteId::RepresentativeMerge:
      run_range(spec, Domain::AllValues, check_representative_merge, report);
      break;
    case SuiteId::NetworkProps:
      run_range(spec, Domain::AllValues, check_network_props, report);
      break;
    case SuiteId::LocateRoundtrip:
      run_range(spec, Domain::OddValues, check_locate_roundtrip, report);
      break;
    case SuiteId::GoldenTables:
      run_golden_tables(spec, report);
      break;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SuiteReport> run_all(const Nat& lo, const Nat& hi, std::uint64_t budget,
                                 unsigned workers, const std::string& golden_dir) {
  std::vector<SuiteReport> reports;
  reports.reserve(std::size(kAllSuites));
  for (SuiteId id : kAllSuites) {
    SuiteSpec spec;
    spec.suite = id;
    spec.lo = lo;
    spec.hi = hi;
    spec.budget = budget;
    spec.workers = workers;
    spec.golden_dir = golden_dir;
    reports.push_back(run_suite(spec));
  }
  return reports;
}

nlohmann::ordered_json suite_report_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = suite_name(report.suite);
  j["checked"] = report.checked;
  j["passed"] = report.passed;
  j["failed"] = nlohmann::ordered_json::array();
  for (const Failure& f : report.failed)
    j["failed"].push_back({{"input", f.input.str()}, {"predicate", f.predicate},
                           {"witness", f.witness}});
  j["budget_exhausted"] = nlohmann::ordered_json::array();
  for (const Nat& b : report.budget_exhausted) j["budget_exhausted"].push_back(b.str());
  j["deviations"] = nlohmann::ordered_json::array();
  for (const Deviation& d : report.deviations)
    j["deviations"].push_back({{"input", d.input.str()}, {"note", d.note}});
  j["elapsed_ms"] = report.elapsed_seconds * 1000.0;
  return j;
}

bool reports_equal_ignoring_time(const SuiteReport& a, const SuiteReport& b) {
  auto ja = suite_report_json(a);
  auto jb = suite_report_json(b);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  return ja == jb;
}

}  // namespace collatznet
