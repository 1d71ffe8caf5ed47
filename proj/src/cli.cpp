#include "collatznet/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "collatznet/core.hpp"
#include "collatznet/decompose.hpp"
#include "collatznet/equivalence.hpp"
#include "collatznet/harness.hpp"
#include "collatznet/network.hpp"
#include "collatznet/reduction.hpp"
#include "collatznet/render.hpp"
#include "collatznet/reverse.hpp"

namespace collatznet {

namespace {

using nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

Nat parse_nat(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::domain_error("not a non-negative integer: '" + text + "'");
  return Nat(text);
}

ordered_json terms_json(const std::vector<Nat>& terms) {
  ordered_json arr = ordered_json::array();
  for (const Nat& t : terms) arr.push_back(t.str());
  return arr;
}

void emit_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

void emit_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

const char* member_name(Member m) {
  switch (m) {
    case Member::Self: return "A";
    case Member::TwicePlusOne: return "2A+1";
    case Member::QuadPlusOne: return "4A+1";
  }
  return "?";
}

const char* status_name(ReverseStatus s) {
  switch (s) {
    case ReverseStatus::Trivial: return "TRIVIAL";
    case ReverseStatus::Converged: return "CONVERGED";
    case ReverseStatus::BudgetExhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

const char* merge_case_name(MergeCase c) {
  return c == MergeCase::K2_M_MERGES_N ? "K2_M_MERGES_N" : "KGT2_L_MERGES_M";
}

const char* reduction_case_name(ReductionCase c) {
  switch (c) {
    case ReductionCase::Unit: return "UNIT";
    case ReductionCase::Mod4_3: return "MOD4_3";
    case ReductionCase::KGt2: return "K_GT_2";
    case ReductionCase::KEq2R1: return "K_EQ_2_R1";
    case ReductionCase::KEq2RGt2: return "K_EQ_2_RGT2";
  }
  return "?";
}

int cmd_seq(const Nat& a, std::uint64_t max_steps, Format format, std::ostream& out) {
  const RawTrace trace = collatz_trace(a, max_steps);
  if (format == Format::Json) {
    ordered_json j;
    j["a"] = a.str();
    j["terms"] = terms_json(trace.terms);
    j["truncated"] = trace.truncated;
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"index", "term"});
    for (std::size_t i = 0; i < trace.terms.size(); ++i)
      emit_csv_row(out, {std::to_string(i), trace.terms[i].str()});
  } else {
    out << render_terms(trace.terms, trace.truncated);
  }
  return trace.truncated ? kExitBudget : kExitOk;
}

int cmd_odds(const Nat& a, std::uint64_t max_steps, Format format, std::ostream& out) {
  const OddTrace trace = odd_trace(a, max_steps);
  if (format == Format::Json) {
    ordered_json j;
    j["a"] = a.str();
    j["terms"] = terms_json(trace.terms);
    ordered_json halvings = ordered_json::array();
    for (const OddStep& s : trace.steps) halvings.push_back(s.halvings);
    j["halvings"] = halvings;
    j["truncated"] = trace.truncated;
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"index", "term", "halvings_to_next"});
    for (std::size_t i = 0; i < trace.terms.size(); ++i)
      emit_csv_row(out, {std::to_string(i), trace.terms[i].str(),
                         i < trace.steps.size() ? std::to_string(trace.steps[i].halvings) : ""});
  } else {
    out << render_terms(trace.terms, trace.truncated);
  }
  return trace.truncated ? kExitBudget : kExitOk;
}

int cmd_reverse(const Nat& a, std::uint64_t budget, Format format, std::ostream& out) {
  const ReverseTrace trace = reverse_odd_trace(a, budget);
  if (format == Format::Json) {
    ordered_json j;
    j["a"] = a.str();
    j["terms"] = terms_json(trace.terms);
    j["status"] = status_name(trace.status);
    if (trace.converged_value) j["converged_value"] = trace.converged_value->str();
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"index", "term"});
    for (std::size_t i = 0; i < trace.terms.size(); ++i)
      emit_csv_row(out, {std::to_string(i), trace.terms[i].str()});
  } else {
    out << render_terms(trace.terms, trace.status == ReverseStatus::BudgetExhausted);
    out << status_name(trace.status);
    if (trace.converged_value) out << ' ' << *trace.converged_value;
    out << '\n';
  }
  return trace.status == ReverseStatus::BudgetExhausted ? kExitBudget : kExitOk;
}

int cmd_couple(const Nat& n0, std::uint64_t budget, Format format, std::ostream& out) {
  const CouplingReport rep = coupling_analysis(n0, budget);
  if (format == Format::Json) {
    ordered_json j;
    j["n0"] = n0.str();
    j["r"] = rep.r;
    j["k"] = rep.k;
    j["j"] = rep.j;
    j["merge_case"] = merge_case_name(rep.merge_case);
    j["relations_verified"] = rep.relations_verified;
    j["budget_exhausted"] = rep.budget_exhausted;
    if (!rep.failure.empty()) j["failure"] = rep.failure;
    j["n"] = terms_json(rep.n_terms);
    j["m"] = terms_json(rep.m_terms);
    j["l"] = terms_json(rep.l_terms);
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"row", "index", "value"});
    auto rows = {std::pair{"n", &rep.n_terms}, std::pair{"m", &rep.m_terms},
                 std::pair{"l", &rep.l_terms}};
    for (const auto& [label, terms] : rows)
      for (std::size_t i = 0; i < terms->size(); ++i)
        emit_csv_row(out, {label, std::to_string(i), (*terms)[i].str()});
  } else {
    out << render_coupling(rep);
  }
  if (rep.budget_exhausted) return kExitBudget;
  return rep.relations_verified ? kExitOk : kExitCounterexample;
}

int cmd_decompose(const Nat& a, std::uint64_t budget, Format format, std::ostream& out) {
  const TwoAdicForm form = two_adic_decompose(a);
  ordered_json j;
  j["a"] = a.str();
  j["two_adic"] = {{"k", form.k}, {"n", form.n.str()}};
  std::ostringstream text;
  text << a << " = 2^" << form.k << " x " << form.n << " + 1\n";
  if (mod_small(a, 4) == 1) {
    const JumpForm jump = max_jump_base(a);
    j["max_jump"] = {{"p", jump.p.str()}, {"d", jump.d}};
    j["jump_identity"] = jump_identity_check(jump.p, jump.d);
    text << "max jump: " << a << " = jump of height " << jump.d << " from " << jump.p << '\n';
    if (mod_small(a, 8) == 5) {
      const JumpForm odd_base = odd_jump_base(a);
      j["odd_jump_base"] = {{"p", odd_base.p.str()}, {"d", odd_base.d}};
      text << "odd jump base: height " << odd_base.d << " from " << odd_base.p << '\n';
    }
  }
  if (form.k == 1) {
    // Which of the two coupled alternatives absorbs the sequence of a:
    // decided by the first multi-halving step of the n-trace.
    const CouplingReport rep = coupling_analysis(form.n, budget);
    const bool merges_with_n = rep.merge_case == MergeCase::K2_M_MERGES_N;
    const Nat partner = merges_with_n ? form.n : 2 * a + 1;
    const MergeReport m = merge_within(a, partner, budget);
    j["k1_merge"] = {{"alternative", merges_with_n ? "n" : "2a+1"},
                     {"partner", partner.str()},
                     {"confirmed", m.merged},
                     {"common_value", m.merged ? m.common_value->str() : ""}};
    text << "k=1: merges with " << (merges_with_n ? "n = " : "2a+1 = ") << partner
         << (m.merged ? " (common value " + m.common_value->str() + ")" : " (unconfirmed)")
         << '\n';
  }
  if (format == Format::Json) {
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"field", "value"});
    emit_csv_row(out, {"a", a.str()});
    emit_csv_row(out, {"k", std::to_string(form.k)});
    emit_csv_row(out, {"n", form.n.str()});
    if (j.contains("max_jump")) {
      emit_csv_row(out, {"max_jump_p", j["max_jump"]["p"].get<std::string>()});
      emit_csv_row(out, {"max_jump_d", std::to_string(j["max_jump"]["d"].get<std::uint64_t>())});
    }
  } else {
    out << text.str();
  }
  return kExitOk;
}

int cmd_reduce(const Nat& a, Format format, std::ostream& out) {
  const auto [b, t] = reduce_to_residue21(a);
  if (format == Format::Json) {
    ordered_json j;
    j["a"] = a.str();
    j["b0"] = b.str();
    j["t"] = t.str();
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"a", "b0", "t"});
    emit_csv_row(out, {a.str(), b.str(), t.str()});
  } else {
    out << "b0 = " << b << '\n' << "t = " << t << '\n';
  }
  return kExitOk;
}

int cmd_table(const Nat& a, std::uint64_t max_steps, Format format, std::ostream& out) {
  const std::vector<ReductionRow> rows = b_trace(a, max_steps);
  if (format == Format::Json) {
    ordered_json j;
    j["a"] = a.str();
    j["rows"] = ordered_json::array();
    for (const ReductionRow& row : rows) {
      ordered_json r;
      r["b"] = row.b.str();
      r["a"] = row.a.str();
      r["decomposition"] = render_a_decomposition(row.a);
      if (row.a != 1) {
        const ReductionStep step = b_step(row.a);
        r["case"] = reduction_case_name(step.kind);
        if (step.p_base) r["p_base"] = step.p_base->str();
        r["b_next"] = step.b.str();
      }
      j["rows"].push_back(std::move(r));
    }
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"index", "b", "a", "case"});
    for (std::size_t i = 0; i < rows.size(); ++i)
      emit_csv_row(out, {std::to_string(i), rows[i].b.str(), rows[i].a.str(),
                         rows[i].a != 1 ? reduction_case_name(b_step(rows[i].a).kind) : "UNIT"});
  } else {
    out << render_reduction_table(rows);
  }
  return rows.back().a == 1 ? kExitOk : kExitBudget;
}

int cmd_network(const Nat& n, std::uint64_t rows, std::uint64_t cols, bool check,
                std::uint64_t budget, Format format, std::ostream& out) {
  const DiagonalArray arr = build_array(n, rows, cols);
  ArrayPropertyReport report;
  if (check) report = verify_array_properties(arr, budget);

  if (format == Format::Json) {
    ordered_json j;
    j["n"] = n.str();
    j["rows"] = arr.rows;
    j["cols"] = arr.cols;
    j["u"] = terms_json(arr.v[0]);
    j["v"] = ordered_json::array();
    for (std::uint64_t i = 1; i < arr.rows; ++i)
      j["v"].push_back({{"i", i}, {"values", terms_json(arr.v[i])}});
    ordered_json diag = ordered_json::array();
    ordered_json targets = ordered_json::array();
    for (std::uint64_t i = 0; i < arr.rows; ++i) {
      diag.push_back(arr.diag(i).str());
      const Nat t = merge_target_value(arr, i);
      targets.push_back({{"i", i}, {"value", t.str()}, {"one_mod3", mod_small(t, 3) == 1}});
    }
    j["diagonal"] = std::move(diag);
    j["targets"] = std::move(targets);
    if (check) {
      ordered_json props = ordered_json::array();
      for (const PropertyCheck& c : report.checks)
        props.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
      j["properties"] = std::move(props);
      j["deviations"] = report.deviations;
      j["budget_exhausted"] = report.budget_exhausted;
    }
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"kind", "i", "j", "value"});
    for (std::uint64_t j2 = 0; j2 < arr.cols; ++j2)
      emit_csv_row(out, {"u", "0", std::to_string(j2), arr.u(j2).str()});
    for (std::uint64_t i = 1; i < arr.rows; ++i)
      for (std::uint64_t j2 = i; j2 < arr.cols; ++j2)
        emit_csv_row(out, {"v", std::to_string(i), std::to_string(j2), arr.at(i, j2).str()});
    for (std::uint64_t i = 0; i < arr.rows; ++i)
      emit_csv_row(out, {"t", std::to_string(i), "", merge_target_value(arr, i).str()});
  } else {
    out << render_network(arr);
    if (check) {
      for (const PropertyCheck& c : report.checks)
        out << (c.passed ? "pass " : "FAIL ") << c.name
            << (c.witness.empty() ? "" : " [" + c.witness + "]") << '\n';
      for (const std::string& note : report.deviations) out << "deviation: " << note << '\n';
    }
  }
  if (check && report.budget_exhausted) return kExitBudget;
  if (check && !report.all_passed()) return kExitCounterexample;
  return kExitOk;
}

int cmd_locate(const Nat& a, Format format, std::ostream& out) {
  const LocateResult res = locate(a);
  if (format == Format::Json) {
    ordered_json j;
    j["n"] = res.n.str();
    j["i"] = res.i;
    j["j"] = res.j;
    j["value"] = res.value.str();
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"n", "i", "j", "value"});
    emit_csv_row(out, {res.n.str(), std::to_string(res.i), std::to_string(res.j),
                       res.value.str()});
  } else {
    out << "n = " << res.n << ", i = " << res.i << ", j = " << res.j << ", value = " << res.value
        << '\n';
  }
  return kExitOk;
}

int cmd_target(const Nat& n, std::uint64_t i, std::uint64_t rows, std::uint64_t cols,
               std::uint64_t budget, Format format, std::ostream& out) {
  const DiagonalArray arr = build_array(n, rows, cols);
  const MergeTarget target = merge_target(arr, i, budget);
  if (format == Format::Json) {
    ordered_json j;
    j["n"] = n.str();
    j["i"] = i;
    j["value"] = target.value.str();
    j["one_mod3"] = target.one_mod3;
    j["merged"] = target.merged;
    if (target.common) j["common_value"] = target.common->str();
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"n", "i", "value", "one_mod3", "merged"});
    emit_csv_row(out, {n.str(), std::to_string(i), target.value.str(),
                       target.one_mod3 ? "true" : "false", target.merged ? "true" : "false"});
  } else {
    out << "t_" << i << " = " << target.value;
    if (target.merged) out << " (merges with " << arr.diag(i) << " at " << *target.common << ")";
    if (!target.one_mod3) out << " [flag: not 1 mod 3]";
    out << '\n';
  }
  return target.merged ? kExitOk : kExitBudget;
}

int cmd_verify(const std::string& suite_arg, const Nat& lo, const Nat& hi, std::uint64_t budget,
               unsigned workers, const std::string& golden_dir, Format format, std::ostream& out,
               std::ostream& err) {
  std::vector<SuiteReport> reports;
  std::string lowered = suite_arg;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "all") {
    reports = run_all(lo, hi, budget, workers, golden_dir);
  } else {
    const auto id = suite_from_name(suite_arg);
    if (!id) {
      err << "unknown suite '" << suite_arg << "'\n";
      return kExitUsage;
    }
    SuiteSpec spec;
    spec.suite = *id;
    spec.lo = lo;
    spec.hi = hi;
    spec.budget = budget;
    spec.workers = workers;
    spec.golden_dir = golden_dir;
    reports.push_back(run_suite(spec));
  }

  if (format == Format::Json) {
    ordered_json j = ordered_json::array();
    for (const SuiteReport& r : reports) j.push_back(suite_report_json(r));
    emit_json(out, j);
  } else if (format == Format::Csv) {
    emit_csv_row(out, {"suite", "checked", "passed", "failed", "budget_exhausted", "deviations",
                       "elapsed_ms"});
    for (const SuiteReport& r : reports)
      emit_csv_row(out, {suite_name(r.suite), std::to_string(r.checked),
                         std::to_string(r.passed), std::to_string(r.failed.size()),
                         std::to_string(r.budget_exhausted.size()),
                         std::to_string(r.deviations.size()),
                         std::to_string(r.elapsed_seconds * 1000.0)});
  } else {
    for (const SuiteReport& r : reports) {
      out << suite_name(r.suite) << ": checked=" << r.checked << " passed=" << r.passed
          << " failed=" << r.failed.size() << " budget_exhausted=" << r.budget_exhausted.size()
          << " deviations=" << r.deviations.size() << " elapsed=" << r.elapsed_seconds << "s\n";
      for (const Failure& f : r.failed)
        out << "  FAIL input=" << f.input << " predicate=\"" << f.predicate << "\" witness=\""
            << f.witness << "\"\n";
      for (const Nat& b : r.budget_exhausted) out << "  BUDGET input=" << b << '\n';
    }
  }

  bool any_failed = false;
  bool any_budget = false;
  for (const SuiteReport& r : reports) {
    any_failed = any_failed || !r.failed.empty();
    any_budget = any_budget || !r.budget_exhausted.empty();
  }
  if (any_failed) return kExitCounterexample;
  if (any_budget) return kExitBudget;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collatz odd-trace toolkit: traces, decompositions, reverse sequences,\n"
               "the 24t+21 reduction, diagonal arrays, and range verification."};
  app.require_subcommand(1);

  std::string format_arg = "text";
  app.add_option("--format", format_arg, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  std::uint64_t budget = kDefaultBudget;
  app.add_option("--budget", budget, "Odd-step budget for trace searches")
      ->envname("COLLATZNET_BUDGET")
      ->capture_default_str();
  std::uint64_t max_steps = kDefaultBudget;
  app.add_option("--max-steps", max_steps, "Step cap for seq/odds/table traces")
      ->capture_default_str();
  app.fallthrough();

  std::string a_seq, a_odds, a_rev, a_couple, a_dec, a_red, a_tab, a_net, a_loc, a_tgt;
  auto* seq = app.add_subcommand("seq", "Collatz sequence of A, stopped at the first 1");
  seq->add_option("A", a_seq, "starting number (>= 1)")->required();
  auto* odds = app.add_subcommand("odds", "Odd numbers of the Collatz sequence of odd A");
  odds->add_option("A", a_odds, "odd starting number")->required();
  auto* reverse = app.add_subcommand("reverse", "Reverse odd trace of odd A");
  reverse->add_option("A", a_rev, "odd starting number")->required();
  auto* couple = app.add_subcommand("couple", "Coupled traces of N, 2N+1 and 4N+3");
  couple->add_option("N", a_couple, "odd starting number")->required();
  auto* decompose = app.add_subcommand("decompose", "2-adic and jump decompositions of odd A > 1");
  decompose->add_option("A", a_dec, "odd number > 1")->required();
  auto* reduce = app.add_subcommand("reduce", "Representative of A in the class 21 mod 24");
  reduce->add_option("A", a_red, "odd starting number")->required();
  auto* table = app.add_subcommand("table", "Companion-value table along the odd trace of A");
  table->add_option("A", a_tab, "odd number > 1")->required();

  std::uint64_t rows = 8, cols = 13;
  bool check = false;
  auto* network = app.add_subcommand("network", "Diagonal array for N (N != 1 mod 3)");
  network->add_option("N", a_net, "array index")->required();
  network->add_option("--rows", rows, "diagonal window height")->capture_default_str();
  network->add_option("--cols", cols, "window width")->capture_default_str();
  network->add_flag("--check", check, "verify the nine array properties");

  auto* locate = app.add_subcommand("locate", "Array cell that holds odd A");
  locate->add_option("A", a_loc, "odd number")->required();

  std::uint64_t target_i = 0;
  std::uint64_t target_rows = 0;
  auto* target = app.add_subcommand("target", "Merge target of diagonal entry I of array N");
  target->add_option("N", a_tgt, "array index")->required();
  target->add_option("I", target_i, "diagonal index")->required();
  target->add_option("--rows", target_rows, "diagonal window height (default: fits I)");

  std::string suite_arg = "all";
  std::string range_arg = "1..9999";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string golden_dir;
  auto* verify = app.add_subcommand("verify", "Range verification suites");
  verify->add_option("--suite", suite_arg, "suite id or 'all'")->capture_default_str();
  verify->add_option("--range", range_arg, "inclusive range LO..HI")->capture_default_str();
  verify->add_option("--workers", workers, "parallel workers")->capture_default_str();
  verify->add_option("--golden-dir", golden_dir, "directory with the rendered-example files");

  std::vector<const char*> argv;
  argv.push_back("collatznet");
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  const Format format = format_arg == "json"  ? Format::Json
                        : format_arg == "csv" ? Format::Csv
                                              : Format::Text;
  try {
    if (*seq) return cmd_seq(parse_nat(a_seq), max_steps, format, out);
    if (*odds) return cmd_odds(parse_nat(a_odds), max_steps, format, out);
    if (*reverse) return cmd_reverse(parse_nat(a_rev), budget, format, out);
    if (*couple) return cmd_couple(parse_nat(a_couple), budget, format, out);
    if (*decompose) return cmd_decompose(parse_nat(a_dec), budget, format, out);
    if (*reduce) return cmd_reduce(parse_nat(a_red), format, out);
    if (*table) return cmd_table(parse_nat(a_tab), max_steps, format, out);
    if (*network) return cmd_network(parse_nat(a_net), rows, cols, check, budget, format, out);
    if (*locate) return cmd_locate(parse_nat(a_loc), format, out);
    if (*target) {
      const std::uint64_t need = std::max<std::uint64_t>(target_rows, target_i + 1);
      const std::uint64_t r = std::max<std::uint64_t>(need, 8);
      return cmd_target(parse_nat(a_tgt), target_i, r, std::max<std::uint64_t>(r, 13), budget,
                        format, out);
    }
    if (*verify) {
      const auto sep = range_arg.find("..");
      if (sep == std::string::npos) {
        err << "range must look like LO..HI\n";
        return kExitUsage;
      }
      const Nat lo = parse_nat(range_arg.substr(0, sep));
      const Nat hi = parse_nat(range_arg.substr(sep + 2));
      if (hi < lo) {
        err << "range upper bound below lower bound\n";
        return kExitUsage;
      }
      return cmd_verify(suite_arg, lo, hi, budget, workers, golden_dir, format, out, err);
    }
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace collatznet
