#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "collatznet/nat.hpp"

namespace collatznet {

enum class SuiteId {
  EquivFourAPlusOne,    // second-odd equivalence of a and 4a+1
  Coupling,             // coupled traces of n, 2n+1, 4n+3
  PredictIterates,      // closed-form odd iterates for 2-adic k > 2
  ReverseCollab,        // one of {a, 2a+1, 4a+1} provably reverse-converges
  ThreeAdic,            // closed-form reverse iterates for multiples of 3
  Reduction21,          // companion values land on 21 mod 24 with closed forms
  ReductionMerge,       // a merges with its companion b_zero(a)
  RepresentativeMerge,  // 24t+21 merges with its small partner
  NetworkProps,         // the nine diagonal-array properties
  LocateRoundtrip,      // every odd number sits in exactly the located cell
  GoldenTables,         // rendered examples match the checked-in files
};

inline constexpr SuiteId kAllSuites[] = {
    SuiteId::EquivFourAPlusOne, SuiteId::Coupling,        SuiteId::PredictIterates,
    SuiteId::ReverseCollab,     SuiteId::ThreeAdic,       SuiteId::Reduction21,
    SuiteId::ReductionMerge,    SuiteId::RepresentativeMerge,
    SuiteId::NetworkProps,      SuiteId::LocateRoundtrip, SuiteId::GoldenTables,
};

const char* suite_name(SuiteId id);
std::optional<SuiteId> suite_from_name(std::string_view name);

struct SuiteSpec {
  SuiteId suite = SuiteId::EquivFourAPlusOne;
  Nat lo = 1;
  Nat hi = 9999;
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
  std::string golden_dir;  // empty: environment variable, then built-in default
};

struct Failure {
  Nat input;
  std::string predicate;
  std::string witness;
};

struct Deviation {
  Nat input;
  std::string note;
};

/// checked == passed + failed.size() + budget_exhausted.size(). Deviations
/// are expected, documented departures (for example strict-equivalence
/// misses in the 2 mod 3 class) and do not affect the counts.
struct SuiteReport {
  SuiteId suite = SuiteId::EquivFourAPlusOne;
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::vector<Failure> failed;
  std::vector<Nat> budget_exhausted;
  std::vector<Deviation> deviations;
  double elapsed_seconds = 0.0;

  bool ok() const { return failed.empty() && budget_exhausted.empty(); }
};

SuiteReport run_suite(const SuiteSpec& spec);

std::vector<SuiteReport> run_all(const Nat& lo, const Nat& hi, std::uint64_t budget,
                                 unsigned workers, const std::string& golden_dir = "");

nlohmann::ordered_json suite_report_json(const SuiteReport& report);

/// Equality on everything except elapsed time.
bool reports_equal_ignoring_time(const SuiteReport& a, const SuiteReport& b);

/// Directory that holds the rendered-example files, after applying the
/// override order: explicit value, COLLATZNET_GOLDEN_DIR, built-in default.
std::string resolve_golden_dir(const std::string& explicit_dir);

}  // namespace collatznet
