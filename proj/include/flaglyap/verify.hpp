#pragma once

// Property suite C1..C10 run by `flaglyap verify` and the acceptance binary.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace flaglyap {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  double measured = 0.0;   // worst observed error (or count, see detail)
  double threshold = 0.0;
  double seconds = 0.0;    // wall time; kept out of the JSON report
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240501;
  /// Overrides the accuracy threshold of a criterion, keyed by id ("C6").
  std::map<std::string, double> thresholds;
  /// Empty runs everything.
  std::vector<std::string> only;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> progress;
};

std::vector<std::string> criterion_ids();

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts = {});

/// Deterministic JSON summary: wall times are reduced to the pass/fail of the
/// runtime budget so repeated runs compare byte-identical.
nlohmann::json to_json(const std::vector<CriterionResult>& results);

/// One line, e.g. "PASS C1 decomposition suite: measured=3.1e-15 threshold=1e-10 (0.82 s)".
std::string format_line(const CriterionResult& r);

}  // namespace flaglyap
