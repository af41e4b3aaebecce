#pragma once

#include "dmod/compare.hpp"

#include <istream>
#include <string>
#include <vector>

namespace dmod {

/// One named input with the report fields it is expected to produce.
/// Expectation keys are dotted paths into the JSON report, for example
/// "freeness.status" or "indirect.smc.level".
struct CorpusCase {
  std::string name;
  std::string f;
  std::vector<std::string> vars;
  AnalyzeOptions options;
  std::vector<std::pair<std::string, std::string>> expect;
};

/// Format: "[case NAME]" opens a record; "key = value" lines follow.
/// Keys: f, vars, k, method, max_res_length, budget_gb_seconds,
/// budget_stage_seconds, expect.<path>.  '#' starts a comment line.
std::vector<CorpusCase> parse_corpus(std::istream &in);

struct CaseOutcome {
  std::string name;
  bool matched = false;
  std::string final_verdict;
  std::vector<std::string> mismatches; ///< "path: expected X, got Y"
  std::string error;
  double seconds = 0;
};

CaseOutcome run_case(const CorpusCase &c);
/// Runs cases on up to `workers` threads; outcomes keep corpus order.
std::vector<CaseOutcome> run_corpus(const std::vector<CorpusCase> &cases, unsigned workers);

/// Value at a dotted path rendered as text (strings unquoted); "<missing>"
/// when absent.
std::string json_path_value(const nlohmann::ordered_json &j, const std::string &path);

} // namespace dmod
