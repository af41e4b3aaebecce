#pragma once

#include "dmod/annihilator.hpp"
#include "dmod/logarithmic.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dmod {

enum class DirectVerdict { Isomorphic, NotIsomorphic, Unknown };
enum class IndirectVerdict { NotIsomorphic, Inconclusive, Unknown };
enum class Method { Auto, Direct, Indirect, ShortcutsOnly };

const char *to_string(DirectVerdict v);
const char *to_string(IndirectVerdict v);
const char *to_string(Method m);
std::optional<Method> parse_method(const std::string &s);

struct DirectResult {
  DirectVerdict verdict = DirectVerdict::Unknown;
  long alpha0 = 0;
  std::optional<Inclusion> inclusion; ///< tilde ideal vs annihilator
  std::string note;
};

/// Compares the ideal generated by delta + alpha0 * cofactor with
/// Ann_D(1/f^alpha0).  Budget exhaustion gives Unknown.
DirectResult direct_compare(const CommPoly &f, const std::vector<LogDerivation> &gens,
                            const AnnFsIdeal &ann, const BFunction &b, Budget &budget);

struct IndirectResult {
  IndirectVerdict verdict = IndirectVerdict::Unknown;
  long k = 1;
  std::string resolution_kind; ///< "spencer" or "syzygies"
  std::vector<std::size_t> ranks;
  bool certified = false;
  SmcReport smc;
  std::optional<FreeResolution> resolution;
  std::string note;
};

/// Resolves D / (delta + k cofactor) and scans for SMC.  With a free basis
/// the twisted Spencer complex is tried first, once its exactness is verified.
IndirectResult indirect_compare(const CommPoly &f, const std::vector<LogDerivation> &gens, long k,
                                std::size_t max_length, const std::optional<LogBasis> &spencer_basis,
                                Budget &budget);

struct AnalyzeOptions {
  long k = 1;
  Method method = Method::Auto;
  std::optional<std::size_t> max_res_length; ///< default n + 2
  double gb_seconds = 60;
  double stage_seconds = 600;
  std::optional<std::uint64_t> gb_steps;
  bool record_timings = true;
};

/// Every stage outcome of one analysis.  Absent optionals mean the stage
/// did not run.
struct ComparisonReport {
  std::string f;
  std::vector<std::string> vars;
  long k = 1;
  std::string method;
  std::vector<std::string> warnings;

  std::vector<LogDerivation> log_generators;
  std::optional<ProductResult> product;
  std::optional<EulerResult> euler;
  std::optional<FreeResult> freeness;
  std::optional<SpencerResult> spencer;
  std::optional<DivergenceResult> divergence;
  bool divergence_confirmed_by_spencer_row = false;

  std::string bfunction_status = "not_run"; ///< computed | unknown | not_run | failed
  std::optional<BFunction> bfunction;
  std::optional<DirectResult> direct;
  std::optional<IndirectResult> indirect;

  std::string final_verdict = "UNKNOWN"; ///< ISOMORPHIC | NOT_ISOMORPHIC | INCONCLUSIVE | UNKNOWN
  std::string verdict_source;
  std::vector<std::pair<std::string, double>> timings_ms;
};

class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

ComparisonReport analyze(const CommPoly &f, const AnalyzeOptions &options);

nlohmann::ordered_json to_json(const ComparisonReport &r);
std::string to_text(const ComparisonReport &r);

} // namespace dmod
