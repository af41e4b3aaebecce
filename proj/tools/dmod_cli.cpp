// Command-line front end: `analyze` one polynomial or run a corpus file.
#include "dmod/compare.hpp"
#include "dmod/corpus.hpp"

#include <algorithm>
#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <thread>

namespace {

struct AnalyzeConfig {
  std::string poly;
  std::string vars;
  long k = 1;
  std::string method = "auto";
  std::optional<std::size_t> max_res_length;
  double gb_seconds = 60;
  double stage_seconds = 600;
  std::optional<std::uint64_t> gb_steps;
  std::string format = "text";
  std::string out;
  bool omit_timings = false;
};

std::vector<std::string> split_vars(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int run_analyze(const AnalyzeConfig &cfg) {
  using namespace dmod;
  AnalyzeOptions o;
  o.k = cfg.k;
  auto m = parse_method(cfg.method);
  if (!m) {
    std::cerr << "error: unknown method '" << cfg.method << "'\n";
    return 1;
  }
  o.method = *m;
  o.max_res_length = cfg.max_res_length;
  o.gb_seconds = cfg.gb_seconds;
  o.stage_seconds = cfg.stage_seconds;
  o.gb_steps = cfg.gb_steps;
  o.record_timings = !cfg.omit_timings;

  CommPoly f;
  try {
    f = parse_poly(cfg.poly, split_vars(cfg.vars));
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n  " << cfg.poly << "\n  "
              << std::string(e.position(), ' ') << "^\n";
    return 1;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  ComparisonReport report;
  try {
    report = analyze(f, o);
  } catch (const ConsistencyError &e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string text = cfg.format == "json" ? to_json(report).dump(2) + "\n" : to_text(report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(cfg.out);
    if (!file) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 1;
    }
    file << text;
  }
  bool certified = report.final_verdict == "ISOMORPHIC" || report.final_verdict == "NOT_ISOMORPHIC";
  return certified ? 0 : 2;
}

int run_corpus_command(const std::string &path, unsigned jobs) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open corpus " << path << "\n";
    return 1;
  }
  std::vector<dmod::CorpusCase> cases;
  try {
    cases = dmod::parse_corpus(in);
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  auto outcomes = dmod::run_corpus(cases, jobs);
  std::size_t matched = 0, width = 8;
  for (const auto &o : outcomes) width = std::max(width, o.name.size() + 2);
  for (const auto &o : outcomes) {
    matched += o.matched;
    std::cout << std::left << std::setw(int(width)) << o.name << (o.matched ? "match   " : "MISMATCH") << " "
              << std::setw(16) << (o.error.empty() ? o.final_verdict : "ERROR") << std::right
              << std::fixed << std::setprecision(1) << o.seconds << "s\n";
    if (!o.error.empty()) std::cout << "    " << o.error << "\n";
    for (const auto &mm : o.mismatches) std::cout << "    " << mm << "\n";
  }
  std::cout << matched << "/" << outcomes.size() << " matched, " << outcomes.size() << " cases\n";
  return matched == outcomes.size() ? 0 : 2;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compare the localization O[*D] with the logarithmic D-module"};
  app.require_subcommand(1);

  AnalyzeConfig cfg;
  auto *analyze = app.add_subcommand("analyze", "Analyze one divisor f = 0");
  analyze->add_option("-f,--poly", cfg.poly, "Polynomial, e.g. x*(x^2-y^3)")->required();
  analyze->add_option("--vars", cfg.vars, "Comma-separated variables")->required();
  analyze->add_option("--k", cfg.k, "Twist for the indirect method")->check(CLI::PositiveNumber);
  analyze->add_option("--method", cfg.method, "auto | direct | indirect | shortcuts-only")
      ->check(CLI::IsMember({"auto", "direct", "indirect", "shortcuts-only"}));
  analyze->add_option("--max-res-length", cfg.max_res_length, "Longest resolution (default n + 2)")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--budget-gb-seconds", cfg.gb_seconds, "Wall clock per Groebner call")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--budget-stage-seconds", cfg.stage_seconds, "Wall clock per stage")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--budget-gb-steps", cfg.gb_steps, "Reduction steps per stage")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--out", cfg.out, "Write the report here instead of stdout");
  analyze->add_flag("--omit-timings", cfg.omit_timings, "Leave timings out (byte-stable output)");

  std::string corpus_path = "corpus/worked_examples.txt";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto *corpus = app.add_subcommand("corpus", "Run a corpus file and diff against its expectations");
  corpus->add_option("path", corpus_path, "Corpus file");
  corpus->add_option("-j,--jobs", jobs, "Concurrent workers")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*analyze) return run_analyze(cfg);
  return run_corpus_command(corpus_path, jobs);
}
