#include "dmod/corpus.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dmod {

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_vars(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

} // namespace

std::vector<CorpusCase> parse_corpus(std::istream &in) {
  std::vector<CorpusCase> cases;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw std::invalid_argument("corpus line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.rfind("[case ", 0) != 0) fail("expected [case NAME]");
      CorpusCase c;
      c.name = trim(line.substr(6, line.size() - 7));
      if (c.name.empty()) fail("empty case name");
      cases.push_back(std::move(c));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    if (cases.empty()) fail("entry outside a case");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    CorpusCase &c = cases.back();
    auto number = [&](auto convert) {
      try {
        std::size_t used = 0;
        auto v = convert(value, &used);
        if (used == value.size()) return v;
      } catch (const std::logic_error &) {
      }
      fail("bad number for " + key);
      return decltype(convert(value, nullptr)){};
    };
    auto to_long = [](const std::string &s, std::size_t *p) { return std::stol(s, p); };
    auto to_double = [](const std::string &s, std::size_t *p) { return std::stod(s, p); };
    if (key == "f") c.f = value;
    else if (key == "vars") c.vars = split_vars(value);
    else if (key == "k") c.options.k = number(to_long);
    else if (key == "method") {
      auto m = parse_method(value);
      if (!m) fail("unknown method " + value);
      c.options.method = *m;
    } else if (key == "max_res_length") c.options.max_res_length = static_cast<std::size_t>(number(to_long));
    else if (key == "budget_gb_seconds") c.options.gb_seconds = number(to_double);
    else if (key == "budget_stage_seconds") c.options.stage_seconds = number(to_double);
    else if (key == "budget_gb_steps") c.options.gb_steps = static_cast<std::size_t>(number(to_long));
    else if (key.rfind("expect.", 0) == 0) c.expect.emplace_back(key.substr(7), value);
    else fail("unknown key " + key);
  }
  for (const auto &c : cases)
    if (c.f.empty() || c.vars.empty())
      throw std::invalid_argument("corpus case " + c.name + " needs f and vars");
  return cases;
}

std::string json_path_value(const nlohmann::ordered_json &j, const std::string &path) {
  const nlohmann::ordered_json *cur = &j;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (cur->is_object() && cur->contains(part)) cur = &(*cur)[part];
    else if (cur->is_array() && !part.empty() && part.find_first_not_of("0123456789") == std::string::npos &&
             std::stoul(part) < cur->size())
      cur = &(*cur)[std::stoul(part)];
    else return "<missing>";
  }
  return cur->is_string() ? cur->get<std::string>() : cur->dump();
}

CaseOutcome run_case(const CorpusCase &c) {
  CaseOutcome out;
  out.name = c.name;
  auto start = std::chrono::steady_clock::now();
  try {
    CommPoly f = parse_poly(c.f, c.vars);
    AnalyzeOptions o = c.options;
    o.record_timings = false;
    ComparisonReport r = analyze(f, o);
    out.final_verdict = r.final_verdict;
    auto j = to_json(r);
    for (const auto &[path, want] : c.expect) {
      std::string got = json_path_value(j, path);
      if (got != want) out.mismatches.push_back(path + ": expected " + want + ", got " + got);
    }
    out.matched = out.mismatches.empty();
  } catch (const std::exception &e) {
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<CaseOutcome> run_corpus(const std::vector<CorpusCase> &cases, unsigned workers) {
  std::vector<CaseOutcome> out(cases.size());
  if (cases.empty()) return out;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cases.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < cases.size();) out[i] = run_case(cases[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto &t : pool) t.join();
  return out;
}

} // namespace dmod
