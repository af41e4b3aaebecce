#include "dmod/compare.hpp"

#include <chrono>
#include <sstream>

namespace dmod {

const char *to_string(DirectVerdict v) {
  switch (v) {
  case DirectVerdict::Isomorphic: return "ISOMORPHIC";
  case DirectVerdict::NotIsomorphic: return "NOT_ISOMORPHIC";
  case DirectVerdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

const char *to_string(IndirectVerdict v) {
  switch (v) {
  case IndirectVerdict::NotIsomorphic: return "NOT_ISOMORPHIC";
  case IndirectVerdict::Inconclusive: return "INCONCLUSIVE";
  case IndirectVerdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

const char *to_string(Method m) {
  switch (m) {
  case Method::Auto: return "auto";
  case Method::Direct: return "direct";
  case Method::Indirect: return "indirect";
  case Method::ShortcutsOnly: return "shortcuts-only";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string &s) {
  for (Method m : {Method::Auto, Method::Direct, Method::Indirect, Method::ShortcutsOnly})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

DirectResult direct_compare(const CommPoly &f, const std::vector<LogDerivation> &gens,
                            const AnnFsIdeal &ann, const BFunction &b, Budget &budget) {
  DirectResult r;
  if (!b.min_integer_root) {
    r.note = "b-function has no integer root";
    return r;
  }
  r.alpha0 = -*b.min_integer_root;
  if (r.alpha0 < 1) {
    r.note = "least integer root is not negative";
    return r;
  }
  ContextPtr W = weyl_context_for(f);
  try {
    auto ann_k = ann_power(ann, r.alpha0, b, W);
    auto tilde = tilde_ideal(gens, r.alpha0, W);
    Inclusion inc = ideal_compare(tilde, ann_k, budget);
    r.inclusion = inc;
    // The tilde ideal always annihilates 1/f^alpha0.
    if (inc == Inclusion::BStrictlyInside || inc == Inclusion::Incomparable)
      throw ConsistencyError(std::string("tilde ideal not contained in Ann(1/f^k): ") + to_string(inc));
    r.verdict = inc == Inclusion::Equal ? DirectVerdict::Isomorphic : DirectVerdict::NotIsomorphic;
  } catch (const BudgetExceeded &e) {
    r.note = e.what();
  }
  return r;
}

namespace {

void scan_into(IndirectResult &r, FreeResolution res, const char *kind) {
  r.resolution_kind = kind;
  r.ranks = res.ranks();
  r.certified = res.certified;
  r.smc = smc_scan(res);
  r.resolution = std::move(res);
  if (r.smc.holds) r.verdict = IndirectVerdict::NotIsomorphic;
  else if (r.certified) r.verdict = IndirectVerdict::Inconclusive;
  else r.verdict = IndirectVerdict::Unknown;
}

} // namespace

IndirectResult indirect_compare(const CommPoly &f, const std::vector<LogDerivation> &gens, long k,
                                std::size_t max_length, const std::optional<LogBasis> &spencer_basis,
                                Budget &budget) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  IndirectResult r;
  r.k = k;
  std::string note;
  if (spencer_basis) {
    try {
      SpencerData data = spencer_complex(*spencer_basis, f, k);
      if (complex_is_exact(data.complex, budget)) {
        data.complex.certified = true;
        scan_into(r, std::move(data.complex), "spencer");
        if (r.verdict == IndirectVerdict::NotIsomorphic) return r;
        note = "twisted Spencer complex is exact but SMC fails on it";
      } else {
        note = "twisted Spencer complex is not exact";
      }
    } catch (const BudgetExceeded &e) {
      note = std::string("Spencer exactness: ") + e.what();
    }
  }
  // SMC depends on the resolution; a syzygy resolution is a second chance.
  ContextPtr W = weyl_context_for(f);
  IndirectResult generic;
  generic.k = k;
  FreeResolution res = free_resolution(tilde_ideal(gens, k, W), max_length, budget);
  scan_into(generic, std::move(res), "syzygies");
  if (generic.resolution->truncated) generic.note = "resolution truncated by budget";
  bool prefer_generic = r.resolution_kind.empty() || generic.verdict == IndirectVerdict::NotIsomorphic;
  if (prefer_generic) {
    if (!note.empty()) generic.note = generic.note.empty() ? note : note + "; " + generic.note;
    return generic;
  }
  r.note = note;
  return r;
}

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
public:
  StageTimer(ComparisonReport &r, std::string name, bool on)
      : r_(r), name_(std::move(name)), on_(on), start_(Clock::now()) {}
  ~StageTimer() {
    if (!on_) return;
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    r_.timings_ms.emplace_back(name_, static_cast<double>(static_cast<long long>(ms * 1000)) / 1000);
  }

private:
  ComparisonReport &r_;
  std::string name_;
  bool on_;
  Clock::time_point start_;
};

Budget stage_budget(const AnalyzeOptions &o) {
  Budget b(o.stage_seconds, o.gb_steps);
  b.set_per_call_seconds(o.gb_seconds);
  return b;
}

void check_consistency(const ComparisonReport &r) {
  bool direct_iso = r.direct && r.direct->verdict == DirectVerdict::Isomorphic;
  bool indirect_not = r.indirect && r.indirect->verdict == IndirectVerdict::NotIsomorphic;
  bool shortcut_not = r.verdict_source == "divergence_shortcut";
  if (direct_iso && (indirect_not || shortcut_not))
    throw ConsistencyError("direct method says ISOMORPHIC but an SMC witness says NOT_ISOMORPHIC");
}

} // namespace

ComparisonReport analyze(const CommPoly &f, const AnalyzeOptions &o) {
  if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("f must be nonconstant");
  if (o.k < 1) throw std::invalid_argument("k must be positive");
  for (const auto &v : f.ctx()->params())
    if (v == "t" || v == "s" || v == "dt" || v == "ds")
      throw std::invalid_argument("variable name '" + v + "' is reserved");
  ComparisonReport r;
  r.f = f.to_string();
  r.vars = f.ctx()->params();
  r.k = o.k;
  r.method = to_string(o.method);
  const std::size_t n = r.vars.size();
  const std::size_t max_len = o.max_res_length.value_or(n + 2);
  ContextPtr W = weyl_context_for(f);
  const bool timed = o.record_timings;

  if (!looks_squarefree(f)) r.warnings.push_back("f does not look reduced; Der(log f) assumes a reduced equation");

  {
    StageTimer t(r, "log_derivations", timed);
    Budget b = stage_budget(o);
    try {
      r.log_generators = log_derivations(f, b);
    } catch (const BudgetExceeded &e) {
      r.warnings.push_back(std::string("log_derivations: ") + e.what());
      return r;
    }
    for (const auto &g : r.log_generators)
      if (!g.verify(f)) throw ConsistencyError("logarithmic derivation fails delta(f) = a f");
  }
  {
    StageTimer t(r, "product", timed);
    r.product = product_detection(r.log_generators);
  }
  {
    StageTimer t(r, "euler", timed);
    Budget b = stage_budget(o);
    try {
      r.euler = euler_check(f, r.log_generators, b);
    } catch (const BudgetExceeded &e) {
      r.warnings.push_back(std::string("euler: ") + e.what());
    }
  }
  {
    StageTimer t(r, "saito", timed);
    Budget b = stage_budget(o);
    try {
      r.freeness = saito_free_check(r.log_generators, f, b);
    } catch (const BudgetExceeded &e) {
      r.freeness = FreeResult{};
      r.warnings.push_back(std::string("saito: ") + e.what());
    }
  }
  std::optional<LogBasis> spencer_basis;
  if (r.freeness->status == FreeStatus::Free) {
    StageTimer t(r, "spencer", timed);
    Budget b = stage_budget(o);
    r.spencer = spencer_check(*r.freeness->basis, f, b);
    // The twisted complex is verified on its own inside indirect_compare.
    if (r.spencer->data) spencer_basis = r.freeness->basis;
  }
  const bool spencer_type = r.spencer && r.spencer->status == SpencerStatus::Spencer;
  if (r.freeness->basis) {
    StageTimer t(r, "divergence", timed);
    r.divergence = divergence_shortcut(*r.freeness->basis, W);
    if (spencer_type) {
      // Cross-check against the last matrix of the actual k = 1 complex.
      SpencerData d1 = spencer_complex(*r.freeness->basis, f, 1);
      const PresMatrix &last = d1.complex.matrices.back();
      bool ok = true;
      for (const auto &e : last.rows.front()) ok = ok && smc_predicates(e).origin_vanishing;
      r.divergence_confirmed_by_spencer_row = ok;
      if (r.divergence->certified && !ok)
        r.warnings.push_back("divergence entries vanish at 0 but the k = 1 Spencer row does not");
      if (r.divergence->certified && ok && o.k == 1) {
        r.final_verdict = "NOT_ISOMORPHIC";
        r.verdict_source = "divergence_shortcut";
        return r;
      }
    }
  }
  if (o.method == Method::ShortcutsOnly) return r;

  std::optional<AnnFsIdeal> ann;
  if (o.method == Method::Auto || o.method == Method::Direct) {
    StageTimer t(r, "bfunction", timed);
    Budget b = stage_budget(o);
    try {
      ann = ann_fs(f, b);
      r.bfunction = bfunction(f, *ann, b);
      r.bfunction_status = "computed";
    } catch (const BudgetExceeded &e) {
      r.bfunction_status = "unknown";
      r.warnings.push_back(std::string("bfunction: ") + e.what());
    }
  }
  if (r.bfunction) {
    StageTimer t(r, "direct", timed);
    Budget b = stage_budget(o);
    r.direct = direct_compare(f, r.log_generators, *ann, *r.bfunction, b);
    if (r.direct->verdict != DirectVerdict::Unknown) {
      r.final_verdict = to_string(r.direct->verdict);
      r.verdict_source = "direct (via phi-comparison)";
    }
  }
  bool need_indirect = o.method == Method::Indirect ||
                       (o.method == Method::Auto && r.final_verdict == "UNKNOWN");
  if (need_indirect) {
    StageTimer t(r, "indirect", timed);
    Budget b = stage_budget(o);
    r.indirect = indirect_compare(f, r.log_generators, o.k, max_len, spencer_basis, b);
    if (r.indirect->verdict == IndirectVerdict::NotIsomorphic) {
      r.final_verdict = "NOT_ISOMORPHIC";
      r.verdict_source = "indirect (SMC)";
    } else if (r.final_verdict == "UNKNOWN") {
      r.final_verdict = to_string(r.indirect->verdict);
      r.verdict_source = "indirect";
    }
  }
  check_consistency(r);
  return r;
}

// ---------------------------------------------------------------- output

namespace {

using json = nlohmann::ordered_json;

json opt_size(const std::optional<std::size_t> &v) { return v ? json(*v) : json(nullptr); }

json derivation_json(const LogDerivation &d, const ContextPtr &W) {
  json c = json::array();
  for (const auto &p : d.coeffs) c.push_back(p.to_string());
  return {{"operator", d.to_string(W)}, {"coefficients", std::move(c)}, {"cofactor", d.cofactor.to_string()}};
}

json ops_json(const std::vector<WeylOp> &ops) {
  json a = json::array();
  for (const auto &p : ops) a.push_back(p.to_string());
  return a;
}

json euler_json(const EulerResult &e, const ContextPtr &W) {
  json j;
  j["status"] = e.global_membership ? "euler" : "not_euler_globally";
  j["locally_euler"] = e.euler;
  j["global_membership"] = e.global_membership;
  j["witness"] = e.witness ? derivation_json(*e.witness, W) : json(nullptr);
  j["witness_exact"] = e.witness_exact;
  return j;
}

json freeness_json(const FreeResult &fr, const ContextPtr &W) {
  json j;
  j["status"] = to_string(fr.status);
  if (fr.basis) {
    json b;
    json ds = json::array();
    for (const auto &d : fr.basis->derivations) ds.push_back(derivation_json(d, W));
    b["derivations"] = std::move(ds);
    b["determinant_unit"] = fr.basis->unit.to_string();
    b["unit_at_origin"] = fr.basis->det_unit.get_str();
    b["global"] = fr.basis->global;
    b["chosen"] = fr.basis->chosen;
    j["basis"] = std::move(b);
  } else {
    j["basis"] = nullptr;
  }
  return j;
}

json spencer_json(const SpencerResult &s) {
  json j;
  j["status"] = to_string(s.status);
  j["exact"] = s.exact;
  j["holonomic"] = s.holonomic;
  j["characteristic_dimension"] = s.char_dimension;
  j["note"] = s.note;
  j["ranks"] = s.data ? json(s.data->complex.ranks()) : json(nullptr);
  return j;
}

json indirect_json(const IndirectResult &r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["k"] = r.k;
  j["resolution_kind"] = r.resolution_kind;
  j["ranks"] = r.ranks;
  j["certified"] = r.certified;
  j["smc"] = to_json(r.smc);
  j["resolution"] = r.resolution ? to_json(*r.resolution) : json(nullptr);
  j["note"] = r.note;
  return j;
}

} // namespace

nlohmann::ordered_json to_json(const ComparisonReport &r) {
  ContextPtr W = Context::weyl(r.vars);
  json j;
  j["input"] = {{"f", r.f}, {"vars", r.vars}, {"k", r.k}, {"method", r.method}};
  j["warnings"] = r.warnings;
  json gens = json::array();
  for (const auto &g : r.log_generators) gens.push_back(derivation_json(g, W));
  j["log_generators"] = std::move(gens);
  j["product"] = r.product ? json{{"smooth_factor", r.product->smooth_factor},
                                  {"generator", opt_size(r.product->generator)},
                                  {"variable", opt_size(r.product->variable)},
                                  {"witness", r.product->witness.get_str()}}
                           : json(nullptr);
  j["euler"] = r.euler ? euler_json(*r.euler, W) : json(nullptr);
  j["freeness"] = r.freeness ? freeness_json(*r.freeness, W) : json(nullptr);
  j["spencer"] = r.spencer ? spencer_json(*r.spencer) : json(nullptr);
  j["holonomic"] = r.spencer ? json{{"holonomic", r.spencer->holonomic},
                                    {"characteristic_dimension", r.spencer->char_dimension}}
                             : json(nullptr);
  j["divergence"] = r.divergence ? json{{"certified", r.divergence->certified},
                                        {"confirmed_by_spencer_row", r.divergence_confirmed_by_spencer_row},
                                        {"entries", ops_json(r.divergence->entries)}}
                                 : json(nullptr);
  json b;
  b["status"] = r.bfunction_status;
  if (r.bfunction) {
    b["poly"] = r.bfunction->poly.to_string();
    b["factored"] = r.bfunction->factored();
    b["integer_roots"] = r.bfunction->integer_roots;
    b["min_integer_root"] = r.bfunction->min_integer_root ? json(*r.bfunction->min_integer_root) : json(nullptr);
  }
  j["bfunction"] = std::move(b);
  if (r.direct) {
    j["direct"] = {{"verdict", to_string(r.direct->verdict)},
                   {"alpha0", r.direct->alpha0},
                   {"inclusion", r.direct->inclusion ? json(to_string(*r.direct->inclusion)) : json(nullptr)},
                   {"label", "via phi-comparison"},
                   {"note", r.direct->note}};
  } else {
    j["direct"] = nullptr;
  }
  j["indirect"] = r.indirect ? indirect_json(*r.indirect) : json(nullptr);
  j["final_verdict"] = r.final_verdict;
  j["verdict_source"] = r.verdict_source;
  if (!r.timings_ms.empty()) {
    json t;
    for (const auto &[name, ms] : r.timings_ms) t[name] = ms;
    j["timings_ms"] = std::move(t);
  }
  return j;
}

std::string to_text(const ComparisonReport &r) {
  ContextPtr W = Context::weyl(r.vars);
  std::ostringstream out;
  out << "f = " << r.f << "    k = " << r.k << "    method = " << r.method << "\n";
  for (const auto &w : r.warnings) out << "warning: " << w << "\n";
  out << "log derivations (" << r.log_generators.size() << "):\n";
  for (const auto &g : r.log_generators)
    out << "  " << g.to_string(W) << "    [cofactor " << g.cofactor.to_string() << "]\n";
  if (r.product) {
    out << "product: " << (r.product->smooth_factor ? "smooth factor" : "none");
    if (r.product->smooth_factor)
      out << " (generator " << *r.product->generator << ", d" << r.vars[*r.product->variable]
          << " coefficient " << r.product->witness.get_str() << " at 0)";
    out << "\n";
  }
  if (r.euler)
    out << "euler: " << (r.euler->global_membership ? "euler" : "not_euler_globally")
        << (r.euler->euler ? ", local witness " + r.euler->witness->to_string(W) : std::string()) << "\n";
  if (r.freeness) {
    out << "freeness: " << to_string(r.freeness->status);
    if (r.freeness->basis)
      out << ", det = (" << r.freeness->basis->unit.to_string() << ") * f"
          << (r.freeness->basis->global ? "" : " (local basis)");
    out << "\n";
  }
  if (r.spencer)
    out << "spencer: " << to_string(r.spencer->status) << " (exact " << r.spencer->exact << ", holonomic "
        << r.spencer->holonomic << ", char dim " << r.spencer->char_dimension << ")"
        << (r.spencer->note.empty() ? "" : " - " + r.spencer->note) << "\n";
  if (r.divergence)
    out << "divergence shortcut: " << (r.divergence->certified ? "certified" : "not certified")
        << (r.divergence_confirmed_by_spencer_row ? ", confirmed by Spencer row" : "") << "\n";
  out << "bfunction: " << r.bfunction_status;
  if (r.bfunction) {
    out << ", b(s) = " << r.bfunction->factored() << ", least integer root ";
    if (r.bfunction->min_integer_root) out << *r.bfunction->min_integer_root;
    else out << "none";
  }
  out << "\n";
  if (r.direct) {
    out << "direct: " << to_string(r.direct->verdict) << " via phi-comparison (alpha0 = " << r.direct->alpha0 << ")";
    if (!r.direct->note.empty()) out << " - " << r.direct->note;
    out << "\n";
  }
  if (r.indirect) {
    const auto &ir = *r.indirect;
    out << "indirect: " << to_string(ir.verdict) << ", " << ir.resolution_kind << " resolution ranks";
    for (auto x : ir.ranks) out << " " << x;
    out << (ir.certified ? " (certified)" : " (partial)");
    if (ir.smc.holds) out << ", SMC at level " << *ir.smc.level << " column " << *ir.smc.column_index;
    if (!ir.note.empty()) out << " - " << ir.note;
    out << "\n";
  }
  out << "verdict: " << r.final_verdict;
  if (!r.verdict_source.empty()) out << " [" << r.verdict_source << "]";
  out << "\n";
  if (!r.timings_ms.empty()) {
    out << "timings (ms):";
    for (const auto &[name, ms] : r.timings_ms) out << " " << name << "=" << ms;
    out << "\n";
  }
  return out.str();
}

} // namespace dmod
