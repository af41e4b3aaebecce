#include "dmod/resolution.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace dmod {

PresMatrix::PresMatrix(std::vector<OpVector> r, std::size_t target)
    : source_rank(r.size()), target_rank(target), rows(std::move(r)) {
  for (const auto &row : rows)
    if (row.size() != target_rank) throw std::invalid_argument("ragged presentation matrix");
}

PresMatrix PresMatrix::then(const PresMatrix &next) const {
  if (target_rank != next.source_rank) throw std::invalid_argument("matrix ranks do not chain");
  std::vector<OpVector> out;
  for (const auto &row : rows) {
    OpVector r;
    for (std::size_t v = 0; v < next.target_rank; ++v) {
      Poly acc(row.empty() ? ContextPtr{} : row.front().ctx());
      for (std::size_t u = 0; u < target_rank; ++u) {
        if (row[u].is_zero() || next.rows[u][v].is_zero()) continue;
        acc += row[u] * next.rows[u][v];
      }
      r.push_back(std::move(acc));
    }
    out.push_back(std::move(r));
  }
  return PresMatrix(std::move(out), next.target_rank);
}

bool PresMatrix::is_zero() const {
  for (const auto &row : rows)
    for (const auto &e : row)
      if (!e.is_zero()) return false;
  return true;
}

std::vector<std::size_t> FreeResolution::ranks() const {
  std::vector<std::size_t> r{1};
  for (const auto &m : matrices) r.push_back(m.source_rank);
  return r;
}

namespace {

bool is_zero_vector(const OpVector &v) {
  return std::all_of(v.begin(), v.end(), [](const Poly &p) { return p.is_zero(); });
}

std::size_t vector_size(const OpVector &v) {
  std::size_t n = 0;
  for (const auto &p : v) n += p.size();
  return n;
}

std::size_t vector_degree(const OpVector &v) {
  int d = 0;
  for (const auto &p : v) d = std::max(d, p.degree());
  return static_cast<std::size_t>(d);
}

} // namespace

std::vector<OpVector> prune_generators(std::vector<OpVector> gens, std::size_t rank,
                                       const ContextPtr &ctx, Budget &budget) {
  std::erase_if(gens, is_zero_vector);
  std::vector<std::size_t> idx(gens.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    auto ka = std::make_pair(vector_degree(gens[a]), vector_size(gens[a]));
    auto kb = std::make_pair(vector_degree(gens[b]), vector_size(gens[b]));
    return ka < kb;
  });
  // Grow from the simplest generators; a candidate already in the span costs
  // one normal form instead of a Groebner basis.
  std::vector<OpVector> kept;
  std::optional<Basis> span;
  for (std::size_t i : idx) {
    if (span && contains(*span, gens[i])) continue;
    kept.push_back(gens[i]);
    std::vector<OpVector> input = span ? span->generators() : std::vector<OpVector>{};
    input.push_back(gens[i]);
    span = groebner_basis(input, rank, ctx, ModuleOrder::top(), budget);
  }
  // Later generators may still make earlier ones redundant.
  std::vector<bool> keep(kept.size(), true);
  for (std::size_t i = kept.size(); i-- > 0;) {
    std::vector<OpVector> others;
    for (std::size_t k = 0; k < kept.size(); ++k)
      if (k != i && keep[k]) others.push_back(kept[k]);
    if (others.empty()) continue;
    Basis g = groebner_basis(others, rank, ctx, ModuleOrder::top(), budget);
    if (contains(g, kept[i])) keep[i] = false;
  }
  std::vector<OpVector> out;
  for (std::size_t k = 0; k < kept.size(); ++k)
    if (keep[k]) out.push_back(std::move(kept[k]));
  return out;
}

std::vector<OpVector> syzygies(const std::vector<OpVector> &gens, std::size_t rank,
                               const ContextPtr &ctx, Budget &budget, bool prune) {
  const std::size_t m = gens.size();
  if (m == 0) return {};
  for (const auto &g : gens)
    if (g.size() != rank) throw std::invalid_argument("generator length does not match rank");
  auto out = tracked_relations(gens, rank, ctx, budget);
  if (prune && out.size() > 1) out = prune_generators(std::move(out), m, ctx, budget);
  return out;
}

std::vector<OpVector> syzygies(const std::vector<WeylOp> &gens, Budget &budget, bool prune) {
  if (gens.empty()) return {};
  std::vector<OpVector> v;
  for (const auto &g : gens) v.push_back({g});
  return syzygies(v, 1, gens.front().ctx(), budget, prune);
}

namespace {

// A constant c at (t, u) of phi_{i+1} = matrices[i] expresses generator u of
// F_i through the others: drop it, drop row t, and correct the other rows so
// their u-entries vanish.  Row t of the next map's columns goes as well.
void cancel_unit(FreeResolution &res, std::size_t i, std::size_t t, std::size_t u) {
  PresMatrix &phi = res.matrices[i];
  const OpVector pivot = phi.rows[t];
  const Rational inv = 1 / pivot[u].constant_term();
  std::vector<OpVector> rows;
  for (std::size_t s = 0; s < phi.source_rank; ++s) {
    if (s == t) continue;
    OpVector row = phi.rows[s];
    if (!row[u].is_zero()) {
      const Poly q = row[u] * inv;
      for (std::size_t w = 0; w < row.size(); ++w)
        if (!pivot[w].is_zero()) row[w] -= q * pivot[w];
    }
    row.erase(row.begin() + static_cast<std::ptrdiff_t>(u));
    rows.push_back(std::move(row));
  }
  phi = PresMatrix(std::move(rows), phi.target_rank - 1);

  PresMatrix &prev = res.matrices[i - 1];
  std::vector<OpVector> prev_rows = prev.rows;
  prev_rows.erase(prev_rows.begin() + static_cast<std::ptrdiff_t>(u));
  prev = PresMatrix(std::move(prev_rows), prev.target_rank);
  if (i == 1) res.augmentation.erase(res.augmentation.begin() + static_cast<std::ptrdiff_t>(u));

  if (i + 1 < res.matrices.size()) {
    PresMatrix &next = res.matrices[i + 1];
    std::vector<OpVector> next_rows = next.rows;
    for (auto &row : next_rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(t));
    next = PresMatrix(std::move(next_rows), next.target_rank - 1);
  }
}

std::optional<std::pair<std::size_t, std::size_t>> find_unit(const PresMatrix &m) {
  for (std::size_t t = 0; t < m.source_rank; ++t)
    for (std::size_t u = 0; u < m.target_rank; ++u)
      if (!m.rows[t][u].is_zero() && m.rows[t][u].degree() == 0) return std::make_pair(t, u);
  return std::nullopt;
}

} // namespace

void minimize_resolution(FreeResolution &res) {
  for (bool changed = true; changed;) {
    changed = false;
    // matrices[0] maps onto D itself, whose generator must stay.
    for (std::size_t i = 1; i < res.matrices.size() && !changed; ++i)
      if (auto hit = find_unit(res.matrices[i])) {
        cancel_unit(res, i, hit->first, hit->second);
        changed = true;
      }
    while (res.matrices.size() > 1 && res.matrices.back().source_rank == 0) res.matrices.pop_back();
  }
}

FreeResolution free_resolution(const std::vector<WeylOp> &gens, std::size_t max_length,
                               Budget &budget) {
  if (max_length < 1) throw std::invalid_argument("max_length must be at least 1");
  FreeResolution res;
  for (const auto &g : gens)
    if (!g.is_zero()) res.augmentation.push_back(g);
  if (res.augmentation.empty()) {
    res.certified = true;
    return res;
  }
  ContextPtr ctx = res.augmentation.front().ctx();
  std::vector<OpVector> rows;
  for (const auto &g : res.augmentation) rows.push_back({g});
  res.matrices.emplace_back(rows, 1);
  try {
    for (;;) {
      const std::size_t source = res.matrices.back().source_rank;
      auto syz = syzygies(res.matrices.back().rows, res.matrices.back().target_rank, ctx, budget);
      if (syz.empty()) {
        res.certified = true;
        break;
      }
      if (res.matrices.size() == max_length) break;
      res.matrices.emplace_back(std::move(syz), source);
      minimize_resolution(res);
    }
  } catch (const BudgetExceeded &) {
    res.truncated = true;
  }
  if (!compositions_vanish(res)) throw std::logic_error("resolution maps do not compose to zero");
  return res;
}

bool compositions_vanish(const FreeResolution &res) {
  for (std::size_t i = 0; i + 1 < res.matrices.size(); ++i)
    if (!res.matrices[i + 1].then(res.matrices[i]).is_zero()) return false;
  return true;
}

SmcReport smc_scan(const FreeResolution &res) {
  SmcReport report;
  report.scanned_uncertified = !res.certified;
  const std::size_t s = res.matrices.size();
  bool literal_seen = false;
  for (std::size_t level = 1; level <= s; ++level) {
    const PresMatrix &phi = res.matrices[level - 1];
    const PresMatrix *next = level < s ? &res.matrices[level] : nullptr;
    // Past the computed prefix the next map is unknown.
    if (!next && !res.certified) break;
    for (std::size_t j = 0; j < phi.source_rank; ++j) {
      bool column = true;
      if (next)
        for (std::size_t t = 0; t < next->source_rank && column; ++t)
          column = smc_predicates((*next)(t, j)).derivative_only;
      if (!column) continue;
      bool sound = true, literal = true;
      for (std::size_t u = 0; u < phi.target_rank; ++u) {
        auto p = smc_predicates(phi(j, u));
        sound = sound && p.origin_vanishing;
        literal = literal && p.apply_one_vanishes_at_origin;
      }
      if (literal && !sound) report.disagreements.push_back({level, j});
      literal_seen = literal_seen || literal;
      if (sound && !report.holds) {
        report.holds = true;
        report.level = level;
        report.column_index = j;
        report.sound_row_check = true;
        report.literal_row_check = literal;
      }
    }
  }
  if (!report.holds) report.literal_row_check = literal_seen;
  return report;
}

std::vector<CommPoly> apply_transposed(const PresMatrix &m, const std::vector<CommPoly> &h) {
  if (h.size() != m.target_rank) throw std::invalid_argument("tuple length does not match matrix");
  std::vector<CommPoly> out;
  for (const auto &row : m.rows) {
    CommPoly acc(h.empty() ? ContextPtr{} : h.front().ctx());
    for (std::size_t u = 0; u < m.target_rank; ++u)
      if (!row[u].is_zero()) acc += weyl_apply(row[u], h[u]);
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<TransposedMap> transpose_complex(const FreeResolution &res) {
  std::vector<TransposedMap> out;
  for (const auto &m : res.matrices) out.push_back({m});
  return out;
}

nlohmann::ordered_json to_json(const PresMatrix &m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto &row : m.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto &e : row) r.push_back(e.to_string());
    rows.push_back(std::move(r));
  }
  return {{"source_rank", m.source_rank}, {"target_rank", m.target_rank}, {"rows", std::move(rows)}};
}

nlohmann::ordered_json to_json(const FreeResolution &res) {
  nlohmann::ordered_json mats = nlohmann::ordered_json::array();
  for (const auto &m : res.matrices) mats.push_back(to_json(m));
  return {{"ranks", res.ranks()},
          {"certified", res.certified},
          {"truncated", res.truncated},
          {"matrices", std::move(mats)}};
}

nlohmann::ordered_json to_json(const SmcReport &r) {
  nlohmann::ordered_json j;
  j["holds"] = r.holds;
  j["level"] = r.level ? nlohmann::ordered_json(*r.level) : nlohmann::ordered_json(nullptr);
  j["column_index"] = r.column_index ? nlohmann::ordered_json(*r.column_index) : nlohmann::ordered_json(nullptr);
  j["sound_row_check"] = r.sound_row_check;
  j["literal_row_check"] = r.literal_row_check;
  nlohmann::ordered_json d = nlohmann::ordered_json::array();
  for (auto [l, c] : r.disagreements) d.push_back({l, c});
  j["check_disagreements"] = std::move(d);
  j["scanned_uncertified"] = r.scanned_uncertified;
  return j;
}

} // namespace dmod
