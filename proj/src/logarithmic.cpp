#include "dmod/logarithmic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dmod {

bool LogDerivation::verify(const CommPoly &f) const {
  auto grad = gradient(f);
  if (grad.size() != coeffs.size()) return false;
  Poly lhs(f.ctx());
  for (std::size_t i = 0; i < grad.size(); ++i) lhs += coeffs[i] * grad[i];
  return lhs == cofactor * f;
}

ContextPtr weyl_context_for(const CommPoly &f) { return Context::weyl(f.ctx()->params()); }

namespace {

// delta(g) for a commutative polynomial g.
CommPoly apply_field(const std::vector<CommPoly> &coeffs, const CommPoly &g) {
  Poly out(g.ctx());
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m].is_zero()) continue;
    out += coeffs[m] * derivative(g, g.ctx()->param_slot(m));
  }
  return out;
}

LogDerivation scaled(const LogDerivation &d, const Rational &c) {
  LogDerivation r = d;
  for (auto &a : r.coeffs) a *= c;
  r.cofactor *= c;
  return r;
}

} // namespace

std::vector<LogDerivation> log_derivations(const CommPoly &f, Budget &budget) {
  if (f.is_zero()) throw std::invalid_argument("log_derivations needs f != 0");
  auto grad = gradient(f);
  const std::size_t n = grad.size();
  std::vector<WeylOp> gens = grad;
  gens.push_back(f);
  // Reduced basis of the relations, so the derivations come out canonical.
  auto raw = syzygies(gens, budget, false);
  std::vector<OpVector> rels;
  if (!raw.empty()) rels = groebner_basis(raw, n + 1, f.ctx(), ModuleOrder::top(), budget).generators();
  if (rels.size() > 1) rels = prune_generators(std::move(rels), n + 1, f.ctx(), budget);
  std::vector<LogDerivation> out;
  for (auto &v : rels) {
    LogDerivation d;
    d.coeffs.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    d.cofactor = -v[n];
    if (!d.verify(f)) throw std::logic_error("logarithmic derivation fails its defining identity");
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<WeylOp> tilde_ideal(const std::vector<LogDerivation> &gens, long k,
                                const ContextPtr &weyl_ctx) {
  std::vector<WeylOp> out;
  for (const auto &d : gens) out.push_back(d.op(weyl_ctx) + as_operator(d.cofactor * Rational(k), weyl_ctx));
  return out;
}

bool looks_squarefree(const CommPoly &f) {
  // f is reduced iff gcd(f, f_1, ..., f_n) is constant; gcd(a, b) is read
  // off the single relation (b/g, -a/g) between a and b.
  Poly g = f;
  Budget budget(10.0, std::nullopt);
  try {
    for (const auto &fi : gradient(f)) {
      if (fi.is_zero()) continue;
      if (g.degree() <= 0) break;
      auto syz = syzygies(std::vector<WeylOp>{g, fi}, budget);
      if (syz.size() != 1) return true;
      auto q = exact_divide(fi, syz.front()[0]);
      if (!q) return true;
      g = *q;
    }
  } catch (const BudgetExceeded &) {
    return true;
  }
  return g.degree() <= 0;
}

EulerResult euler_check(const CommPoly &f, const std::vector<LogDerivation> &gens, Budget &budget) {
  EulerResult r;
  for (const auto &d : gens) {
    Rational c = value_at_origin(d.cofactor);
    if (c == 0) continue;
    r.euler = true;
    r.witness = scaled(d, 1 / c);
    r.witness_exact = d.cofactor.degree() <= 0;
    break;
  }
  auto grad = gradient(f);
  std::erase_if(grad, [](const Poly &p) { return p.is_zero(); });
  if (!grad.empty()) r.global_membership = contains(groebner_basis(grad, TermOrder::degrevlex(), budget), f);
  return r;
}

const char *to_string(FreeStatus s) {
  switch (s) {
  case FreeStatus::Free: return "free";
  case FreeStatus::NotFreeDetected: return "not_free_detected";
  case FreeStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct SubsetSearch {
  std::optional<LogBasis> global, local;
};

SubsetSearch search_subsets(const std::vector<LogDerivation> &gens, const CommPoly &f) {
  SubsetSearch out;
  const std::size_t n = f.ctx()->params().size();
  const std::size_t m = gens.size();
  if (m < n) return out;
  // Lexicographically least passing n-subset.
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<Poly>> rows;
    for (auto i : pick) rows.push_back(gens[i].coeffs);
    Poly det = determinant(CommMatrix(rows));
    if (!det.is_zero()) {
      auto u = exact_divide(det, f);
      if (u && value_at_origin(*u) != 0) {
        LogBasis b;
        for (auto i : pick) b.derivations.push_back(gens[i]);
        b.unit = *u;
        b.det_unit = value_at_origin(*u);
        b.chosen = pick;
        b.global = u->degree() <= 0;
        if (b.global) {
          out.global = std::move(b);
          return out;
        }
        if (!out.local) out.local = std::move(b);
      }
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Remainder of h modulo the leading term of d; q collects the quotient.
Poly reduce_by(Poly h, const Poly &d, Poly &q) {
  q = Poly(h.ctx());
  if (d.is_zero()) return h;
  const PolyTerm &lt = d.leading();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &t : h.terms()) {
      if (!lt.exp.divides(t.exp)) continue;
      Poly m = Poly::monomial(h.ctx(), t.exp - lt.exp, t.coeff / lt.coeff);
      q += m;
      h -= m * d;
      changed = true;
      break;
    }
  }
  return h;
}

// Uses a relation sum h_i g_i = 0 to remove one generator: the moves
// g_i += q g_j turn h_j into h_j - q h_i until some entry is a nonzero constant.
std::optional<std::vector<LogDerivation>> drop_by_relation(std::vector<LogDerivation> gens, OpVector h) {
  const std::size_t m = gens.size();
  auto add_multiple = [](LogDerivation &target, const Poly &q, const LogDerivation &src) {
    for (std::size_t l = 0; l < target.coeffs.size(); ++l) target.coeffs[l] += q * src.coeffs[l];
    target.cofactor += q * src.cofactor;
  };
  for (int pass = 0; pass < 8; ++pass) {
    for (std::size_t j = 0; j < m; ++j)
      if (!h[j].is_zero() && h[j].degree() == 0) {
        // g_j = -(1/h_j) sum_{i != j} h_i g_i: redundant.
        gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(j));
        return gens;
      }
    bool changed = false;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) {
        if (i == j || h[i].is_zero() || h[j].is_zero()) continue;
        Poly q;
        Poly r = reduce_by(h[j], h[i], q);
        if (q.is_zero()) continue;
        h[j] = r;
        add_multiple(gens[i], q, gens[j]);
        changed = true;
      }
    if (!changed) break;
  }
  return std::nullopt;
}

} // namespace

std::vector<LogDerivation> reduce_generators(std::vector<LogDerivation> gens, const CommPoly &f,
                                            Budget &budget) {
  const std::size_t n = f.ctx()->params().size();
  while (gens.size() > n) {
    std::vector<OpVector> vs;
    for (const auto &g : gens) vs.push_back(g.coeffs);
    bool dropped = false;
    for (const auto &h : syzygies(vs, n, f.ctx(), budget)) {
      if (auto r = drop_by_relation(gens, h)) {
        gens = std::move(*r);
        dropped = true;
        break;
      }
    }
    if (!dropped) break;
  }
  for (const auto &g : gens)
    if (!g.verify(f)) throw std::logic_error("generator reduction broke a logarithmic identity");
  return gens;
}

FreeResult saito_free_check(const std::vector<LogDerivation> &gens, const CommPoly &f,
                            Budget &budget, std::size_t max_generators) {
  FreeResult r;
  const std::size_t n = f.ctx()->params().size();
  if (gens.size() < n || gens.size() > max_generators) return r;
  SubsetSearch found = search_subsets(gens, f);
  if (!found.global && gens.size() > n) {
    auto fewer = reduce_generators(gens, f, budget);
    if (fewer.size() < gens.size()) {
      SubsetSearch again = search_subsets(fewer, f);
      if (again.global) {
        again.global->chosen.clear();
        found.global = std::move(again.global);
      }
    }
  }
  if (found.global) {
    r.status = FreeStatus::Free;
    r.basis = std::move(found.global);
  } else if (found.local) {
    r.status = FreeStatus::Free;
    r.basis = std::move(found.local);
  } else {
    r.status = FreeStatus::NotFreeDetected;
  }
  return r;
}

HolonomicResult holonomic_check(const std::vector<WeylOp> &gens, const ContextPtr &weyl_ctx,
                                Budget &budget) {
  const std::size_t n = weyl_ctx->nx();
  HolonomicResult r;
  std::vector<WeylOp> nz;
  for (const auto &g : gens)
    if (!g.is_zero()) nz.push_back(g);
  std::vector<std::uint32_t> leads;
  if (!nz.empty()) {
    std::vector<int> w(weyl_ctx->slots(), 0);
    for (std::size_t i = 0; i < n; ++i) w[weyl_ctx->d_slot(i)] = 1;
    Basis g = groebner_basis(nz, TermOrder::weighted(w), budget);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Exponent &e = g.leading(i).first;
      std::uint32_t mask = 0;
      for (std::size_t s = 0; s < 2 * n; ++s)
        if (e[s]) mask |= 1u << s;
      if (mask == 0) {
        r.dimension = -1;
        r.holonomic = true;
        return r;
      }
      leads.push_back(mask);
    }
  }
  // Largest independent set of slots: no leading monomial supported inside it.
  int best = 0;
  const std::uint32_t full = (1u << (2 * n)) - 1;
  for (std::uint32_t s = 0; s <= full; ++s) {
    int size = std::popcount(s);
    if (size <= best) continue;
    bool independent = std::none_of(leads.begin(), leads.end(), [&](std::uint32_t l) { return (l & ~s) == 0; });
    if (independent) best = size;
  }
  r.dimension = best;
  r.holonomic = static_cast<std::size_t>(best) == n;
  return r;
}

HolonomicResult holonomic_check(const std::vector<WeylOp> &gens, Budget &budget) {
  if (gens.empty()) throw std::invalid_argument("holonomic_check needs a context; pass one for the empty list");
  return holonomic_check(gens, gens.front().ctx(), budget);
}

std::optional<std::vector<std::vector<std::vector<CommPoly>>>>
structure_constants(const LogBasis &basis, const CommPoly &f) {
  const auto &d = basis.derivations;
  const std::size_t n = d.size();
  std::vector<std::vector<Poly>> rows;
  for (const auto &x : d) rows.push_back(x.coeffs);
  CommMatrix a(rows);
  CommMatrix adj = adjugate(a);
  Poly det = basis.unit * f;
  std::vector<std::vector<std::vector<CommPoly>>> c(
      n, std::vector<std::vector<CommPoly>>(n, std::vector<CommPoly>(n, Poly(f.ctx()))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // coefficients of [delta_i, delta_j] in the d_l basis
      std::vector<Poly> w(n, Poly(f.ctx()));
      for (std::size_t l = 0; l < n; ++l)
        w[l] = apply_field(d[i].coeffs, d[j].coeffs[l]) - apply_field(d[j].coeffs, d[i].coeffs[l]);
      for (std::size_t k = 0; k < n; ++k) {
        Poly num(f.ctx());
        for (std::size_t l = 0; l < n; ++l) num += w[l] * adj(l, k);
        auto q = exact_divide(num, det);
        if (!q) return std::nullopt;
        c[i][j][k] = *q;
        c[j][i][k] = -*q;
      }
    }
  // re-expansion check
  ContextPtr wctx = weyl_context_for(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      WeylOp lhs = commutator(d[i].op(wctx), d[j].op(wctx));
      WeylOp rhs(wctx);
      for (std::size_t k = 0; k < n; ++k) rhs += as_operator(c[i][j][k], wctx) * d[k].op(wctx);
      if (!(lhs == rhs)) throw std::logic_error("structure constants fail re-expansion");
    }
  return c;
}

SpencerData spencer_complex(const LogBasis &basis, const CommPoly &f, long k) {
  auto sc = structure_constants(basis, f);
  if (!sc) throw std::domain_error("structure constants are not polynomial for this basis");
  const auto &d = basis.derivations;
  const std::size_t n = d.size();
  ContextPtr wctx = weyl_context_for(f);
  std::vector<WeylOp> L;
  for (const auto &x : d) L.push_back(x.op(wctx) + as_operator(x.cofactor * Rational(k), wctx));

  // subsets of {0..n-1} by size, each list in increasing bitmask order
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t s = 0; s < (1u << n); ++s) by_size[std::popcount(s)].push_back(s);
  auto index_of = [&](std::uint32_t s) {
    const auto &v = by_size[std::popcount(s)];
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
  };

  SpencerData data;
  data.structure_constants = *sc;
  data.k = k;
  data.complex.augmentation = L;
  for (std::size_t p = 1; p <= n; ++p) {
    const auto &targets = by_size[p - 1];
    std::vector<OpVector> rows;
    for (std::uint32_t I : by_size[p]) {
      OpVector row(targets.size(), Poly(wctx));
      std::vector<std::size_t> elems;
      for (std::size_t i = 0; i < n; ++i)
        if (I >> i & 1u) elems.push_back(i);
      for (std::size_t q = 0; q < elems.size(); ++q) {
        auto &e = row[index_of(I & ~(1u << elems[q]))];
        if (q % 2) e -= L[elems[q]];
        else e += L[elems[q]];
      }
      for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a + 1; b < elems.size(); ++b) {
          std::uint32_t rest = I & ~(1u << elems[a]) & ~(1u << elems[b]);
          for (std::size_t m = 0; m < n; ++m) {
            const Poly &c = (*sc)[elems[a]][elems[b]][m];
            if (c.is_zero() || (rest >> m & 1u)) continue;
            // moving delta_m into sorted position past the smaller elements
            int sign = ((a + b) % 2 ? -1 : 1) * (std::popcount(rest & ((1u << m) - 1)) % 2 ? -1 : 1);
            row[index_of(rest | (1u << m))] += as_operator(c * Rational(sign), wctx);
          }
        }
      rows.push_back(std::move(row));
    }
    data.complex.matrices.emplace_back(std::move(rows), targets.size());
  }
  if (!compositions_vanish(data.complex)) throw std::logic_error("Spencer complex does not compose to zero");
  return data;
}

const char *to_string(SpencerStatus s) {
  switch (s) {
  case SpencerStatus::Spencer: return "spencer";
  case SpencerStatus::NotSpencer: return "not_spencer";
  case SpencerStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool complex_is_exact(const FreeResolution &complex, Budget &budget) {
  const auto &mats = complex.matrices;
  if (mats.empty()) return true;
  ContextPtr ctx = mats.front().rows.front().front().ctx();
  for (std::size_t p = 0; p < mats.size(); ++p) {
    auto syz = syzygies(mats[p].rows, mats[p].target_rank, ctx, budget, false);
    if (p + 1 == mats.size()) {
      if (!syz.empty()) return false;
      continue;
    }
    if (module_compare(syz, mats[p + 1].rows, mats[p].source_rank, ctx, budget) != Inclusion::Equal)
      return false;
  }
  return true;
}

SpencerResult spencer_check(const LogBasis &basis, const CommPoly &f, Budget &budget) {
  SpencerResult r;
  if (!structure_constants(basis, f)) {
    r.note = "structure constants are not polynomial (basis is only local)";
    return r;
  }
  try {
    SpencerData data = spencer_complex(basis, f, 0);
    r.exact = complex_is_exact(data.complex, budget);
    data.complex.certified = r.exact;
    ContextPtr wctx = weyl_context_for(f);
    auto h = holonomic_check(data.complex.augmentation, wctx, budget);
    r.holonomic = h.holonomic;
    r.char_dimension = h.dimension;
    r.data = std::move(data);
    r.status = r.exact && r.holonomic ? SpencerStatus::Spencer : SpencerStatus::NotSpencer;
    if (!r.exact) r.note = "logarithmic Spencer complex is not exact";
    else if (!r.holonomic) r.note = "M^log D is not holonomic";
  } catch (const BudgetExceeded &e) {
    r.status = SpencerStatus::Inconclusive;
    r.note = e.what();
  }
  return r;
}

DivergenceResult divergence_shortcut(const LogBasis &basis, const ContextPtr &weyl_ctx) {
  DivergenceResult r;
  r.certified = true;
  for (const auto &d : basis.derivations) {
    Poly div(d.coeffs.front().ctx());
    for (std::size_t j = 0; j < d.coeffs.size(); ++j) div += derivative(d.coeffs[j], div.ctx()->param_slot(j));
    WeylOp e = d.op(weyl_ctx) + as_operator(div, weyl_ctx);
    r.certified = r.certified && smc_predicates(e).origin_vanishing;
    r.entries.push_back(std::move(e));
  }
  return r;
}

ProductResult product_detection(const std::vector<LogDerivation> &gens) {
  ProductResult r;
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < gens[g].coeffs.size(); ++i) {
      Rational c = value_at_origin(gens[g].coeffs[i]);
      if (c != 0) {
        r.smooth_factor = true;
        r.generator = g;
        r.variable = i;
        r.witness = c;
        return r;
      }
    }
  return r;
}

} // namespace dmod
