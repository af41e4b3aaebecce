#include "dmod/weyl.hpp"

#include <stdexcept>

namespace dmod {

WeylOp weyl_mul(const WeylOp &p, const WeylOp &q) { return p * q; }

WeylOp commutator(const WeylOp &p, const WeylOp &q) { return p * q - q * p; }

ContextPtr coordinate_ring(const ContextPtr &weyl_ctx) {
  return Context::commutative(weyl_ctx->xnames());
}

namespace {

void require_parameter_free(const WeylOp &p) {
  if (p.ctx() && p.ctx()->nparams() != 0) {
    for (const auto &t : p.terms())
      for (std::size_t j = 0; j < p.ctx()->nparams(); ++j)
        if (t.exp[p.ctx()->param_slot(j)])
          throw std::invalid_argument("operator carries parameters");
  }
}

} // namespace

CommPoly weyl_apply(const WeylOp &p, const CommPoly &g) {
  require_parameter_free(p);
  const Context &c = *p.ctx();
  const std::size_t n = c.nx();
  if (g.ctx() && g.ctx()->nparams() != n)
    throw ContextMismatch("argument ring does not match operator coordinates");
  ContextPtr ring = g.ctx() ? g.ctx() : coordinate_ring(p.ctx());
  std::vector<PolyTerm> out;
  for (const auto &t : p.terms()) {
    for (const auto &u : g.terms()) {
      // d^beta x^gamma = prod gamma!/(gamma-beta)! x^(gamma-beta)
      Exponent e;
      Rational coeff = t.coeff * u.coeff;
      bool zero = false;
      for (std::size_t i = 0; i < n && !zero; ++i) {
        unsigned b = t.exp[c.d_slot(i)], gam = u.exp[i];
        if (b > gam) {
          zero = true;
          break;
        }
        for (unsigned k = 0; k < b; ++k) coeff *= (gam - k);
        e[i] = static_cast<std::uint16_t>(gam - b + t.exp[c.x_slot(i)]);
      }
      if (!zero) out.push_back({e, coeff});
    }
  }
  return Poly(ring, std::move(out));
}

WeylOp as_operator(const CommPoly &g, const ContextPtr &weyl_ctx) {
  std::vector<std::size_t> map(g.ctx() ? g.ctx()->slots() : 0);
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = weyl_ctx->x_slot(i);
  return g.ctx() ? g.with_context(weyl_ctx, map) : Poly(weyl_ctx);
}

WeylOp vector_field(const std::vector<CommPoly> &coeffs, const ContextPtr &weyl_ctx) {
  WeylOp v(weyl_ctx);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    v += as_operator(coeffs[i], weyl_ctx) * Poly::monomial(weyl_ctx, Exponent::unit(weyl_ctx->d_slot(i)));
  return v;
}

CommPoly derivative_coefficient(const WeylOp &p, const Exponent &beta) {
  const Context &c = *p.ctx();
  ContextPtr ring = coordinate_ring(p.ctx());
  std::vector<PolyTerm> out;
  for (const auto &t : p.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < c.nx(); ++i)
      if (t.exp[c.d_slot(i)] != beta[i]) match = false;
    for (std::size_t j = 0; j < c.nparams(); ++j)
      if (t.exp[c.param_slot(j)]) match = false;
    if (!match) continue;
    Exponent e;
    for (std::size_t i = 0; i < c.nx(); ++i) e[i] = t.exp[c.x_slot(i)];
    out.push_back({e, t.coeff});
  }
  return Poly(ring, std::move(out));
}

SmcPredicates smc_predicates(const WeylOp &p) {
  require_parameter_free(p);
  SmcPredicates r{true, true, true};
  if (p.is_zero()) return r;
  const Context &c = *p.ctx();
  for (const auto &t : p.terms()) {
    bool has_d = false, has_x = false;
    for (std::size_t i = 0; i < c.nx(); ++i) {
      has_d = has_d || t.exp[c.d_slot(i)];
      has_x = has_x || t.exp[c.x_slot(i)];
    }
    if (!has_d) {
      r.derivative_only = false;
      if (!has_x) r.apply_one_vanishes_at_origin = false;
    }
    if (!has_x) r.origin_vanishing = false;
  }
  return r;
}

int order(const WeylOp &p) {
  int best = -1;
  const Context &c = *p.ctx();
  for (const auto &t : p.terms()) {
    int o = 0;
    for (std::size_t i = 0; i < c.nx(); ++i) o += t.exp[c.d_slot(i)];
    best = std::max(best, o);
  }
  return best;
}

} // namespace dmod
