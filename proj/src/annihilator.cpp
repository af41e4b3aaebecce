#include "dmod/annihilator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dmod {

namespace {

std::vector<std::string> var_names(const CommPoly &f) { return f.ctx()->params(); }

void check_reserved(const std::vector<std::string> &vars) {
  for (const auto &v : vars)
    if (v == "t" || v == "s" || v == "dt" || v == "ds")
      throw std::invalid_argument("variable name '" + v + "' is reserved");
}

// Embeds a polynomial of Q[x] as an order-zero operator of `ctx`.
WeylOp embed(const CommPoly &g, const ContextPtr &ctx) {
  std::vector<std::size_t> map(g.ctx()->slots());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = ctx->x_slot(i);
  return g.with_context(ctx, map);
}

} // namespace

AnnFsIdeal ann_fs(const CommPoly &f, Budget &budget) {
  if (f.degree() < 1) throw std::invalid_argument("ann_fs needs a nonconstant polynomial");
  const auto vars = var_names(f);
  check_reserved(vars);
  const std::size_t n = vars.size();
  ContextPtr ext = Context::weyl(vars, {}, true);
  const std::size_t t = ext->x_slot(n), dt = ext->d_slot(n);
  const Poly tp = Poly::monomial(ext, Exponent::unit(t));
  const Poly dtp = Poly::monomial(ext, Exponent::unit(dt));

  std::vector<WeylOp> gens;
  gens.push_back(tp - embed(f, ext));
  auto grad = gradient(f);
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back(Poly::monomial(ext, Exponent::unit(ext->d_slot(i))) + embed(grad[i], ext) * dtp);

  std::vector<int> w(ext->slots(), 0);
  w[t] = 1;
  w[dt] = -1;
  auto zero_part = eliminate_weight(gens, w, WeightMode::WeightZeroPart, budget);

  // t^m dt^m = theta (theta - 1) ... (theta - m + 1) with theta = -s - 1.
  ContextPtr sctx = Context::weyl(vars, {"s"});
  const std::size_t sslot = sctx->param_slot(0);
  const Poly s = Poly::monomial(sctx, Exponent::unit(sslot));
  std::map<unsigned, Poly> falling;
  auto theta_falling = [&](unsigned m) -> const Poly & {
    auto it = falling.find(m);
    if (it != falling.end()) return it->second;
    Poly r = Poly::constant(sctx, 1);
    for (unsigned j = 0; j < m; ++j) r = r * (-s - Poly::constant(sctx, 1 + j));
    return falling.emplace(m, r).first->second;
  };

  AnnFsIdeal out{sctx, {}};
  for (const auto &g : zero_part) {
    Poly r(sctx);
    for (const auto &term : g.terms()) {
      unsigned m = term.exp[t];
      if (term.exp[dt] != m) throw std::logic_error("weight-zero element has unbalanced t-degree");
      Exponent e;
      for (std::size_t i = 0; i < n; ++i) {
        e[sctx->x_slot(i)] = term.exp[ext->x_slot(i)];
        e[sctx->d_slot(i)] = term.exp[ext->d_slot(i)];
      }
      r += Poly::monomial(sctx, e, term.coeff) * theta_falling(m);
    }
    if (!r.is_zero()) out.generators.push_back(primitive(r));
  }
  Basis gb = groebner_basis(out.generators, TermOrder::degrevlex(), budget);
  out.generators.clear();
  for (const auto &v : gb.generators()) out.generators.push_back(v.front());
  return out;
}

// ---------------------------------------------------------------- b-function

namespace {

Integer poly_integer_content_normalize(std::vector<Rational> &coeffs) {
  Integer den = 1;
  for (const auto &c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (auto &c : coeffs) c *= den;
  return den;
}

// Coefficients of a univariate poly, index = degree.
std::vector<Rational> univariate(const CommPoly &p, std::size_t slot) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(0, p.degree_in_slot(slot))) + 1, Rational(0));
  for (const auto &t : p.terms()) c[t.exp[slot]] += t.coeff;
  return c;
}

Rational eval(const std::vector<Rational> &c, const Rational &x) {
  Rational r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

std::vector<Integer> divisors(Integer v) {
  v = abs(v);
  std::vector<Integer> out;
  if (v == 0) return out;
  // Trial division by small primes; a leftover cofactor is taken as prime
  // (b-function coefficients are products of small integers in practice).
  std::vector<std::pair<Integer, unsigned>> factors;
  for (unsigned long p = 2; p < 1000000 && Integer(p) * p <= v; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
      ++e;
    }
    if (e) factors.push_back({Integer(p), e});
  }
  if (v > 1) factors.push_back({v, 1});
  out.push_back(1);
  for (const auto &[p, e] : factors) {
    std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
    if (out.size() > 2000000) throw std::runtime_error("too many divisors in rational root search");
  }
  return out;
}

// Rational roots with multiplicity of a univariate polynomial.
std::vector<std::pair<Rational, unsigned>> rational_roots(std::vector<Rational> c) {
  std::vector<std::pair<Rational, unsigned>> roots;
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  unsigned zero_mult = 0;
  while (c.size() > 1 && c.front() == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult) roots.push_back({Rational(0), zero_mult});
  if (c.size() <= 1) return roots;
  poly_integer_content_normalize(c);
  auto ps = divisors(c.front().get_num());
  auto qs = divisors(c.back().get_num());
  Rational bound = 0;
  for (const auto &x : c) bound = std::max(bound, Rational(abs(x) / abs(c.back())));
  bound += 1;
  std::set<Rational> candidates;
  for (const auto &p : ps)
    for (const auto &q : qs) {
      Rational r(p, q);
      r.canonicalize();
      if (r > bound) continue;
      candidates.insert(r);
      candidates.insert(-r);
    }
  for (const auto &r : candidates) {
    unsigned mult = 0;
    while (c.size() > 1 && eval(c, r) == 0) {
      // synthetic division by (s - r)
      std::vector<Rational> q(c.size() - 1);
      Rational carry = 0;
      for (std::size_t i = c.size(); i-- > 1;) {
        carry = carry * r + c[i];
        q[i - 1] = carry;
      }
      c = std::move(q);
      ++mult;
    }
    if (mult) roots.push_back({r, mult});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace

std::vector<long> integer_roots(const CommPoly &p) {
  std::vector<long> out;
  if (p.is_zero()) return out;
  std::size_t slot = 0;
  for (std::size_t s = 0; s < p.ctx()->slots(); ++s)
    if (p.uses_slot(s)) slot = s;
  for (const auto &[r, m] : rational_roots(univariate(p, slot)))
    if (r.get_den() == 1) out.push_back(r.get_num().get_si());
  return out;
}

BFunction make_bfunction(const std::vector<WeylOp> &polys_in_s) {
  if (polys_in_s.empty()) throw std::invalid_argument("no polynomial in s found");
  ContextPtr sring = Context::commutative({"s"});
  const ContextPtr &src = polys_in_s.front().ctx();
  const std::size_t sslot = src->param_slot(0);
  // gcd via Euclid on univariate coefficient vectors
  auto to_vec = [&](const WeylOp &p) { return univariate(p, sslot); };
  auto trim = [](std::vector<Rational> &c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  };
  std::vector<Rational> g = to_vec(polys_in_s.front());
  trim(g);
  for (std::size_t k = 1; k < polys_in_s.size(); ++k) {
    std::vector<Rational> h = to_vec(polys_in_s[k]);
    trim(h);
    while (!h.empty()) {
      // g mod h
      while (g.size() >= h.size() && !g.empty()) {
        Rational q = g.back() / h.back();
        std::size_t shift = g.size() - h.size();
        for (std::size_t i = 0; i < h.size(); ++i) g[i + shift] -= q * h[i];
        trim(g);
      }
      std::swap(g, h);
    }
  }
  if (g.empty()) throw std::invalid_argument("zero b-function");
  Rational lead = g.back();
  std::vector<PolyTerm> terms;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) terms.push_back({Exponent::unit(0, static_cast<std::uint16_t>(i)), g[i] / lead});
  BFunction b;
  b.poly = Poly(sring, std::move(terms));
  b.integer_roots = integer_roots(b.poly);
  if (!b.integer_roots.empty()) b.min_integer_root = b.integer_roots.front();
  return b;
}

std::string BFunction::factored() const {
  auto c = univariate(poly, 0);
  auto roots = rational_roots(c);
  std::ostringstream out;
  std::vector<Rational> rest = c;
  for (const auto &[r, m] : roots)
    for (unsigned k = 0; k < m; ++k) {
      std::vector<Rational> q(rest.size() - 1);
      Rational carry = 0;
      for (std::size_t i = rest.size(); i-- > 1;) {
        carry = carry * r + rest[i];
        q[i - 1] = carry;
      }
      rest = std::move(q);
    }
  // rest times prod (s - r); write each as (den*s - num) over the integers.
  Rational unit = 1;
  bool first = true;
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    const auto &[r, m] = *it;
    Integer num = -r.get_num(), den = r.get_den();
    unit /= Rational(den);
    std::ostringstream f;
    f << "(" << (den == 1 ? std::string("s") : den.get_str() + "*s");
    if (num > 0) f << " + " << num.get_str();
    else if (num < 0) f << " - " << Integer(-num).get_str();
    f << ")";
    if (m > 1) f << "^" << m;
    if (!first) out << "*";
    out << f.str();
    first = false;
  }
  for (auto &x : rest) x *= unit;
  bool rest_is_one = rest.size() == 1 && rest[0] == 1;
  if (!rest_is_one) {
    std::vector<PolyTerm> terms;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (rest[i] != 0) terms.push_back({Exponent::unit(0, static_cast<std::uint16_t>(i)), rest[i]});
    Poly r(poly.ctx(), std::move(terms));
    std::string s = r.to_string();
    if (first) return s;
    if (rest.size() == 1) return s + "*" + out.str();
    return "(" + s + ")*" + out.str();
  }
  if (first) return "1";
  // A lone simple factor needs no parentheses.
  std::string body = out.str();
  if (roots.size() == 1 && roots.front().second == 1) return body.substr(1, body.size() - 2);
  return body;
}

BFunction bfunction(const CommPoly &f, const AnnFsIdeal &ann, Budget &budget) {
  std::vector<WeylOp> gens = ann.generators;
  gens.push_back(embed(f, ann.ctx));
  std::vector<int> w(ann.ctx->slots(), 0);
  auto in_s = eliminate_weight(gens, w, WeightMode::ParamRingIntersection, budget);
  return make_bfunction(in_s);
}

BFunction bfunction(const CommPoly &f, Budget &budget) { return bfunction(f, ann_fs(f, budget), budget); }

std::vector<WeylOp> ann_power(const AnnFsIdeal &ann, long k, const BFunction &b,
                              const ContextPtr &weyl_ctx) {
  if (k < 1) throw std::invalid_argument("ann_power needs k >= 1");
  for (long r : b.integer_roots)
    if (r < -k)
      throw PreconditionViolated("integer root " + std::to_string(r) + " lies below -" + std::to_string(k));
  const Context &sc = *ann.ctx;
  const std::size_t sslot = sc.param_slot(0);
  std::vector<WeylOp> out;
  for (const auto &g : ann.generators) {
    std::vector<PolyTerm> terms;
    for (const auto &t : g.terms()) {
      Exponent e;
      for (std::size_t i = 0; i < sc.nx(); ++i) {
        e[weyl_ctx->x_slot(i)] = t.exp[sc.x_slot(i)];
        e[weyl_ctx->d_slot(i)] = t.exp[sc.d_slot(i)];
      }
      Rational c = t.coeff;
      for (unsigned j = 0; j < t.exp[sslot]; ++j) c *= -k;
      terms.push_back({e, c});
    }
    Poly p(weyl_ctx, std::move(terms));
    if (!p.is_zero()) out.push_back(primitive(p));
  }
  return out;
}

// ---------------------------------------------------------------- formal action

namespace {

// Applies p to f^E where E is a polynomial in ring `r` (coordinates first,
// possibly followed by s).  Returns Q with P f^E = Q f^(E - m).
CommPoly apply_formal(const WeylOp &p, const CommPoly &f_in_r, const Poly &E, const ContextPtr &r) {
  const Context &c = *p.ctx();
  const std::size_t n = c.nx();
  std::vector<Poly> grad;
  for (std::size_t i = 0; i < n; ++i) grad.push_back(derivative(f_in_r, r->param_slot(i)));
  int m = std::max(0, order(p));

  // d^beta f^E = Q_beta f^(E - |beta|), memoized
  std::map<std::vector<unsigned>, Poly> memo;
  std::function<Poly(const std::vector<unsigned> &)> deriv = [&](const std::vector<unsigned> &beta) -> Poly {
    auto it = memo.find(beta);
    if (it != memo.end()) return it->second;
    std::size_t i = 0;
    while (i < n && beta[i] == 0) ++i;
    Poly result(r);
    if (i == n) {
      result = Poly::constant(r, 1);
    } else {
      auto lower = beta;
      --lower[i];
      unsigned j = 0;
      for (auto b : lower) j += b;
      Poly q = deriv(lower);
      // d_i(q f^(E-j)) = (d_i q * f + (E - j) q f_i) f^(E-j-1)
      result = derivative(q, r->param_slot(i)) * f_in_r + (E - Poly::constant(r, j)) * q * grad[i];
    }
    memo.emplace(beta, result);
    return result;
  };

  Poly total(r);
  for (const auto &t : p.terms()) {
    std::vector<unsigned> beta(n);
    unsigned ord = 0;
    for (std::size_t i = 0; i < n; ++i) {
      beta[i] = t.exp[c.d_slot(i)];
      ord += beta[i];
    }
    Exponent mono;
    for (std::size_t i = 0; i < n; ++i) mono[r->param_slot(i)] = t.exp[c.x_slot(i)];
    for (std::size_t j = 0; j < c.nparams(); ++j) mono[r->param_slot(n + j)] = t.exp[c.param_slot(j)];
    Poly term = Poly::monomial(r, mono, t.coeff) * deriv(beta) * f_in_r.pow(static_cast<unsigned>(m) - ord);
    total += term;
  }
  return total;
}

} // namespace

CommPoly apply_to_fs(const WeylOp &p, const CommPoly &f) {
  auto vars = f.ctx()->params();
  auto rv = vars;
  rv.push_back("s");
  ContextPtr r = Context::commutative(rv);
  std::vector<std::size_t> map(f.ctx()->slots());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = r->param_slot(i);
  Poly fr = f.with_context(r, map);
  Poly E = Poly::monomial(r, Exponent::unit(r->param_slot(vars.size())));
  return apply_formal(p, fr, E, r);
}

CommPoly apply_to_inverse_power(const WeylOp &p, const CommPoly &f, long k) {
  if (p.ctx()->nparams() != 0) throw std::invalid_argument("operator carries parameters");
  ContextPtr r = f.ctx();
  return apply_formal(p, f, Poly::constant(r, Rational(-k)), r);
}

} // namespace dmod
