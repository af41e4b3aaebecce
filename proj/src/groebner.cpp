#include "dmod/groebner.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <stdexcept>

namespace dmod {

// ---------------------------------------------------------------- orders

TermOrder TermOrder::elimination(const std::vector<std::size_t> &slots) {
  std::vector<int> w(kMaxSlots, 0);
  for (auto s : slots) w.at(s) = 1;
  return weighted(std::move(w));
}

int TermOrder::compare(const Exponent &a, const Exponent &b) const {
  for (const auto &w : weights) {
    long wa = 0, wb = 0;
    for (std::size_t i = 0; i < w.size() && i < kMaxSlots; ++i) {
      wa += static_cast<long>(w[i]) * a[i];
      wb += static_cast<long>(w[i]) * b[i];
    }
    if (wa != wb) return wa < wb ? -1 : 1;
  }
  if (base == Base::DegRevLex) return canonical_compare(a, b);
  for (std::size_t i = 0; i < kMaxSlots; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

void TermOrder::validate(const Context &ctx) const {
  for (const auto &w : weights) {
    for (std::size_t i = 0; i < ctx.nx(); ++i) {
      int u = i < w.size() ? w[i] : 0;
      int v = ctx.d_slot(i) < w.size() ? w[ctx.d_slot(i)] : 0;
      if (u + v < 0) throw std::invalid_argument("inadmissible weight: u_i + v_i < 0");
    }
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] < 0) throw std::invalid_argument("negative weights do not give a well-order");
  }
}

const char *to_string(Inclusion v) {
  switch (v) {
  case Inclusion::Equal: return "equal";
  case Inclusion::AStrictlyInside: return "a_strictly_inside";
  case Inclusion::BStrictlyInside: return "b_strictly_inside";
  case Inclusion::Incomparable: return "incomparable";
  }
  return "?";
}

// ---------------------------------------------------------------- engine

namespace detail {

struct Term {
  Exponent m;
  std::uint32_t comp;
  Integer c;
};
using Vec = std::vector<Term>;

struct BasisData {
  ContextPtr ctx;
  ModuleOrder order;
  std::size_t rank = 1;
  std::vector<OpVector> gens;
  std::vector<Vec> vecs;
};

namespace {

std::uint32_t slot_mask(const Exponent &e) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < kMaxSlots; ++i)
    if (e[i]) m |= 1u << i;
  return m;
}

class Engine {
public:
  Engine(ContextPtr ctx, ModuleOrder order, std::size_t rank, Budget *budget)
      : ctx_(std::move(ctx)), order_(std::move(order)), rank_(rank), budget_(budget) {
    order_.term.validate(*ctx_);
    nx_ = ctx_->nx();
    for (std::size_t i = 0; i < nx_; ++i) {
      xmask_ |= 1u << ctx_->x_slot(i);
      dmask_ |= 1u << ctx_->d_slot(i);
    }
  }

  int cmp(const Exponent &a, std::uint32_t ca, const Exponent &b, std::uint32_t cb) const {
    if (order_.priority_split) {
      bool pa = ca < order_.priority_split, pb = cb < order_.priority_split;
      if (pa != pb) return pa ? 1 : -1;
    }
    if (order_.position == ModuleOrder::Position::PositionOverTerm) {
      if (ca != cb) return ca < cb ? 1 : -1;
      return order_.term.compare(a, b);
    }
    int c = order_.term.compare(a, b);
    if (c) return c;
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
  }
  int cmp(const Term &a, const Term &b) const { return cmp(a.m, a.comp, b.m, b.comp); }

  void sort_vec(Vec &v) const {
    std::sort(v.begin(), v.end(), [this](const Term &a, const Term &b) { return cmp(a, b) > 0; });
    Vec out;
    out.reserve(v.size());
    for (auto &t : v) {
      if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m)
        out.back().c += t.c;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term &t) { return t.c == 0; });
    v = std::move(out);
  }

  /// Integer image of a rational vector; `scale` receives the factor used.
  Vec from_vector(const OpVector &p, Rational *scale = nullptr) const {
    if (p.size() != rank_) throw std::invalid_argument("vector length does not match module rank");
    Integer den = 1;
    for (const auto &e : p) {
      if (!e.is_zero() && !same_context(e.ctx(), ctx_))
        throw ContextMismatch("element context differs from basis context");
      for (const auto &t : e.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Vec v;
    for (std::uint32_t k = 0; k < p.size(); ++k)
      for (const auto &t : p[k].terms()) {
        Integer c = t.coeff.get_num() * (den / t.coeff.get_den());
        v.push_back({t.exp, k, std::move(c)});
      }
    sort_vec(v);
    Integer g = vec_content(v);
    if (g > 1)
      for (auto &t : v) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    if (scale) *scale = Rational(den, g == 0 ? Integer(1) : g);
    return v;
  }

  OpVector to_vector(const Vec &v, const Rational &divisor = 1) const {
    std::vector<std::vector<PolyTerm>> parts(rank_);
    for (const auto &t : v) parts[t.comp].push_back({t.m, Rational(t.c) / divisor});
    OpVector out;
    for (auto &p : parts) out.emplace_back(ctx_, std::move(p));
    return out;
  }

  static Integer vec_content(const Vec &v) {
    Integer g = 0;
    for (const auto &t : v) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  static void make_primitive(Vec &v) {
    if (v.empty()) return;
    Integer g = vec_content(v);
    if (v.front().c < 0) g = -g;
    if (g != 1)
      for (auto &t : v) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }

  /// Left product x^a d^b * g for the monomial `m`, sorted.
  Vec mul_monomial(const Exponent &m, const Vec &g, std::size_t skip_front = 0) const {
    Vec main, corr;
    main.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Term &t = g[i];
      bool first = true;
      // Skipped leading terms still contribute their Leibniz corrections.
      leibniz_expand(nx_, m, t.m, [&](const Exponent &e, const Integer &fac) {
        if (first) {
          if (i >= skip_front) main.push_back({e, t.comp, t.c});
          first = false;
        } else {
          corr.push_back({e, t.comp, t.c * fac});
        }
      });
    }
    if (corr.empty()) return main;
    sort_vec(corr);
    return merge(main, corr);
  }

  /// x + y
  Vec merge(const Vec &x, const Vec &y) const {
    Vec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      int c = i == x.size() ? -1 : j == y.size() ? 1 : cmp(x[i], y[j]);
      if (c > 0) out.push_back(x[i++]);
      else if (c < 0) out.push_back(y[j++]);
      else {
        Integer s = x[i].c + y[j].c;
        if (s != 0) out.push_back({x[i].m, x[i].comp, std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  /// a*x[xs:] - b*y[ys:]
  Vec combine(const Vec &x, std::size_t xs, const Integer &a, const Vec &y, std::size_t ys,
              const Integer &b) const {
    Vec out;
    out.reserve(x.size() - xs + y.size() - ys);
    std::size_t i = xs, j = ys;
    const bool a1 = a == 1;
    Integer tmp;
    while (i < x.size() || j < y.size()) {
      int c = i == x.size() ? -1 : j == y.size() ? 1 : cmp(x[i], y[j]);
      if (c > 0) {
        out.push_back({x[i].m, x[i].comp, a1 ? x[i].c : Integer(x[i].c * a)});
        ++i;
      } else if (c < 0) {
        out.push_back({y[j].m, y[j].comp, Integer(-(y[j].c * b))});
        ++j;
      } else {
        mpz_mul(tmp.get_mpz_t(), x[i].c.get_mpz_t(), a.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), y[j].c.get_mpz_t(), b.get_mpz_t());
        if (tmp != 0) out.push_back({x[i].m, x[i].comp, tmp});
        ++i;
        ++j;
      }
    }
    return out;
  }

  struct Elem {
    Vec v;
    std::uint32_t mask = 0;
    std::uint32_t support = 0;
    bool active = true;
  };

  const Exponent &lm(const Elem &e) const { return e.v.front().m; }
  std::uint32_t lcomp(const Elem &e) const { return e.v.front().comp; }

  void add_element(Vec v) {
    Elem e;
    e.mask = slot_mask(v.front().m);
    for (const auto &t : v) e.support |= slot_mask(t.m);
    e.v = std::move(v);
    elems_.push_back(std::move(e));
  }

  const Elem *find_reducer(const Term &lt, std::size_t exclude = SIZE_MAX) const {
    const std::uint32_t m = slot_mask(lt.m);
    const Elem *best = nullptr;
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      const Elem &e = elems_[k];
      if (!e.active || k == exclude) continue;
      if (lcomp(e) != lt.comp || (e.mask & ~m)) continue;
      if (!lm(e).divides(lt.m)) continue;
      if (!best || e.v.size() < best->v.size()) best = &e;
    }
    return best;
  }

  /// Reduces h against the active elements.  With `full` every term is
  /// reduced, otherwise only the leading one.  On return the result equals
  /// scale * h_in - (combination of elements).
  void reduce(Vec &h, bool full, Rational *scale = nullptr, std::size_t exclude = SIZE_MAX) {
    Vec done;
    std::size_t head = 0;
    unsigned steps = 0;
    Integer g, a, b;
    while (head < h.size()) {
      const Term &lt = h[head];
      const Elem *r = find_reducer(lt, exclude);
      if (!r) {
        if (!full) break;
        done.push_back(std::move(h[head]));
        ++head;
        continue;
      }
      if (budget_) budget_->charge();
      const Integer &lr = r->v.front().c;
      mpz_gcd(g.get_mpz_t(), lr.get_mpz_t(), lt.c.get_mpz_t());
      mpz_divexact(a.get_mpz_t(), lr.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), lt.c.get_mpz_t(), g.get_mpz_t());
      if (a < 0) {
        a = -a;
        b = -b;
      }
      Vec prod = mul_monomial(lt.m - lm(*r), r->v, 1);
      h = combine(h, head + 1, a, prod, 0, b);
      head = 0;
      if (a != 1) {
        for (auto &t : done) t.c *= a;
        if (scale) *scale *= a;
      }
      if (++steps % 24 == 0) {
        Integer cg = vec_content(done);
        for (const auto &t : h) {
          if (cg == 1) break;
          mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), t.c.get_mpz_t());
        }
        if (cg > 1) {
          for (auto &t : done) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), cg.get_mpz_t());
          for (auto &t : h) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), cg.get_mpz_t());
          if (scale) *scale /= cg;
        }
      }
    }
    if (head) h.erase(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(head));
    if (!done.empty()) {
      done.insert(done.end(), std::make_move_iterator(h.begin()), std::make_move_iterator(h.end()));
      h = std::move(done);
    }
  }

  Vec spoly(const Elem &p, const Elem &q) const {
    Exponent l = Exponent::lcm(lm(p), lm(q));
    const Integer &cp = p.v.front().c, &cq = q.v.front().c;
    Integer g;
    mpz_gcd(g.get_mpz_t(), cp.get_mpz_t(), cq.get_mpz_t());
    Integer a = cq / g, b = cp / g;
    Vec x = mul_monomial(l - lm(p), p.v, 1);
    Vec y = mul_monomial(l - lm(q), q.v, 1);
    return combine(x, 0, a, y, 0, b);
  }

  bool commuting(const Elem &p, const Elem &q) const {
    if (rank_ != 1) return false;
    if (nx_ == 0) return true;
    // x_i in one support and d_i in the other breaks commutation.
    std::uint32_t px = p.support & xmask_, pd = p.support & dmask_;
    std::uint32_t qx = q.support & xmask_, qd = q.support & dmask_;
    auto shift = static_cast<unsigned>(nx_);
    return ((px << shift) & qd) == 0 && ((qx << shift) & pd) == 0;
  }

  bool disjoint(const Elem &p, const Elem &q) const {
    return (p.mask & q.mask) == 0 && commuting(p, q);
  }

  struct Pair {
    long i, j; // j < 0: input generator i
    Exponent lcm;
    std::uint32_t comp;
    std::uint64_t serial;
  };

  void update(std::size_t hi) {
    const Elem &h = elems_[hi];
    struct Cand {
      std::size_t g;
      Exponent lcm;
      bool disj;
    };
    std::vector<Cand> C;
    for (std::size_t g = 0; g < hi; ++g) {
      const Elem &e = elems_[g];
      if (!e.active || lcomp(e) != lcomp(h)) continue;
      C.push_back({g, Exponent::lcm(lm(e), lm(h)), disjoint(e, h)});
    }
    std::vector<Cand> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Cand &p = C[k];
      bool keep = p.disj;
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l)
          if (C[l].lcm.divides(p.lcm)) keep = false;
        for (std::size_t l = 0; l < D.size() && keep; ++l)
          if (D[l].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    const Exponent &hl = lm(h);
    std::erase_if(pairs_, [&](const Pair &p) {
      if (p.j < 0 || p.comp != lcomp(h)) return false;
      if (!hl.divides(p.lcm)) return false;
      Exponent l1 = Exponent::lcm(lm(elems_[p.i]), hl);
      Exponent l2 = Exponent::lcm(lm(elems_[p.j]), hl);
      return !(l1 == p.lcm) && !(l2 == p.lcm);
    });
    for (const auto &d : D)
      if (!d.disj) pairs_.push_back({static_cast<long>(d.g), static_cast<long>(hi), d.lcm, lcomp(h), serial_++});
    for (std::size_t g = 0; g < hi; ++g) {
      Elem &e = elems_[g];
      if (e.active && lcomp(e) == lcomp(h) && hl.divides(lm(e))) e.active = false;
    }
  }

  std::vector<Vec> buchberger(std::vector<Vec> inputs) {
    std::erase_if(inputs, [](const Vec &v) { return v.empty(); });
    std::sort(inputs.begin(), inputs.end(), [this](const Vec &a, const Vec &b) {
      int c = cmp(a.front(), b.front());
      if (c) return c < 0;
      return a.size() < b.size();
    });
    for (std::size_t k = 0; k < inputs.size(); ++k)
      pairs_.push_back({static_cast<long>(k), -1, inputs[k].front().m, inputs[k].front().comp, serial_++});
    while (!pairs_.empty()) {
      if (budget_) budget_->charge();
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        int c = cmp(pairs_[k].lcm, pairs_[k].comp, pairs_[best].lcm, pairs_[best].comp);
        if (c < 0 || (c == 0 && pairs_[k].serial < pairs_[best].serial)) best = k;
      }
      Pair p = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      Vec h = p.j < 0 ? inputs[p.i] : spoly(elems_[p.i], elems_[p.j]);
      reduce(h, true);
      if (h.empty()) continue;
      make_primitive(h);
      if (track_split_ && h.front().comp >= track_split_) {
        relations_.push_back(std::move(h));
        continue;
      }
      add_element(std::move(h));
      update(elems_.size() - 1);
    }
    return interreduce();
  }

  std::vector<Vec> interreduce() {
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < elems_.size(); ++k)
      if (elems_[k].active) act.push_back(k);
    for (auto k : act) {
      Vec v = elems_[k].v;
      Vec tail(std::make_move_iterator(v.begin() + 1), std::make_move_iterator(v.end()));
      Term lead = v.front();
      Rational scale = 1;
      reduce(tail, true, &scale, k);
      // lead * scale + reduced tail, scale is a positive integer multiple here.
      Vec out;
      out.push_back(lead);
      mpz_mul(out.front().c.get_mpz_t(), out.front().c.get_mpz_t(), scale.get_num_mpz_t());
      if (scale.get_den() != 1) {
        // content division made scale fractional: multiply the tail back up.
        for (auto &t : tail) t.c *= scale.get_den();
      }
      out.insert(out.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
      make_primitive(out);
      elems_[k].v = std::move(out);
      elems_[k].support = 0;
      for (const auto &t : elems_[k].v) elems_[k].support |= slot_mask(t.m);
    }
    std::vector<Vec> out;
    for (auto k : act) out.push_back(elems_[k].v);
    std::sort(out.begin(), out.end(), [this](const Vec &a, const Vec &b) { return cmp(a.front(), b.front()) < 0; });
    return out;
  }

  void load(const std::vector<Vec> &basis) {
    for (const auto &v : basis) add_element(v);
  }

  /// Elements whose leading component is >= split are recorded, not kept.
  void track_from(std::size_t split) { track_split_ = split; }
  const std::vector<Vec> &relations() const { return relations_; }

  std::size_t element_count() const { return elems_.size(); }
  Vec spoly_of(std::size_t i, std::size_t j) const { return spoly(elems_[i], elems_[j]); }
  bool same_lead_comp(std::size_t i, std::size_t j) const { return lcomp(elems_[i]) == lcomp(elems_[j]); }

  const ContextPtr &ctx() const { return ctx_; }

private:
  ContextPtr ctx_;
  ModuleOrder order_;
  std::size_t rank_;
  Budget *budget_;
  std::size_t nx_ = 0;
  std::uint32_t xmask_ = 0, dmask_ = 0;
  std::vector<Elem> elems_;
  std::vector<Pair> pairs_;
  std::uint64_t serial_ = 0;
  std::size_t track_split_ = 0;
  std::vector<Vec> relations_;
};

} // namespace
} // namespace detail

// ---------------------------------------------------------------- Basis API

using detail::BasisData;
using detail::Engine;

const ContextPtr &Basis::ctx() const { return data_->ctx; }
const ModuleOrder &Basis::order() const { return data_->order; }
std::size_t Basis::rank() const { return data_->rank; }
const std::vector<OpVector> &Basis::generators() const { return data_->gens; }
std::pair<Exponent, std::size_t> Basis::leading(std::size_t i) const {
  const auto &t = data_->vecs.at(i).front();
  return {t.m, t.comp};
}

Basis groebner_basis(const std::vector<OpVector> &gens, std::size_t rank, const ContextPtr &ctx,
                     const ModuleOrder &order, Budget &budget) {
  BudgetCallScope scope(budget);
  Engine eng(ctx, order, rank, &budget);
  std::vector<detail::Vec> in;
  in.reserve(gens.size());
  for (const auto &g : gens) in.push_back(eng.from_vector(g));
  auto data = std::make_shared<BasisData>();
  data->ctx = ctx;
  data->order = order;
  data->rank = rank;
  data->vecs = eng.buchberger(std::move(in));
  for (const auto &v : data->vecs) data->gens.push_back(eng.to_vector(v));
  return Basis(std::move(data));
}

std::vector<OpVector> tracked_relations(const std::vector<OpVector> &gens, std::size_t rank,
                                        const ContextPtr &ctx, Budget &budget) {
  BudgetCallScope scope(budget);
  const std::size_t m = gens.size();
  ModuleOrder order = ModuleOrder::top();
  order.priority_split = rank;
  Engine eng(ctx, order, rank + m, &budget);
  eng.track_from(rank);
  std::vector<detail::Vec> in;
  for (std::size_t i = 0; i < m; ++i) {
    if (gens[i].size() != rank) throw std::invalid_argument("generator length does not match rank");
    OpVector v = gens[i];
    for (std::size_t k = 0; k < m; ++k) v.push_back(k == i ? Poly::constant(ctx, 1) : Poly(ctx));
    in.push_back(eng.from_vector(v));
  }
  eng.buchberger(std::move(in));
  std::vector<OpVector> out;
  for (const auto &r : eng.relations()) {
    OpVector v = eng.to_vector(r);
    out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(rank), v.end());
  }
  return out;
}

Basis groebner_basis(const std::vector<WeylOp> &gens, const TermOrder &order, Budget &budget) {
  if (gens.empty()) throw std::invalid_argument("cannot infer the context of an empty generator list");
  std::vector<OpVector> v;
  for (const auto &g : gens) v.push_back({g});
  return groebner_basis(v, 1, gens.front().ctx(), ModuleOrder::top(order), budget);
}

OpVector normal_form(const OpVector &p, const Basis &g) {
  const BasisData &d = g.data();
  Engine eng(d.ctx, d.order, d.rank, nullptr);
  eng.load(d.vecs);
  Rational s1 = 1, s2 = 1;
  detail::Vec v = eng.from_vector(p, &s1);
  eng.reduce(v, true, &s2);
  return eng.to_vector(v, s1 * s2);
}

WeylOp normal_form(const WeylOp &p, const Basis &g) {
  if (g.rank() != 1) throw std::invalid_argument("scalar normal form against a module basis");
  return normal_form(OpVector{p}, g).front();
}

bool contains(const Basis &g, const OpVector &p) {
  const BasisData &d = g.data();
  Engine eng(d.ctx, d.order, d.rank, nullptr);
  eng.load(d.vecs);
  detail::Vec v = eng.from_vector(p);
  eng.reduce(v, false);
  return v.empty();
}

bool contains(const Basis &g, const WeylOp &p) { return contains(g, OpVector{p}); }

bool is_groebner(const Basis &g) {
  const BasisData &d = g.data();
  Engine eng(d.ctx, d.order, d.rank, nullptr);
  eng.load(d.vecs);
  for (std::size_t i = 0; i < eng.element_count(); ++i)
    for (std::size_t j = i + 1; j < eng.element_count(); ++j) {
      if (!eng.same_lead_comp(i, j)) continue;
      detail::Vec s = eng.spoly_of(i, j);
      eng.reduce(s, false);
      if (!s.empty()) return false;
    }
  return true;
}

Inclusion module_compare(const std::vector<OpVector> &a, const std::vector<OpVector> &b,
                         std::size_t rank, const ContextPtr &ctx, Budget &budget,
                         const ModuleOrder &order) {
  Basis ga = groebner_basis(a, rank, ctx, order, budget);
  Basis gb = groebner_basis(b, rank, ctx, order, budget);
  bool a_in_b = std::all_of(a.begin(), a.end(), [&](const OpVector &v) { return contains(gb, v); });
  bool b_in_a = std::all_of(b.begin(), b.end(), [&](const OpVector &v) { return contains(ga, v); });
  if (a_in_b && b_in_a) return Inclusion::Equal;
  if (a_in_b) return Inclusion::AStrictlyInside;
  if (b_in_a) return Inclusion::BStrictlyInside;
  return Inclusion::Incomparable;
}

Inclusion ideal_compare(const std::vector<WeylOp> &a, const std::vector<WeylOp> &b, Budget &budget,
                        const TermOrder &order) {
  ContextPtr ctx = !a.empty() ? a.front().ctx() : !b.empty() ? b.front().ctx() : nullptr;
  if (!ctx) return Inclusion::Equal;
  std::vector<OpVector> va, vb;
  for (const auto &p : a) va.push_back({p});
  for (const auto &p : b) vb.push_back({p});
  return module_compare(va, vb, 1, ctx, budget, ModuleOrder::top(order));
}

OpVector primitive(const OpVector &v) {
  if (v.empty()) return v;
  ContextPtr ctx;
  for (const auto &p : v)
    if (p.ctx()) ctx = p.ctx();
  if (!ctx) return v;
  Integer den = 1;
  Integer num = 0;
  for (const auto &p : v)
    for (const auto &t : p.terms()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
  if (num == 0) return v;
  Rational f(den, num);
  for (const auto &p : v)
    if (!p.is_zero()) {
      if (p.leading().coeff < 0) f = -f;
      break;
    }
  OpVector out;
  for (const auto &p : v) out.push_back(p * f);
  return out;
}

WeylOp primitive(const WeylOp &p) { return primitive(OpVector{p}).front(); }

// ---------------------------------------------------------------- elimination

namespace {

long weight_of(const Exponent &e, const std::vector<int> &w) {
  long s = 0;
  for (std::size_t i = 0; i < w.size() && i < kMaxSlots; ++i) s += static_cast<long>(w[i]) * e[i];
  return s;
}

bool pure_params(const WeylOp &p) {
  const Context &c = *p.ctx();
  for (const auto &t : p.terms())
    for (std::size_t s = 0; s < 2 * c.nx(); ++s)
      if (t.exp[s]) return false;
  return true;
}

} // namespace

std::vector<WeylOp> eliminate_weight(const std::vector<WeylOp> &gens, const std::vector<int> &weight,
                                     WeightMode mode, Budget &budget) {
  if (gens.empty()) return {};
  ContextPtr ctx = gens.front().ctx();
  const Context &c = *ctx;
  std::vector<int> w(c.slots(), 0);
  for (std::size_t i = 0; i < weight.size() && i < w.size(); ++i) w[i] = weight[i];
  for (std::size_t i = 0; i < c.nx(); ++i)
    if (w[c.x_slot(i)] + w[c.d_slot(i)] < 0) throw std::invalid_argument("inadmissible weight: u_i + v_i < 0");

  if (mode == WeightMode::ParamRingIntersection) {
    std::vector<std::size_t> slots;
    for (std::size_t s = 0; s < 2 * c.nx(); ++s) slots.push_back(s);
    Basis g = groebner_basis(gens, TermOrder::elimination(slots), budget);
    std::vector<WeylOp> out;
    for (const auto &v : g.generators())
      if (pure_params(v.front())) out.push_back(v.front());
    return out;
  }

  if (mode == WeightMode::EliminatePositive) {
    Basis g = groebner_basis(gens, TermOrder::weighted(w), budget);
    std::vector<WeylOp> out;
    for (const auto &v : g.generators()) {
      bool zero = true;
      for (const auto &t : v.front().terms())
        if (weight_of(t.exp, w) != 0) zero = false;
      if (zero) out.push_back(v.front());
    }
    return out;
  }

  // WeightZeroPart: a grading supported on one coordinate pair.
  std::size_t pair = SIZE_MAX;
  for (std::size_t i = 0; i < c.nx(); ++i) {
    if (w[c.x_slot(i)] + w[c.d_slot(i)] != 0)
      throw std::invalid_argument("weight-zero extraction needs u_i + v_i = 0");
    if (w[c.x_slot(i)] != 0) {
      if (pair != SIZE_MAX) throw std::invalid_argument("weight-zero extraction supports a single weighted pair");
      pair = i;
    }
  }
  for (std::size_t j = 0; j < c.nparams(); ++j)
    if (w[c.param_slot(j)] != 0) throw std::invalid_argument("parameters must carry weight zero");
  if (pair == SIZE_MAX) {
    Basis g = groebner_basis(gens, TermOrder::degrevlex(), budget);
    std::vector<WeylOp> out;
    for (const auto &v : g.generators()) out.push_back(v.front());
    return out;
  }
  const int wx = w[c.x_slot(pair)];
  if (wx != 1 && wx != -1) throw std::invalid_argument("weighted pair must carry weights +-1");

  // Homogenize with two commuting parameters hu (weight 1) and hv (weight -1).
  std::vector<std::string> params = c.params();
  params.push_back("_hu");
  params.push_back("_hv");
  std::vector<std::string> vars(c.xnames().begin(), c.xnames().begin() + static_cast<long>(c.n_spatial()));
  ContextPtr hctx = Context::weyl(vars, params, c.extra_pair());
  const std::size_t su = hctx->param_slot(c.nparams()), sv = hctx->param_slot(c.nparams() + 1);
  std::vector<std::size_t> map(c.slots());
  for (std::size_t i = 0; i < c.nx(); ++i) {
    map[c.x_slot(i)] = hctx->x_slot(i);
    map[c.d_slot(i)] = hctx->d_slot(i);
  }
  for (std::size_t j = 0; j < c.nparams(); ++j) map[c.param_slot(j)] = hctx->param_slot(j);

  std::vector<WeylOp> hgens;
  for (const auto &g : gens) {
    if (g.is_zero()) continue;
    long top = LONG_MIN;
    for (const auto &t : g.terms()) top = std::max(top, weight_of(t.exp, w));
    std::vector<PolyTerm> terms;
    for (const auto &t : g.terms()) {
      Exponent e;
      for (std::size_t s = 0; s < c.slots(); ++s) e[map[s]] = t.exp[s];
      e[su] = static_cast<std::uint16_t>(top - weight_of(t.exp, w));
      terms.push_back({e, t.coeff});
    }
    hgens.emplace_back(hctx, std::move(terms));
  }
  {
    Exponent uv;
    uv[su] = 1;
    uv[sv] = 1;
    hgens.push_back(Poly::monomial(hctx, uv) - Poly::constant(hctx, 1));
  }
  Basis g = groebner_basis(hgens, TermOrder::elimination({su, sv}), budget);

  std::vector<std::size_t> back(hctx->slots(), SIZE_MAX);
  for (std::size_t s = 0; s < c.slots(); ++s) back[map[s]] = s;
  const Poly tpow = Poly::generator(ctx, c.slot_name(c.x_slot(pair)));
  const Poly dpow = Poly::generator(ctx, c.slot_name(c.d_slot(pair)));
  std::vector<WeylOp> out;
  for (const auto &v : g.generators()) {
    const Poly &p = v.front();
    if (p.uses_slot(su) || p.uses_slot(sv)) continue;
    Poly q = p.with_context(ctx, back);
    long d = weight_of(q.leading().exp, w);
    // Shift to weight zero: the pair's coordinate carries weight wx.
    if (d != 0) {
      const Poly &shift = (d > 0) == (wx > 0) ? dpow : tpow;
      q = shift.pow(static_cast<unsigned>(std::labs(d))) * q;
    }
    out.push_back(primitive(q));
  }
  return out;
}

} // namespace dmod
