// Randomized identities, 1000 cases per property, fixed seeds.
#include <catch2/catch_amalgamated.hpp>

#include "dmod/resolution.hpp"
#include "support.hpp"

#include <algorithm>
#include <set>

using namespace dmod;
using dmod::test::random_nonzero;
using dmod::test::random_operator;
using dmod::test::random_poly;

namespace {

constexpr int kCases = 1000;

Budget small_budget() { return Budget(std::nullopt, 200000); }

// ---- naive commutative Buchberger (no criteria), degrevlex via the
// canonical storage order.

Poly monic(Poly p) {
  Rational c = p.leading().coeff;
  return p * (1 / c);
}

Poly naive_reduce(Poly p, const std::vector<Poly> &g) {
  const auto &ctx = p.ctx();
  Poly rem(ctx);
  while (!p.is_zero()) {
    const PolyTerm lt = p.leading();
    bool reduced = false;
    for (const auto &h : g) {
      if (h.leading().exp.divides(lt.exp)) {
        p -= Poly::monomial(ctx, lt.exp - h.leading().exp, lt.coeff / h.leading().coeff) * h;
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem += Poly::monomial(ctx, lt.exp, lt.coeff);
      p -= Poly::monomial(ctx, lt.exp, lt.coeff);
    }
  }
  return rem;
}

std::vector<Poly> naive_buchberger(std::vector<Poly> g) {
  std::erase_if(g, [](const Poly &p) { return p.is_zero(); });
  if (g.empty()) return g;
  const ContextPtr ctx = g.front().ctx();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) pairs.push_back({i, j});
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    Exponent l = Exponent::lcm(g[i].leading().exp, g[j].leading().exp);
    Poly s = Poly::monomial(ctx, l - g[i].leading().exp, 1 / g[i].leading().coeff) * g[i] -
             Poly::monomial(ctx, l - g[j].leading().exp, 1 / g[j].leading().coeff) * g[j];
    Poly r = naive_reduce(s, g);
    if (!r.is_zero()) {
      g.push_back(r);
      for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.push_back({g.size() - 1, k});
    }
  }
  // Minimal, then reduced, then monic.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto &a = g[j].leading().exp, &b = g[i].leading().exp;
      if (a.divides(b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly lead = Poly::monomial(ctx, minimal[i].leading().exp, minimal[i].leading().coeff);
    reduced.push_back(monic(lead + naive_reduce(minimal[i] - lead, others)));
  }
  return reduced;
}

std::set<std::string> as_monic_set(const std::vector<Poly> &g) {
  std::set<std::string> out;
  for (const auto &p : g) out.insert(monic(p).to_string());
  return out;
}

} // namespace

TEST_CASE("normal forms are idempotent and differ by ideal members") {
  std::mt19937 rng(11);
  auto W = Context::weyl({"x", "y"});
  auto R = Context::commutative({"x", "y", "z"});
  for (int c = 0; c < kCases; ++c) {
    const auto &ctx = c % 2 ? W : R;
    std::vector<Poly> gens;
    int ng = 1 + c % 3;
    for (int i = 0; i < ng; ++i)
      gens.push_back(ctx == W ? random_operator(rng, W, 3, 2, 1) : random_nonzero(rng, R, 3, 2));
    Budget b = small_budget();
    auto G = groebner_basis(gens, TermOrder::degrevlex(), b);
    Poly p = ctx == W ? random_operator(rng, W, 4, 3, 2) : random_poly(rng, R, 4, 3);
    Poly r = normal_form(p, G);
    REQUIRE(normal_form(r, G) == r);
    REQUIRE(contains(G, p - r));
  }
}

TEST_CASE("left combinations are members") {
  std::mt19937 rng(12);
  auto W = Context::weyl({"x", "y"});
  for (int c = 0; c < kCases; ++c) {
    std::vector<WeylOp> gens{random_operator(rng, W, 3, 2, 1), random_operator(rng, W, 3, 2, 1)};
    Budget b = small_budget();
    auto G = groebner_basis(gens, TermOrder::degrevlex(), b);
    Poly comb(W);
    for (const auto &g : gens) comb += random_operator(rng, W, 3, 2, 2) * g;
    REQUIRE(contains(G, comb));
    for (const auto &g : gens) REQUIRE(contains(G, g));
  }
}

TEST_CASE("syzygies re-expand to zero") {
  std::mt19937 rng(13);
  auto W = Context::weyl({"x", "y"});
  for (int c = 0; c < kCases; ++c) {
    std::vector<WeylOp> gens;
    int ng = 2 + c % 2;
    for (int i = 0; i < ng; ++i) gens.push_back(random_operator(rng, W, 2, 2, 1));
    std::erase_if(gens, [](const Poly &p) { return p.is_zero(); });
    if (gens.size() < 2) gens.push_back(random_operator(rng, W, 1, 1, 1) + Poly::generator(W, "dx"));
    Budget b = small_budget();
    for (const auto &rel : syzygies(gens, b, c % 5 == 0)) {
      Poly acc(W);
      for (std::size_t i = 0; i < gens.size(); ++i) acc += rel[i] * gens[i];
      REQUIRE(acc.is_zero());
    }
  }
}

TEST_CASE("tracked relations agree with full elimination") {
  std::mt19937 rng(20);
  auto W = Context::weyl({"x", "y"});
  for (int c = 0; c < kCases; ++c) {
    std::vector<OpVector> rows;
    const std::size_t rank = 1 + c % 2, m = 2 + c % 2;
    for (std::size_t i = 0; i < m; ++i) {
      OpVector r;
      for (std::size_t k = 0; k < rank; ++k) r.push_back(random_operator(rng, W, 2, 1, 1));
      rows.push_back(std::move(r));
    }
    Budget b = small_budget();
    // Oracle: the relation part of a basis of (g_i | e_i) under block elimination.
    std::vector<OpVector> ext;
    for (std::size_t i = 0; i < m; ++i) {
      OpVector v = rows[i];
      for (std::size_t k = 0; k < m; ++k) v.push_back(k == i ? Poly::constant(W, 1) : Poly(W));
      ext.push_back(std::move(v));
    }
    ModuleOrder order = ModuleOrder::top();
    order.priority_split = rank;
    std::vector<OpVector> full;
    const Basis elim = groebner_basis(ext, rank + m, W, order, b);
    for (const auto &v : elim.generators())
      if (std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank), [](const Poly &p) { return p.is_zero(); }))
        full.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(rank), v.end());
    auto tracked = tracked_relations(rows, rank, W, b);
    for (const auto &rel : tracked)
      for (std::size_t k = 0; k < rank; ++k) {
        Poly acc(W);
        for (std::size_t i = 0; i < m; ++i) acc += rel[i] * rows[i][k];
        REQUIRE(acc.is_zero());
      }
    if (full.empty()) {
      REQUIRE(tracked.empty());
    } else {
      REQUIRE(module_compare(full, tracked, m, W, b) == Inclusion::Equal);
    }
  }
}

TEST_CASE("resolution maps compose to zero and their transposes annihilate") {
  std::mt19937 rng(14);
  auto W = Context::weyl({"x", "y"});
  auto R = coordinate_ring(W);
  for (int c = 0; c < kCases; ++c) {
    std::vector<WeylOp> gens{random_operator(rng, W, 2, 2, 1), random_operator(rng, W, 2, 1, 1)};
    if (c % 3 == 0) gens.push_back(random_operator(rng, W, 2, 1, 1));
    Budget b = small_budget();
    auto res = free_resolution(gens, 3, b);
    REQUIRE(compositions_vanish(res));
    for (std::size_t i = 0; i + 1 < res.matrices.size(); ++i)
      REQUIRE(res.matrices[i + 1].then(res.matrices[i]).is_zero());
    // psi_{i+1} psi_i h = 0 for a random tuple h.
    auto psi = transpose_complex(res);
    for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
      std::vector<CommPoly> h;
      for (std::size_t u = 0; u < psi[i].matrix.target_rank; ++u) h.push_back(random_poly(rng, R, 3, 3));
      for (const auto &v : psi[i + 1](psi[i](h))) REQUIRE(v.is_zero());
    }
  }
}

TEST_CASE("Weyl algebra identities") {
  std::mt19937 rng(15);
  auto W = Context::weyl({"x", "y"});
  auto R = coordinate_ring(W);
  for (int c = 0; c < kCases; ++c) {
    auto p = random_operator(rng, W, 3, 3, 2), q = random_operator(rng, W, 3, 3, 2),
         r = random_operator(rng, W, 3, 3, 2);
    REQUIRE((p * q) * r == p * (q * r));
    REQUIRE(p * (q + r) == p * q + p * r);
    auto g = random_poly(rng, R, 4, 3);
    REQUIRE(weyl_apply(p * q, g) == weyl_apply(p, weyl_apply(q, g)));
    auto jac = commutator(p, commutator(q, r)) + commutator(q, commutator(r, p)) + commutator(r, commutator(p, q));
    REQUIRE(jac.is_zero());
  }
}

TEST_CASE("commutative bases agree with a naive Buchberger") {
  std::mt19937 rng(16);
  auto R2 = Context::commutative({"x", "y"});
  auto R3 = Context::commutative({"x", "y", "z"});
  for (int c = 0; c < kCases; ++c) {
    // Without criteria the oracle blows up quickly; keep three variables multilinear.
    const bool three = c % 4 == 0;
    std::vector<Poly> gens;
    int ng = 1 + c % 3;
    for (int i = 0; i < ng; ++i) gens.push_back(random_nonzero(rng, three ? R3 : R2, 3, three ? 1 : 2, 3));
    Budget b = small_budget();
    auto G = groebner_basis(gens, TermOrder::degrevlex(), b);
    std::vector<Poly> engine;
    for (const auto &v : G.generators()) engine.push_back(v.front());
    REQUIRE(as_monic_set(engine) == as_monic_set(naive_buchberger(gens)));
  }
}

TEST_CASE("determinant algorithms agree") {
  std::mt19937 rng(17);
  auto R = Context::commutative({"x", "y"});
  for (int c = 0; c < kCases; ++c) {
    std::size_t n = 1 + c % 4;
    CommMatrix m(n, n, R);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_poly(rng, R, 2, 2);
    auto d = determinant_bareiss(m);
    REQUIRE(d == determinant_cofactor(m));
    REQUIRE(d == determinant(m));
    REQUIRE(determinant(m.transposed()) == d);
  }
}

TEST_CASE("exact division") {
  std::mt19937 rng(18);
  auto R = Context::commutative({"x", "y", "z"});
  for (int c = 0; c < kCases; ++c) {
    auto a = random_poly(rng, R, 3, 2), b = random_nonzero(rng, R, 3, 2);
    auto q = exact_divide(a * b, b);
    REQUIRE(q);
    REQUIRE(*q == a);
    auto e = random_poly(rng, R, 3, 3);
    if (auto r = exact_divide(e, b)) REQUIRE(*r * b == e);
  }
}

TEST_CASE("parse and print are a fixed point") {
  std::mt19937 rng(19);
  auto W = Context::weyl({"x", "y"}, {"s"});
  auto R = Context::commutative({"x", "y", "z"});
  for (int c = 0; c < kCases; ++c) {
    const auto &ctx = c % 2 ? W : R;
    auto p = random_poly(rng, ctx, 5, 3, 50);
    p *= Rational(1 + c % 7, 1 + c % 5);
    auto text = p.to_string();
    auto back = parse_poly(text, ctx);
    REQUIRE(back == p);
    REQUIRE(back.to_string() == text);
  }
}
