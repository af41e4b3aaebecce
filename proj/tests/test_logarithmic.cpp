#include <catch2/catch_amalgamated.hpp>

#include "dmod/logarithmic.hpp"

using namespace dmod;

namespace {

// Der(log f) as a submodule of O^n, for module comparison over the
// coordinate ring.
std::vector<OpVector> as_rows(const std::vector<LogDerivation> &gens) {
  std::vector<OpVector> rows;
  for (const auto &g : gens) rows.push_back(g.coeffs);
  return rows;
}

LogDerivation field(const CommPoly &f, std::initializer_list<const char *> coeffs) {
  LogDerivation d;
  for (auto c : coeffs) d.coeffs.push_back(parse_poly(c, f.ctx()));
  Poly lhs(f.ctx());
  auto grad = gradient(f);
  for (std::size_t i = 0; i < grad.size(); ++i) lhs += d.coeffs[i] * grad[i];
  d.cofactor = *exact_divide(lhs, f);
  return d;
}

} // namespace

TEST_CASE("normal crossing") {
  Budget b;
  auto f = parse_poly("x*y", {"x", "y"});
  auto gens = log_derivations(f, b);
  REQUIRE(gens.size() == 2);
  for (const auto &g : gens) CHECK(g.verify(f));
  auto expected = std::vector<LogDerivation>{field(f, {"x", "0"}), field(f, {"0", "y"})};
  CHECK(module_compare(as_rows(gens), as_rows(expected), 2, f.ctx(), b) == Inclusion::Equal);

  auto fr = saito_free_check(gens, f, b);
  REQUIRE(fr.status == FreeStatus::Free);
  CHECK(fr.basis->global);
  CHECK(fr.basis->unit.degree() == 0);

  auto e = euler_check(f, gens, b);
  CHECK(e.euler);
  CHECK(e.global_membership);
  REQUIRE(e.witness);
  CHECK(value_at_origin(e.witness->cofactor) == 1);

  auto sp = spencer_check(*fr.basis, f, b);
  CHECK(sp.status == SpencerStatus::Spencer);
  CHECK(sp.exact);
  CHECK(sp.holonomic);
  CHECK(sp.char_dimension == 2);

  auto div = divergence_shortcut(*fr.basis, weyl_context_for(f));
  CHECK_FALSE(div.certified);
  CHECK_FALSE(product_detection(gens).smooth_factor);
}

TEST_CASE("cusp") {
  Budget b;
  auto f = parse_poly("x^2 + y^3", {"x", "y"});
  auto gens = log_derivations(f, b);
  auto expected = std::vector<LogDerivation>{field(f, {"3*x", "2*y"}), field(f, {"3*y^2", "-2*x"})};
  CHECK(module_compare(as_rows(gens), as_rows(expected), 2, f.ctx(), b) == Inclusion::Equal);
  auto fr = saito_free_check(gens, f, b);
  REQUIRE(fr.status == FreeStatus::Free);
  auto sc = structure_constants(*fr.basis, f);
  REQUIRE(sc);
  // [delta_i, delta_j] = sum_k c_ij^k delta_k, re-expanded.
  auto W = weyl_context_for(f);
  const auto &ds = fr.basis->derivations;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < ds.size(); ++j) {
      WeylOp rhs(W);
      for (std::size_t k = 0; k < ds.size(); ++k) rhs += as_operator((*sc)[i][j][k], W) * ds[k].op(W);
      CHECK(commutator(ds[i].op(W), ds[j].op(W)) == rhs);
    }
  auto sp = spencer_check(*fr.basis, f, b);
  CHECK(sp.status == SpencerStatus::Spencer);
  CHECK(euler_check(f, gens, b).euler);
}

TEST_CASE("generic plane arrangement is not free") {
  Budget b;
  auto f = parse_poly("x*y*z*(x + y + z)", {"x", "y", "z"});
  auto gens = log_derivations(f, b);
  CHECK(gens.size() > 3);
  CHECK(saito_free_check(gens, f, b).status == FreeStatus::NotFreeDetected);
}

TEST_CASE("smooth factor") {
  Budget b;
  auto f = parse_poly("x*y", {"x", "y", "z"});
  auto gens = log_derivations(f, b);
  auto p = product_detection(gens);
  CHECK(p.smooth_factor);
  REQUIRE(p.variable);
  CHECK(*p.variable == 2);
  CHECK(p.witness != 0);
}

TEST_CASE("redundant generators are reduced to a basis") {
  Budget b;
  auto f = parse_poly("x*y", {"x", "y"});
  std::vector<LogDerivation> gens{field(f, {"x", "0"}), field(f, {"x + x^2", "x*y"}), field(f, {"0", "y"})};
  auto red = reduce_generators(gens, f, b);
  CHECK(red.size() == 2);
  CHECK(module_compare(as_rows(red), as_rows(gens), 2, f.ctx(), b) == Inclusion::Equal);
  auto fr = saito_free_check(gens, f, b);
  REQUIRE(fr.status == FreeStatus::Free);
  CHECK(fr.basis->global);
}

TEST_CASE("non-reduced input is flagged") {
  CHECK_FALSE(looks_squarefree(parse_poly("x^2*y", {"x", "y"})));
  CHECK_FALSE(looks_squarefree(parse_poly("(x + y^2)^2", {"x", "y"})));
  CHECK(looks_squarefree(parse_poly("x*y*(x - y)", {"x", "y"})));
  CHECK(looks_squarefree(parse_poly("x^2 + y^3", {"x", "y"})));
}

TEST_CASE("Euler check on a non-quasihomogeneous curve") {
  Budget b;
  // x^4 + y^5 + x*y^4: a free divisor whose fields all have cofactors
  // vanishing at 0.
  auto f = parse_poly("x^4 + y^5 + x*y^4", {"x", "y"});
  auto e = euler_check(f, log_derivations(f, b), b);
  CHECK_FALSE(e.euler);
  CHECK_FALSE(e.global_membership);
}

TEST_CASE("holonomic check") {
  Budget b;
  auto W = Context::weyl({"x", "y"});
  auto P = [&](const char *s) { return parse_poly(s, W); };
  CHECK(holonomic_check({P("dx"), P("dy")}, b).dimension == 2);
  CHECK(holonomic_check({P("x*dx")}, b).dimension == 3);
  CHECK_FALSE(holonomic_check({P("x*dx")}, b).holonomic);
  auto unit = holonomic_check({P("x"), P("dx")}, b);
  CHECK(unit.dimension == -1);
  CHECK(unit.holonomic);
  CHECK(holonomic_check({}, W, b).dimension == 4);
}

TEST_CASE("tilde ideal elements") {
  Budget b;
  auto f = parse_poly("x*y", {"x", "y"});
  auto W = weyl_context_for(f);
  auto gens = log_derivations(f, b);
  for (const auto &p : tilde_ideal(gens, 1, W)) {
    auto pr = smc_predicates(p);
    CHECK_FALSE(pr.derivative_only);
  }
  auto t2 = tilde_ideal({field(f, {"x", "0"})}, 2, W);
  CHECK(t2.front() == parse_poly("x*dx + 2", W));
}

TEST_CASE("Spencer complex shape") {
  Budget b;
  auto f = parse_poly("x*y*z", {"x", "y", "z"});
  auto gens = log_derivations(f, b);
  auto fr = saito_free_check(gens, f, b);
  REQUIRE(fr.status == FreeStatus::Free);
  auto data = spencer_complex(*fr.basis, f, 1);
  CHECK(data.complex.ranks() == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(compositions_vanish(data.complex));
  CHECK(complex_is_exact(data.complex, b));
}
