#include <catch2/catch_amalgamated.hpp>

#include "dmod/groebner.hpp"

using namespace dmod;

namespace {

std::vector<Poly> parse_all(std::initializer_list<const char *> xs, const ContextPtr &ctx) {
  std::vector<Poly> out;
  for (auto s : xs) out.push_back(parse_poly(s, ctx));
  return out;
}

} // namespace

TEST_CASE("commutative bases match the textbook") {
  auto R = Context::commutative({"x", "y"});
  auto G = groebner_basis(parse_all({"x^2 - y", "x*y - 1"}, R));
  CHECK(is_groebner(G));
  CHECK(G.size() == 3);
  CHECK(ideal_compare(parse_all({"x^2 - y", "x*y - 1", "y^2 - x"}, R), parse_all({"x^2 - y", "x*y - 1"}, R)) ==
        Inclusion::Equal);
  // Cyclic reductions (Cox-Little-O'Shea 2.7).
  auto H = groebner_basis(parse_all({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"}, R));
  CHECK(H.size() == 3);
  CHECK(contains(H, parse_poly("x^2", R)));
  CHECK(contains(H, parse_poly("x*y", R)));
  CHECK(contains(H, parse_poly("2*y^2 - x", R)));
  CHECK_FALSE(contains(H, parse_poly("y", R)));
}

TEST_CASE("left ideals in the Weyl algebra") {
  auto W = Context::weyl({"x", "y"});
  // (x, dx) is everything: dx*x - x*dx = 1.
  auto unit = groebner_basis(parse_all({"x", "dx"}, W));
  CHECK(contains(unit, parse_poly("1", W)));
  auto G = groebner_basis(parse_all({"y - x", "dx + dy"}, W));
  CHECK(is_groebner(G));
  CHECK_FALSE(contains(G, parse_poly("1", W)));
  CHECK(contains(G, parse_poly("x*dx + x*dy", W)));
  CHECK(contains(G, parse_poly("(dx + dy)*(y - x)", W)));
  // Left, not right: (dx) contains x*dx but not dx*x = x*dx + 1.
  auto D = groebner_basis(parse_all({"dx"}, W));
  CHECK(contains(D, parse_poly("x*dx", W)));
  CHECK_FALSE(contains(D, parse_poly("dx*x", W)));
}

TEST_CASE("normal forms") {
  auto W = Context::weyl({"x"});
  auto G = groebner_basis(parse_all({"x*dx + 1"}, W));
  auto p = parse_poly("x^2*dx + 3*x", W);
  auto r = normal_form(p, G);
  CHECK(normal_form(r, G) == r);
  CHECK(contains(G, p - r));
}

TEST_CASE("ideal comparison") {
  auto W = Context::weyl({"x"});
  CHECK(ideal_compare(parse_all({"x*dx + 1"}, W), parse_all({"dx*x"}, W)) == Inclusion::Equal);
  CHECK(ideal_compare(parse_all({"x*dx"}, W), parse_all({"dx"}, W)) == Inclusion::AStrictlyInside);
  CHECK(ideal_compare(parse_all({"dx"}, W), parse_all({"x*dx"}, W)) == Inclusion::BStrictlyInside);
  CHECK(ideal_compare(parse_all({"dx"}, W), parse_all({"x"}, W)) == Inclusion::Incomparable);
}

TEST_CASE("modules") {
  auto W = Context::weyl({"x"});
  auto P = [&](const char *s) { return parse_poly(s, W); };
  std::vector<OpVector> a{{P("dx"), P("0")}, {P("0"), P("x")}};
  std::vector<OpVector> b{{P("dx"), P("x")}, {P("dx"), P("0")}};
  Budget budget;
  CHECK(module_compare(a, b, 2, W, budget) == Inclusion::Equal);
  std::vector<OpVector> c{{P("dx"), P("x")}};
  CHECK(module_compare(c, a, 2, W, budget) == Inclusion::AStrictlyInside);
  auto G = groebner_basis(a, 2, W, ModuleOrder::pot(), budget);
  CHECK(contains(G, OpVector{P("x*dx"), P("x^2")}));
  CHECK_FALSE(contains(G, OpVector{P("1"), P("0")}));
}

TEST_CASE("elimination") {
  Budget budget;
  auto R = Context::weyl({"x"}, {"s"});
  // (x*dx - s, x): dx*x = x*dx + 1 lies in it, so s + 1 does too.
  auto out = eliminate_weight(parse_all({"x*dx - s", "x"}, R), {}, WeightMode::ParamRingIntersection, budget);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == parse_poly("s + 1", R));
  auto C = Context::commutative({"x", "y", "z"});
  std::vector<int> w{1, 0, 0};
  auto e = eliminate_weight(parse_all({"x - y", "x - z^2"}, C), w, WeightMode::EliminatePositive, budget);
  REQUIRE(e.size() == 1);
  CHECK(primitive(e[0]) == primitive(parse_poly("y - z^2", C)));
}

TEST_CASE("inadmissible weights are refused") {
  Budget budget;
  auto W = Context::weyl({"x"});
  std::vector<int> w{-1, 0};
  CHECK_THROWS_AS(eliminate_weight(parse_all({"x*dx"}, W), w, WeightMode::EliminatePositive, budget),
                  std::invalid_argument);
}

TEST_CASE("budgets stop long computations") {
  auto R = Context::commutative({"x", "y", "z"});
  auto gens = parse_all({"x^5 + y^4 + z^3 - 1", "x^3 + y^3 + z^2 - 1", "x*y*z - 3"}, R);
  Budget steps(std::nullopt, 5);
  CHECK_THROWS_AS(groebner_basis(gens, TermOrder::lex(), steps), BudgetExceeded);
  Budget time(0.0, std::nullopt);
  time.set_per_call_seconds(0.0);
  CHECK_THROWS_AS(groebner_basis(gens, TermOrder::lex(), time), BudgetExceeded);
}

TEST_CASE("primitive normalization") {
  auto R = Context::commutative({"x"});
  CHECK(primitive(parse_poly("-4*x + 6", R)) == parse_poly("2*x - 3", R));
  CHECK(primitive(parse_poly("1/2*x + 1/3", R)) == parse_poly("3*x + 2", R));
}
