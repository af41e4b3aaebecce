#include <catch2/catch_amalgamated.hpp>

#include "dmod/poly.hpp"

using namespace dmod;

TEST_CASE("parse and print") {
  auto f = parse_poly("x*(x^2-y^3)*(x^2-z*y^3)", {"x", "y", "z"});
  CHECK(f.to_string() == "x*y^6*z - x^3*y^3*z - x^3*y^3 + x^5");
  CHECK(parse_poly("3/6*x - 1/2*x + y", {"x", "y"}).to_string() == "y");
  CHECK(parse_poly("(x+y)^2", {"x", "y"}) == parse_poly("x^2 + 2*x*y + y^2", {"x", "y"}));
  CHECK(parse_poly("-x", {"x"}).to_string() == "-x");
  CHECK(parse_poly("0", {"x"}).is_zero());
  CHECK(parse_poly("0", {"x"}).to_string() == "0");
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_poly("x + * y", {"x", "y"});
    FAIL("no throw");
  } catch (const ParseError &e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_poly("x*", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("x y", {"x", "y"}), ParseError);
  CHECK_THROWS_AS(parse_poly("x/0", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("(x", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("q", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("x", {"x", "x"}), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x", std::vector<std::string>{}), std::invalid_argument);
}

TEST_CASE("weyl products are normally ordered") {
  auto W = Context::weyl({"x", "y"});
  CHECK(parse_poly("dx*x", W).to_string() == "x*dx + 1");
  CHECK(parse_poly("dx^2*x^2", W) == parse_poly("x^2*dx^2 + 4*x*dx + 2", W));
  CHECK(parse_poly("dy*x", W) == parse_poly("x*dy", W));
}

TEST_CASE("parameters commute") {
  auto W = Context::weyl({"x"}, {"s"});
  auto p = parse_poly("dx*s*x", W);
  CHECK(p == parse_poly("s*x*dx + s", W));
}

TEST_CASE("contexts do not mix") {
  auto a = parse_poly("x", {"x"});
  auto b = parse_poly("x", {"x", "y"});
  CHECK_THROWS_AS(a + b, ContextMismatch);
}

TEST_CASE("derivatives and origin values") {
  auto f = parse_poly("x^2*y + 3*y - 7", {"x", "y"});
  auto g = gradient(f);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == parse_poly("2*x*y", {"x", "y"}));
  CHECK(g[1] == parse_poly("x^2 + 3", {"x", "y"}));
  CHECK(value_at_origin(f) == -7);
  CHECK(f.degree() == 3);
}

TEST_CASE("exact division") {
  std::vector<std::string> v{"x", "y"};
  auto a = parse_poly("x^2 - y^2", v), b = parse_poly("x - y", v);
  auto q = exact_divide(a, b);
  REQUIRE(q);
  CHECK(*q == parse_poly("x + y", v));
  CHECK_FALSE(exact_divide(parse_poly("x^2 + y", v), b));
  CHECK(exact_divide(parse_poly("0", v), b)->is_zero());
  CHECK(*exact_divide(parse_poly("4*x", v), parse_poly("2", v)) == parse_poly("2*x", v));
}

TEST_CASE("determinants and adjugate") {
  std::vector<std::string> v{"x", "y"};
  auto P = [&](const char *s) { return parse_poly(s, v); };
  CommMatrix m({{P("x"), P("y"), P("1")}, {P("0"), P("x*y"), P("2")}, {P("y"), P("1"), P("x")}});
  auto d1 = determinant_bareiss(m), d2 = determinant_cofactor(m);
  CHECK(d1 == d2);
  CHECK(d1 == P("x^3*y - 2*x - y^2*x + 2*y^2"));
  auto adj = adjugate(m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Poly acc(m.ctx());
      for (std::size_t k = 0; k < 3; ++k) acc += adj(i, k) * m(k, j);
      CHECK(acc == (i == j ? d1 : Poly(m.ctx())));
    }
}

TEST_CASE("content") {
  CHECK(content({Integer(6), Integer(-9), Integer(15)}) == 3);
  CHECK(content({}) == 0);
}
