#include <catch2/catch_amalgamated.hpp>

#include "dmod/annihilator.hpp"

using namespace dmod;

namespace {

std::vector<WeylOp> parse_all(std::initializer_list<const char *> xs, const ContextPtr &ctx) {
  std::vector<WeylOp> out;
  for (auto s : xs) out.push_back(parse_poly(s, ctx));
  return out;
}

} // namespace

TEST_CASE("Ann f^s for a coordinate") {
  Budget b;
  auto f = parse_poly("x", {"x"});
  auto ann = ann_fs(f, b);
  CHECK(ideal_compare(ann.generators, parse_all({"x*dx - s"}, ann.ctx)) == Inclusion::Equal);
  for (const auto &g : ann.generators) CHECK(apply_to_fs(g, f).is_zero());
}

TEST_CASE("Ann f^s for x^2 + y^2 and xy") {
  Budget b;
  auto f = parse_poly("x^2 + y^2", {"x", "y"});
  auto ann = ann_fs(f, b);
  auto G = groebner_basis(ann.generators);
  CHECK(contains(G, parse_poly("y*dx - x*dy", ann.ctx)));
  CHECK(contains(G, parse_poly("x*dx + y*dy - 2*s", ann.ctx)));
  for (const auto &g : ann.generators) CHECK(apply_to_fs(g, f).is_zero());

  auto h = parse_poly("x*y", {"x", "y"});
  auto annh = ann_fs(h, b);
  auto H = groebner_basis(annh.generators);
  CHECK(contains(H, parse_poly("x*dx - s", annh.ctx)));
  CHECK(contains(H, parse_poly("y*dy - s", annh.ctx)));
}

TEST_CASE("formal application detects non-annihilators") {
  auto f = parse_poly("x^2 + y^2", {"x", "y"});
  auto S = Context::weyl({"x", "y"}, {"s"});
  CHECK_FALSE(apply_to_fs(parse_poly("x*dx - s", S), f).is_zero());
  CHECK(apply_to_fs(parse_poly("x*dx + y*dy - 2*s", S), f).is_zero());
}

TEST_CASE("b-functions") {
  Budget b;
  auto bx = bfunction(parse_poly("x", {"x"}), b);
  CHECK(bx.poly.to_string() == "s + 1");
  CHECK(bx.integer_roots == std::vector<long>{-1});
  CHECK(bx.min_integer_root == -1);

  auto bq = bfunction(parse_poly("x^2 + y^2", {"x", "y"}), b);
  CHECK(bq.poly.to_string() == "s^2 + 2*s + 1");
  CHECK(bq.factored() == "(s + 1)^2");

  auto bxy = bfunction(parse_poly("x*y", {"x", "y"}), b);
  CHECK(bxy.factored() == "(s + 1)^2");

  // Cusp: (s + 1)(s + 5/6)(s + 7/6).
  auto bc = bfunction(parse_poly("x^2 + y^3", {"x", "y"}), b);
  CHECK(bc.integer_roots == std::vector<long>{-1});
  CHECK(bc.poly.degree() == 3);
  CHECK(bc.factored() == "1/36*(6*s + 5)*(s + 1)*(6*s + 7)");

  // Three lines through 0: roots -2/3, -1, -4/3.
  auto bl = bfunction(parse_poly("x*y*(x + y)", {"x", "y"}), b);
  CHECK(bl.min_integer_root == -1);
}

TEST_CASE("b-function roots agree with a brute-force scan") {
  Budget b;
  for (const char *s : {"x^3", "x^2*y", "x^2 + y^2 + z^2", "x^3 + y^3"}) {
    std::vector<std::string> vars{"x", "y", "z"};
    auto f = parse_poly(s, vars);
    auto bf = bfunction(f, b);
    std::vector<long> scan;
    for (long r = -20; r <= 20; ++r) {
      Rational acc = 0;
      for (const auto &t : bf.poly.terms()) {
        Rational v = t.coeff;
        for (unsigned k = 0; k < t.exp[bf.poly.ctx()->param_slot(0)]; ++k) v *= r;
        acc += v;
      }
      if (acc == 0) scan.push_back(r);
    }
    CHECK(scan == bf.integer_roots);
    // s + 1 always divides b.
    CHECK(std::find(bf.integer_roots.begin(), bf.integer_roots.end(), -1) != bf.integer_roots.end());
  }
}

TEST_CASE("integer roots of explicit polynomials") {
  auto S = Context::commutative({"s"});
  CHECK(integer_roots(parse_poly("(s - 3)*(s + 2)*(2*s + 1)", S)) == std::vector<long>{-2, 3});
  CHECK(integer_roots(parse_poly("s^2 + 1", S)).empty());
  CHECK(integer_roots(parse_poly("s^3", S)) == std::vector<long>{0});
  CHECK(integer_roots(parse_poly("(s + 1000003)*(s - 7)", S)) == std::vector<long>{-1000003, 7});
}

TEST_CASE("Ann(1/f^k) by substitution") {
  Budget b;
  auto f = parse_poly("x", {"x"});
  auto ann = ann_fs(f, b);
  auto bf = bfunction(f, ann, b);
  auto W = Context::weyl({"x"});
  auto a1 = ann_power(ann, 1, bf, W);
  CHECK(ideal_compare(a1, parse_all({"x*dx + 1"}, W)) == Inclusion::Equal);
  for (const auto &g : a1) CHECK(apply_to_inverse_power(g, f, 1).is_zero());
  auto a3 = ann_power(ann, 3, bf, W);
  CHECK(ideal_compare(a3, parse_all({"x*dx + 3"}, W)) == Inclusion::Equal);

  auto h = parse_poly("x*y", {"x", "y"});
  auto annh = ann_fs(h, b);
  auto bh = bfunction(h, annh, b);
  auto W2 = Context::weyl({"x", "y"});
  CHECK(ideal_compare(ann_power(annh, 1, bh, W2), parse_all({"x*dx + 1", "y*dy + 1"}, W2)) == Inclusion::Equal);
}

TEST_CASE("substitution below the least root is refused") {
  Budget b;
  // A fabricated b with an integer root below -k.
  auto f = parse_poly("x", {"x"});
  auto ann = ann_fs(f, b);
  auto S = Context::commutative({"s"});
  BFunction fake;
  fake.poly = parse_poly("(s + 1)*(s + 2)", S);
  fake.integer_roots = {-2, -1};
  fake.min_integer_root = -2;
  CHECK_THROWS_AS(ann_power(ann, 1, fake, Context::weyl({"x"})), PreconditionViolated);
}

TEST_CASE("reserved names") {
  Budget b;
  CHECK_THROWS_AS(ann_fs(parse_poly("s^2 + x", {"x", "s"}), b), std::invalid_argument);
  CHECK_THROWS_AS(ann_fs(parse_poly("t", {"t"}), b), std::invalid_argument);
}

TEST_CASE("constant input is rejected") {
  Budget b;
  CHECK_THROWS(ann_fs(parse_poly("3", {"x"}), b));
}
