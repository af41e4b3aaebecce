#pragma once
// Random small elements for the property suites.  Seeds are fixed so a
// failure reproduces.

#include "dmod/poly.hpp"

#include <random>

namespace dmod::test {

inline Poly random_poly(std::mt19937 &rng, const ContextPtr &ctx, int max_terms, int max_exp,
                        int coeff_range = 5, std::size_t slots = 0) {
  if (slots == 0) slots = ctx->slots();
  std::uniform_int_distribution<int> nterms(0, max_terms), ex(0, max_exp), co(-coeff_range, coeff_range);
  std::vector<PolyTerm> terms;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Exponent e;
    for (std::size_t s = 0; s < slots; ++s) e[s] = static_cast<std::uint16_t>(ex(rng));
    int c = co(rng);
    if (c != 0) terms.push_back({e, Rational(c)});
  }
  return Poly(ctx, std::move(terms));
}

inline Poly random_nonzero(std::mt19937 &rng, const ContextPtr &ctx, int max_terms, int max_exp,
                           int coeff_range = 5) {
  for (;;) {
    Poly p = random_poly(rng, ctx, max_terms, max_exp, coeff_range);
    if (!p.is_zero()) return p;
  }
}

/// Random operator of order at most `max_order` with coordinate degree at
/// most `max_deg` in a parameter-free Weyl context.
inline Poly random_operator(std::mt19937 &rng, const ContextPtr &ctx, int max_terms, int max_deg,
                            int max_order, int coeff_range = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms), xd(0, max_deg), dd(0, max_order),
      co(-coeff_range, coeff_range);
  std::vector<PolyTerm> terms;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Exponent e;
    for (std::size_t i = 0; i < ctx->nx(); ++i) {
      e[ctx->x_slot(i)] = static_cast<std::uint16_t>(xd(rng) / static_cast<int>(ctx->nx()));
      e[ctx->d_slot(i)] = static_cast<std::uint16_t>(dd(rng) / static_cast<int>(ctx->nx()));
    }
    int c = co(rng);
    if (c != 0) terms.push_back({e, Rational(c)});
  }
  return Poly(ctx, std::move(terms));
}

} // namespace dmod::test
