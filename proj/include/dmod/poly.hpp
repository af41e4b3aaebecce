#pragma once

#include "dmod/core.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dmod {

/// Slot layout and variable names of a polynomial algebra.
///
/// A context with `nx() == 0` is the commutative ring Q[params].  Otherwise
/// it is the Weyl algebra A_nx over Q[params]: slots [0, nx) hold the
/// coordinates, [nx, 2 nx) their derivatives and the remaining slots the
/// commuting parameters.  When `extra_pair` is set the last coordinate pair
/// is (t, dt) appended after the spatial variables.
class Context {
public:
  static std::shared_ptr<const Context> commutative(std::vector<std::string> vars);
  static std::shared_ptr<const Context> weyl(std::vector<std::string> vars,
                                             std::vector<std::string> params = {},
                                             bool extra_pair = false);

  std::size_t nx() const { return xnames_.size(); }
  std::size_t n_spatial() const { return extra_pair_ ? nx() - 1 : nx(); }
  std::size_t nparams() const { return params_.size(); }
  std::size_t slots() const { return 2 * nx() + nparams(); }
  bool is_commutative() const { return xnames_.empty(); }
  bool extra_pair() const { return extra_pair_; }

  std::size_t x_slot(std::size_t i) const { return i; }
  std::size_t d_slot(std::size_t i) const { return nx() + i; }
  std::size_t param_slot(std::size_t j) const { return 2 * nx() + j; }

  const std::vector<std::string> &xnames() const { return xnames_; }
  const std::vector<std::string> &params() const { return params_; }
  const std::string &slot_name(std::size_t slot) const { return slot_names_[slot]; }
  /// Slot index of a printed name ("x", "dx", "s"), if any.
  std::optional<std::size_t> find_slot(std::string_view name) const;

  friend bool operator==(const Context &a, const Context &b) {
    return a.xnames_ == b.xnames_ && a.params_ == b.params_ && a.extra_pair_ == b.extra_pair_;
  }

private:
  Context(std::vector<std::string> xnames, std::vector<std::string> params, bool extra_pair);

  std::vector<std::string> xnames_;
  std::vector<std::string> params_;
  std::vector<std::string> slot_names_;
  bool extra_pair_ = false;
};

using ContextPtr = std::shared_ptr<const Context>;

bool same_context(const ContextPtr &a, const ContextPtr &b);

/// Canonical storage order: degree-reverse-lexicographic over the slot layout.
int canonical_compare(const Exponent &a, const Exponent &b);

struct PolyTerm {
  Exponent exp;
  Rational coeff;
};

/// An element of the algebra described by its context.  Terms are stored
/// normally ordered (coordinates left of derivatives), without zero
/// coefficients, sorted descending by `canonical_compare`.
class Poly {
public:
  Poly() = default;
  explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  Poly(ContextPtr ctx, std::vector<PolyTerm> terms);

  static Poly constant(ContextPtr ctx, const Rational &c);
  static Poly monomial(ContextPtr ctx, const Exponent &e, const Rational &c = 1);
  /// Generator named `name` ("x", "dx", "s"); throws std::invalid_argument.
  static Poly generator(ContextPtr ctx, std::string_view name);

  const ContextPtr &ctx() const { return ctx_; }
  const std::vector<PolyTerm> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const PolyTerm &leading() const { return terms_.front(); }

  /// Coefficient of the pure-parameter/constant monomial 1.
  Rational constant_term() const;
  /// Highest total degree over all slots (-1 for zero).
  int degree() const;
  int degree_in_slot(std::size_t slot) const;
  bool uses_slot(std::size_t slot) const;

  Poly operator-() const;
  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Rational &c);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational &c) { return a *= c; }
  friend Poly operator*(const Rational &c, Poly a) { return a *= c; }
  /// Algebra product; Leibniz rule on coordinate/derivative pairs.
  friend Poly operator*(const Poly &a, const Poly &b);
  Poly pow(unsigned k) const;

  friend bool operator==(const Poly &a, const Poly &b);

  /// Same terms viewed in another context with identical slot meaning
  /// for every used slot (throws if a term would be lost).
  Poly with_context(ContextPtr ctx, const std::vector<std::size_t> &slot_map) const;

  std::string to_string() const;

private:
  ContextPtr ctx_;
  std::vector<PolyTerm> terms_;
};

using CommPoly = Poly;
using WeylOp = Poly;
using OpVector = std::vector<Poly>;

/// Parses an expression over the context's printed names.  Products are
/// evaluated in the algebra, so "dx*x" yields "x*dx + 1".
Poly parse_poly(std::string_view text, const ContextPtr &ctx);
/// Convenience: parse in the commutative ring over `vars`.
Poly parse_poly(std::string_view text, const std::vector<std::string> &vars);

/// Partial derivative of a commutative polynomial in slot `slot`.
Poly derivative(const Poly &f, std::size_t slot);
/// (f_1, ..., f_n) for a commutative polynomial.
std::vector<Poly> gradient(const Poly &f);
/// Value at the origin of all non-parameter slots of a commutative poly.
Rational value_at_origin(const Poly &f);

/// Exact quotient num / den, or nullopt when den does not divide num.
/// Only meaningful in commutative contexts.
std::optional<Poly> exact_divide(const Poly &num, const Poly &den);

/// Rectangular grid of commutative polynomials.
class CommMatrix {
public:
  CommMatrix(std::size_t rows, std::size_t cols, const ContextPtr &ctx);
  explicit CommMatrix(std::vector<std::vector<Poly>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ContextPtr &ctx() const { return ctx_; }
  Poly &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  CommMatrix minor_without(std::size_t row, std::size_t col) const;
  CommMatrix transposed() const;

private:
  std::size_t rows_, cols_;
  ContextPtr ctx_;
  std::vector<Poly> data_;
};

/// Fraction-free (Bareiss) elimination; cofactor expansion for n <= 3.
Poly determinant(const CommMatrix &m);
Poly determinant_bareiss(const CommMatrix &m);
Poly determinant_cofactor(const CommMatrix &m);
/// Transposed cofactor matrix: adj(m) * m = det(m) * I.
CommMatrix adjugate(const CommMatrix &m);

/// Greatest common divisor of integer contents; used by the engine and tests.
Integer content(const std::vector<Integer> &values);

/// Normally ordered expansion of the product of two monomials
/// x^a d^b * x^c d^e (parameter slots simply add).  Calls
/// `emit(exponent, factor)` once per term; the first call is the leading
/// term a+c, b+e with factor 1.
template <class Emit>
void leibniz_expand(std::size_t nx, const Exponent &left, const Exponent &right, Emit &&emit) {
  Exponent base = left + right;
  // Pairs where a derivative on the left meets a coordinate on the right.
  std::array<std::size_t, kMaxSlots> active{};
  std::array<unsigned, kMaxSlots> limit{};
  std::size_t na = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    unsigned m = std::min<unsigned>(left[nx + i], right[i]);
    if (m) {
      active[na] = i;
      limit[na] = m;
      ++na;
    }
  }
  if (na == 0) {
    emit(base, Integer(1));
    return;
  }
  // factor(i, k) = C(b_i, k) * c_i! / (c_i - k)!
  std::array<std::vector<Integer>, kMaxSlots> factors;
  for (std::size_t a = 0; a < na; ++a) {
    std::size_t i = active[a];
    unsigned b = left[nx + i], c = right[i];
    auto &f = factors[a];
    f.resize(limit[a] + 1);
    f[0] = 1;
    for (unsigned k = 1; k <= limit[a]; ++k) {
      f[k] = f[k - 1] * (b - k + 1) * (c - k + 1);
      mpz_divexact_ui(f[k].get_mpz_t(), f[k].get_mpz_t(), k);
    }
  }
  std::array<unsigned, kMaxSlots> k{};
  for (;;) {
    Exponent ex = base;
    Integer fac = 1;
    for (std::size_t a = 0; a < na; ++a) {
      if (k[a]) {
        std::size_t i = active[a];
        ex[i] -= k[a];
        ex[nx + i] -= k[a];
        fac *= factors[a][k[a]];
      }
    }
    emit(ex, fac);
    std::size_t a = 0;
    while (a < na && k[a] == limit[a]) k[a++] = 0;
    if (a == na) break;
    ++k[a];
  }
}

} // namespace dmod
