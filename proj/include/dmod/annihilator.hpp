#pragma once

#include "dmod/groebner.hpp"
#include "dmod/weyl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dmod {

/// Generators of Ann_{D[s]}(f^s) in the Weyl context over the spatial
/// variables with the single commuting parameter s.
struct AnnFsIdeal {
  ContextPtr ctx;
  std::vector<WeylOp> generators;
};

/// Bernstein-Sato polynomial b(s), monic, with its exact integer roots.
struct BFunction {
  CommPoly poly; ///< in Q[s]
  std::vector<long> integer_roots;
  std::optional<long> min_integer_root;

  /// Product of integer linear factors over the rational roots times the
  /// remaining expanded factor, e.g. "(s + 1)^2*(2*s + 3)".
  std::string factored() const;
};

/// Ann_{D[s]}(f^s) through the extended algebra A_{n+1}: the ideal
/// (t - f, d_i + f_i dt) is cut down to its weight-zero part for the
/// weight t:1, dt:-1 and dt*t is rewritten as -s.
/// Variables named "t" or "s" are reserved.
AnnFsIdeal ann_fs(const CommPoly &f, Budget &budget);

/// b(s) as the generator of (Ann_{D[s]}(f^s) + D[s] f) intersected with Q[s].
BFunction bfunction(const CommPoly &f, const AnnFsIdeal &ann, Budget &budget);
BFunction bfunction(const CommPoly &f, Budget &budget);

/// Monic generator of the ideal of Q[s] spanned by `polys` plus exact
/// integer roots.
BFunction make_bfunction(const std::vector<WeylOp> &polys_in_s);

/// Integer roots of a univariate rational polynomial, ascending, without
/// multiplicity.
std::vector<long> integer_roots(const CommPoly &p);

/// Thrown when the substitution s = -k could give a proper subideal.
class PreconditionViolated : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Ann_D(1/f^k) by substituting s = -k; requires -k <= every integer root
/// of b.  The result lives in `weyl_ctx` (same spatial variables, no
/// parameters).
std::vector<WeylOp> ann_power(const AnnFsIdeal &ann, long k, const BFunction &b,
                              const ContextPtr &weyl_ctx);

/// Applies a D[s] operator formally to f^s and returns the polynomial Q
/// with P f^s = Q f^{s-m} where m is the operator order.  Q = 0 exactly
/// when P annihilates f^s.
CommPoly apply_to_fs(const WeylOp &p, const CommPoly &f);

/// Applies a parameter-free operator to f^{-k}; returns the numerator Q of
/// P(1/f^k) = Q / f^{k+m}, m the operator order.
CommPoly apply_to_inverse_power(const WeylOp &p, const CommPoly &f, long k);

} // namespace dmod
