#pragma once

#include "dmod/poly.hpp"

#include <string>
#include <vector>

namespace dmod {

/// Normally ordered product; throws ContextMismatch across contexts.
WeylOp weyl_mul(const WeylOp &p, const WeylOp &q);
/// p q - q p.
WeylOp commutator(const WeylOp &p, const WeylOp &q);

/// The commutative ring Q[x_1..x_n] whose variables are the coordinates of
/// a parameter-free Weyl context (slot i of both refers to x_i).
ContextPtr coordinate_ring(const ContextPtr &weyl_ctx);

/// Natural action of a parameter-free operator on a polynomial in the
/// coordinate ring.  Throws std::invalid_argument on parameterized input.
CommPoly weyl_apply(const WeylOp &p, const CommPoly &g);

/// Lifts a coordinate polynomial into the Weyl context as an order-zero
/// operator.
WeylOp as_operator(const CommPoly &g, const ContextPtr &weyl_ctx);
/// The vector field sum_i a_i d_i.
WeylOp vector_field(const std::vector<CommPoly> &coeffs, const ContextPtr &weyl_ctx);
/// Coefficient function of d^beta, as a polynomial in the coordinate ring.
CommPoly derivative_coefficient(const WeylOp &p, const Exponent &beta);

struct SmcPredicates {
  /// Every term carries a derivative: the operator kills constants.
  bool derivative_only = false;
  /// Every term carries a coordinate factor: all coefficient functions
  /// vanish at the origin.
  bool origin_vanishing = false;
  /// Weaker check: the order-zero part P(1) vanishes at the origin.
  bool apply_one_vanishes_at_origin = false;
};

SmcPredicates smc_predicates(const WeylOp &p);

/// Highest derivative order (-1 for zero).
int order(const WeylOp &p);

} // namespace dmod
