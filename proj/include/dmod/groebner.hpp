#pragma once

#include "dmod/poly.hpp"

#include <memory>
#include <vector>

namespace dmod {

/// Monomial order: a sequence of integer weight vectors refined by a base
/// order.  Weight vectors are indexed by context slot.
struct TermOrder {
  enum class Base { DegRevLex, Lex };

  std::vector<std::vector<int>> weights;
  Base base = Base::DegRevLex;

  static TermOrder degrevlex() { return {}; }
  static TermOrder lex() { return {{}, Base::Lex}; }
  static TermOrder weighted(std::vector<int> w, Base tiebreak = Base::DegRevLex) {
    return {{std::move(w)}, tiebreak};
  }
  /// Block order: total degree in `slots` first, then degrevlex.
  static TermOrder elimination(const std::vector<std::size_t> &slots);

  int compare(const Exponent &a, const Exponent &b) const;
  /// Throws std::invalid_argument unless the order is a well-order
  /// compatible with the context (non-negative weights, u_i + v_i >= 0).
  void validate(const Context &ctx) const;
};

/// Order on terms of a free module D^rank.
struct ModuleOrder {
  enum class Position { TermOverPosition, PositionOverTerm };

  TermOrder term;
  Position position = Position::TermOverPosition;
  /// Components below the split dominate every component at or above it;
  /// 0 disables the block.
  std::size_t priority_split = 0;

  static ModuleOrder top(TermOrder t = {}) { return {std::move(t)}; }
  static ModuleOrder pot(TermOrder t = {}) { return {std::move(t), Position::PositionOverTerm}; }
};

namespace detail {
struct BasisData;
}

/// A reduced Groebner basis of a left submodule of D^rank.  Generators are
/// primitive over the integers with positive leading coefficient, sorted
/// by ascending leading term.
class Basis {
public:
  Basis() = default;

  const ContextPtr &ctx() const;
  const ModuleOrder &order() const;
  std::size_t rank() const;
  const std::vector<OpVector> &generators() const;
  std::size_t size() const { return generators().size(); }
  bool reduced() const { return true; }
  /// Leading (exponent, component) of generator i.
  std::pair<Exponent, std::size_t> leading(std::size_t i) const;

  const detail::BasisData &data() const { return *data_; }
  explicit Basis(std::shared_ptr<const detail::BasisData> d) : data_(std::move(d)) {}

private:
  std::shared_ptr<const detail::BasisData> data_;
};

Basis groebner_basis(const std::vector<OpVector> &gens, std::size_t rank, const ContextPtr &ctx,
                     const ModuleOrder &order, Budget &budget);
Basis groebner_basis(const std::vector<WeylOp> &gens, const TermOrder &order, Budget &budget);

/// Generators of the relations among `gens` (rows of length `rank`).
/// Runs Buchberger on (g_i | e_i) but records every reduction whose first
/// block vanishes instead of adding it, so the tracked basis never grows a
/// relation part of its own.  Not pruned.
std::vector<OpVector> tracked_relations(const std::vector<OpVector> &gens, std::size_t rank,
                                        const ContextPtr &ctx, Budget &budget);
inline Basis groebner_basis(const std::vector<WeylOp> &gens, const TermOrder &order = {}) {
  Budget b;
  return groebner_basis(gens, order, b);
}

OpVector normal_form(const OpVector &p, const Basis &g);
WeylOp normal_form(const WeylOp &p, const Basis &g);
bool contains(const Basis &g, const OpVector &p);
bool contains(const Basis &g, const WeylOp &p);

/// True when every S-pair of the generators reduces to zero.
bool is_groebner(const Basis &g);

enum class Inclusion { Equal, AStrictlyInside, BStrictlyInside, Incomparable };
const char *to_string(Inclusion v);

Inclusion module_compare(const std::vector<OpVector> &a, const std::vector<OpVector> &b,
                         std::size_t rank, const ContextPtr &ctx, Budget &budget,
                         const ModuleOrder &order = {});
Inclusion ideal_compare(const std::vector<WeylOp> &a, const std::vector<WeylOp> &b,
                        Budget &budget, const TermOrder &order = {});
inline Inclusion ideal_compare(const std::vector<WeylOp> &a, const std::vector<WeylOp> &b) {
  Budget budget;
  return ideal_compare(a, b, budget);
}

enum class WeightMode { WeightZeroPart, EliminatePositive, ParamRingIntersection };

/// Weight-based elimination.  `weight` is indexed by context slot.
///  - WeightZeroPart: the weight must be a grading supported on a single
///    coordinate pair (w_x = -w_d); returns generators of the weight-zero
///    part of the ideal, computed through homogenization.
///  - EliminatePositive: non-negative weight; returns the Groebner basis
///    elements of weight zero.
///  - ParamRingIntersection: `weight` is ignored; returns the elements of the
///    ideal lying in Q[params].
/// Throws std::invalid_argument for an inadmissible weight (u_i + v_i < 0).
std::vector<WeylOp> eliminate_weight(const std::vector<WeylOp> &gens, const std::vector<int> &weight,
                                     WeightMode mode, Budget &budget);

/// Makes a vector primitive over the integers with positive leading
/// coefficient (canonical order, first nonzero component).
OpVector primitive(const OpVector &v);
WeylOp primitive(const WeylOp &p);

} // namespace dmod
