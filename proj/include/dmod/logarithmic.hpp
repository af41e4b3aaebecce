#pragma once

#include "dmod/resolution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dmod {

/// delta = sum_i coeffs[i] d_i with delta(f) = cofactor * f.
struct LogDerivation {
  std::vector<CommPoly> coeffs;
  CommPoly cofactor;

  WeylOp op(const ContextPtr &weyl_ctx) const { return vector_field(coeffs, weyl_ctx); }
  /// sum_i coeffs[i] * f_i == cofactor * f.
  bool verify(const CommPoly &f) const;
  std::string to_string(const ContextPtr &weyl_ctx) const { return op(weyl_ctx).to_string(); }
};

/// Generators of Der(log f) from the relations among (f_1, ..., f_n, f).
std::vector<LogDerivation> log_derivations(const CommPoly &f, Budget &budget);

/// delta + k * cofactor for each generator.
std::vector<WeylOp> tilde_ideal(const std::vector<LogDerivation> &gens, long k,
                                const ContextPtr &weyl_ctx);
/// Parameter-free Weyl context over the variables of f.
ContextPtr weyl_context_for(const CommPoly &f);

/// Heuristic reducedness test: false when gcd(f, f_i) is visibly nontrivial.
bool looks_squarefree(const CommPoly &f);

struct EulerResult {
  bool euler = false;
  /// Generator rescaled so that its cofactor is 1 at the origin.
  std::optional<LogDerivation> witness;
  /// True when witness(f) = f holds exactly (constant cofactor).
  bool witness_exact = false;
  /// f in (f_1, ..., f_n): a global delta with delta(f) = f exists.
  bool global_membership = false;
};
EulerResult euler_check(const CommPoly &f, const std::vector<LogDerivation> &gens, Budget &budget);

struct LogBasis {
  std::vector<LogDerivation> derivations;
  CommPoly unit;         ///< det = unit * f
  Rational det_unit;     ///< unit at the origin, nonzero
  /// Indices into the generator list; empty when the basis came from
  /// reduced generators.
  std::vector<std::size_t> chosen;
  /// Constant unit: a basis on all of affine space, not only near 0.
  bool global = false;
};

enum class FreeStatus { Free, NotFreeDetected, Inconclusive };
const char *to_string(FreeStatus s);

struct FreeResult {
  FreeStatus status = FreeStatus::Inconclusive;
  std::optional<LogBasis> basis;
};

/// Searches n-subsets of the generators for det = u f with u(0) != 0,
/// preferring a constant u.  When only local bases exist, redundant
/// generators are first eliminated through unimodular moves along their
/// relations and the search is repeated.
FreeResult saito_free_check(const std::vector<LogDerivation> &gens, const CommPoly &f,
                            Budget &budget, std::size_t max_generators = 12);

/// Removes generators made redundant by a relation with a constant entry
/// after elementary moves g_i += q g_j.  The result generates the same module.
std::vector<LogDerivation> reduce_generators(std::vector<LogDerivation> gens, const CommPoly &f,
                                            Budget &budget);

struct HolonomicResult {
  bool holonomic = false;
  /// -1 for the zero module (empty characteristic variety).
  int dimension = 0;
};
/// Dimension of the characteristic variety of D / (gens).
HolonomicResult holonomic_check(const std::vector<WeylOp> &gens, Budget &budget);
/// Same with an explicit number of coordinates (for the empty list).
HolonomicResult holonomic_check(const std::vector<WeylOp> &gens, const ContextPtr &weyl_ctx,
                                Budget &budget);

struct SpencerData {
  /// structure_constants[i][j][k] = c_ij^k with [delta_i, delta_j] = sum_k c_ij^k delta_k.
  std::vector<std::vector<std::vector<CommPoly>>> structure_constants;
  /// Complex D (x) wedge^p Der(log D) twisted by k; matrices[p-1] maps wedge^p to wedge^{p-1}.
  FreeResolution complex;
  long k = 0;
};

/// Structure constants through the adjugate; nullopt when some quotient is
/// not a polynomial (basis is only a local basis).
std::optional<std::vector<std::vector<std::vector<CommPoly>>>>
structure_constants(const LogBasis &basis, const CommPoly &f);

/// Logarithmic Spencer complex with differential twisted by k (L_i = delta_i + k a_i).
SpencerData spencer_complex(const LogBasis &basis, const CommPoly &f, long k);

enum class SpencerStatus { Spencer, NotSpencer, Inconclusive };
const char *to_string(SpencerStatus s);

struct SpencerResult {
  SpencerStatus status = SpencerStatus::Inconclusive;
  std::optional<SpencerData> data;
  bool exact = false;
  bool holonomic = false;
  int char_dimension = 0;
  std::string note;
};

/// Verifies that the Spencer complex for M^log D is a resolution (each
/// syzygy module equals the image of the next map) and that M^log D is holonomic.
SpencerResult spencer_check(const LogBasis &basis, const CommPoly &f, Budget &budget);

/// Exactness of a Spencer-shaped complex: at each level the relations among
/// the rows equal the module spanned by the next matrix.
bool complex_is_exact(const FreeResolution &complex, Budget &budget);

struct DivergenceResult {
  bool certified = false;
  std::vector<WeylOp> entries; ///< delta_i + div(delta_i)
};
DivergenceResult divergence_shortcut(const LogBasis &basis, const ContextPtr &weyl_ctx);

struct ProductResult {
  bool smooth_factor = false;
  std::optional<std::size_t> generator;
  std::optional<std::size_t> variable;
  Rational witness;
};
ProductResult product_detection(const std::vector<LogDerivation> &gens);

} // namespace dmod
