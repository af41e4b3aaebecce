#pragma once

#include "dmod/groebner.hpp"
#include "dmod/weyl.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dmod {

/// Matrix of a map D^source -> D^target: row t is the image of e_t.
struct PresMatrix {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  std::vector<OpVector> rows;

  PresMatrix() = default;
  PresMatrix(std::vector<OpVector> rows, std::size_t target_rank);

  const WeylOp &operator()(std::size_t t, std::size_t u) const { return rows[t][u]; }
  /// Row-convention product: (this * next)(t, v) = sum_u this(t, u) next(u, v).
  PresMatrix then(const PresMatrix &next) const;
  bool is_zero() const;
};

struct FreeResolution {
  /// phi_1, ..., phi_s; phi_1 has target rank 1 and rows = the generators.
  std::vector<PresMatrix> matrices;
  std::vector<WeylOp> augmentation;
  bool certified = false;
  /// Set when a budget ran out; the matrices form a verified prefix.
  bool truncated = false;

  /// r_0 = 1, r_i = source rank of phi_i.
  std::vector<std::size_t> ranks() const;
};

struct SmcReport {
  bool holds = false;
  std::optional<std::size_t> level;
  std::optional<std::size_t> column_index;
  bool sound_row_check = false;
  /// Weaker check: every row entry P has P(1) vanishing at the origin.
  bool literal_row_check = false;
  /// Levels/indices where the literal check passes but the sound one fails.
  std::vector<std::pair<std::size_t, std::size_t>> disagreements;
  bool scanned_uncertified = false;
};

/// Generators of the left relations sum_i v_i g_i = 0 among vectors of D^rank.
/// Redundant generators are pruned when `prune` is set.
std::vector<OpVector> syzygies(const std::vector<OpVector> &gens, std::size_t rank,
                               const ContextPtr &ctx, Budget &budget, bool prune = true);
std::vector<OpVector> syzygies(const std::vector<WeylOp> &gens, Budget &budget, bool prune = true);

/// Drops generators lying in the module generated by the others.
std::vector<OpVector> prune_generators(std::vector<OpVector> gens, std::size_t rank,
                                       const ContextPtr &ctx, Budget &budget);

/// Cancels constant entries between consecutive maps until none is left.
/// The result is again a resolution of the same module.
void minimize_resolution(FreeResolution &res);

/// Iterated syzygies of the left ideal generated by `gens`.  On budget
/// exhaustion returns the prefix computed so far with truncated = true.
FreeResolution free_resolution(const std::vector<WeylOp> &gens, std::size_t max_length,
                               Budget &budget);

/// Exact check that every consecutive product phi_{i+1} phi_i vanishes.
bool compositions_vanish(const FreeResolution &res);

/// Least level i >= 1 and index j with column j of phi_{i+1} derivative-only
/// (vacuous past the end) and row j of phi_i origin-vanishing.
SmcReport smc_scan(const FreeResolution &res);

/// Action of the transposed map psi_k on a tuple h in O^{r_{k-1}}:
/// psi_k(h)_t = sum_u phi_k(t, u) . h_u.
std::vector<CommPoly> apply_transposed(const PresMatrix &m, const std::vector<CommPoly> &h);

/// The maps psi_1, ..., psi_s of the complex Hom(res, O) acting on
/// polynomial tuples.
struct TransposedMap {
  PresMatrix matrix;
  std::vector<CommPoly> operator()(const std::vector<CommPoly> &h) const {
    return apply_transposed(matrix, h);
  }
};
std::vector<TransposedMap> transpose_complex(const FreeResolution &res);

nlohmann::ordered_json to_json(const PresMatrix &m);
nlohmann::ordered_json to_json(const FreeResolution &res);
nlohmann::ordered_json to_json(const SmcReport &r);

} // namespace dmod
