#pragma once
// Explicit constructions. Every function returns a partition that has
// already passed verify; a construction that fails its own check throws
// Internal rather than returning a bad result.

#include <cstdint>
#include <vector>

#include "vspart/partition.hpp"
#include "vspart/search.hpp"

namespace vspart {

/// Constructions refuse ambient spaces with more than this many vectors.
inline constexpr std::uint64_t kConstructSpaceLimit = std::uint64_t{1} << 20;

/// The d-spread of V_n(q): V_n(q) read as GF(q^d)^{n/d}, one component per
/// GF(q^d)-line. Throws NotDivisible unless d | n.
Partition spread(FieldPtr field, unsigned n, unsigned d);

struct LiftResult {
  /// Subspaces of V ⊕ V' meeting V and V' trivially; (q^{m'} - 1) |p| of them.
  std::vector<Subspace> tset;
  /// {V, V'} ∪ tset, with V on the first dim V coordinates and V' on the
  /// last m' coordinates.
  Partition full;
};

/// For each component U of p and each nonzero a in GF(q^{m'}), the graph
/// {(u, a·phi_U(u))}, where phi_U sends the i-th canonical basis vector of U
/// to x^i. Throws DimensionTooSmall if a component is larger than m'.
LiftResult lift(const Partition& p, unsigned m_prime);

/// Type [(q^{n-d}, d), (1, n-d)] for d < n - d; the d-spread when 2d = n.
/// Throws BadDimensions otherwise.
Partition near_spread(FieldPtr field, unsigned n, unsigned d);

/// The k*d-dimensional d-spread cut by the hyperplane x_n = 0, a partition of
/// V_{kd-1}(q). Throws BadDimensions for d <= 1 or k == 0.
Partition hyperplane_section(FieldPtr field, unsigned k, unsigned d);

/// A partition of exactly the given type when it is a single dimension, or
/// two dimensions n_1 + n_2 = n. Throws NotASolution when the type does not
/// solve the counting equation and UnsupportedType for the other cases.
Partition typed_construct(FieldPtr field, unsigned n, const PartitionType& type);

struct BuildOptions {
  /// Node budget for the search fallback used when no closed form applies
  /// to V_{2 max T}.
  std::uint64_t search_budget = kDefaultNodeBudget;
  unsigned threads = 1;
};

/// A partition of V_n(q) whose set of component dimensions is exactly T.
/// Throws UncoveredCase when no implemented rule applies, BadDimensions when
/// max T > n, and BudgetExceeded when the search fallback gives up.
Partition build_T_partition(FieldPtr field, const TSpec& t, unsigned n, const BuildOptions& options = {});

}  // namespace vspart
