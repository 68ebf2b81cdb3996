#pragma once

// Exact-cover search for partitions of V_n(q).
//
// Points are the nonzero vectors, indexed by Space::encode. The engine always
// branches on the least uncovered point; the candidates for it are the
// allowed subspaces containing it that avoid every covered point, tried
// largest dimension first and in canonical subspace order within a
// dimension. Covered sets are bit masks. After each placement a forward check
// rejects the branch if some uncovered point has no unblocked candidate of a
// dimension that may still be placed.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vspart/partition.hpp"

namespace vspart {

using SearchGoal = std::variant<PartitionType, TSpec>;

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

std::string_view to_string(SearchStatus s);

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;
inline constexpr std::uint64_t kSearchSpaceLimit = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kEnumerateSpaceLimit = std::uint64_t{1} << 12;

struct SearchOptions {
  /// Limit on placed components over the whole search.
  std::uint64_t node_budget = kDefaultNodeBudget;
  /// Limit on the number of candidate subspaces built.
  std::uint64_t candidate_budget = std::uint64_t{1} << 21;
  /// Worker threads splitting the first branching level. Found results are
  /// the same for any thread count.
  unsigned threads = 1;
  /// Reject type goals that fail the counting equation or the pairwise
  /// dimension rule before searching. Off: the search must refute them.
  bool prefilter = true;
  /// Shuffle candidate order with this seed; verdicts must not change.
  std::optional<std::uint64_t> shuffle_seed;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Partition> partition;
  std::uint64_t nodes = 0;
  std::string note;
};

/// Found: a verified partition matching the goal, the first one in branching
/// order. Exhausted: the complete search found none. BudgetExceeded: gave up.
/// Spaces with q^n > 2^20 return BudgetExceeded without searching.
SearchResult find_partition(FieldPtr field, unsigned n, const SearchGoal& goal, const SearchOptions& options = {});

/// Every partition of V_n(q) exactly once, in canonical order. Throws
/// TooLarge for q^n > 2^12 and BudgetExceeded past the node budget.
std::vector<Partition> enumerate_all(FieldPtr field, unsigned n, std::uint64_t node_budget = kDefaultNodeBudget);

/// Minimum-dimension counts over a set of partitions, looking for a
/// non-trivial partition with fewer than q^t + 1 components of the minimum
/// dimension t.
struct ConjectureReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::uint64_t examined = 0;
  std::uint64_t nontrivial = 0;
  /// t -> least s seen among partitions with minimum dimension t.
  std::map<unsigned, std::uint64_t> min_s;
  /// t -> number of partitions with s == q^t + 1.
  std::map<unsigned, std::uint64_t> equality_witnesses;
  std::vector<Partition> counterexamples;

  bool holds() const { return counterexamples.empty(); }
};

ConjectureReport scan_partitions(std::span<const Partition> partitions);
/// scan_partitions over enumerate_all(field, n).
ConjectureReport conjecture_scan(FieldPtr field, unsigned n, std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace vspart
