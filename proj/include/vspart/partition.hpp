#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vspart/subspace.hpp"

namespace vspart {

/// One (x_i, n_i) pair of a partition type: `count` components of dimension `dim`.
struct TypeEntry {
  std::uint64_t count = 0;
  unsigned dim = 0;

  friend bool operator==(const TypeEntry&, const TypeEntry&) = default;
};

/// [(x_1,n_1),...,(x_k,n_k)] with n_1 < ... < n_k. Counts may be zero.
struct PartitionType {
  std::vector<TypeEntry> entries;

  /// Number of components, the sum of the counts.
  std::uint64_t components() const;
  /// Throws InvalidArgument unless dims are strictly increasing and >= 1.
  void validate() const;
  /// Drop entries with count zero.
  PartitionType without_zeros() const;

  friend bool operator==(const PartitionType&, const PartitionType&) = default;
};

/// "[(5,2)]" style.
std::string to_string(const PartitionType& type);
/// Parse "8x2,1x3" (count x dim, comma separated).
PartitionType parse_type(const std::string& text);

/// A set T of component dimensions, strictly increasing and nonempty.
struct TSpec {
  std::vector<unsigned> dims;

  static TSpec of(std::vector<unsigned> dims);
  unsigned min() const { return dims.front(); }
  unsigned max() const { return dims.back(); }
  bool contains(unsigned d) const;

  friend bool operator==(const TSpec&, const TSpec&) = default;
};

std::string to_string(const TSpec& t);
/// Parse "1,2,3".
TSpec parse_tspec(const std::string& text);

/// How a partition was produced: the rule applied and the sub-results it used.
struct Provenance {
  std::string rule;
  std::string note;
  std::vector<Provenance> parts;

  bool empty() const { return rule.empty() && note.empty() && parts.empty(); }
};

/// A set of nonzero subspaces of one ambient space, kept in canonical order.
/// Construction does not check the partition property; use verify.
class Partition {
 public:
  /// Throws DimensionMismatch for components from another space and
  /// InvalidArgument for the zero subspace.
  Partition(Space space, std::vector<Subspace> components, Provenance provenance = {});

  /// The trivial partition {V_n(q)}.
  static Partition trivial(const Space& space);

  const Space& ambient() const noexcept { return space_; }
  const std::vector<Subspace>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  const Provenance& provenance() const noexcept { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.space_ == b.space_ && a.components_ == b.components_;
  }
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.components_ <=> b.components_; }

 private:
  Space space_;
  std::vector<Subspace> components_;
  Provenance provenance_;
};

struct VerificationReport {
  bool valid = false;
  bool pairwise_trivial = false;
  bool full_cover = false;
  /// sum (q^{n_i} - 1) == q^n - 1
  bool counting_identity = false;
  /// "cover-scan" or "pairwise-meet"
  std::string method;
  /// First pair of components (indices in canonical order) that overlap.
  std::optional<std::pair<std::size_t, std::size_t>> overlap;
  /// A vector lying in both overlapping components.
  std::optional<Vector> doubly_covered;
  /// Least nonzero vector in no component.
  std::optional<Vector> uncovered;
  std::string message;
};

/// Full-cover scan when q^n <= 2^20, otherwise pairwise meets plus the
/// counting identity (equivalent to a full cover given trivial meets).
VerificationReport verify(const Partition& p);

inline constexpr std::uint64_t kCoverScanLimit = std::uint64_t{1} << 20;

PartitionType type_of(const Partition& p);
/// Every component dimension is in T and every element of T occurs.
bool is_T_partition(const Partition& p, const TSpec& t);

/// The nonzero intersections of the components with w, written in the
/// coordinates of w's canonical basis. Throws ZeroSubspace for w = {0}.
Partition induce(const Partition& p, const Subspace& w);

/// Replace `victim` by the components of `sub`, a partition of victim given
/// in victim's own coordinates (V_{dim victim}).
Partition refine(const Partition& p, const Subspace& victim, const Partition& sub);

struct BoundCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Minimum-dimension statistics and the necessary conditions on them.
struct BoundReport {
  unsigned t = 0;
  std::uint64_t s = 0;
  std::uint64_t r = 0;
  std::uint64_t lower_q_plus_t = 0;
  std::uint64_t lower_q_pow_t_plus_1 = 0;
  std::uint64_t upper = 0;
  std::uint64_t r_mod_q_pow_t = 0;
  /// Index of the first minimum-dimension component and the basis of the
  /// complement W used for s'.
  std::size_t v1_index = 0;
  std::vector<Vector> w_basis;
  /// Number of dimension-t components meeting W trivially.
  std::uint64_t s_prime = 0;
  std::vector<BoundCheck> checks;

  bool all_pass() const;
};

/// Throws TrivialPartition for r < 2.
BoundReport bound_report(const Partition& p);

}  // namespace vspart
