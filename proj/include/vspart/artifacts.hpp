#pragma once
// The code and design attached to a partition {V_1, ..., V_r} of V_n(q).
//
// Code: W = {(y_1, ..., y_r) : y_i in V_i, y_1 + ... + y_r = 0}, a linear
// code over the mixed alphabets V_i. Distance is the number of coordinates
// in which two words differ.
//
// Design: points are the vectors of V_n(q), blocks the cosets v + V_i, and the
// blocks of one component form a resolution class.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vspart/partition.hpp"

namespace vspart {

inline constexpr std::uint64_t kCodeMaterializeLimit = std::uint64_t{1} << 24;

struct MixedCode {
  Space space;
  std::vector<Subspace> components;
  std::vector<unsigned> dims;
  /// q^{n_i}
  std::vector<std::uint64_t> alphabet;
  /// log_q |W|: sum n_i minus the dimension spanned by the components.
  unsigned kernel_dim = 0;
  /// Codewords, r entries each, flattened. Entry i is the coordinate vector
  /// of y_i in the canonical basis of V_i, encoded base q with the first
  /// coordinate most significant. Empty unless materialized.
  std::vector<std::uint64_t> words;
  bool materialized = false;

  std::size_t length() const { return components.size(); }
  /// |W| = q^kernel_dim; throws TooLarge when it does not fit.
  std::uint64_t size() const;
};

/// Builds W from any list of nonzero subspaces; materializes the words when
/// the product of the alphabet sizes is at most 2^24. Throws TooLarge when
/// that product does not fit in 62 bits.
MixedCode code_from_components(const Space& space, std::vector<Subspace> components);
MixedCode code_from_partition(const Partition& p);

struct PerfectReport {
  /// |W| (1 + sum (q^{n_i} - 1)) == prod q^{n_i}
  bool sphere_packing = false;
  std::string sphere_detail;
  /// Absent when W has no nonzero word.
  std::optional<unsigned> min_distance;
  bool distance_ok = false;
  /// "pairwise-scan", "min-weight" or "component-meets"
  std::string distance_method;
  bool perfect = false;
};

/// Sphere-packing equality and minimum distance >= 3. The distance is a
/// pairwise scan for |W| <= 4096, the least nonzero weight for larger
/// materialized codes, and otherwise read off the components: a word of
/// weight 1 is impossible and one of weight 2 exists iff two components meet.
PerfectReport verify_perfect(const MixedCode& code);

struct DesignBlock {
  std::uint32_t cls = 0;
  /// Point encodings, sorted.
  std::vector<std::uint64_t> points;
};

inline constexpr std::uint64_t kDesignSpaceLimit = std::uint64_t{1} << 16;

struct CosetDesign {
  Space space;
  std::vector<Subspace> components;
  std::vector<DesignBlock> blocks;

  std::uint64_t points() const { return space.size(); }
};

/// Throws TooLarge when q^n > 2^16 or r q^n > 2^24.
CosetDesign design_from_components(const Space& space, std::vector<Subspace> components);
CosetDesign design_from_partition(const Partition& p);

struct ClassSummary {
  unsigned dim = 0;
  std::uint64_t blocks = 0;
  std::uint64_t block_size = 0;
  bool resolves = false;
};

struct DesignReport {
  std::vector<ClassSummary> classes;
  /// Every class partitions the points into q^{n - n_i} blocks of size q^{n_i}.
  bool classes_ok = false;
  /// Every pair of distinct points lies in exactly one block.
  bool lambda_one = false;
  /// "pair-count" or "difference-count"
  std::string lambda_method;
  std::uint64_t pairs = 0;
  bool translation_ok = false;
  unsigned translations_checked = 0;
  bool valid = false;
  std::string message;
};

/// Pairs are counted explicitly for q^n <= 1024. Above that, lambda is read
/// from differences: x, y share a block of class i iff y - x lies in V_i, so
/// lambda = 1 iff every nonzero difference is in exactly one component.
DesignReport verify_design(const CosetDesign& d);

}  // namespace vspart
