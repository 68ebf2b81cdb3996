#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vspart/gf.hpp"

namespace vspart {

/// Bring rows to reduced row-echelon form in place. Zero rows are dropped.
/// Returns the pivot columns, strictly increasing.
std::vector<unsigned> reduce_rows(const Field& f, std::vector<Vector>& rows);

/// A subspace of V_n(q), held by its reduced row-echelon basis. Two subspaces
/// are equal as sets iff their bases are identical, so the defaulted
/// comparisons are set comparisons. Ordering is lexicographic on the
/// flattened basis.
class Subspace {
 public:
  /// Span of the given vectors. Throws DimensionMismatch for vectors of the
  /// wrong length or with out-of-range codes.
  static Subspace span(const Space& space, std::span<const Vector> vectors);
  static Subspace zero(const Space& space);
  static Subspace full(const Space& space);
  /// span{e_first, ..., e_{first+count-1}}.
  static Subspace coordinate(const Space& space, unsigned first, unsigned count);

  const Space& ambient() const noexcept { return space_; }
  unsigned dim() const noexcept { return static_cast<unsigned>(basis_.size()); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<unsigned>& pivots() const noexcept { return pivots_; }
  /// Number of vectors, q^dim.
  std::uint64_t size() const { return checked_pow(space_.q(), dim()); }

  bool contains(std::span<const Elem> v) const;
  /// Coordinates of v in the canonical basis. v must lie in the subspace;
  /// they are just the entries of v at the pivot columns.
  Vector coordinates(std::span<const Elem> v) const;
  /// Linear combination of the basis rows with the given coefficients.
  Vector combine(std::span<const Elem> coeffs) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.space_ == b.space_ && a.basis_ == b.basis_;
  }
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    return a.basis_ <=> b.basis_;
  }

 private:
  Subspace(Space space, std::vector<Vector> basis, std::vector<unsigned> pivots)
      : space_(std::move(space)), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Space space_;
  std::vector<Vector> basis_;
  std::vector<unsigned> pivots_;
};

/// Same as Subspace::span.
inline Subspace canonicalize(const Space& space, std::span<const Vector> vectors) {
  return Subspace::span(space, vectors);
}

Subspace meet(const Subspace& a, const Subspace& b);
Subspace join(const Subspace& a, const Subspace& b);
inline bool contains(const Subspace& a, std::span<const Elem> v) { return a.contains(v); }
/// True iff a and b intersect only in the zero vector.
bool trivially_meet(const Subspace& a, const Subspace& b);

/// A complement of s: the orthogonal complement under the standard inner
/// product when that meets s trivially, otherwise the span of the unit
/// vectors at the non-pivot columns of s. Always meet(s, result) = {0} and
/// dim(result) = n - dim(s).
Subspace complement(const Subspace& s);

inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 24;

/// All nonzero vectors of s, sorted by Space::encode. Throws TooLarge when
/// q^dim exceeds limit.
std::vector<Vector> enumerate_nonzero(const Subspace& s, std::uint64_t limit = kDefaultEnumerationLimit);
/// Same set as encoded integers, sorted.
std::vector<std::uint64_t> enumerate_nonzero_codes(const Subspace& s,
                                                   std::uint64_t limit = kDefaultEnumerationLimit);

/// Number of d-dimensional subspaces of V_n(q). Throws TooLarge on overflow.
std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned d);

inline constexpr std::uint64_t kDefaultSubspaceBudget = std::uint64_t{1} << 21;

/// Every d-dimensional subspace of the space exactly once, in canonical order.
/// Throws BudgetExceeded if the Gaussian binomial exceeds budget.
std::vector<Subspace> enumerate_subspaces(const Space& space, unsigned d,
                                          std::uint64_t budget = kDefaultSubspaceBudget);

/// Rewrite a subspace of `host` (given in the ambient coordinates of host)
/// in the coordinates of host's canonical basis, i.e. as a subspace of
/// V_{dim host}(q).
Subspace to_host_coordinates(const Subspace& host, const Subspace& inner);
/// Inverse of to_host_coordinates: inner lives in V_{dim host}(q).
Subspace from_host_coordinates(const Subspace& host, const Subspace& inner);

/// Place s (a subspace of V_m) into V_n using coordinates offset..offset+m-1.
Subspace embed(const Space& target, unsigned offset, const Subspace& s);

}  // namespace vspart
