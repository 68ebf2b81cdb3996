#pragma once

// Non-negative solutions of  sum_i (q^{n_i} - 1) x_i = q^n - 1  and the
// necessary conditions a partition type must meet.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vspart/partition.hpp"

namespace vspart {

enum class Condition {
  PairwiseDims,      // n_i + n_j <= n for distinct used dims; x_i <= 1 when 2 n_i > n
  HyperplaneSplit,   // the induced type on a hyperplane solves the equation in dim n-1
  FirstCountAtLeast2,// x_1 != 0 implies x_1 >= 2
  LinesAtLeast3,     // q = 2, n_1 = 1, x_1 != 0 implies x_1 >= 3
  MinCountQPlus1,    // least used count >= q + 1
  MinCountQPlusT,    // least used count >= q + t
  ComponentBounds,   // q^t + 1 <= r <= floor((q^n - 1)/(q^t - 1))
  ComponentResidue,  // r = 1 mod q^t
};

std::string_view to_string(Condition c);

enum class Verdict { Pass, Fail, NotApplicable };

std::string_view to_string(Verdict v);

struct ConditionFlag {
  Condition condition;
  Verdict verdict;
  std::string detail;
};

struct TypeSolution {
  std::vector<unsigned> dims;
  std::vector<std::uint64_t> x;
  /// Empty until annotate runs.
  std::vector<ConditionFlag> flags;

  /// No flag is Fail. Passing never certifies existence.
  bool passes_all() const;
  std::vector<Condition> failures() const;
  PartitionType as_type() const;
  std::uint64_t components() const;

  friend bool operator==(const TypeSolution& a, const TypeSolution& b) { return a.dims == b.dims && a.x == b.x; }
};

TypeSolution solution_from_type(const PartitionType& type);

inline constexpr std::uint64_t kDefaultSolutionBudget = 1'000'000;

/// True iff x solves the equation for (q, n, dims).
bool solves_equation(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims,
                     const std::vector<std::uint64_t>& x);

/// All non-negative solutions in lexicographic order. Throws BudgetExceeded
/// when there are more than `budget` solutions or the scan gets too long.
std::vector<TypeSolution> solve_eq1(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims,
                                    std::uint64_t budget = kDefaultSolutionBudget);

struct AnnotateOptions {
  /// How many nested hyperplanes the split condition descends through.
  /// Depth 1 is the single hyperplane equation; deeper levels also require
  /// the pairwise rule on each induced type.
  unsigned hyperplane_depth = 1;
};

/// Attach a flag per Condition. Throws NotASolution if sol does not solve
/// the equation.
TypeSolution annotate(TypeSolution sol, std::uint64_t q, unsigned n, AnnotateOptions options = {});

/// Whether some split x_i = a_i + b_i gives
///   sum a_i (q^{n_i} - 1) + sum b_i (q^{n_i - 1} - 1) = q^{n-1} - 1.
bool hyperplane_split_exists(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims,
                             const std::vector<std::uint64_t>& x, unsigned depth = 1);

struct ClassifiedSolution {
  TypeSolution solution;
  bool exists = false;
};

/// Solutions of 3 x_1 + 7 x_2 = 2^n - 1 (q = 2, dims {2,3}), each labelled
/// with whether a partition of that type exists: exactly when x_1 != 1.
/// Throws BadDimensions for n < 3.
std::vector<ClassifiedSolution> classify_q2_23(unsigned n);

}  // namespace vspart
