#pragma once
// Small helpers shared by the unit tests.

#include <optional>
#include <string>

#include "oracle.hpp"
#include "vspart/error.hpp"
#include "vspart/partition.hpp"

namespace testing {

/// The error code thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<vspart::ErrorCode> thrown(F&& f) {
  try {
    f();
  } catch (const vspart::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline oracle::Set elements(const vspart::Subspace& s) {
  auto codes = vspart::enumerate_nonzero_codes(s);
  oracle::Set out{0};
  out.insert(out.end(), codes.begin(), codes.end());
  return out;
}

inline oracle::Space oracle_of(const vspart::Space& sp) {
  return oracle::space(static_cast<int>(sp.field->p()), sp.field->e(), sp.n);
}

/// Partition check on explicit element sets: pairwise intersections are {0}
/// and the union is the whole space.
inline bool oracle_is_partition(const vspart::Space& sp, const std::vector<vspart::Subspace>& comps) {
  std::vector<int> hits(sp.size(), 0);
  for (const auto& c : comps)
    for (auto x : elements(c))
      if (x != 0) ++hits[x];
  for (std::uint64_t x = 1; x < hits.size(); ++x)
    if (hits[x] != 1) return false;
  return !comps.empty() || sp.n == 0;
}

/// Type string of a partition computed from element-set sizes.
inline std::string oracle_type(const vspart::Partition& p) {
  const auto ref = oracle_of(p.ambient());
  std::vector<oracle::Set> sets;
  for (const auto& c : p.components()) sets.push_back(elements(c));
  std::vector<const oracle::Set*> ptrs;
  for (const auto& s : sets) ptrs.push_back(&s);
  return oracle::type_string(ref, ptrs);
}

}  // namespace testing
