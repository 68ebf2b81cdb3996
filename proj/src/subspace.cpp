#include "vspart/subspace.hpp"

#include <algorithm>
#include <string>

#include "vspart/error.hpp"

namespace vspart {

std::vector<unsigned> reduce_rows(const Field& f, std::vector<Vector>& rows) {
  std::vector<unsigned> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot_row = rank;
    while (pivot_row < rows.size() && rows[pivot_row][col] == 0) ++pivot_row;
    if (pivot_row == rows.size()) continue;
    std::swap(rows[rank], rows[pivot_row]);
    Vector& prow = rows[rank];
    const Elem scale = f.inv(prow[col]);
    if (scale != 1)
      for (std::size_t j = col; j < ncols; ++j) prow[j] = f.mul(scale, prow[j]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const Elem c = rows[r][col];
      if (c == 0) continue;
      for (std::size_t j = col; j < ncols; ++j) rows[r][j] = f.sub(rows[r][j], f.mul(c, prow[j]));
    }
    pivots.push_back(static_cast<unsigned>(col));
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

namespace {

void check_vector(const Space& space, std::span<const Elem> v) {
  if (v.size() != space.n)
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " in V_" + std::to_string(space.n));
  for (Elem c : v)
    if (c >= space.q()) throw Error(ErrorCode::DimensionMismatch, "element code out of range");
}

void check_same_space(const Subspace& a, const Subspace& b) {
  if (!(a.ambient() == b.ambient())) throw Error(ErrorCode::DimensionMismatch, "subspaces of different spaces");
}

}  // namespace

Subspace Subspace::span(const Space& space, std::span<const Vector> vectors) {
  std::vector<Vector> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    check_vector(space, v);
    rows.push_back(v);
  }
  auto pivots = reduce_rows(*space.field, rows);
  return Subspace(space, std::move(rows), std::move(pivots));
}

Subspace Subspace::zero(const Space& space) { return Subspace(space, {}, {}); }

Subspace Subspace::full(const Space& space) { return coordinate(space, 0, space.n); }

Subspace Subspace::coordinate(const Space& space, unsigned first, unsigned count) {
  if (first + count > space.n) throw Error(ErrorCode::DimensionMismatch, "coordinate block out of range");
  std::vector<Vector> rows;
  std::vector<unsigned> pivots;
  for (unsigned i = 0; i < count; ++i) {
    rows.push_back(space.unit(first + i));
    pivots.push_back(first + i);
  }
  return Subspace(space, std::move(rows), std::move(pivots));
}

bool Subspace::contains(std::span<const Elem> v) const {
  check_vector(space_, v);
  const Field& f = *space_.field;
  Vector r(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Elem c = r[pivots_[i]];
    if (c == 0) continue;
    for (unsigned j = pivots_[i]; j < space_.n; ++j) r[j] = f.sub(r[j], f.mul(c, basis_[i][j]));
  }
  return std::all_of(r.begin(), r.end(), [](Elem c) { return c == 0; });
}

Vector Subspace::coordinates(std::span<const Elem> v) const {
  Vector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Vector Subspace::combine(std::span<const Elem> coeffs) const {
  const Field& f = *space_.field;
  Vector v(space_.n, 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (unsigned j = 0; j < space_.n; ++j) v[j] = f.add(v[j], f.mul(coeffs[i], basis_[i][j]));
  }
  return v;
}

Subspace join(const Subspace& a, const Subspace& b) {
  check_same_space(a, b);
  std::vector<Vector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), rows);
}

Subspace meet(const Subspace& a, const Subspace& b) {
  check_same_space(a, b);
  const Space& space = a.ambient();
  const unsigned n = space.n;
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(space);
  // Zassenhaus: reduce [a | a] over [b | 0]; rows with a zero left half
  // span the intersection in their right half.
  std::vector<Vector> rows;
  for (const auto& r : a.basis()) {
    Vector w(2 * n);
    std::copy(r.begin(), r.end(), w.begin());
    std::copy(r.begin(), r.end(), w.begin() + n);
    rows.push_back(std::move(w));
  }
  for (const auto& r : b.basis()) {
    Vector w(2 * n, 0);
    std::copy(r.begin(), r.end(), w.begin());
    rows.push_back(std::move(w));
  }
  auto pivots = reduce_rows(*space.field, rows);
  std::vector<Vector> inter;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (pivots[i] >= n) inter.emplace_back(rows[i].begin() + n, rows[i].end());
  return Subspace::span(space, inter);
}

bool trivially_meet(const Subspace& a, const Subspace& b) { return join(a, b).dim() == a.dim() + b.dim(); }

Subspace complement(const Subspace& s) {
  const Space& space = s.ambient();
  const unsigned n = space.n;
  const Field& f = *space.field;
  std::vector<bool> is_pivot(n, false);
  for (unsigned p : s.pivots()) is_pivot[p] = true;

  // Null space of the basis matrix: one vector per free column.
  std::vector<Vector> kernel;
  for (unsigned col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    Vector x(n, 0);
    x[col] = 1;
    for (std::size_t i = 0; i < s.dim(); ++i) x[s.pivots()[i]] = f.neg(s.basis()[i][col]);
    kernel.push_back(std::move(x));
  }
  Subspace orth = Subspace::span(space, kernel);
  if (trivially_meet(s, orth)) return orth;

  std::vector<Vector> units;
  for (unsigned col = 0; col < n; ++col)
    if (!is_pivot[col]) units.push_back(space.unit(col));
  return Subspace::span(space, units);
}

std::vector<std::uint64_t> enumerate_nonzero_codes(const Subspace& s, std::uint64_t limit) {
  const std::uint64_t total = s.size();
  if (total > limit) throw Error(ErrorCode::TooLarge, "subspace has more than the allowed number of vectors");
  const Space& space = s.ambient();
  const Field& f = *space.field;
  const unsigned n = space.n;
  std::vector<std::uint64_t> out;
  out.reserve(total - 1);
  Vector coeffs(s.dim(), 0);
  Vector v(n, 0);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (std::size_t i = s.dim(); i-- > 0;) {
      coeffs[i] = static_cast<Elem>(x % f.q());
      x /= f.q();
    }
    std::fill(v.begin(), v.end(), 0);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      if (coeffs[i] == 0) continue;
      const Vector& row = s.basis()[i];
      for (unsigned j = s.pivots()[i]; j < n; ++j) v[j] = f.add(v[j], f.mul(coeffs[i], row[j]));
    }
    out.push_back(space.encode(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vector> enumerate_nonzero(const Subspace& s, std::uint64_t limit) {
  auto codes = enumerate_nonzero_codes(s, limit);
  std::vector<Vector> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(s.ambient().decode(c));
  return out;
}

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned d) {
  if (d > n) return 0;
  // [n choose d] = [n-1 choose d-1] + q^d [n-1 choose d], row by row.
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::vector<std::uint64_t> row(d + 1, 0);
  row[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned k = std::min(m, d); k >= 1; --k) {
      const std::uint64_t qk = checked_pow(q, k);
      if (row[k] != 0 && qk > kLimit / row[k]) throw Error(ErrorCode::TooLarge, "Gaussian binomial overflows");
      const std::uint64_t v = row[k - 1] + qk * row[k];
      if (v > kLimit) throw Error(ErrorCode::TooLarge, "Gaussian binomial overflows");
      row[k] = v;
    }
  }
  return row[d];
}

std::vector<Subspace> enumerate_subspaces(const Space& space, unsigned d, std::uint64_t budget) {
  const unsigned n = space.n;
  if (d > n) return {};
  const std::uint64_t count = gaussian_binomial(space.q(), n, d);
  if (count > budget)
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(count) + " subspaces of dimension " + std::to_string(d) + " exceed the budget");
  std::vector<Subspace> out;
  out.reserve(count);
  const Elem q = space.q();

  // Walk every pivot set, then every filling of the free entries.
  std::vector<unsigned> piv(d);
  for (unsigned i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    std::vector<bool> is_pivot(n, false);
    for (unsigned p : piv) is_pivot[p] = true;
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = piv[i] + 1; j < n; ++j)
        if (!is_pivot[j]) free.emplace_back(i, j);
    const std::uint64_t fillings = checked_pow(q, static_cast<unsigned>(free.size()));
    for (std::uint64_t idx = 0; idx < fillings; ++idx) {
      std::vector<Vector> rows(d, Vector(n, 0));
      for (unsigned i = 0; i < d; ++i) rows[i][piv[i]] = 1;
      std::uint64_t x = idx;
      for (auto [i, j] : free) {
        rows[i][j] = static_cast<Elem>(x % q);
        x /= q;
      }
      out.push_back(Subspace::span(space, rows));
    }
    // Next combination.
    int i = static_cast<int>(d) - 1;
    while (i >= 0 && piv[i] == n - d + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++piv[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace to_host_coordinates(const Subspace& host, const Subspace& inner) {
  check_same_space(host, inner);
  const Space target{host.ambient().field, host.dim()};
  std::vector<Vector> rows;
  for (const auto& r : inner.basis()) {
    if (!host.contains(r)) throw Error(ErrorCode::DimensionMismatch, "subspace is not inside the host");
    rows.push_back(host.coordinates(r));
  }
  return Subspace::span(target, rows);
}

Subspace from_host_coordinates(const Subspace& host, const Subspace& inner) {
  if (inner.ambient().n != host.dim() || !(*inner.ambient().field == *host.ambient().field))
    throw Error(ErrorCode::DimensionMismatch, "inner subspace is not in host coordinates");
  std::vector<Vector> rows;
  for (const auto& r : inner.basis()) rows.push_back(host.combine(r));
  return Subspace::span(host.ambient(), rows);
}

Subspace embed(const Space& target, unsigned offset, const Subspace& s) {
  if (offset + s.ambient().n > target.n || !(*target.field == *s.ambient().field))
    throw Error(ErrorCode::DimensionMismatch, "embedding does not fit");
  std::vector<Vector> rows;
  for (const auto& r : s.basis()) {
    Vector w(target.n, 0);
    std::copy(r.begin(), r.end(), w.begin() + offset);
    rows.push_back(std::move(w));
  }
  return Subspace::span(target, rows);
}

}  // namespace vspart
