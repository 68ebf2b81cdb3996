#include "vspart/artifacts.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vspart/error.hpp"

namespace vspart {

std::uint64_t MixedCode::size() const { return checked_pow(space.q(), kernel_dim); }

MixedCode code_from_components(const Space& space, std::vector<Subspace> components) {
  MixedCode code{space, std::move(components), {}, {}, 0, {}, false};
  const Field& f = *space.field;
  const std::uint64_t q = space.q();

  unsigned total = 0;
  unsigned __int128 product = 1;
  for (const auto& c : code.components) {
    if (!(c.ambient() == space)) throw Error(ErrorCode::DimensionMismatch, "component from another space");
    code.dims.push_back(c.dim());
    code.alphabet.push_back(checked_pow(q, c.dim()));
    total += c.dim();
    product *= code.alphabet.back();
    if (product > (static_cast<unsigned __int128>(1) << 62))
      throw Error(ErrorCode::TooLarge, "product of alphabet sizes is too large");
  }

  // c ↦ sum_j c_j b_j over the stacked bases; W is its kernel. Row i of the
  // transposed matrix holds coordinate i of every basis vector.
  std::vector<Vector> rows(space.n, Vector(total, 0));
  {
    unsigned col = 0;
    for (const auto& c : code.components)
      for (const auto& b : c.basis()) {
        for (unsigned i = 0; i < space.n; ++i) rows[i][col] = b[i];
        ++col;
      }
  }
  const auto pivots = reduce_rows(f, rows);
  code.kernel_dim = total - static_cast<unsigned>(pivots.size());
  if (product > kCodeMaterializeLimit) return code;

  std::vector<Vector> kernel;
  for (unsigned free = 0, pi = 0; free < total; ++free) {
    if (pi < pivots.size() && pivots[pi] == free) {
      ++pi;
      continue;
    }
    Vector v(total, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(rows[r][free]);
    kernel.push_back(std::move(v));
  }

  const std::uint64_t count = code.size();
  const std::size_t r = code.components.size();
  code.words.reserve(count * r);
  Vector coeffs(kernel.size(), 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t k = kernel.size(); k-- > 0;) {
      coeffs[k] = static_cast<Elem>(rest % q);
      rest /= q;
    }
    Vector c(total, 0);
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      if (coeffs[k] == 0) continue;
      for (unsigned j = 0; j < total; ++j) c[j] = f.add(c[j], f.mul(coeffs[k], kernel[k][j]));
    }
    unsigned col = 0;
    for (unsigned d : code.dims) {
      std::uint64_t y = 0;
      for (unsigned j = 0; j < d; ++j) y = y * q + c[col + j];
      code.words.push_back(y);
      col += d;
    }
  }
  code.materialized = true;
  return code;
}

MixedCode code_from_partition(const Partition& p) { return code_from_components(p.ambient(), p.components()); }

PerfectReport verify_perfect(const MixedCode& code) {
  PerfectReport rep;
  const std::size_t r = code.length();

  unsigned __int128 sphere = 1;
  unsigned __int128 product = 1;
  for (auto a : code.alphabet) {
    sphere += a - 1;
    product *= a;
  }
  const auto w = static_cast<unsigned __int128>(code.size());
  rep.sphere_packing = w * sphere == product;
  rep.sphere_detail = std::to_string(static_cast<std::uint64_t>(w)) + " * " +
                      std::to_string(static_cast<std::uint64_t>(sphere)) + " = " +
                      std::to_string(static_cast<std::uint64_t>(w * sphere)) + " vs " +
                      std::to_string(static_cast<std::uint64_t>(product));

  auto distance = [&](std::uint64_t a, std::uint64_t b) {
    unsigned d = 0;
    for (std::size_t i = 0; i < r; ++i) d += code.words[a * r + i] != code.words[b * r + i];
    return d;
  };

  if (code.materialized) {
    const std::uint64_t count = code.words.size() / std::max<std::size_t>(r, 1);
    std::optional<unsigned> best;
    if (count <= 4096) {
      rep.distance_method = "pairwise-scan";
      for (std::uint64_t a = 0; a < count; ++a)
        for (std::uint64_t b = a + 1; b < count; ++b) {
          const unsigned d = distance(a, b);
          if (!best || d < *best) best = d;
        }
    } else {
      // Linear code: the minimum distance is the least nonzero weight.
      rep.distance_method = "min-weight";
      for (std::uint64_t a = 0; a < count; ++a) {
        unsigned wgt = 0;
        for (std::size_t i = 0; i < r; ++i) wgt += code.words[a * r + i] != 0;
        if (wgt > 0 && (!best || wgt < *best)) best = wgt;
      }
    }
    rep.min_distance = best;
  } else {
    rep.distance_method = "component-meets";
    if (code.kernel_dim > 0) {
      rep.min_distance = 3;
      for (std::size_t i = 0; i < r && *rep.min_distance == 3; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
          if (!trivially_meet(code.components[i], code.components[j])) {
            rep.min_distance = 2;
            break;
          }
      // Exact value when every pair meets trivially is at least 3; report 3
      // as the lower bound.
    }
  }
  rep.distance_ok = !rep.min_distance || *rep.min_distance >= 3;
  rep.perfect = rep.sphere_packing && rep.distance_ok;
  return rep;
}

CosetDesign design_from_components(const Space& space, std::vector<Subspace> components) {
  const std::uint64_t npoints = [&] {
    try {
      return space.size();
    } catch (const Error&) {
      return kDesignSpaceLimit + 1;
    }
  }();
  if (npoints > kDesignSpaceLimit) throw Error(ErrorCode::TooLarge, "designs need q^n <= 2^16");
  if (npoints * components.size() > (std::uint64_t{1} << 24))
    throw Error(ErrorCode::TooLarge, "design has too many block entries");

  CosetDesign d{space, std::move(components), {}};
  for (std::uint32_t cls = 0; cls < d.components.size(); ++cls) {
    const auto& comp = d.components[cls];
    if (!(comp.ambient() == space)) throw Error(ErrorCode::DimensionMismatch, "component from another space");
    auto members = enumerate_nonzero(comp);
    std::vector<char> seen(npoints, 0);
    for (std::uint64_t v = 0; v < npoints; ++v) {
      if (seen[v]) continue;
      const Vector base = space.decode(v);
      DesignBlock b{cls, {v}};
      for (const auto& m : members) b.points.push_back(space.encode(space.add(base, m)));
      std::sort(b.points.begin(), b.points.end());
      for (auto x : b.points) seen[x] = 1;
      d.blocks.push_back(std::move(b));
    }
  }
  return d;
}

CosetDesign design_from_partition(const Partition& p) { return design_from_components(p.ambient(), p.components()); }

DesignReport verify_design(const CosetDesign& d) {
  DesignReport rep;
  const Space& space = d.space;
  const std::uint64_t npoints = d.points();
  const std::size_t r = d.components.size();
  rep.pairs = npoints * (npoints - 1) / 2;

  std::vector<std::vector<const DesignBlock*>> by_class(r);
  for (const auto& b : d.blocks) by_class.at(b.cls).push_back(&b);

  rep.classes_ok = true;
  for (std::size_t i = 0; i < r; ++i) {
    ClassSummary s;
    s.dim = d.components[i].dim();
    s.blocks = by_class[i].size();
    s.block_size = by_class[i].empty() ? 0 : by_class[i].front()->points.size();
    const std::uint64_t size = checked_pow(space.q(), s.dim);
    std::vector<int> hits(npoints, 0);
    bool ok = s.blocks == npoints / size;
    for (const auto* b : by_class[i]) {
      ok = ok && b->points.size() == size;
      for (auto x : b->points) ++hits[x];
    }
    ok = ok && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    s.resolves = ok;
    rep.classes_ok = rep.classes_ok && ok;
    rep.classes.push_back(s);
  }

  if (npoints <= 1024) {
    rep.lambda_method = "pair-count";
    std::vector<std::uint16_t> count(npoints * npoints, 0);
    for (const auto& b : d.blocks)
      for (std::size_t a = 0; a < b.points.size(); ++a)
        for (std::size_t c = a + 1; c < b.points.size(); ++c) {
          auto& slot = count[b.points[a] * npoints + b.points[c]];
          if (slot < 0xffff) ++slot;
        }
    rep.lambda_one = true;
    for (std::uint64_t x = 0; x < npoints && rep.lambda_one; ++x)
      for (std::uint64_t y = x + 1; y < npoints; ++y)
        if (count[x * npoints + y] != 1) {
          rep.lambda_one = false;
          break;
        }
  } else {
    rep.lambda_method = "difference-count";
    // Each block must be a coset of its component; then the pairs in blocks
    // of class i are exactly those with difference in V_i.
    bool cosets = true;
    for (const auto& b : d.blocks) {
      if (!cosets) break;
      const auto& comp = d.components[b.cls];
      const Vector base = space.decode(b.points.front());
      for (auto x : b.points)
        if (!comp.contains(space.add(space.decode(x), space.scale(space.field->neg(1), base)))) {
          cosets = false;
          break;
        }
    }
    std::vector<int> owners(npoints, 0);
    for (const auto& c : d.components)
      for (auto code : enumerate_nonzero_codes(c)) ++owners[code];
    rep.lambda_one = cosets && std::all_of(owners.begin() + 1, owners.end(), [](int h) { return h == 1; });
  }

  // Translation by a few fixed vectors maps each class onto itself.
  std::vector<std::uint64_t> shifts;
  for (unsigned i = 0; i < space.n; ++i) shifts.push_back(space.encode(space.unit(i)));
  shifts.push_back(npoints - 1);
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  rep.translation_ok = true;
  for (std::size_t i = 0; i < r && rep.translation_ok; ++i) {
    std::set<std::vector<std::uint64_t>> blocks;
    for (const auto* b : by_class[i]) blocks.insert(b->points);
    for (auto s : shifts) {
      const Vector sv = space.decode(s);
      for (const auto* b : by_class[i]) {
        std::vector<std::uint64_t> moved;
        for (auto x : b->points) moved.push_back(space.encode(space.add(space.decode(x), sv)));
        std::sort(moved.begin(), moved.end());
        if (!blocks.contains(moved)) {
          rep.translation_ok = false;
          break;
        }
      }
      if (!rep.translation_ok) break;
    }
  }
  rep.translations_checked = static_cast<unsigned>(shifts.size());

  rep.valid = rep.classes_ok && rep.lambda_one && rep.translation_ok;
  if (rep.valid)
    rep.message = "resolvable design with lambda = 1";
  else if (!rep.classes_ok)
    rep.message = "a class does not partition the points";
  else if (!rep.lambda_one)
    rep.message = "some pair of points lies in zero or several blocks";
  else
    rep.message = "translation does not preserve the classes";
  return rep;
}

}  // namespace vspart
