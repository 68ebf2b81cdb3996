#include "vspart/construct.hpp"

#include <algorithm>
#include <numeric>

#include "vspart/dioph.hpp"
#include "vspart/error.hpp"

namespace vspart {

namespace {

void guard(const Space& space) {
  std::uint64_t size = 0;
  try {
    size = space.size();
  } catch (const Error&) {
    size = kConstructSpaceLimit + 1;
  }
  if (size > kConstructSpaceLimit) throw Error(ErrorCode::TooLarge, "q^n exceeds the construction guard 2^20");
}

Partition checked(Partition p) {
  const auto rep = verify(p);
  if (!rep.valid) throw Error(ErrorCode::Internal, p.provenance().rule + " produced an invalid partition: " + rep.message);
  return p;
}

Partition checked_T(Partition p, const TSpec& t) {
  p = checked(std::move(p));
  if (!is_T_partition(p, t))
    throw Error(ErrorCode::Internal, p.provenance().rule + " produced dimensions " + to_string(type_of(p)) +
                                         " instead of " + to_string(t));
  return p;
}

/// Components of `parts` placed at the given coordinate offsets of V_n.
Partition assemble(const Space& space, const std::vector<std::pair<unsigned, const Partition*>>& parts,
                   std::vector<Subspace> extra, Provenance prov) {
  for (const auto& [offset, p] : parts)
    for (const auto& c : p->components()) extra.push_back(embed(space, offset, c));
  return Partition(space, std::move(extra), std::move(prov));
}

TSpec without(const TSpec& t, unsigned d) {
  TSpec r;
  for (unsigned x : t.dims)
    if (x != d) r.dims.push_back(x);
  return r;
}

std::string str(unsigned v) { return std::to_string(v); }

}  // namespace

Partition spread(FieldPtr field, unsigned n, unsigned d) {
  if (d == 0 || n == 0 || n % d != 0)
    throw Error(ErrorCode::NotDivisible, "d = " + str(d) + " does not divide n = " + str(n));
  const Space space{field, n};
  guard(space);
  const ExtensionField ext(field, d);
  const unsigned m = n / d;
  const std::uint64_t big_q = ext.order();

  std::vector<Vector> basis_powers;
  for (unsigned j = 0; j < d; ++j) basis_powers.push_back(ext.power_basis(j));

  std::vector<Subspace> comps;
  // Projective points of GF(q^d)^m, normalized so the first nonzero entry is 1.
  for (unsigned lead = 0; lead < m; ++lead) {
    const std::uint64_t tails = checked_pow(big_q, m - 1 - lead);
    for (std::uint64_t t = 0; t < tails; ++t) {
      std::vector<Vector> point(m, Vector(d, 0));
      point[lead] = ext.element(1);
      std::uint64_t rest = t;
      for (unsigned l = m; l-- > lead + 1;) {
        point[l] = ext.element(rest % big_q);
        rest /= big_q;
      }
      std::vector<Vector> rows;
      for (unsigned j = 0; j < d; ++j) {
        Vector row;
        row.reserve(n);
        for (unsigned l = 0; l < m; ++l) {
          const Vector c = ext.mul(point[l], basis_powers[j]);
          row.insert(row.end(), c.begin(), c.end());
        }
        rows.push_back(std::move(row));
      }
      comps.push_back(Subspace::span(space, rows));
    }
  }
  return checked(Partition(space, std::move(comps), Provenance{"spread", "d = " + str(d), {}}));
}

LiftResult lift(const Partition& p, unsigned m_prime) {
  const Space& base = p.ambient();
  for (const auto& c : p.components())
    if (c.dim() > m_prime)
      throw Error(ErrorCode::DimensionTooSmall,
                  "component of dimension " + str(c.dim()) + " does not fit in m' = " + str(m_prime));
  if (m_prime == 0) throw Error(ErrorCode::DimensionTooSmall, "m' must be positive");
  const unsigned a = base.n;
  const Space space{base.field, a + m_prime};
  guard(space);
  const ExtensionField ext(base.field, m_prime);

  LiftResult out{{}, Partition(space, {})};
  for (const auto& u : p.components()) {
    for (std::uint64_t alpha = 1; alpha < ext.order(); ++alpha) {
      const Vector al = ext.element(alpha);
      std::vector<Vector> rows;
      for (unsigned j = 0; j < u.dim(); ++j) {
        Vector row = u.basis()[j];
        const Vector img = ext.mul(al, ext.power_basis(j));
        row.insert(row.end(), img.begin(), img.end());
        rows.push_back(std::move(row));
      }
      out.tset.push_back(Subspace::span(space, rows));
    }
  }
  std::sort(out.tset.begin(), out.tset.end());

  std::vector<Subspace> comps = out.tset;
  comps.push_back(Subspace::coordinate(space, 0, a));
  comps.push_back(Subspace::coordinate(space, a, m_prime));
  out.full = checked(Partition(space, std::move(comps), Provenance{"lift", "m' = " + str(m_prime), {p.provenance()}}));
  return out;
}

Partition near_spread(FieldPtr field, unsigned n, unsigned d) {
  if (d >= 1 && 2 * d == n) return spread(std::move(field), n, d);
  if (d < 1 || d >= n - d || d >= n)
    throw Error(ErrorCode::BadDimensions, "near-spread needs 1 <= d < n - d, got n = " + str(n) + ", d = " + str(d));
  const Space vd{field, d};
  Partition result = lift(Partition::trivial(vd), n - d).full;
  result.set_provenance(Provenance{"near-spread", "d = " + str(d), {result.provenance()}});
  return result;
}

Partition hyperplane_section(FieldPtr field, unsigned k, unsigned d) {
  if (d <= 1 || k == 0) throw Error(ErrorCode::BadDimensions, "hyperplane section needs d > 1 and k >= 1");
  const Partition s = spread(field, k * d, d);
  const Subspace h = Subspace::coordinate(s.ambient(), 0, k * d - 1);
  Partition result = induce(s, h);
  result.set_provenance(Provenance{"hyperplane-section", "k = " + str(k) + ", d = " + str(d), {s.provenance()}});
  return checked(std::move(result));
}

Partition typed_construct(FieldPtr field, unsigned n, const PartitionType& type) {
  type.validate();
  const PartitionType t = type.without_zeros();
  const TypeSolution sol = solution_from_type(t);
  if (sol.dims.empty() || sol.dims.back() > n || !solves_equation(field->q(), n, sol.dims, sol.x))
    throw Error(ErrorCode::NotASolution, to_string(type) + " does not solve the counting equation");

  const TypeSolution flagged = annotate(sol, field->q(), n);
  for (const auto& f : flagged.flags)
    if (f.condition == Condition::PairwiseDims && f.verdict == Verdict::Fail)
      throw Error(ErrorCode::UnsupportedType, to_string(type) + " violates the pairwise dimension rule");

  Partition result = [&] {
    if (t.entries.size() == 1) return spread(field, n, t.entries[0].dim);
    if (t.entries.size() == 2 && t.entries[0].dim + t.entries[1].dim == n && t.entries[1].count == 1)
      return near_spread(field, n, t.entries[0].dim);
    throw Error(ErrorCode::UnsupportedType, to_string(type) + " has no closed-form construction; use search");
  }();
  if (!(type_of(result) == t)) throw Error(ErrorCode::Internal, "typed construction produced the wrong type");
  result.set_provenance(Provenance{"typed", to_string(t), {result.provenance()}});
  return result;
}

namespace {

/// {1, d}-partition of V_m: the canonically least d-subspace plus every line
/// outside it.
Partition one_d_partition(FieldPtr field, unsigned m, unsigned d) {
  const Space space{field, m};
  const Subspace w = Subspace::coordinate(space, m - d, d);
  std::vector<Subspace> comps{w};
  for (auto& line : enumerate_subspaces(space, 1, kConstructSpaceLimit))
    if (!w.contains(line.basis().front())) comps.push_back(std::move(line));
  return Partition(space, std::move(comps), Provenance{"lines-outside", "d = " + str(d), {}});
}

/// Partition of V_m into all its lines.
Partition all_lines(FieldPtr field, unsigned m) {
  Partition p = spread(field, m, 1);
  p.set_provenance(Provenance{"lines", "", {}});
  return p;
}

/// First component of the given dimension in canonical order.
const Subspace& first_of_dim(const Partition& p, unsigned d) {
  for (const auto& c : p.components())
    if (c.dim() == d) return c;
  throw Error(ErrorCode::Internal, "no component of dimension " + str(d));
}

class Builder {
 public:
  Builder(FieldPtr field, const BuildOptions& options) : field_(std::move(field)), options_(options) {}

  Partition build(const TSpec& t, unsigned n) {
    if (t.max() > n) throw Error(ErrorCode::BadDimensions, "max T exceeds n");
    guard(Space{field_, n});
    const unsigned k = static_cast<unsigned>(t.dims.size());
    const unsigned nk = t.max();

    if (k == 1) {
      if (n % nk != 0) throw Error(ErrorCode::UncoveredCase, to_string(t) + " needs " + str(nk) + " | " + str(n));
      Partition p = spread(field_, n, nk);
      return tag(std::move(p), "singleton", "spread of dimension " + str(nk), t);
    }
    if (nk == n) throw Error(ErrorCode::UncoveredCase, "a component of dimension n leaves no room for others");
    if (n == 2 * nk) return base(t, n);

    if (n > 2 * nk) {
      if (auto p = try_rule([&] { return gcd_composition(t, n); })) return std::move(*p);
      if (n >= 3 * nk)
        if (auto p = try_rule([&] { return complement_composition(t, n); })) return std::move(*p);
    } else {
      const unsigned nk1 = t.dims[k - 2];
      if (n == nk + nk1 && t.min() == 1)
        if (auto p = try_rule([&] { return near_spread_refine(t, n); })) return std::move(*p);
      if (n >= nk + 2 * nk1)
        if (auto p = try_rule([&] { return lower_composition(t, n); })) return std::move(*p);
    }
    throw Error(ErrorCode::UncoveredCase, "no construction rule covers T = " + to_string(t) + ", n = " + str(n));
  }

 private:
  template <class F>
  std::optional<Partition> try_rule(F&& rule) {
    try {
      return rule();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UncoveredCase) throw;
      return std::nullopt;
    }
  }

  Partition tag(Partition p, std::string rule, std::string note, const TSpec& t) {
    p.set_provenance(Provenance{std::move(rule), std::move(note), {p.provenance()}});
    return checked_T(std::move(p), t);
  }

  /// n = 2 max T.
  Partition base(const TSpec& t, unsigned n) {
    const unsigned nk = t.max();
    if (t.dims.size() == 1) return tag(spread(field_, n, nk), "base-spread", "", t);

    if (t.min() == 1) {
      // Build for T without 1, then split one minimum-dimension component
      // into its lines.
      const TSpec rest = without(t, 1);
      Partition p = base(rest, n);
      const Subspace victim = first_of_dim(p, rest.min());
      Partition r = refine(p, victim, all_lines(field_, rest.min()));
      return tag(std::move(r), "base-add-lines", "split a dimension-" + str(rest.min()) + " component", t);
    }

    // Refine distinct components of the nk-spread by smaller spreads.
    const bool chain = std::all_of(t.dims.begin(), t.dims.end() - 1, [&](unsigned a) { return nk % a == 0; });
    if (chain) {
      Partition p = spread(field_, n, nk);
      for (std::size_t i = 0; i + 1 < t.dims.size(); ++i) {
        std::vector<Subspace> untouched;
        for (const auto& c : p.components())
          if (c.dim() == nk) untouched.push_back(c);
        p = refine(p, untouched.front(), spread(field_, nk, t.dims[i]));
      }
      return tag(std::move(p), "base-refine-chain", "", t);
    }

    if (auto inner = try_rule([&] { return build(without(t, nk), nk); })) {
      Partition p = lift(*inner, nk).full;
      return tag(std::move(p), "base-lift", "lift of a " + to_string(without(t, nk)) + "-partition of V_" + str(nk),
                 t);
    }

    SearchOptions so;
    so.node_budget = options_.search_budget;
    so.threads = options_.threads;
    SearchResult res = find_partition(field_, n, t, so);
    if (res.status == SearchStatus::BudgetExceeded)
      throw Error(ErrorCode::BudgetExceeded, "search fallback for " + to_string(t) + ": " + res.note);
    if (res.status == SearchStatus::Exhausted)
      throw Error(ErrorCode::Internal, "search fallback found no " + to_string(t) + "-partition of V_" + str(n));
    return tag(std::move(*res.partition), "base-search", "nodes = " + std::to_string(res.nodes), t);
  }

  /// n > 2 nk, some t in T divides gcd(n, 2 nk): a T-partition of V (dim
  /// 2 nk), a t-spread of the last n - 2 nk coordinates, and the lift of the
  /// t-spread of V across them.
  Partition gcd_composition(const TSpec& t, unsigned n) {
    const unsigned nk = t.max();
    const unsigned g = std::gcd(n, 2 * nk);
    const auto it = std::find_if(t.dims.begin(), t.dims.end(), [&](unsigned a) { return g % a == 0; });
    if (it == t.dims.end()) throw Error(ErrorCode::UncoveredCase, "no element of T divides gcd(n, 2 max T)");
    const unsigned t0 = *it;
    const unsigned rest = n - 2 * nk;
    const Space space{field_, n};

    const Partition pv = base(t, 2 * nk);
    const Partition pw = spread(field_, rest, t0);
    LiftResult lifted = lift(spread(field_, 2 * nk, t0), rest);
    Partition p = assemble(space, {{0, &pv}, {2 * nk, &pw}}, std::move(lifted.tset),
                           Provenance{"gcd-composition", "divisor " + str(t0) + " of gcd " + str(g),
                                      {pv.provenance(), pw.provenance(), lifted.full.provenance()}});
    return checked_T(std::move(p), t);
  }

  /// n >= 3 nk: a T-partition of V (dim 2 nk), any partition of the rest with
  /// dimensions in T, and the lift of the first across the rest.
  Partition complement_composition(const TSpec& t, unsigned n) {
    const unsigned nk = t.max();
    const unsigned rest = n - 2 * nk;
    const Space space{field_, n};

    std::optional<Partition> pw;
    const auto it = std::find_if(t.dims.begin(), t.dims.end(), [&](unsigned a) { return rest % a == 0; });
    if (it != t.dims.end()) {
      pw = spread(field_, rest, *it);
    } else {
      // Subsets of T in increasing bitmask order.
      const unsigned k = static_cast<unsigned>(t.dims.size());
      for (unsigned mask = 1; mask < (1u << k) && !pw; ++mask) {
        TSpec sub;
        for (unsigned i = 0; i < k; ++i)
          if (mask & (1u << i)) sub.dims.push_back(t.dims[i]);
        if (sub.max() > rest) continue;
        pw = try_rule([&] { return build(sub, rest); });
      }
    }
    if (!pw) throw Error(ErrorCode::UncoveredCase, "no T'-partition of V_" + str(rest) + " for T' in T");

    const Partition pv = base(t, 2 * nk);
    LiftResult lifted = lift(pv, rest);
    Partition p = assemble(space, {{0, &pv}, {2 * nk, &*pw}}, std::move(lifted.tset),
                           Provenance{"complement-composition", "",
                                      {pv.provenance(), pw->provenance(), lifted.full.provenance()}});
    return checked_T(std::move(p), t);
  }

  /// 2 nk > n = nk + n_{k-1}, n_1 = 1: the near-spread with k-2 of its
  /// n_{k-1}-components split into {1, n_i}-partitions.
  Partition near_spread_refine(const TSpec& t, unsigned n) {
    const unsigned k = static_cast<unsigned>(t.dims.size());
    const unsigned nk = t.max();
    const unsigned nk1 = t.dims[k - 2];
    Partition p = near_spread(field_, n, nk1);
    if (checked_pow(field_->q(), nk) <= k - 2)
      throw Error(ErrorCode::UncoveredCase, "fewer than k - 2 components to refine");
    std::vector<Subspace> victims;
    for (const auto& c : p.components())
      if (c.dim() == nk1 && victims.size() < k - 2) victims.push_back(c);
    for (unsigned i = 0; i + 2 < k; ++i) p = refine(p, victims[i], one_d_partition(field_, nk1, t.dims[i]));
    return tag(std::move(p), "near-spread-refine",
               "refined " + str(k - 2) + " components; q^" + str(nk) + " > " + str(k - 2), t);
  }

  /// 2 nk > n >= nk + 2 n_{k-1}: a (T \ nk)-partition P' of the first n - nk
  /// coordinates, the lift of P' across the last nk, and those nk coordinates.
  Partition lower_composition(const TSpec& t, unsigned n) {
    const unsigned nk = t.max();
    const unsigned g = std::gcd(n, 2 * t.dims[t.dims.size() - 2]);
    const TSpec lower = without(t, nk);
    if (std::none_of(lower.dims.begin(), lower.dims.end(), [&](unsigned a) { return g % a == 0; }))
      throw Error(ErrorCode::UncoveredCase, "no element of T divides gcd(n, 2 n_{k-1})");
    const Space space{field_, n};
    const Partition pv = build(lower, n - nk);
    LiftResult lifted = lift(pv, nk);
    std::vector<Subspace> extra = std::move(lifted.tset);
    extra.push_back(Subspace::coordinate(space, n - nk, nk));
    Partition p = assemble(space, {{0, &pv}}, std::move(extra),
                           Provenance{"lower-composition", "gcd " + str(g), {pv.provenance(), lifted.full.provenance()}});
    return checked_T(std::move(p), t);
  }

  FieldPtr field_;
  BuildOptions options_;
};

}  // namespace

Partition build_T_partition(FieldPtr field, const TSpec& t, unsigned n, const BuildOptions& options) {
  if (t.dims.empty()) throw Error(ErrorCode::InvalidArgument, "T must be nonempty");
  return Builder(std::move(field), options).build(t, n);
}

}  // namespace vspart
