#include "vspart/partition.hpp"

#include <algorithm>
#include <sstream>

#include "vspart/error.hpp"

namespace vspart {

std::uint64_t PartitionType::components() const {
  std::uint64_t r = 0;
  for (const auto& e : entries) r += e.count;
  return r;
}

void PartitionType::validate() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].dim == 0) throw Error(ErrorCode::InvalidArgument, "type dimensions must be >= 1");
    if (i > 0 && entries[i].dim <= entries[i - 1].dim)
      throw Error(ErrorCode::InvalidArgument, "type dimensions must be strictly increasing");
  }
}

PartitionType PartitionType::without_zeros() const {
  PartitionType out;
  for (const auto& e : entries)
    if (e.count > 0) out.entries.push_back(e);
  return out;
}

std::string to_string(const PartitionType& type) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < type.entries.size(); ++i) {
    if (i) os << ',';
    os << '(' << type.entries[i].count << ',' << type.entries[i].dim << ')';
  }
  os << ']';
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t parse_uint(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(ErrorCode::ParseError, "expected a non-negative integer, got '" + s + "'");
  return std::stoull(s);
}

}  // namespace

PartitionType parse_type(const std::string& text) {
  PartitionType type;
  for (const auto& item : split(text, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) throw Error(ErrorCode::ParseError, "type entry '" + item + "' is not COUNTxDIM");
    type.entries.push_back({parse_uint(item.substr(0, x)), static_cast<unsigned>(parse_uint(item.substr(x + 1)))});
  }
  std::sort(type.entries.begin(), type.entries.end(),
            [](const TypeEntry& a, const TypeEntry& b) { return a.dim < b.dim; });
  type.validate();
  return type;
}

TSpec TSpec::of(std::vector<unsigned> dims) {
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "T must be nonempty");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) throw Error(ErrorCode::InvalidArgument, "T elements must be positive");
    if (i > 0 && dims[i] <= dims[i - 1]) throw Error(ErrorCode::InvalidArgument, "T must be strictly increasing");
  }
  return TSpec{std::move(dims)};
}

bool TSpec::contains(unsigned d) const { return std::binary_search(dims.begin(), dims.end(), d); }

std::string to_string(const TSpec& t) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < t.dims.size(); ++i) os << (i ? "," : "") << t.dims[i];
  os << '}';
  return os.str();
}

TSpec parse_tspec(const std::string& text) {
  std::vector<unsigned> dims;
  for (const auto& item : split(text, ',')) dims.push_back(static_cast<unsigned>(parse_uint(item)));
  std::sort(dims.begin(), dims.end());
  return TSpec::of(std::move(dims));
}

Partition::Partition(Space space, std::vector<Subspace> components, Provenance provenance)
    : space_(std::move(space)), components_(std::move(components)), provenance_(std::move(provenance)) {
  for (const auto& c : components_) {
    if (!(c.ambient() == space_)) throw Error(ErrorCode::DimensionMismatch, "component from another space");
    if (c.dim() == 0) throw Error(ErrorCode::InvalidArgument, "the zero subspace cannot be a component");
  }
  std::sort(components_.begin(), components_.end());
}

Partition Partition::trivial(const Space& space) {
  return Partition(space, {Subspace::full(space)}, Provenance{"trivial", "", {}});
}

VerificationReport verify(const Partition& p) {
  VerificationReport rep;
  const Space& space = p.ambient();
  const auto& comps = p.components();
  const std::uint64_t q = space.q();

  {
    // Compare in 128 bits; huge ambient spaces still get a sound answer.
    unsigned __int128 sum = 0;
    for (const auto& c : comps) sum += static_cast<unsigned __int128>(checked_pow(q, c.dim())) - 1;
    rep.counting_identity = sum == static_cast<unsigned __int128>(checked_pow(q, space.n)) - 1;
  }

  if (comps.empty()) {
    rep.method = "cover-scan";
    rep.pairwise_trivial = true;
    rep.full_cover = space.n == 0;
    rep.valid = rep.full_cover;
    rep.message = "no components";
    return rep;
  }

  std::uint64_t total = 0;
  bool scan = true;
  try {
    total = space.size();
    scan = total <= kCoverScanLimit;
  } catch (const Error&) {
    scan = false;
  }

  if (scan) {
    rep.method = "cover-scan";
    std::vector<std::int32_t> owner(total, -1);
    rep.pairwise_trivial = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (auto code : enumerate_nonzero_codes(comps[i], kCoverScanLimit)) {
        if (owner[code] >= 0) {
          if (rep.pairwise_trivial) {
            rep.pairwise_trivial = false;
            rep.overlap = std::pair{static_cast<std::size_t>(owner[code]), i};
            rep.doubly_covered = space.decode(code);
          }
          continue;
        }
        owner[code] = static_cast<std::int32_t>(i);
      }
    }
    rep.full_cover = true;
    for (std::uint64_t code = 1; code < total; ++code) {
      if (owner[code] < 0) {
        rep.full_cover = false;
        rep.uncovered = space.decode(code);
        break;
      }
    }
  } else {
    rep.method = "pairwise-meet";
    rep.pairwise_trivial = true;
    for (std::size_t i = 0; i < comps.size() && rep.pairwise_trivial; ++i) {
      for (std::size_t j = i + 1; j < comps.size(); ++j) {
        Subspace m = meet(comps[i], comps[j]);
        if (m.dim() > 0) {
          rep.pairwise_trivial = false;
          rep.overlap = std::pair{i, j};
          rep.doubly_covered = m.basis().front();
          break;
        }
      }
    }
    // Disjoint nonzero parts whose sizes add up to q^n - 1 cover everything.
    rep.full_cover = rep.pairwise_trivial && rep.counting_identity;
  }

  rep.valid = rep.pairwise_trivial && rep.full_cover;
  if (rep.valid) {
    rep.message = "valid partition";
  } else if (rep.overlap) {
    rep.message = "components " + std::to_string(rep.overlap->first) + " and " + std::to_string(rep.overlap->second) +
                  " share a nonzero vector";
  } else if (rep.uncovered) {
    rep.message = "a nonzero vector is not covered";
  } else {
    rep.message = "counting identity fails";
  }
  return rep;
}

PartitionType type_of(const Partition& p) {
  PartitionType type;
  std::vector<std::uint64_t> counts(p.ambient().n + 1, 0);
  for (const auto& c : p.components()) ++counts[c.dim()];
  for (unsigned d = 1; d <= p.ambient().n; ++d)
    if (counts[d] > 0) type.entries.push_back({counts[d], d});
  return type;
}

bool is_T_partition(const Partition& p, const TSpec& t) {
  std::vector<unsigned> dims;
  for (const auto& e : type_of(p).entries) dims.push_back(e.dim);
  return dims == t.dims;
}

Partition induce(const Partition& p, const Subspace& w) {
  if (!(w.ambient() == p.ambient())) throw Error(ErrorCode::DimensionMismatch, "w is in another space");
  if (w.dim() == 0) throw Error(ErrorCode::ZeroSubspace, "cannot induce on the zero subspace");
  const Space target{p.ambient().field, w.dim()};
  std::vector<Subspace> parts;
  for (const auto& c : p.components()) {
    Subspace m = meet(c, w);
    if (m.dim() > 0) parts.push_back(to_host_coordinates(w, m));
  }
  return Partition(target, std::move(parts), Provenance{"induce", "dim W = " + std::to_string(w.dim()), {}});
}

Partition refine(const Partition& p, const Subspace& victim, const Partition& sub) {
  const auto& comps = p.components();
  auto it = std::find(comps.begin(), comps.end(), victim);
  if (it == comps.end()) throw Error(ErrorCode::NotAComponent, "victim is not a component of the partition");
  if (sub.ambient().n != victim.dim() || !(*sub.ambient().field == *victim.ambient().field))
    throw Error(ErrorCode::InvalidSubPartition, "sub-partition is not over V_{dim victim}");
  if (!verify(sub).valid) throw Error(ErrorCode::InvalidSubPartition, "sub-partition is not a partition");

  std::vector<Subspace> out;
  out.reserve(comps.size() - 1 + sub.size());
  for (const auto& c : comps)
    if (!(c == victim)) out.push_back(c);
  for (const auto& c : sub.components()) out.push_back(from_host_coordinates(victim, c));
  Provenance prov{"refine", "", {p.provenance(), sub.provenance()}};
  return Partition(p.ambient(), std::move(out), std::move(prov));
}

bool BoundReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

BoundReport bound_report(const Partition& p) {
  if (p.size() < 2) throw Error(ErrorCode::TrivialPartition, "bounds need at least two components");
  const auto& comps = p.components();
  const std::uint64_t q = p.ambient().q();
  const unsigned n = p.ambient().n;

  BoundReport rep;
  rep.r = comps.size();
  rep.t = comps.front().dim();
  for (const auto& c : comps) rep.t = std::min(rep.t, c.dim());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].dim() != rep.t) continue;
    if (rep.s == 0) rep.v1_index = i;
    ++rep.s;
  }
  const std::uint64_t qt = checked_pow(q, rep.t);
  rep.lower_q_plus_t = q + rep.t;
  rep.lower_q_pow_t_plus_1 = qt + 1;
  rep.upper = (checked_pow(q, n) - 1) / (qt - 1);
  rep.r_mod_q_pow_t = rep.r % qt;

  const Subspace w = complement(comps[rep.v1_index]);
  rep.w_basis = w.basis();
  for (const auto& c : comps)
    if (c.dim() == rep.t && trivially_meet(c, w)) ++rep.s_prime;

  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const auto str = [](std::uint64_t v) { return std::to_string(v); };
  add("min-count>=q+1", rep.s >= q + 1, "s=" + str(rep.s) + " >= " + str(q + 1));
  add("min-count>=q+t", rep.s >= rep.lower_q_plus_t, "s=" + str(rep.s) + " >= " + str(rep.lower_q_plus_t));
  add("r>=q^t+1", rep.r >= rep.lower_q_pow_t_plus_1, "r=" + str(rep.r) + " >= " + str(rep.lower_q_pow_t_plus_1));
  add("r<=floor((q^n-1)/(q^t-1))", rep.r <= rep.upper, "r=" + str(rep.r) + " <= " + str(rep.upper));
  add("r=1 mod q^t", rep.r_mod_q_pow_t == 1 % qt, "r mod " + str(qt) + " = " + str(rep.r_mod_q_pow_t));
  add("q|s'", rep.s_prime % q == 0, "s'=" + str(rep.s_prime));
  add("s'>=1", rep.s_prime >= 1, "s'=" + str(rep.s_prime));
  return rep;
}

}  // namespace vspart
