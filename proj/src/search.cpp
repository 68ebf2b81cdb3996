#include "vspart/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <random>
#include <thread>

#include "vspart/dioph.hpp"
#include "vspart/error.hpp"

namespace vspart {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

namespace {

struct Candidate {
  unsigned dim = 0;
  std::vector<std::uint32_t> words;
  std::vector<std::uint64_t> bits;
  std::vector<std::uint32_t> points;
};

// Immutable after construction; shared by all workers.
struct Problem {
  Space space;
  std::uint64_t points = 0;  // q^n, including the zero vector at index 0
  std::size_t nwords = 0;
  std::vector<Subspace> subspaces;
  std::vector<Candidate> cands;  // cands[i] describes subspaces[i]
  std::vector<std::vector<std::uint32_t>> by_point;
  std::vector<std::uint64_t> weight;  // weight[d] = q^d - 1

  Problem(Space sp, const std::vector<unsigned>& dims, const SearchOptions& options) : space(std::move(sp)) {
    points = space.size();
    nwords = (points + 63) / 64;
    weight.resize(space.n + 1);
    for (unsigned d = 0; d <= space.n; ++d) weight[d] = checked_pow(space.q(), d) - 1;

    std::uint64_t total = 0;
    for (unsigned d : dims) {
      total += gaussian_binomial(space.q(), space.n, d);
      if (total > options.candidate_budget)
        throw Error(ErrorCode::BudgetExceeded, "too many candidate subspaces");
    }
    for (unsigned d : dims) {
      auto subs = enumerate_subspaces(space, d, options.candidate_budget);
      std::move(subs.begin(), subs.end(), std::back_inserter(subspaces));
    }
    std::sort(subspaces.begin(), subspaces.end());

    by_point.resize(points);
    cands.reserve(subspaces.size());
    for (std::uint32_t id = 0; id < subspaces.size(); ++id) {
      Candidate c;
      c.dim = subspaces[id].dim();
      for (auto code : enumerate_nonzero_codes(subspaces[id])) {
        by_point[code].push_back(id);
        c.points.push_back(static_cast<std::uint32_t>(code));
        const auto w = static_cast<std::uint32_t>(code / 64);
        if (c.words.empty() || c.words.back() != w) {
          c.words.push_back(w);
          c.bits.push_back(0);
        }
        c.bits.back() |= std::uint64_t{1} << (code % 64);
      }
      cands.push_back(std::move(c));
    }
    // Larger components first; canonical order within a dimension.
    for (auto& list : by_point)
      std::stable_sort(list.begin(), list.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return cands[a].dim > cands[b].dim; });
    if (options.shuffle_seed) {
      std::mt19937_64 rng(*options.shuffle_seed);
      for (auto& list : by_point) std::shuffle(list.begin(), list.end(), rng);
    }
  }
};

// Which dimensions may still be placed, and whether the uncovered count can
// still be completed.
class Tracker {
 public:
  enum class Mode { Any, Type, TSet };

  static Tracker any(unsigned n) { return Tracker(Mode::Any, n); }

  static Tracker type(unsigned n, const PartitionType& t) {
    Tracker tr(Mode::Type, n);
    for (const auto& e : t.entries) tr.counts_[e.dim] = static_cast<std::int64_t>(e.count);
    return tr;
  }

  static Tracker tset(unsigned n, const TSpec& t, const std::vector<std::uint64_t>& weight) {
    Tracker tr(Mode::TSet, n);
    tr.tdims_ = t.dims;
    tr.weight_ = weight;
    return tr;
  }

  bool allowed(unsigned d) const {
    switch (mode_) {
      case Mode::Any: return true;
      case Mode::Type: return counts_[d] > 0;
      case Mode::TSet: return in_t(d) && compatible(d);
    }
    return false;
  }

  void place(unsigned d) { mode_ == Mode::Type ? --counts_[d] : ++counts_[d]; }
  void unplace(unsigned d) { mode_ == Mode::Type ? ++counts_[d] : --counts_[d]; }

  // Necessary condition on the uncovered point count.
  bool feasible(std::uint64_t uncovered) {
    if (mode_ != Mode::TSet) return true;
    std::uint64_t need = 0;
    std::vector<unsigned> mandatory;
    for (unsigned d : tdims_) {
      if (counts_[d] > 0) continue;
      if (!compatible(d)) return false;
      for (unsigned m : mandatory)
        if (m + d > n_) return false;
      mandatory.push_back(d);
      need += weight_[d];
    }
    if (need > uncovered) return false;
    unsigned mask = 0;
    for (std::size_t i = 0; i < tdims_.size(); ++i)
      if (compatible(tdims_[i])) mask |= 1u << i;
    return reach(mask)[uncovered - need];
  }

  /// Bit d set iff dimension d may still be placed.
  std::uint64_t allowed_mask() const {
    std::uint64_t m = 0;
    for (unsigned d = 1; d <= n_; ++d)
      if (allowed(d)) m |= std::uint64_t{1} << d;
    return m;
  }

  bool satisfied() const {
    if (mode_ != Mode::TSet) return true;
    return std::all_of(tdims_.begin(), tdims_.end(), [&](unsigned d) { return counts_[d] > 0; });
  }

 private:
  Tracker(Mode m, unsigned n) : mode_(m), n_(n), counts_(n + 1, 0) {}

  bool in_t(unsigned d) const { return std::binary_search(tdims_.begin(), tdims_.end(), d); }

  bool compatible(unsigned d) const {
    for (unsigned u = 1; u <= n_; ++u) {
      if (counts_[u] == 0) continue;
      if (u == d ? 2 * d > n_ : u + d > n_) return false;
    }
    return true;
  }

  // reach[v]: v is a non-negative combination of the weights in the mask.
  const std::vector<char>& reach(unsigned mask) {
    auto it = reach_.find(mask);
    if (it != reach_.end()) return it->second;
    const std::uint64_t top = weight_.empty() ? 0 : weight_[n_];
    std::vector<char> r(top + 1, 0);
    r[0] = 1;
    for (std::size_t i = 0; i < tdims_.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      const std::uint64_t w = weight_[tdims_[i]];
      for (std::uint64_t v = w; v <= top; ++v)
        if (r[v - w]) r[v] = 1;
    }
    return reach_.emplace(mask, std::move(r)).first->second;
  }

  Mode mode_;
  unsigned n_;
  std::vector<std::int64_t> counts_;
  std::vector<unsigned> tdims_;
  std::vector<std::uint64_t> weight_;
  std::map<unsigned, std::vector<char>> reach_;
};

struct State {
  std::vector<std::uint64_t> covered;
  std::uint64_t uncovered = 0;
  std::vector<std::uint32_t> chosen;

  explicit State(const Problem& pb) : covered(pb.nwords, 0), uncovered(pb.points - 1) {
    covered[0] |= 1;  // the zero vector is never a point to cover
  }
};

enum class Outcome { Complete, Stopped, Budget, Cancelled };

class Explorer {
 public:
  Explorer(const Problem& pb, Tracker tracker, std::atomic<std::uint64_t>& nodes, std::uint64_t budget)
      : pb_(pb),
        tracker_(std::move(tracker)),
        state_(pb),
        nodes_(nodes),
        budget_(budget),
        blocked_(pb.cands.size(), 0),
        avail_(pb.points * (pb.space.n + 1), 0) {
    for (std::uint64_t y = 1; y < pb.points; ++y)
      for (auto c : pb.by_point[y]) ++avail_[y * (pb.space.n + 1) + pb.cands[c].dim];
  }

  bool disjoint(std::uint32_t c) const { return blocked_[c] == 0; }

  bool covered(std::uint64_t y) const { return (state_.covered[y / 64] >> (y % 64)) & 1; }

  void apply(std::uint32_t c) {
    const Candidate& cand = pb_.cands[c];
    const std::uint64_t before = tracker_.allowed_mask();
    for (std::size_t k = 0; k < cand.words.size(); ++k) state_.covered[cand.words[k]] |= cand.bits[k];
    state_.uncovered -= pb_.weight[cand.dim];
    state_.chosen.push_back(c);
    tracker_.place(cand.dim);
    full_check_ = tracker_.allowed_mask() != before;

    // Every candidate through a newly covered point is now blocked.
    const unsigned stride = pb_.space.n + 1;
    touched_.clear();
    for (auto x : cand.points)
      for (auto c2 : pb_.by_point[x])
        if (blocked_[c2]++ == 0) {
          const unsigned d = pb_.cands[c2].dim;
          for (auto y : pb_.cands[c2].points) {
            --avail_[y * stride + d];
            touched_.push_back(y);
          }
        }
  }

  void undo(std::uint32_t c) {
    const Candidate& cand = pb_.cands[c];
    const unsigned stride = pb_.space.n + 1;
    for (auto x : cand.points)
      for (auto c2 : pb_.by_point[x])
        if (--blocked_[c2] == 0) {
          const unsigned d = pb_.cands[c2].dim;
          for (auto y : pb_.cands[c2].points) ++avail_[y * stride + d];
        }
    for (std::size_t k = 0; k < cand.words.size(); ++k) state_.covered[cand.words[k]] &= ~cand.bits[k];
    state_.uncovered += pb_.weight[cand.dim];
    state_.chosen.pop_back();
    tracker_.unplace(cand.dim);
  }

  /// Forward check after apply: every uncovered point still lies in some
  /// unblocked candidate of a dimension that may be placed.
  bool alive() const {
    const std::uint64_t mask = tracker_.allowed_mask();
    const unsigned stride = pb_.space.n + 1;
    auto ok = [&](std::uint64_t y) {
      if (covered(y)) return true;
      for (unsigned d = 1; d < stride; ++d)
        if (((mask >> d) & 1) && avail_[y * stride + d] > 0) return true;
      return false;
    };
    if (full_check_) {
      for (std::uint64_t y = 1; y < pb_.points; ++y)
        if (!ok(y)) return false;
      return true;
    }
    return std::all_of(touched_.begin(), touched_.end(), ok);
  }

  bool count_node() { return nodes_.fetch_add(1, std::memory_order_relaxed) + 1 <= budget_; }

  std::uint32_t least_uncovered(std::uint64_t from) const {
    std::size_t w = from / 64;
    std::uint64_t word = ~state_.covered[w] & (~std::uint64_t{0} << (from % 64));
    while (word == 0) word = ~state_.covered[++w];
    return static_cast<std::uint32_t>(w * 64 + std::countr_zero(word));
  }

  bool usable(std::uint32_t c) const { return tracker_.allowed(pb_.cands[c].dim) && disjoint(c); }

  /// Place root candidate c and explore below it. Returns Complete when c is
  /// not usable.
  template <class OnSolution, class Cancelled>
  Outcome explore_with(std::uint32_t c, OnSolution&& on_solution, Cancelled&& cancelled) {
    if (!usable(c)) return Outcome::Complete;
    if (!count_node()) return Outcome::Budget;
    apply(c);
    Outcome out = Outcome::Complete;
    if (state_.uncovered == 0) {
      if (tracker_.satisfied() && on_solution(state_.chosen)) out = Outcome::Stopped;
    } else if (alive() && tracker_.feasible(state_.uncovered)) {
      out = explore(on_solution, cancelled);
    }
    undo(c);
    return out;
  }

  /// Depth-first search from the current state, iteratively so that deep
  /// covers by many small components do not exhaust the stack.
  template <class OnSolution, class Cancelled>
  Outcome explore(OnSolution&& on_solution, Cancelled&& cancelled) {
    struct Frame {
      std::uint32_t point;
      std::uint32_t pos;
      std::int64_t placed;
    };
    std::vector<Frame> frames;
    frames.push_back({least_uncovered(1), 0, -1});
    std::uint64_t ticks = 0;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.placed >= 0) {
        undo(static_cast<std::uint32_t>(f.placed));
        f.placed = -1;
      }
      const auto& list = pb_.by_point[f.point];
      bool descended = false;
      while (f.pos < list.size()) {
        const std::uint32_t c = list[f.pos++];
        if (!usable(c)) continue;
        if (!count_node()) return unwind(frames, Outcome::Budget);
        if ((++ticks & 1023) == 0 && cancelled()) return unwind(frames, Outcome::Cancelled);
        apply(c);
        if (state_.uncovered == 0) {
          const bool stop = tracker_.satisfied() && on_solution(state_.chosen);
          undo(c);
          if (stop) return unwind(frames, Outcome::Stopped);
          continue;
        }
        if (!alive() || !tracker_.feasible(state_.uncovered)) {
          undo(c);
          continue;
        }
        f.placed = c;
        const std::uint32_t next = least_uncovered(f.point + 1);
        frames.push_back({next, 0, -1});
        descended = true;
        break;
      }
      if (!descended) frames.pop_back();
    }
    return Outcome::Complete;
  }

 private:
  template <class Frames>
  Outcome unwind(Frames& frames, Outcome out) {
    while (!frames.empty()) {
      if (frames.back().placed >= 0) undo(static_cast<std::uint32_t>(frames.back().placed));
      frames.pop_back();
    }
    return out;
  }

  const Problem& pb_;
  Tracker tracker_;
  State state_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
  std::vector<std::uint32_t> blocked_;
  std::vector<std::uint32_t> avail_;
  std::vector<std::uint32_t> touched_;
  bool full_check_ = false;
};

Partition make_partition(const Problem& pb, const std::vector<std::uint32_t>& chosen, std::string rule) {
  std::vector<Subspace> comps;
  for (auto c : chosen) comps.push_back(pb.subspaces[c]);
  return Partition(pb.space, std::move(comps), Provenance{std::move(rule), "", {}});
}

SearchResult exhausted(std::string why) {
  SearchResult r;
  r.status = SearchStatus::Exhausted;
  r.note = std::move(why);
  return r;
}

}  // namespace

SearchResult find_partition(FieldPtr field, unsigned n, const SearchGoal& goal, const SearchOptions& options) {
  const Space space{std::move(field), n};
  SearchResult result;
  std::uint64_t points = 0;
  try {
    points = space.size();
  } catch (const Error&) {
    points = kSearchSpaceLimit + 1;
  }
  if (n == 0 || points > kSearchSpaceLimit) {
    result.status = SearchStatus::BudgetExceeded;
    result.note = "q^n exceeds the search guard";
    return result;
  }

  std::vector<unsigned> dims;
  std::optional<PartitionType> type;
  std::optional<TSpec> tspec;
  if (const auto* t = std::get_if<PartitionType>(&goal)) {
    t->validate();
    type = t->without_zeros();
    TypeSolution sol = solution_from_type(*type);
    if (sol.dims.empty()) return exhausted("empty type");
    if (sol.dims.back() > n) return exhausted("a dimension exceeds n");
    if (!solves_equation(space.q(), n, sol.dims, sol.x)) return exhausted("type does not solve the counting equation");
    if (options.prefilter) {
      const auto flagged = annotate(sol, space.q(), n);
      for (const auto& f : flagged.flags)
        if (f.condition == Condition::PairwiseDims && f.verdict == Verdict::Fail)
          return exhausted("type violates the pairwise dimension rule");
    }
    dims = sol.dims;
  } else {
    tspec = std::get<TSpec>(goal);
    if (tspec->max() > n) return exhausted("a dimension exceeds n");
    dims = tspec->dims;
  }

  std::optional<Problem> pb;
  try {
    pb.emplace(space, dims, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    result.status = SearchStatus::BudgetExceeded;
    result.note = e.what();
    return result;
  }

  auto make_tracker = [&] {
    return type ? Tracker::type(n, *type) : Tracker::tset(n, *tspec, pb->weight);
  };

  const auto& roots = pb->by_point[1];
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> best{roots.size()};
  std::atomic<std::size_t> next_root{0};
  std::vector<Outcome> outcomes(roots.size(), Outcome::Complete);
  std::vector<std::vector<std::uint32_t>> found(roots.size());

  auto worker = [&] {
    Explorer ex(*pb, make_tracker(), nodes, options.node_budget);
    while (true) {
      const std::size_t i = next_root.fetch_add(1);
      if (i >= roots.size()) break;
      if (i > best.load()) {
        outcomes[i] = Outcome::Cancelled;
        continue;
      }
      auto on_solution = [&](const std::vector<std::uint32_t>& chosen) {
        found[i] = chosen;
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return true;
      };
      auto cancelled = [&] { return i > best.load(); };
      outcomes[i] = ex.explore_with(roots[i], on_solution, cancelled);
      if (outcomes[i] == Outcome::Budget) break;
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  result.nodes = nodes.load();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (outcomes[i] == Outcome::Stopped) {
      Partition p = make_partition(*pb, found[i], "search");
      if (!verify(p).valid) throw Error(ErrorCode::Internal, "search produced an invalid partition");
      result.status = SearchStatus::Found;
      result.partition = std::move(p);
      return result;
    }
    if (outcomes[i] == Outcome::Budget || outcomes[i] == Outcome::Cancelled) {
      result.status = SearchStatus::BudgetExceeded;
      result.note = "node budget exhausted";
      return result;
    }
  }
  // A budget stop may leave later roots unvisited.
  if (result.nodes > options.node_budget) {
    result.status = SearchStatus::BudgetExceeded;
    result.note = "node budget exhausted";
    return result;
  }
  result.status = SearchStatus::Exhausted;
  result.note = "complete search found no partition";
  return result;
}

std::vector<Partition> enumerate_all(FieldPtr field, unsigned n, std::uint64_t node_budget) {
  const Space space{std::move(field), n};
  if (n == 0 || space.size() > kEnumerateSpaceLimit) throw Error(ErrorCode::TooLarge, "q^n exceeds 2^12");
  std::vector<unsigned> dims(n);
  for (unsigned d = 1; d <= n; ++d) dims[d - 1] = d;
  SearchOptions options;
  options.node_budget = node_budget;
  const Problem pb(space, dims, options);
  std::atomic<std::uint64_t> nodes{0};
  Explorer ex(pb, Tracker::any(n), nodes, node_budget);
  std::vector<Partition> out;
  auto on_solution = [&](const std::vector<std::uint32_t>& chosen) {
    out.push_back(make_partition(pb, chosen, "enumerate"));
    return false;
  };
  if (ex.explore(on_solution, [] { return false; }) == Outcome::Budget)
    throw Error(ErrorCode::BudgetExceeded, "enumeration exceeded the node budget");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConjectureReport scan_partitions(std::span<const Partition> partitions) {
  ConjectureReport rep;
  if (!partitions.empty()) {
    rep.q = partitions.front().ambient().q();
    rep.n = partitions.front().ambient().n;
  }
  for (const auto& p : partitions) {
    ++rep.examined;
    if (p.size() < 2) continue;
    ++rep.nontrivial;
    const auto type = type_of(p);
    const unsigned t = type.entries.front().dim;
    const std::uint64_t s = type.entries.front().count;
    const std::uint64_t bound = checked_pow(p.ambient().q(), t) + 1;
    auto [it, inserted] = rep.min_s.emplace(t, s);
    if (!inserted) it->second = std::min(it->second, s);
    if (s == bound) ++rep.equality_witnesses[t];
    if (s < bound) rep.counterexamples.push_back(p);
  }
  return rep;
}

ConjectureReport conjecture_scan(FieldPtr field, unsigned n, std::uint64_t node_budget) {
  const std::uint64_t q = field->q();
  auto all = enumerate_all(std::move(field), n, node_budget);
  auto rep = scan_partitions(all);
  rep.q = q;
  rep.n = n;
  return rep;
}

}  // namespace vspart
