#include "vspart/dioph.hpp"

#include <algorithm>
#include <map>

#include "vspart/error.hpp"

namespace vspart {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::PairwiseDims: return "pairwise-dims";
    case Condition::HyperplaneSplit: return "hyperplane-split";
    case Condition::FirstCountAtLeast2: return "first-count>=2";
    case Condition::LinesAtLeast3: return "lines>=3";
    case Condition::MinCountQPlus1: return "min-count>=q+1";
    case Condition::MinCountQPlusT: return "min-count>=q+t";
    case Condition::ComponentBounds: return "r-bounds";
    case Condition::ComponentResidue: return "r-residue";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "n/a";
  }
  return "?";
}

bool TypeSolution::passes_all() const {
  return std::none_of(flags.begin(), flags.end(), [](const ConditionFlag& f) { return f.verdict == Verdict::Fail; });
}

std::vector<Condition> TypeSolution::failures() const {
  std::vector<Condition> out;
  for (const auto& f : flags)
    if (f.verdict == Verdict::Fail) out.push_back(f.condition);
  return out;
}

PartitionType TypeSolution::as_type() const {
  PartitionType t;
  for (std::size_t i = 0; i < dims.size(); ++i) t.entries.push_back({x[i], dims[i]});
  return t;
}

std::uint64_t TypeSolution::components() const {
  std::uint64_t r = 0;
  for (auto v : x) r += v;
  return r;
}

TypeSolution solution_from_type(const PartitionType& type) {
  type.validate();
  TypeSolution s;
  for (const auto& e : type.entries) {
    s.dims.push_back(e.dim);
    s.x.push_back(e.count);
  }
  return s;
}

namespace {

void check_dims(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be >= 2");
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "dims must be nonempty");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || dims[i] > n) throw Error(ErrorCode::BadDimensions, "each dim must lie in 1..n");
    if (i > 0 && dims[i] <= dims[i - 1]) throw Error(ErrorCode::BadDimensions, "dims must be strictly increasing");
  }
}

std::vector<std::uint64_t> weights(std::uint64_t q, const std::vector<unsigned>& dims) {
  std::vector<std::uint64_t> w;
  for (auto d : dims) w.push_back(checked_pow(q, d) - 1);
  return w;
}

constexpr std::uint64_t kMaxScanSteps = 200'000'000;

// Whether `target` is a sum of a_i * w_i with 0 <= a_i <= cap_i.
bool bounded_sum_reachable(std::uint64_t target, const std::vector<std::uint64_t>& w,
                           const std::vector<std::uint64_t>& cap) {
  if (target <= (std::uint64_t{1} << 24)) {
    // Bounded knapsack, one residue class at a time.
    std::vector<char> reach(target + 1, 0);
    reach[0] = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0 || cap[i] == 0) continue;
      std::vector<char> next(target + 1, 0);
      for (std::uint64_t r = 0; r < std::min<std::uint64_t>(w[i], target + 1); ++r) {
        std::uint64_t since = cap[i] + 1;  // steps since the last reachable value
        for (std::uint64_t v = r; v <= target; v += w[i]) {
          since = reach[v] ? 0 : since + 1;
          next[v] = since <= cap[i];
        }
      }
      reach.swap(next);
    }
    return reach[target];
  }
  std::uint64_t steps = 0;
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t rest) -> bool {
    if (++steps > kMaxScanSteps) throw Error(ErrorCode::BudgetExceeded, "hyperplane split search too large");
    if (i + 1 == w.size()) return w[i] == 0 ? rest == 0 : rest % w[i] == 0 && rest / w[i] <= cap[i];
    const std::uint64_t hi = w[i] == 0 ? 0 : std::min(cap[i], rest / w[i]);
    for (std::uint64_t a = 0; a <= hi; ++a)
      if (self(self, i + 1, rest - a * w[i])) return true;
    return false;
  };
  return !w.empty() && rec(rec, 0, target);
}

bool pairwise_ok(unsigned n, const std::vector<unsigned>& dims, const std::vector<std::uint64_t>& x) {
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (x[i] == 0) continue;
    if (2 * dims[i] > n && x[i] > 1) return false;
    for (std::size_t j = i + 1; j < dims.size(); ++j)
      if (x[j] > 0 && dims[i] + dims[j] > n) return false;
  }
  return true;
}

bool split_recursive(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims,
                     const std::vector<std::uint64_t>& x, unsigned depth, std::uint64_t& steps) {
  if (depth == 0 || n == 0) return true;
  // Components inside the hyperplane keep dim n_i; the others drop to n_i - 1.
  __int128 rest = static_cast<__int128>(checked_pow(q, n - 1)) - 1;
  std::vector<std::uint64_t> gain;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::uint64_t lo = checked_pow(q, dims[i] - 1) - 1;
    rest -= static_cast<__int128>(lo) * x[i];
    gain.push_back(checked_pow(q, dims[i]) - checked_pow(q, dims[i] - 1));
  }
  if (rest < 0) return false;
  const auto target = static_cast<std::uint64_t>(rest);
  if (depth == 1) return bounded_sum_reachable(target, gain, x);

  // Deeper levels: every split is a candidate induced type on V_{n-1}.
  std::vector<std::uint64_t> a(dims.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> bool {
    if (++steps > kMaxScanSteps) throw Error(ErrorCode::BudgetExceeded, "hyperplane split search too large");
    if (i == dims.size()) {
      if (left != 0) return false;
      std::map<unsigned, std::uint64_t> induced;
      for (std::size_t j = 0; j < dims.size(); ++j) {
        if (a[j] > 0) induced[dims[j]] += a[j];
        if (x[j] - a[j] > 0 && dims[j] > 1) induced[dims[j] - 1] += x[j] - a[j];
      }
      std::vector<unsigned> d2;
      std::vector<std::uint64_t> x2;
      for (auto [d, c] : induced) {
        d2.push_back(d);
        x2.push_back(c);
      }
      if (!pairwise_ok(n - 1, d2, x2)) return false;
      return split_recursive(q, n - 1, d2, x2, depth - 1, steps);
    }
    const std::uint64_t hi = std::min(x[i], left / gain[i]);
    for (a[i] = 0; a[i] <= hi; ++a[i])
      if (self(self, i + 1, left - a[i] * gain[i])) return true;
    a[i] = 0;
    return false;
  };
  return rec(rec, 0, target);
}

}  // namespace

bool solves_equation(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims,
                     const std::vector<std::uint64_t>& x) {
  if (dims.size() != x.size()) return false;
  unsigned __int128 sum = 0;
  for (std::size_t i = 0; i < dims.size(); ++i)
    sum += static_cast<unsigned __int128>(checked_pow(q, dims[i]) - 1) * x[i];
  return sum == static_cast<unsigned __int128>(checked_pow(q, n) - 1);
}

std::vector<TypeSolution> solve_eq1(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims,
                                    std::uint64_t budget) {
  check_dims(q, n, dims);
  const auto w = weights(q, dims);
  const std::uint64_t target = checked_pow(q, n) - 1;
  std::vector<TypeSolution> out;
  std::vector<std::uint64_t> x(dims.size(), 0);
  std::uint64_t steps = 0;

  auto rec = [&](auto&& self, std::size_t i, std::uint64_t rest) -> void {
    if (++steps > kMaxScanSteps) throw Error(ErrorCode::BudgetExceeded, "solution scan too long");
    if (i + 1 == dims.size()) {
      if (rest % w[i] != 0) return;
      x[i] = rest / w[i];
      if (out.size() >= budget) throw Error(ErrorCode::BudgetExceeded, "more solutions than the budget");
      out.push_back(TypeSolution{dims, x, {}});
      return;
    }
    for (x[i] = 0; x[i] * w[i] <= rest; ++x[i]) self(self, i + 1, rest - x[i] * w[i]);
    x[i] = 0;
  };
  rec(rec, 0, target);
  return out;
}

bool hyperplane_split_exists(std::uint64_t q, unsigned n, const std::vector<unsigned>& dims,
                             const std::vector<std::uint64_t>& x, unsigned depth) {
  std::uint64_t steps = 0;
  return split_recursive(q, n, dims, x, depth, steps);
}

TypeSolution annotate(TypeSolution sol, std::uint64_t q, unsigned n, AnnotateOptions options) {
  check_dims(q, n, sol.dims);
  if (!solves_equation(q, n, sol.dims, sol.x))
    throw Error(ErrorCode::NotASolution, to_string(sol.as_type()) + " does not solve the equation");
  sol.flags.clear();
  const auto str = [](std::uint64_t v) { return std::to_string(v); };
  auto flag = [&](Condition c, Verdict v, std::string detail) { sol.flags.push_back({c, v, std::move(detail)}); };
  auto verdict = [](bool ok) { return ok ? Verdict::Pass : Verdict::Fail; };

  const std::uint64_t r = sol.components();
  const bool nontrivial = r >= 2;

  flag(Condition::PairwiseDims, verdict(pairwise_ok(n, sol.dims, sol.x)), "");

  {
    bool ok = false;
    std::string detail;
    try {
      ok = hyperplane_split_exists(q, n, sol.dims, sol.x, options.hyperplane_depth);
      detail = "depth " + str(options.hyperplane_depth);
      flag(Condition::HyperplaneSplit, verdict(ok), detail);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      flag(Condition::HyperplaneSplit, Verdict::NotApplicable, "split search exceeded its budget");
    }
  }

  const std::uint64_t x1 = sol.x.front();
  if (nontrivial && x1 != 0)
    flag(Condition::FirstCountAtLeast2, verdict(x1 >= 2), "x_1=" + str(x1));
  else
    flag(Condition::FirstCountAtLeast2, Verdict::NotApplicable, "");

  if (nontrivial && x1 != 0 && q == 2 && sol.dims.front() == 1)
    flag(Condition::LinesAtLeast3, verdict(x1 >= 3), "x_1=" + str(x1));
  else
    flag(Condition::LinesAtLeast3, Verdict::NotApplicable, "");

  std::size_t i0 = 0;
  while (i0 < sol.x.size() && sol.x[i0] == 0) ++i0;
  if (!nontrivial || i0 == sol.x.size()) {
    for (auto c : {Condition::MinCountQPlus1, Condition::MinCountQPlusT, Condition::ComponentBounds,
                   Condition::ComponentResidue})
      flag(c, Verdict::NotApplicable, "trivial partition");
    return sol;
  }
  const unsigned t = sol.dims[i0];
  const std::uint64_t s = sol.x[i0];
  const std::uint64_t qt = checked_pow(q, t);
  const std::uint64_t upper = (checked_pow(q, n) - 1) / (qt - 1);
  flag(Condition::MinCountQPlus1, verdict(s >= q + 1), "s=" + str(s) + ", q+1=" + str(q + 1));
  flag(Condition::MinCountQPlusT, verdict(s >= q + t), "s=" + str(s) + ", q+t=" + str(q + t));
  flag(Condition::ComponentBounds, verdict(r >= qt + 1 && r <= upper),
       str(qt + 1) + " <= r=" + str(r) + " <= " + str(upper));
  flag(Condition::ComponentResidue, verdict(r % qt == 1), "r mod " + str(qt) + " = " + str(r % qt));
  return sol;
}

std::vector<ClassifiedSolution> classify_q2_23(unsigned n) {
  if (n < 3) throw Error(ErrorCode::BadDimensions, "n must be >= 3");
  std::vector<ClassifiedSolution> out;
  for (auto& s : solve_eq1(2, n, {2, 3})) {
    const bool exists = s.x[0] != 1;
    out.push_back({annotate(std::move(s), 2, n), exists});
  }
  return out;
}

}  // namespace vspart
