// Acceptance run: one [PASS]/[FAIL] line per criterion.
//
//   acceptance            run every criterion
//   acceptance N          run criterion N only

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vspart/artifacts.hpp"
#include "vspart/construct.hpp"
#include "vspart/dioph.hpp"
#include "vspart/error.hpp"
#include "vspart/search.hpp"

using namespace vspart;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : "; ") + s;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(std::uint64_t v) { return std::to_string(v); }

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

const FieldPtr& gf2() {
  static const FieldPtr f = make_field(2, 1);
  return f;
}

std::string space_name(std::uint64_t q, unsigned n) { return "V_" + str(n) + "(" + str(q) + ")"; }

// 1
Outcome spread_counts() {
  Outcome o;
  struct Case {
    std::uint64_t q;
    unsigned n, d;
  };
  for (const auto& c : std::vector<Case>{{2, 4, 2}, {2, 6, 2}, {2, 6, 3}, {3, 4, 2}}) {
    const auto t0 = Clock::now();
    const auto p = spread(make_field_of_order(c.q), c.n, c.d);
    const bool ok = verify(p).valid;
    const double dt = seconds_since(t0);
    const auto want = (ipow(c.q, c.n) - 1) / (ipow(c.q, c.d) - 1);
    const std::string name = "(" + str(c.q) + "," + str(c.n) + "," + str(c.d) + ")";
    if (p.size() != want) o.fail(name + " has " + str(p.size()) + " components, want " + str(want));
    if (!ok) o.fail(name + " does not verify");
    if (dt >= 1.0) o.fail(name + " took " + std::to_string(dt) + " s");
    o.note(name + ":" + str(p.size()));
  }
  return o;
}

// 2
Outcome near_spread_types() {
  Outcome o;
  struct Case {
    std::uint64_t q;
    unsigned n, d;
  };
  for (const auto& c : std::vector<Case>{{2, 5, 2}, {2, 7, 3}, {3, 5, 2}}) {
    const auto t0 = Clock::now();
    const auto p = near_spread(make_field_of_order(c.q), c.n, c.d);
    const bool ok = verify(p).valid;
    const double dt = seconds_since(t0);
    const std::string want =
        "[(" + str(ipow(c.q, c.n - c.d)) + "," + str(c.d) + "),(1," + str(c.n - c.d) + ")]";
    const std::string got = to_string(type_of(p));
    if (got != want) o.fail(got + " != " + want);
    if (!ok) o.fail(want + " does not verify");
    if (dt >= 1.0) o.fail(want + " took " + std::to_string(dt) + " s");
    o.note(got);
  }
  return o;
}

// 3
Outcome lift_count_law() {
  Outcome o;
  auto check = [&](const Partition& p, unsigned m, const std::string& label) {
    const auto r = lift(p, m);
    const auto want = (ipow(p.ambient().q(), m) - 1) * p.size();
    if (r.tset.size() != want) o.fail(label + ": |P| = " + str(r.tset.size()) + ", want " + str(want));
    if (!verify(r.full).valid) o.fail(label + ": lifted partition does not verify");
    return r;
  };

  const auto one = check(Partition::trivial(Space{gf2(), 2}), 3, "plane across m'=3");
  if (one.tset.size() != 7 || to_string(type_of(one.full)) != "[(8,2),(1,3)]")
    o.fail("plane across m'=3 gives " + to_string(type_of(one.full)));
  const auto two = check(spread(gf2(), 4, 2), 4, "2-spread across m'=4");
  if (two.tset.size() != 75 || two.full.size() != 77) o.fail("2-spread across m'=4 gives " + str(two.tset.size()));

  std::vector<Partition> pool;
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {4, 2}, {3, 3}})
    for (auto& p : enumerate_all(make_field_of_order(q), n)) pool.push_back(std::move(p));
  pool.push_back(spread(gf2(), 4, 2));
  pool.push_back(near_spread(gf2(), 5, 2));

  std::mt19937 rng(20240607);
  const int trials = 16;
  for (int i = 0; i < trials; ++i) {
    const auto& p = pool[rng() % pool.size()];
    unsigned lo = 1;
    for (const auto& c : p.components()) lo = std::max(lo, c.dim());
    unsigned hi = lo;
    while (ipow(p.ambient().q(), p.ambient().n + hi + 1) <= (1u << 14)) ++hi;
    const unsigned m = lo + rng() % (hi - lo + 1);
    check(p, m, to_string(type_of(p)) + " of " + space_name(p.ambient().q(), p.ambient().n) + " across m'=" + str(m));
  }
  o.note("2 worked examples + " + str(trials) + " random instances");
  return o;
}

// 4
Outcome hyperplane_sections() {
  Outcome o;
  struct Case {
    std::uint64_t q;
    unsigned k, d;
    const char* want;
  };
  for (const auto& c : std::vector<Case>{{2, 2, 2, "[(4,1),(1,2)]"}, {3, 2, 2, "[(9,1),(1,2)]"},
                                         {2, 2, 3, "[(8,2),(1,3)]"}}) {
    const auto p = hyperplane_section(make_field_of_order(c.q), c.k, c.d);
    const auto got = to_string(type_of(p));
    if (got != c.want) o.fail(got + " != " + c.want);
    if (!verify(p).valid) o.fail(got + " does not verify");
    o.note(got);
  }
  return o;
}

std::vector<Partition>& search_corpus() {
  static std::vector<Partition> found;
  return found;
}

// 5
Outcome two_three_classification() {
  Outcome o;
  const auto t0 = Clock::now();
  int checked = 0;
  for (unsigned n = 3; n <= 5; ++n) {
    for (const auto& c : classify_q2_23(n)) {
      const auto type = c.solution.as_type().without_zeros();
      const bool predicted = c.solution.x[0] != 1;
      for (bool prefilter : {true, false}) {
        SearchOptions opt;
        opt.prefilter = prefilter;
        const auto r = find_partition(gf2(), n, type, opt);
        const std::string name = to_string(type) + " at n=" + str(n) + (prefilter ? "" : " (no prefilter)");
        if (r.status == SearchStatus::BudgetExceeded) {
          o.fail(name + ": budget exceeded");
          continue;
        }
        if ((r.status == SearchStatus::Found) != predicted)
          o.fail(name + ": " + std::string(to_string(r.status)) + ", predicted " + (predicted ? "exists" : "none"));
        if (r.partition) search_corpus().push_back(*r.partition);
        ++checked;
      }
    }
  }
  SearchOptions raw;
  raw.prefilter = false;
  const auto r = find_partition(gf2(), 5, parse_type("1x2,4x3"), raw);
  if (r.status != SearchStatus::Exhausted) o.fail("[(1,2),(4,3)] at n=5 is not Exhausted");
  const double dt = seconds_since(t0);
  if (dt >= 60) o.fail("took " + std::to_string(dt) + " s");
  o.note(str(checked) + " searches; [(1,2),(4,3)] refuted in " + str(r.nodes) + " nodes without the prefilter");
  return o;
}

// 6
Outcome necessary_conditions() {
  Outcome o;
  std::vector<Partition> corpus;
  std::set<std::string> enumerated;
  std::vector<std::string> missing;

  // Enumerations. Beyond these, the number of partitions explodes: V_5(2)
  // alone has too many to list, so they are attempted with a bounded budget
  // and reported.
  std::vector<std::uint64_t> prime_powers;
  for (std::uint64_t q = 2; q <= 64; ++q) {
    try {
      make_field_of_order(q);
      prime_powers.push_back(q);
    } catch (const Error&) {
    }
  }
  std::vector<std::pair<std::uint64_t, unsigned>> feasible, rest;
  for (auto q : prime_powers)
    for (unsigned n = 2; ipow(q, n) <= kEnumerateSpaceLimit; ++n)
      ((n == 2 || (n == 3 && q <= 16) || (n == 4 && q == 2)) ? feasible : rest).push_back({q, n});
  for (auto [q, n] : feasible) {
    for (auto& p : enumerate_all(make_field_of_order(q), n)) corpus.push_back(std::move(p));
    enumerated.insert(space_name(q, n));
  }
  for (auto [q, n] : rest) {
    // Probe the two smallest; the others contain them as subspaces or are larger still.
    if (!((q == 2 && n == 5) || (q == 3 && n == 4))) {
      missing.push_back(space_name(q, n));
      continue;
    }
    try {
      for (auto& p : enumerate_all(make_field_of_order(q), n, 2'000'000)) corpus.push_back(std::move(p));
      enumerated.insert(space_name(q, n));
    } catch (const Error& e) {
      missing.push_back(space_name(q, n) + " (" + std::string(to_string(e.code())) + ")");
    }
  }
  const std::size_t from_enumeration = corpus.size();

  // Constructions.
  for (auto q : prime_powers)
    for (unsigned n = 2; ipow(q, n) <= kEnumerateSpaceLimit; ++n)
      for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) corpus.push_back(spread(make_field_of_order(q), n, d));
        if (d < n - d) corpus.push_back(near_spread(make_field_of_order(q), n, d));
      }
  for (auto q : std::vector<std::uint64_t>{2, 3, 4, 5})
    for (unsigned k = 1; k <= 3; ++k)
      for (unsigned d = 2; ipow(q, k * d) <= (1u << 14); ++d) corpus.push_back(hyperplane_section(make_field_of_order(q), k, d));
  corpus.push_back(lift(spread(gf2(), 4, 2), 4).full);
  corpus.push_back(lift(near_spread(gf2(), 5, 2), 5).full);
  for (const auto& [t, n] : std::vector<std::pair<std::vector<unsigned>, unsigned>>{
           {{1, 2}, 4}, {{2, 3}, 6}, {{2, 3}, 8}, {{1, 2, 3}, 5}, {{1, 3}, 6}, {{1, 2}, 5}, {{2, 4}, 8}, {{1, 2, 3}, 6}})
    corpus.push_back(build_T_partition(gf2(), TSpec::of(t), n));
  for (const auto& p : search_corpus()) corpus.push_back(p);
  // One searched witness per realizable type on V_5(2), in place of its enumeration.
  std::uint64_t searched = 0;
  for (unsigned mask = 1; mask < (1u << 5); ++mask) {
    std::vector<unsigned> dims;
    for (unsigned d = 1; d <= 5; ++d)
      if (mask >> (d - 1) & 1) dims.push_back(d);
    for (const auto& sol : solve_eq1(2, 5, dims)) {
      const auto type = sol.as_type();
      if (type.without_zeros().entries.size() != dims.size()) continue;
      SearchOptions opt;
      opt.node_budget = 1'000'000;
      const auto r = find_partition(gf2(), 5, type, opt);
      if (r.partition) {
        corpus.push_back(*r.partition);
        ++searched;
      }
    }
  }

  std::uint64_t flagged = 0, bounded = 0, violations = 0;
  for (const auto& p : corpus) {
    const auto q = p.ambient().q();
    const auto n = p.ambient().n;
    const auto sol = annotate(solution_from_type(type_of(p)), q, n);
    ++flagged;
    if (!sol.passes_all()) {
      if (violations++ < 3) o.fail(to_string(type_of(p)) + " on " + space_name(q, n) + " fails a flag");
    }
    if (p.size() < 2) continue;
    const auto rep = bound_report(p);
    ++bounded;
    for (const auto& c : rep.checks)
      if (!c.pass && violations++ < 3) o.fail(to_string(type_of(p)) + " on " + space_name(q, n) + ": " + c.name);
  }
  if (violations > 0) o.fail(str(violations) + " violations");

  std::string missing_list;
  for (std::size_t i = 0; i < missing.size(); ++i) {
    if (i == 4) {
      missing_list += ", ... (" + str(missing.size()) + " spaces)";
      break;
    }
    missing_list += (i ? ", " : "") + missing[i];
  }
  const std::string summary = str(corpus.size()) + " partitions (" + str(from_enumeration) + " from " +
                              str(enumerated.size()) + " enumerated spaces, " + str(searched) +
                              " searched V_5(2) types), " + str(bounded) +
                              " bound reports, " + str(violations) + " violations";
  if (!missing.empty()) {
    o.fail("corpus incomplete: enumerate_all did not finish for " + missing_list);
    o.detail += "; checked " + summary;
  } else {
    o.note(summary);
  }
  return o;
}

// 7
Outcome conjecture_scans() {
  Outcome o;
  auto scan = [&](std::uint64_t q, unsigned n) {
    const auto rep = conjecture_scan(make_field_of_order(q), n);
    if (!rep.holds()) o.fail(space_name(q, n) + ": " + str(rep.counterexamples.size()) + " counterexamples");
    return rep;
  };
  const auto r22 = scan(2, 2), r23 = scan(2, 3), r24 = scan(2, 4), r32 = scan(3, 2);
  auto least = [](const ConjectureReport& r, unsigned t) {
    return r.min_s.count(t) ? r.min_s.at(t) : std::uint64_t{0};
  };
  if (least(r22, 1) != 3) o.fail("V_2(2): least s at t=1 is " + str(least(r22, 1)));
  if (least(r24, 1) != 3) o.fail("V_4(2): least s at t=1 is " + str(least(r24, 1)));
  if (least(r24, 2) != 5) o.fail("V_4(2): least s at t=2 is " + str(least(r24, 2)));
  if (least(r32, 1) != 4) o.fail("V_2(3): least s at t=1 is " + str(least(r32, 1)));
  // No partition of V_3(2) has exactly three points, so t=1 is not tight there.
  if (least(r23, 1) < 3) o.fail("V_3(2): least s at t=1 is " + str(least(r23, 1)));
  o.note("examined " + str(r22.examined + r23.examined + r24.examined + r32.examined) +
         " partitions; s=3 at V_2(2),V_4(2) (t=1), s=5 at V_4(2) (t=2), s=4 at V_2(3); V_3(2) least s=" +
         str(least(r23, 1)));
  return o;
}

// 8
Outcome builders() {
  Outcome o;
  for (const auto& [t, n] :
       std::vector<std::pair<std::vector<unsigned>, unsigned>>{{{1, 2}, 4}, {{2, 3}, 6}, {{2, 3}, 8}, {{1, 2, 3}, 5}}) {
    const TSpec ts = TSpec::of(t);
    const auto t0 = Clock::now();
    try {
      const auto p = build_T_partition(gf2(), ts, n);
      const double dt = seconds_since(t0);
      const std::string name = to_string(ts) + " n=" + str(n);
      if (!verify(p).valid) o.fail(name + " does not verify");
      if (!is_T_partition(p, ts)) o.fail(name + " has type " + to_string(type_of(p)));
      if (dt >= 120) o.fail(name + " took " + std::to_string(dt) + " s");
      o.note(name + " " + p.provenance().rule);
    } catch (const Error& e) {
      o.fail(to_string(ts) + " n=" + str(n) + ": " + e.what());
    }
  }
  try {
    build_T_partition(gf2(), TSpec::of({3}), 7);
    o.fail("{3} n=7 did not report UncoveredCase");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UncoveredCase) o.fail("{3} n=7: " + std::string(e.what()));
  }
  o.note("{3} n=7 UncoveredCase");
  return o;
}

// 9
Outcome code_and_design() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto s = spread(gf2(), 4, 2);
  const auto code = code_from_partition(s);
  const auto perfect = verify_perfect(code);
  if (code.size() != 64) o.fail("|W| = " + str(code.size()));
  if (!perfect.sphere_packing) o.fail("sphere packing: " + perfect.sphere_detail);
  if (!perfect.min_distance || *perfect.min_distance != 3) o.fail("minimum distance is not 3");
  const auto design = verify_design(design_from_partition(s));
  if (design.classes.size() != 5) o.fail(str(design.classes.size()) + " resolution classes");
  if (!design.lambda_one || design.pairs != 120) o.fail("lambda check over " + str(design.pairs) + " pairs");
  if (!design.valid) o.fail("design: " + design.message);
  const double dt = seconds_since(t0);
  if (dt >= 5) o.fail("took " + std::to_string(dt) + " s");
  o.note("|W|=64, 64*16=1024, d=3, 5 classes, lambda=1 over 120 pairs");
  return o;
}

// 10
Outcome oracle_equivalence() {
  Outcome o;
  int goals = 0;
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {2, 3}, {3, 2}}) {
    const auto field = make_field_of_order(q);
    std::set<std::string> types;
    std::set<std::vector<unsigned>> tsets;
    for (const auto& p : enumerate_all(field, n)) {
      types.insert(to_string(type_of(p)));
      std::vector<unsigned> dims;
      for (const auto& e : type_of(p).entries) dims.push_back(e.dim);
      tsets.insert(dims);
    }
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<unsigned> dims;
      for (unsigned d = 1; d <= n; ++d)
        if (mask >> (d - 1) & 1) dims.push_back(d);
      const auto rt = find_partition(field, n, TSpec::of(dims));
      ++goals;
      if ((rt.status == SearchStatus::Found) != (tsets.count(dims) > 0) || rt.status == SearchStatus::BudgetExceeded)
        o.fail(space_name(q, n) + " T=" + to_string(TSpec::of(dims)) + ": " + std::string(to_string(rt.status)));
      for (const auto& sol : solve_eq1(q, n, dims)) {
        const auto type = sol.as_type();
        if (type.without_zeros().entries.size() != dims.size()) continue;
        const auto r = find_partition(field, n, type);
        ++goals;
        if ((r.status == SearchStatus::Found) != (types.count(to_string(type)) > 0) ||
            r.status == SearchStatus::BudgetExceeded)
          o.fail(space_name(q, n) + " " + to_string(type) + ": " + std::string(to_string(r.status)));
      }
    }
  }
  o.note(str(goals) + " goals agree");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "spread counts", spread_counts},
      {2, "near-spread types", near_spread_types},
      {3, "lift count law", lift_count_law},
      {4, "hyperplane sections", hyperplane_sections},
      {5, "{2,3} classification at q=2, n=3..5", two_three_classification},
      {6, "necessary-condition soundness", necessary_conditions},
      {7, "minimum-count conjecture scan", conjecture_scans},
      {8, "T-partition builders", builders},
      {9, "code and design of the 2-spread of V_4(2)", code_and_design},
      {10, "search agrees with enumeration", oracle_equivalence},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failed = 0;
  for (const auto& c : all) {
    // Criterion 6 reuses partitions found by criterion 5.
    if (only != 0 && c.id != only && !(only == 6 && c.id == 5)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    if (only != 0 && c.id != only) continue;
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", dt);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << " (" << time << ")";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
