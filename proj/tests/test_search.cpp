#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vspart/dioph.hpp"
#include "vspart/search.hpp"

using namespace vspart;
using testing::oracle_type;
using testing::thrown;

namespace {

const FieldPtr& gf2() {
  static const FieldPtr f = make_field(2, 1);
  return f;
}

/// Every type solving the counting equation at (q, n), over all dimension sets.
std::vector<PartitionType> all_equation_types(std::uint64_t q, unsigned n) {
  std::vector<PartitionType> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<unsigned> dims;
    for (unsigned d = 1; d <= n; ++d)
      if (mask >> (d - 1) & 1) dims.push_back(d);
    for (const auto& s : solve_eq1(q, n, dims)) {
      const auto t = s.as_type();
      if (t.entries.size() == dims.size() &&
          std::all_of(t.entries.begin(), t.entries.end(), [](const TypeEntry& e) { return e.count > 0; }))
        out.push_back(t);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("search examples") {
  SUBCASE("[(1,2),(4,3)] on V_5(2) is refuted") {
    const auto r = find_partition(gf2(), 5, parse_type("1x2,4x3"));
    CHECK(r.status == SearchStatus::Exhausted);
    SearchOptions raw;
    raw.prefilter = false;
    const auto full = find_partition(gf2(), 5, parse_type("1x2,4x3"), raw);
    CHECK(full.status == SearchStatus::Exhausted);
    CHECK(full.nodes > 0);
  }
  SUBCASE("[(8,2),(1,3)] on V_5(2)") {
    const auto r = find_partition(gf2(), 5, parse_type("8x2,1x3"));
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(to_string(type_of(*r.partition)) == "[(8,2),(1,3)]");
    CHECK(verify(*r.partition).valid);
  }
  SUBCASE("T={1,2} on V_3(2)") {
    const auto r = find_partition(gf2(), 3, TSpec::of({1, 2}));
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(to_string(type_of(*r.partition)) == "[(4,1),(1,2)]");
  }
  SUBCASE("T={2,3} on V_6(2)") {
    const auto r = find_partition(gf2(), 6, TSpec::of({2, 3}));
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(is_T_partition(*r.partition, TSpec::of({2, 3})));
  }
  SUBCASE("budget") {
    SearchOptions tiny;
    tiny.node_budget = 3;
    tiny.prefilter = false;
    CHECK(find_partition(gf2(), 5, parse_type("1x2,4x3"), tiny).status == SearchStatus::BudgetExceeded);
  }
  SUBCASE("too large") {
    CHECK(find_partition(gf2(), 21, TSpec::of({1})).status == SearchStatus::BudgetExceeded);
  }
}

TEST_CASE("enumeration agrees with the exact-cover oracle") {
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {4, 2}, {2, 4}, {3, 3}}) {
    CAPTURE(q);
    CAPTURE(n);
    const Space sp{make_field_of_order(q), n};
    const auto ours = enumerate_all(sp.field, n);
    std::map<std::string, std::uint64_t> hist;
    for (const auto& p : ours) {
      REQUIRE(verify(p).valid);
      ++hist[oracle_type(p)];
    }
    CHECK(hist == oracle::partition_types(testing::oracle_of(sp)));
    CHECK(std::is_sorted(ours.begin(), ours.end()));
    CHECK(std::adjacent_find(ours.begin(), ours.end()) == ours.end());
  }
}

TEST_CASE("enumeration examples") {
  CHECK(enumerate_all(gf2(), 2).size() == 2);
  const auto three = enumerate_all(gf2(), 3);
  CHECK(three.size() == 9);
  std::set<std::string> types;
  for (const auto& p : three) types.insert(to_string(type_of(p)));
  CHECK(types == std::set<std::string>{"[(1,3)]", "[(7,1)]", "[(4,1),(1,2)]"});
  const auto g3 = enumerate_all(make_field(3, 1), 2);
  REQUIRE(g3.size() == 2);
  // Canonical order: the spread's first line [[0,1]] sorts before [[1,0],[0,1]].
  CHECK(to_string(type_of(g3[0])) == "[(4,1)]");
  CHECK(to_string(type_of(g3[1])) == "[(1,2)]");
  CHECK(thrown([] { enumerate_all(gf2(), 13); }) == ErrorCode::TooLarge);
}

TEST_CASE("type verdicts match the oracle histogram") {
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    const Space sp{make_field_of_order(q), n};
    const auto hist = oracle::partition_types(testing::oracle_of(sp));
    for (const auto& t : all_equation_types(q, n)) {
      CAPTURE(to_string(t));
      const bool exists = hist.count(to_string(t)) > 0;
      for (bool prefilter : {true, false}) {
        SearchOptions opt;
        opt.prefilter = prefilter;
        const auto r = find_partition(sp.field, n, t, opt);
        CHECK(r.status == (exists ? SearchStatus::Found : SearchStatus::Exhausted));
        if (r.partition) CHECK(oracle_type(*r.partition) == to_string(t));
      }
    }
  }
}

TEST_CASE("T-set verdicts match the oracle histogram") {
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 4}, {3, 3}}) {
    const Space sp{make_field_of_order(q), n};
    std::set<std::vector<unsigned>> realized;
    for (const auto& p : enumerate_all(sp.field, n)) {
      std::vector<unsigned> dims;
      for (const auto& e : type_of(p).entries) dims.push_back(e.dim);
      realized.insert(dims);
    }
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<unsigned> dims;
      for (unsigned d = 1; d <= n; ++d)
        if (mask >> (d - 1) & 1) dims.push_back(d);
      const auto r = find_partition(sp.field, n, TSpec::of(dims));
      CHECK(r.status == (realized.count(dims) ? SearchStatus::Found : SearchStatus::Exhausted));
    }
  }
}

TEST_CASE("shuffled candidate order keeps verdicts") {
  const std::vector<std::string> goals{"8x2,1x3", "1x2,4x3", "3x1,7x2,1x3", "16x1,1x4", "4x1,9x2"};
  for (const auto& g : goals) {
    const auto base = find_partition(gf2(), 5, parse_type(g)).status;
    for (std::uint64_t seed : {1, 7, 99}) {
      SearchOptions opt;
      opt.shuffle_seed = seed;
      opt.prefilter = false;
      const auto r = find_partition(gf2(), 5, parse_type(g), opt);
      CHECK(r.status == base);
      if (r.partition) CHECK(verify(*r.partition).valid);
    }
  }
}

TEST_CASE("thread count does not change the result") {
  for (const auto& g : std::vector<SearchGoal>{parse_type("8x2,1x3"), parse_type("3x1,7x2,1x3"), TSpec::of({2, 3}),
                                               TSpec::of({1, 2}), parse_type("1x2,4x3")}) {
    const unsigned n = std::holds_alternative<TSpec>(g) && std::get<TSpec>(g).dims == std::vector<unsigned>{2, 3} ? 6 : 5;
    const auto one = find_partition(gf2(), n, g);
    for (unsigned threads : {2u, 4u}) {
      SearchOptions opt;
      opt.threads = threads;
      const auto r = find_partition(gf2(), n, g, opt);
      CHECK(r.status == one.status);
      CHECK(r.partition == one.partition);
    }
  }
}

TEST_CASE("conjecture scan") {
  SUBCASE("V_4(2)") {
    const auto rep = conjecture_scan(gf2(), 4);
    CHECK(rep.holds());
    CHECK(rep.examined == 1228);
    CHECK(rep.min_s.at(1) == 3);
    CHECK(rep.min_s.at(2) == 5);
    CHECK(rep.equality_witnesses.at(2) > 0);
  }
  SUBCASE("V_2(3)") {
    const auto rep = conjecture_scan(make_field(3, 1), 2);
    CHECK(rep.holds());
    CHECK(rep.nontrivial == 1);
    CHECK(rep.min_s.at(1) == 4);
  }
}
