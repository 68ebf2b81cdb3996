#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vspart/artifacts.hpp"
#include "vspart/construct.hpp"
#include "vspart/search.hpp"

using namespace vspart;
using testing::elements;
using testing::oracle_of;
using testing::thrown;

namespace {

const FieldPtr& gf2() {
  static const FieldPtr f = make_field(2, 1);
  return f;
}

struct BruteCode {
  std::uint64_t size = 0;
  unsigned min_distance = 0;  // 0 when only the zero word exists
};

/// All tuples (y_1..y_r) with y_i in V_i summing to zero, by direct product.
BruteCode brute_code(const Partition& p) {
  const auto sp = oracle_of(p.ambient());
  std::vector<oracle::Set> comps;
  for (const auto& c : p.components()) comps.push_back(elements(c));
  std::vector<std::vector<std::uint64_t>> words;
  std::vector<std::uint64_t> cur;
  auto rec = [&](auto&& self, std::size_t i, const oracle::Vec& sum) -> void {
    if (i == comps.size()) {
      if (sp.encode(sum) == 0) words.push_back(cur);
      return;
    }
    for (auto y : comps[i]) {
      cur.push_back(y);
      self(self, i + 1, sp.add(sum, sp.decode(y)));
      cur.pop_back();
    }
  };
  rec(rec, 0, oracle::Vec(sp.n, 0));
  BruteCode out{words.size(), 0};
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      unsigned d = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) d += words[a][i] != words[b][i];
      if (out.min_distance == 0 || d < out.min_distance) out.min_distance = d;
    }
  return out;
}

/// Blocks v + V_i as element sets, and lambda over every point pair.
std::pair<std::set<oracle::Set>, bool> brute_design(const Partition& p) {
  const auto sp = oracle_of(p.ambient());
  std::set<oracle::Set> blocks;
  for (const auto& c : p.components()) {
    const auto e = elements(c);
    for (std::uint64_t v = 0; v < sp.size(); ++v) {
      oracle::Set b;
      for (auto x : e) b.push_back(sp.encode(sp.add(sp.decode(v), sp.decode(x))));
      std::sort(b.begin(), b.end());
      blocks.insert(b);
    }
  }
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> lambda;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) ++lambda[{b[i], b[j]}];
  bool ok = lambda.size() == sp.size() * (sp.size() - 1) / 2;
  for (auto& [pair, count] : lambda) ok = ok && count == 1;
  return {blocks, ok};
}

}  // namespace

TEST_CASE("code of the 2-spread of V_4(2)") {
  const auto s = spread(gf2(), 4, 2);
  const auto code = code_from_partition(s);
  CHECK(code.length() == 5);
  CHECK(code.size() == 64);
  CHECK(code.materialized);
  CHECK(code.words.size() == 64 * 5);
  const auto rep = verify_perfect(code);
  CHECK(rep.sphere_packing);
  REQUIRE(rep.min_distance.has_value());
  CHECK(*rep.min_distance == 3);
  CHECK(rep.perfect);
  const auto brute = brute_code(s);
  CHECK(brute.size == 64);
  CHECK(brute.min_distance == 3);
  CHECK(64 * (1 + 5 * 3) == 1024);
}

TEST_CASE("codes of small partitions agree with brute force") {
  std::vector<Partition> pool;
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}})
    for (auto& p : enumerate_all(make_field_of_order(q), n)) pool.push_back(p);
  pool.push_back(near_spread(gf2(), 5, 2));
  pool.push_back(hyperplane_section(make_field(3, 1), 2, 2));
  for (const auto& p : pool) {
    CAPTURE(to_string(type_of(p)));
    const auto code = code_from_partition(p);
    const auto brute = brute_code(p);
    CHECK(code.size() == brute.size);
    const auto rep = verify_perfect(code);
    CHECK(rep.sphere_packing);
    if (brute.min_distance == 0) {
      CHECK_FALSE(rep.min_distance.has_value());
    } else {
      REQUIRE(rep.min_distance.has_value());
      CHECK(*rep.min_distance == brute.min_distance);
    }
  }
}

TEST_CASE("trivial partition gives the zero code") {
  const auto code = code_from_partition(Partition::trivial(Space{gf2(), 3}));
  CHECK(code.size() == 1);
  CHECK(code.words == std::vector<std::uint64_t>{0});
  const auto rep = verify_perfect(code);
  CHECK(rep.sphere_packing);
  CHECK_FALSE(rep.min_distance.has_value());
}

TEST_CASE("a non-partition cover is not perfect") {
  const Space sp{gf2(), 4};
  auto comps = spread(gf2(), 4, 2).components();
  comps.push_back(Subspace::span(sp, std::vector<Vector>{comps.front().basis().front()}));
  const auto rep = verify_perfect(code_from_components(sp, comps));
  CHECK_FALSE(rep.sphere_packing);
  CHECK_FALSE(rep.perfect);
  REQUIRE(rep.min_distance.has_value());
  CHECK(*rep.min_distance == 2);
}

TEST_CASE("large codes use the component rule") {
  const auto p = spread(gf2(), 6, 3);
  const auto code = code_from_partition(p);
  CHECK_FALSE(code.materialized);
  const auto rep = verify_perfect(code);
  CHECK(rep.distance_method == "component-meets");
  CHECK(rep.perfect);
}

TEST_CASE("design of the 2-spread of V_4(2)") {
  const auto s = spread(gf2(), 4, 2);
  const auto d = design_from_partition(s);
  CHECK(d.points() == 16);
  CHECK(d.blocks.size() == 20);
  const auto rep = verify_design(d);
  CHECK(rep.valid);
  CHECK(rep.classes.size() == 5);
  for (const auto& c : rep.classes) {
    CHECK(c.blocks == 4);
    CHECK(c.block_size == 4);
    CHECK(c.resolves);
  }
  CHECK(rep.lambda_one);
  CHECK(rep.lambda_method == "pair-count");
  CHECK(rep.pairs == 120);
  CHECK(rep.translation_ok);

  const auto [blocks, lambda_ok] = brute_design(s);
  std::set<oracle::Set> ours;
  for (const auto& b : d.blocks) ours.insert(oracle::Set(b.points.begin(), b.points.end()));
  CHECK(ours == blocks);
  CHECK(lambda_ok);
}

TEST_CASE("designs of small partitions agree with brute force") {
  std::vector<Partition> pool;
  for (auto& p : enumerate_all(gf2(), 3)) pool.push_back(p);
  pool.push_back(near_spread(gf2(), 5, 2));
  pool.push_back(hyperplane_section(make_field(3, 1), 2, 2));
  for (const auto& p : pool) {
    const auto rep = verify_design(design_from_partition(p));
    CHECK(rep.valid == brute_design(p).second);
    CHECK(rep.valid);
  }
}

TEST_CASE("overlapping components break lambda") {
  const Space sp{gf2(), 4};
  auto comps = spread(gf2(), 4, 2).components();
  comps.push_back(Subspace::span(sp, std::vector<Vector>{comps.front().basis().front()}));
  const auto rep = verify_design(design_from_components(sp, comps));
  CHECK_FALSE(rep.lambda_one);
  CHECK_FALSE(rep.valid);
}

TEST_CASE("difference counting on larger designs") {
  const auto p = spread(gf2(), 12, 6);
  const auto rep = verify_design(design_from_partition(p));
  CHECK(rep.lambda_method == "difference-count");
  CHECK(rep.valid);
  CHECK(thrown([] { design_from_partition(Partition::trivial(Space{gf2(), 17})); }) == ErrorCode::TooLarge);
}

TEST_CASE("trivial design") {
  const auto rep = verify_design(design_from_partition(Partition::trivial(Space{gf2(), 3})));
  CHECK(rep.classes.size() == 1);
  CHECK(rep.classes[0].blocks == 1);
  CHECK(rep.valid);
}
