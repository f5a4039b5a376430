#include <gtest/gtest.h>

#include "polyjoin/moment_angle.hpp"
#include "polyjoin/polyhedral_join.hpp"
#include "polyjoin/random.hpp"
#include "support/brute.hpp"

using namespace polyjoin;

namespace {

using Sizes = std::vector<std::size_t>;
using Entries = std::map<std::pair<int, int>, std::size_t>;

SimplicialComplex rp2() {
  return SimplicialComplex::from_facets({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                         {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
}

std::size_t non_edges(const SimplicialComplex& k) {
  const std::size_t n = k.vertex_count();
  return n * (n - 1) / 2 - faces(k, 1).size();
}

}  // namespace

// Golden values below are frozen from tests/oracles/oracle.py.

TEST(MomentAngle, Square) {
  const auto t = hochster_bigraded(polygon(4));
  EXPECT_EQ(t.totals, (Sizes{1, 0, 0, 2, 0, 0, 1}));
  EXPECT_EQ(t.entries, (Entries{{{1, 2}, 2}, {{2, 4}, 1}}));
  EXPECT_EQ(t.m, 4u);
}

TEST(MomentAngle, Pentagon) {
  const auto t = hochster_bigraded(polygon(5));
  EXPECT_EQ(t.totals, (Sizes{1, 0, 0, 5, 5, 0, 0, 1}));
  EXPECT_EQ(t.entries, (Entries{{{1, 2}, 5}, {{2, 3}, 5}, {{3, 5}, 1}}));
}

TEST(MomentAngle, Hexagon) {
  const auto t = hochster_bigraded(polygon(6));
  EXPECT_EQ(t.totals, (Sizes{1, 0, 0, 9, 16, 9, 0, 0, 1}));
  EXPECT_EQ(t.entries, (Entries{{{1, 2}, 9}, {{2, 3}, 16}, {{3, 4}, 9}, {{4, 6}, 1}}));
}

TEST(MomentAngle, SmallExamples) {
  EXPECT_EQ(total_betti_ZK(SimplicialComplex::from_facets({{1}, {2}})), (Sizes{1, 0, 0, 1}));
  const auto simplex = hochster_bigraded(simplex_complex(4));
  EXPECT_TRUE(simplex.entries.empty());
  EXPECT_EQ(simplex.totals, (Sizes{1}));
  const auto report = summand_report(polygon(4));
  ASSERT_EQ(report.size(), 4u);
  EXPECT_EQ(report[0].subset, Simplex{});
  EXPECT_EQ(report[1].subset, (Simplex{1, 3}));
  EXPECT_EQ(report[1].degrees, std::vector<int>{3});
  EXPECT_EQ(report[3].subset, (Simplex{1, 2, 3, 4}));
  EXPECT_EQ(report[3].degrees, std::vector<int>{6});
}

TEST(MomentAngle, InputChecks) {
  EXPECT_THROW(hochster_bigraded(join(polygon(4), empty_complex({9}))), Error);
  Guardrails g;
  g.hochster_vertices = 5;
  try {
    hochster_bigraded(polygon(6), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::guardrail);
  }
  EXPECT_THROW(polygon_connected_sum_check(4), Error);
  EXPECT_THROW(polygon_connected_sum_check(13), Error);
}

TEST(MomentAngle, TorsionFlag) {
  for (std::size_t n = 3; n <= 8; ++n) EXPECT_FALSE(torsion_flag(polygon(n)));
  EXPECT_FALSE(torsion_flag(simplex_complex(5)));
  EXPECT_TRUE(torsion_flag(rp2()));
}

TEST(MomentAngle, Kunneth) {
  const auto points = SimplicialComplex::from_facets({{1}, {2}});
  const auto other = SimplicialComplex::from_facets({{3}, {4}});
  EXPECT_TRUE(kunneth_check(points, other));
  EXPECT_EQ(total_betti_ZK(join(points, other)), (Sizes{1, 0, 0, 2, 0, 0, 1}));
  EXPECT_TRUE(is_isomorphic(join(points, other), polygon(4)).has_value());
  EXPECT_EQ(convolve({1, 0, 0, 1}, {1, 0, 0, 1}), (Sizes{1, 0, 0, 2, 0, 0, 1}));
}

TEST(MomentAngle, PolygonSweep) {
  // Frozen from tests/oracles/oracle.py --slow.
  const std::map<std::size_t, Sizes> golden = {
      {5, {1, 0, 0, 5, 5, 0, 0, 1}},
      {6, {1, 0, 0, 9, 16, 9, 0, 0, 1}},
      {7, {1, 0, 0, 14, 35, 35, 14, 0, 0, 1}},
      {8, {1, 0, 0, 20, 64, 90, 64, 20, 0, 0, 1}},
      {9, {1, 0, 0, 27, 105, 189, 189, 105, 27, 0, 0, 1}},
      {10, {1, 0, 0, 35, 160, 350, 448, 350, 160, 35, 0, 0, 1}},
  };
  for (const auto& [n, want] : golden) {
    const auto rep = polygon_connected_sum_check(n);
    EXPECT_EQ(rep.totals, want) << "n=" << n;
    EXPECT_TRUE(rep.duality);
    EXPECT_TRUE(rep.ends);
    EXPECT_EQ(rep.middle.size(), n - 3);
  }
  const auto five = polygon_connected_sum_check(5);
  ASSERT_EQ(five.middle.size(), 2u);
  EXPECT_EQ(five.middle[0].computed, 5u);
  EXPECT_EQ(five.middle[0].formula, 14u);
  EXPECT_FALSE(five.formula_matches());
  const auto seven = polygon_connected_sum_check(7);
  std::vector<std::size_t> formula;
  for (const auto& c : seven.middle) formula.push_back(c.formula);
  EXPECT_EQ(formula, (Sizes{39, 85, 85, 39}));
}

TEST(MomentAngle, RandomStructure) {
  Rng rng(606);
  for (int t = 0; t < 100; ++t) {
    const auto k = random_complex(rng, {1, 7, false});
    const auto table = hochster_bigraded(k);
    EXPECT_TRUE(connectivity_check(k));
    const auto& tot = table.totals;
    EXPECT_EQ(tot.size() > 3 ? tot[3] : 0, non_edges(k));
    const auto one_two = table.entries.find({1, 2});
    EXPECT_EQ(one_two == table.entries.end() ? 0 : one_two->second, non_edges(k));
    // Totals are the bigraded entries collected along l = 2j - i.
    Sizes from_entries(tot.size(), 0);
    if (!from_entries.empty()) from_entries[0] = 1;
    for (const auto& [ij, rank] : table.entries) from_entries.at(static_cast<std::size_t>(2 * ij.second - ij.first)) += rank;
    EXPECT_EQ(from_entries, tot);
  }
}

TEST(MomentAngle, RandomKunneth) {
  Rng rng(707);
  for (int t = 0; t < 30; ++t) {
    const auto a = random_complex_on(rng, {1, 2, 3, 4});
    const auto b = random_complex_on(rng, {5, 6, 7, 8});
    EXPECT_TRUE(kunneth_check(a, b));
  }
}

TEST(MomentAngle, DenseMaskAgrees) {
  Rng rng(808);
  for (int t = 0; t < 20; ++t) {
    const auto k = random_complex(rng, {2, 7, false});
    const LargeComplex big(k.vertices(), k.facets());
    EXPECT_EQ(total_betti_ZK(big), total_betti_ZK(k));
  }
}
