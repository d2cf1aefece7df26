#include <gtest/gtest.h>

#include <cstdlib>

#include "batchcolor/oracles.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"

using namespace batchcolor;
using namespace testsupport;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int k = 0; k < 5; ++k) {
    g.add_edge(k, (k + 1) % 5);
    g.add_edge(k, k + 5);
    g.add_edge(k + 5, (k + 2) % 5 + 5);
  }
  return g;
}

Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

}  // namespace

TEST(ChromaticOracle, Examples) {
  EXPECT_EQ(chromatic_number_exact(complete(3)).value, 3);
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  EXPECT_EQ(chromatic_number_exact(p3).value, 2);
  const OracleResult pet = chromatic_number_exact(petersen());
  EXPECT_EQ(pet.value, 3);
  EXPECT_TRUE(validate_coloring(petersen(), pet.witness).ok);
  EXPECT_EQ(chromatic_number_exact(Graph(0)).value, 0);
}

TEST(SumOracle, Examples) {
  EXPECT_EQ(min_sum_coloring_exact(complete(2)).value, 3);
  EXPECT_EQ(min_sum_coloring_exact(complete(3)).value, 6);
  const OracleResult s = min_sum_coloring_exact(star(3));
  EXPECT_EQ(s.value, 5);
  EXPECT_EQ(s.witness[0], 2);
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  EXPECT_EQ(min_sum_coloring_exact(p3).value, 4);
}

TEST(SumOracle, TreeWithTwoHubs) {
  Graph g(1);
  auto add = [&](Vertex parent) {
    const Vertex v = g.add_vertex();
    g.add_edge(parent, v);
    return v;
  };
  const Vertex a = 0;
  const Vertex b = add(a);
  for (int t = 0; t < 3; ++t) add(a);
  for (int t = 0; t < 3; ++t) add(b);
  const OracleResult r = min_sum_coloring_exact(g);
  EXPECT_EQ(r.value, brute_min_sum(g));
  EXPECT_TRUE(validate_coloring(g, r.witness).ok);
}

TEST(OracleProperty, ChromaticMatchesBruteForce) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Graph g = random_graph(rng, uniform(rng, 0, 7), 0.5);
    const OracleResult r = chromatic_number_exact(g);
    EXPECT_EQ(r.value, brute_chromatic(g));
    EXPECT_TRUE(validate_coloring(g, r.witness).ok);
    EXPECT_EQ(max_color(r.witness), r.value);
  }
}

TEST(OracleProperty, MinSumMatchesBruteForce) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const Graph g = random_graph(rng, uniform(rng, 0, 7), std::uniform_real_distribution<double>(0.1, 0.8)(rng));
    const OracleResult r = min_sum_coloring_exact(g);
    EXPECT_EQ(r.value, brute_min_sum(g));
    EXPECT_TRUE(validate_coloring(g, r.witness).ok);
    EXPECT_EQ(color_sum(r.witness), r.value);
  }
}

TEST(OracleProperty, ChromaticAtMostFirstFitOverRandomOrders) {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const int n = uniform(rng, 1, 10);
    const Graph g = random_graph(rng, n, 0.45);
    const Cost chi = chromatic_number_exact(g).value;
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Color best = n + 1;
    for (int k = 0; k < 100; ++k) {
      std::shuffle(order.begin(), order.end(), rng);
      best = std::min(best, max_color(first_fit(g, order)));
    }
    EXPECT_LE(chi, best);
    if (n <= 6) {
      std::sort(order.begin(), order.end());
      Color exhaustive = n + 1;
      do exhaustive = std::min(exhaustive, max_color(first_fit(g, order)));
      while (std::next_permutation(order.begin(), order.end()));
      EXPECT_EQ(exhaustive, chi);
    }
  }
}

TEST(OracleLimits, SizeLimitApplies) {
  OracleLimits tight{5, 5};
  Graph c7(7);  // odd cycle: not bipartite, not complete
  for (int k = 0; k < 7; ++k) c7.add_edge(k, (k + 1) % 7);
  EXPECT_THROW(chromatic_number_exact(c7, tight), SizeLimitExceeded);
  EXPECT_THROW(min_sum_coloring_exact(c7, tight), SizeLimitExceeded);
  EXPECT_EQ(chromatic_number_exact(c7).value, 3);
  EXPECT_EQ(chromatic_number_exact(complete(9), tight).value, 9);
  EXPECT_EQ(min_sum_coloring_exact(complete(9), tight).value, 45);
}

TEST(OracleLimits, EnvironmentOverride) {
  ::setenv("BATCHCOLOR_ORACLE_LIMIT", "4", 1);
  const OracleLimits l = OracleLimits::from_env();
  EXPECT_EQ(l.chromatic, 4);
  EXPECT_EQ(l.sum, 4);
  ::setenv("BATCHCOLOR_ORACLE_LIMIT", "junk", 1);
  EXPECT_EQ(OracleLimits::from_env().chromatic, OracleLimits{}.chromatic);
  ::unsetenv("BATCHCOLOR_ORACLE_LIMIT");
  EXPECT_EQ(OracleLimits::from_env().sum, OracleLimits{}.sum);
}
