#include <gtest/gtest.h>

#include <random>

#include "batchcolor/graph.hpp"
#include "support/generators.hpp"

using namespace batchcolor;

namespace {

Graph path3() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

Graph triangle() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  return g;
}

}  // namespace

TEST(Graph, AdjacencyIsSymmetricAndDeduplicated) {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_THROW(g.add_edge(2, 2), InconsistentInstance);
  EXPECT_THROW(g.add_edge(0, 5), InconsistentInstance);
}

TEST(ValidateColoring, Examples) {
  Graph edge(2);
  edge.add_edge(0, 1);
  EXPECT_TRUE(validate_coloring(edge, {1, 2}).ok);
  const ValidationResult bad = validate_coloring(edge, {1, 1});
  EXPECT_FALSE(bad.ok);
  ASSERT_EQ(bad.monochromatic_edges.size(), 1u);
  EXPECT_EQ(bad.monochromatic_edges[0], Edge(0, 1));
  EXPECT_TRUE(validate_coloring(triangle(), {1, 2, 3}).ok);
}

TEST(ValidateColoring, ReportsUncoloredVertices) {
  Graph g(2);
  const ValidationResult r = validate_coloring(g, {1, 0});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.uncolored_vertices, std::vector<Vertex>{1});
  EXPECT_FALSE(validate_coloring(g, {1}).ok);
}

TEST(FirstFit, Examples) {
  EXPECT_EQ(first_fit(path3(), {0, 2, 1}), (Coloring{1, 2, 1}));
  EXPECT_EQ(first_fit(triangle(), {2, 0, 1}), (Coloring{2, 3, 1}));
  Graph c4(4);  // a-b-c-d-a
  c4.add_edge(0, 1);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(3, 0);
  const Coloring c = first_fit(c4, {0, 2, 1, 3});
  EXPECT_EQ(c, (Coloring{1, 2, 1, 2}));
  EXPECT_TRUE(validate_coloring(c4, c).ok);
}

TEST(Graph, ForestAndComponents) {
  EXPECT_TRUE(is_forest(path3()));
  EXPECT_FALSE(is_forest(triangle()));
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(3, 4);
  EXPECT_EQ(connected_components(g).size(), 3u);
  EXPECT_TRUE(two_coloring(triangle()).empty());
  const Coloring two = two_coloring(path3());
  EXPECT_TRUE(validate_coloring(path3(), two).ok);
  EXPECT_EQ(max_color(two), 2);
}

TEST(Graph, CostAccessors) {
  const Coloring c{1, 3, 3, 2};
  EXPECT_EQ(max_color(c), 3);
  EXPECT_EQ(color_sum(c), 9);
  EXPECT_EQ(distinct_colors(c), 3);
  EXPECT_EQ(max_color({}), 0);
}

TEST(Graph, InducedSubgraphKeepsOrder) {
  const Graph h = induced_subgraph(triangle(), {2, 0});
  EXPECT_EQ(h.size(), 2);
  EXPECT_TRUE(h.has_edge(0, 1));
}

TEST(FirstFitProperty, AlwaysProperOnRandomGraphs) {
  testsupport::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = testsupport::uniform(rng, 0, 15);
    const Graph g = testsupport::random_graph(rng, n, 0.4);
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_TRUE(validate_coloring(g, first_fit(g, order)).ok);
  }
}
