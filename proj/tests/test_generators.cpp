#include "usflab/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

namespace usflab {
namespace {

std::multiset<Rational> conductance_multiset(const Network& net) {
  std::multiset<Rational> out;
  for (const Edge& e : net.edges()) out.insert(e.conductance);
  return out;
}

std::size_t edges_touching(const Network& net, VertexId v) {
  std::size_t count = 0;
  for (const Edge& e : net.edges()) count += (e.u == v) + (e.v == v);
  return count;
}

TEST(GridBox, SmallCases) {
  Network path3 = grid_box(1, 3);
  EXPECT_EQ(path3.vertex_count(), 3u);
  EXPECT_EQ(path3.edge_count(), 2u);

  Network cycle = grid_box(2, 2);
  EXPECT_EQ(cycle.vertex_count(), 4u);
  EXPECT_EQ(cycle.edge_count(), 4u);
  for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(cycle.incident(v).size(), 2u);

  Network box3 = grid_box(2, 3);
  EXPECT_EQ(box3.vertex_count(), 9u);
  EXPECT_EQ(box3.edge_count(), 12u);
  EXPECT_EQ(box3.incident(4).size(), 4u);  // middle cell

  EXPECT_THROW(grid_box(0, 3), Error);
}

TEST(GridBoxWired, OutwardMultiplicities) {
  WiredNetwork w2 = grid_box_wired(2, 2);
  EXPECT_EQ(w2.network.vertex_count(), 5u);
  EXPECT_EQ(w2.wired_vertex, 4u);
  EXPECT_EQ(w2.network.edge_count(), 12u);  // 4 interior + 8 boundary
  EXPECT_EQ(edges_touching(w2.network, w2.wired_vertex), 8u);

  WiredNetwork w3 = grid_box_wired(2, 3);
  EXPECT_EQ(w3.network.vertex_count(), 10u);
  EXPECT_EQ(w3.network.edge_count(), 24u);  // 12 interior + 12 boundary
  // Corner cell 0 has two outward neighbors, edge-center cell 1 has one.
  std::size_t corner = 0, side_cell = 0;
  for (const Edge& e : w3.network.edges()) {
    if (e.v == w3.wired_vertex && e.u == 0) ++corner;
    if (e.v == w3.wired_vertex && e.u == 1) ++side_cell;
  }
  EXPECT_EQ(corner, 2u);
  EXPECT_EQ(side_cell, 1u);
  // Center cell has none.
  EXPECT_EQ(w3.network.incident(4).size(), 4u);
}

TEST(TorusGrid, WrapsAndDoubles) {
  Network ring = torus_grid(1, 4);
  EXPECT_EQ(ring.vertex_count(), 4u);
  EXPECT_EQ(ring.edge_count(), 4u);

  // Side 2 produces doubled edges: the +1 and -1 neighbors coincide.
  Network t22 = torus_grid(2, 2);
  EXPECT_EQ(t22.vertex_count(), 4u);
  EXPECT_EQ(t22.edge_count(), 8u);
  for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(t22.incident(v).size(), 4u);

  EXPECT_THROW(torus_grid(2, 1), Error);
}

TEST(Canopy, LevelConductances) {
  Network c23 = canopy_network(2, 3);
  EXPECT_EQ(c23.vertex_count(), 7u);
  EXPECT_EQ(c23.edge_count(), 6u);
  EXPECT_EQ(conductance_multiset(c23),
            (std::multiset<Rational>{1, 1, 1, 1, 3, 3}));
  EXPECT_EQ(c23.vertex_conductance(0), Rational(6));  // root: two level-1 edges

  Network c32 = canopy_network(3, 2);
  EXPECT_EQ(c32.vertex_count(), 15u);
  EXPECT_EQ(c32.edge_count(), 14u);
  EXPECT_EQ(conductance_multiset(c32),
            (std::multiset<Rational>{4, 4, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1}));

  // Rational ratios are allowed.
  Network ch = canopy_network(2, Rational(5, 2));
  EXPECT_EQ(ch.edge(0).conductance, Rational(5, 2));

  EXPECT_THROW(canopy_network(0, 3), Error);
  EXPECT_THROW(canopy_network(2, 0), Error);
}

TEST(GluedCanopy, SharedLeavesInPlanarOrder) {
  Network g1 = glued_canopy(1, 3, 4);
  EXPECT_EQ(g1.vertex_count(), 4u);
  EXPECT_EQ(g1.edge_count(), 4u);
  EXPECT_EQ(conductance_multiset(g1), (std::multiset<Rational>{1, 1, 1, 1}));
  // Both roots join the same two merged leaves.
  EXPECT_EQ(g1.incident(1).size(), 2u);
  EXPECT_EQ(g1.incident(2).size(), 2u);

  Network g2 = glued_canopy(2, 3, 4);
  EXPECT_EQ(g2.vertex_count(), 10u);
  EXPECT_EQ(g2.edge_count(), 12u);
  EXPECT_EQ(conductance_multiset(g2),
            (std::multiset<Rational>{1, 1, 1, 1, 3, 3, 1, 1, 1, 1, 4, 4}));
  // Leaf 3 (leftmost) is shared: one edge from each side's parent.
  EXPECT_EQ(g2.incident(3).size(), 2u);
  // Second root sits at id 7 and carries the two conductance-4 edges.
  EXPECT_EQ(g2.vertex_conductance(7), Rational(8));
}

TEST(TreeBall, ThreeRegularCounts) {
  Network b1 = tree_ball(1);
  EXPECT_EQ(b1.vertex_count(), 4u);
  EXPECT_EQ(b1.edge_count(), 3u);

  Network b2 = tree_ball(2);
  EXPECT_EQ(b2.vertex_count(), 10u);
  EXPECT_EQ(b2.edge_count(), 9u);
  EXPECT_EQ(b2.incident(0).size(), 3u);
  EXPECT_EQ(b2.incident(1).size(), 3u);  // internal vertex: parent + 2 children
  EXPECT_EQ(b2.incident(9).size(), 1u);  // leaf

  WiredNetwork wb1 = tree_ball_wired(1);
  EXPECT_EQ(wb1.network.vertex_count(), 5u);
  EXPECT_EQ(wb1.network.edge_count(), 9u);  // 3 star + 3 leaves * 2
  EXPECT_EQ(edges_touching(wb1.network, wb1.wired_vertex), 6u);
  // Every vertex of the wired ball now has degree 3, like the infinite tree.
  for (VertexId v : wb1.interior) EXPECT_EQ(wb1.network.incident(v).size(), 3u);
}

}  // namespace
}  // namespace usflab
