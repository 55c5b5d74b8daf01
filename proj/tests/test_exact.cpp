#include <gtest/gtest.h>

#include <cmath>

#include "usflab/exact.hpp"
#include "usflab/generators.hpp"
#include "usflab/network.hpp"

namespace usflab {
namespace {

Network unit_triangle() {
  return build_network(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
}

// Edge 0 = {0,1} with c=1, edge 1 = {1,2} with c=2, edge 2 = {2,0} with c=3.
Network weighted_triangle() {
  return build_network(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}});
}

Network unit_k4() {
  return build_network(4, {{0, 1, 1},
                           {0, 2, 1},
                           {0, 3, 1},
                           {1, 2, 1},
                           {1, 3, 1},
                           {2, 3, 1}});
}

// Two parallel edges between the same pair, c = 1 and c = 2.
Network parallel_pair() {
  return build_network(2, {{0, 1, 1}, {0, 1, 2}});
}

// Cycle 0-1-2-3-0 with conductances 1, 2, 3, 4.
Network weighted_cycle4() {
  return build_network(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
}

Rational prob_via_enumeration(const ExactTreeDistribution& dist, EdgeId e) {
  Rational mass = 0;
  for (const WeightedTree& t : dist.trees()) {
    if (std::binary_search(t.edges.begin(), t.edges.end(), e)) mass += t.weight;
  }
  return mass / dist.total_weight();
}

TEST(Enumeration, WeightedTriangleListsAllThreePairs) {
  ExactTreeDistribution dist = enumerate_spanning_trees(weighted_triangle());
  ASSERT_EQ(dist.trees().size(), 3u);
  EXPECT_EQ(dist.total_weight(), Rational(11));

  EXPECT_EQ(dist.probability({0, 1}), Rational(2, 11));
  EXPECT_EQ(dist.probability({1, 2}), Rational(6, 11));
  EXPECT_EQ(dist.probability({0, 2}), Rational(3, 11));
  EXPECT_FALSE(dist.contains({0}));
  EXPECT_EQ(dist.probability({0}), Rational(0));
}

TEST(Enumeration, MatchesDeterminantTotals) {
  for (const Network& net : {unit_triangle(), weighted_triangle(), unit_k4(),
                             parallel_pair(), weighted_cycle4(),
                             grid_box(2, 3), canopy_network(2, 3)}) {
    ExactTreeDistribution dist = enumerate_spanning_trees(net);
    Rational sum = 0;
    for (const WeightedTree& t : dist.trees()) sum += t.weight;
    EXPECT_EQ(sum, dist.total_weight());
    EXPECT_EQ(dist.total_weight(), tree_weight_total(net));
    EXPECT_EQ(BigInt(dist.trees().size()), spanning_tree_count(net));
  }
}

TEST(Enumeration, KnownCounts) {
  EXPECT_EQ(spanning_tree_count(unit_k4()), BigInt(16));
  EXPECT_EQ(tree_weight_total(unit_k4()), Rational(16));
  // Weighted 4-cycle: drop one edge each; weights 24, 12, 8, 6.
  ExactTreeDistribution cyc = enumerate_spanning_trees(weighted_cycle4());
  ASSERT_EQ(cyc.trees().size(), 4u);
  EXPECT_EQ(cyc.total_weight(), Rational(50));
  EXPECT_EQ(cyc.probability({1, 2, 3}), Rational(24, 50));
  EXPECT_EQ(cyc.probability({0, 2, 3}), Rational(12, 50));
  EXPECT_EQ(cyc.probability({0, 1, 3}), Rational(8, 50));
  EXPECT_EQ(cyc.probability({0, 1, 2}), Rational(6, 50));
  // Single-edge network: the one tree carries the full conductance weight.
  Network single = build_network(2, {{0, 1, 5}});
  EXPECT_EQ(tree_weight_total(single), Rational(5));
  EXPECT_EQ(spanning_tree_count(single), BigInt(1));
  // One-vertex network: the empty tree, weight 1.
  Network point(1, {});
  EXPECT_EQ(tree_weight_total(point), Rational(1));
  ExactTreeDistribution trivial = enumerate_spanning_trees(point);
  ASSERT_EQ(trivial.trees().size(), 1u);
  EXPECT_TRUE(trivial.trees()[0].edges.empty());
}

TEST(Enumeration, SelfLoopsNeverAppear) {
  Network net = build_network(2, {{0, 1, 1}, {0, 0, 7}});
  ExactTreeDistribution dist = enumerate_spanning_trees(net);
  ASSERT_EQ(dist.trees().size(), 1u);
  EXPECT_EQ(dist.trees()[0].edges, TreeKey{0});
  EXPECT_EQ(dist.total_weight(), Rational(1));
}

TEST(Enumeration, GuardRejectsHugeNetworks) {
  // A 5x5 grid already has over 5*10^8 spanning trees.
  EXPECT_GT(spanning_tree_count(grid_box(2, 5)), BigInt(kEnumerationGuard));
  EXPECT_THROW(
      {
        try {
          enumerate_spanning_trees(grid_box(2, 5));
        } catch (const Error& err) {
          EXPECT_EQ(err.code(), Errc::too_many_trees);
          throw;
        }
      },
      Error);
}

TEST(EffectiveResistance, KnownValues) {
  EXPECT_EQ(effective_resistance(weighted_triangle(), 1, 2), Rational(4, 11));
  // Unit 4-cycle, adjacent vertices: 1 in parallel with 3.
  Network cyc = build_network(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  EXPECT_EQ(effective_resistance(cyc, 0, 1), Rational(3, 4));
  EXPECT_EQ(effective_resistance(build_network(2, {{0, 1, 2}}), 0, 1), Rational(1, 2));
  EXPECT_EQ(effective_resistance(parallel_pair(), 0, 1), Rational(1, 3));
  EXPECT_EQ(effective_resistance(unit_triangle(), 2, 2), Rational(0));
}

TEST(EffectiveResistance, NumericSolverAgreesWithExact) {
  for (const Network& net : {weighted_triangle(), unit_k4(), grid_box(2, 4),
                             canopy_network(3, 2)}) {
    for (VertexId u : {VertexId(0), VertexId(1)}) {
      VertexId v = VertexId(net.vertex_count() - 1);
      Rational exact = effective_resistance(net, u, v);
      double approx = effective_resistance_numeric(net, u, v);
      EXPECT_NEAR(approx, exact.convert_to<double>(), 1e-12);
    }
  }
}

TEST(CurrentFlow, UnitTrianglePotentialsAndCurrents) {
  Network net = unit_triangle();
  CurrentFlow flow = unit_current_flow(net, OrientedEdge{0, true});  // 0 -> 1
  EXPECT_EQ(flow.source, 0u);
  EXPECT_EQ(flow.sink, 1u);
  EXPECT_EQ(flow.potential[0], Rational(2, 3));
  EXPECT_EQ(flow.potential[1], Rational(0));
  EXPECT_EQ(flow.potential[2], Rational(1, 3));
  // Two thirds direct, one third around the back.
  EXPECT_EQ(flow.through(net, {0, true}), Rational(2, 3));
  EXPECT_EQ(flow.through(net, {2, false}), Rational(1, 3));  // 0 -> 2
  EXPECT_EQ(flow.through(net, {1, false}), Rational(1, 3));  // 2 -> 1 inflow
  EXPECT_EQ(flow.through(net, {0, false}), Rational(-2, 3));
}

TEST(CurrentFlow, ConservationAtInteriorVertices) {
  Network net = weighted_cycle4();
  CurrentFlow flow = unit_current_flow(net, 0, 2);
  for (VertexId v : {VertexId(1), VertexId(3)}) {
    Rational net_out = 0;
    for (OrientedEdge oe : net.incident(v)) net_out += flow.through(net, oe);
    EXPECT_EQ(net_out, Rational(0));
  }
  Rational out_of_source = 0;
  for (OrientedEdge oe : net.incident(0)) out_of_source += flow.through(net, oe);
  EXPECT_EQ(out_of_source, Rational(1));
}

TEST(CurrentFlow, ParallelEdgesSplitByConductance) {
  Network net = parallel_pair();
  CurrentFlow flow = unit_current_flow(net, 0, 1);
  EXPECT_EQ(flow.through(net, {0, true}), Rational(1, 3));
  EXPECT_EQ(flow.through(net, {1, true}), Rational(2, 3));
}

TEST(CurrentFlow, RejectsDegenerateRequests) {
  Network loopy = build_network(2, {{0, 1, 1}, {1, 1, 4}});
  EXPECT_THROW(unit_current_flow(loopy, OrientedEdge{1, true}), Error);
  EXPECT_THROW(unit_current_flow(loopy, 0, 0), Error);
  CurrentFlow flow = unit_current_flow(loopy, 0, 1);
  EXPECT_EQ(flow.through(loopy, {1, true}), Rational(0));
}

TEST(EdgeMarginal, MatchesEnumerationEverywhere) {
  for (const Network& net : {unit_triangle(), weighted_triangle(), unit_k4(),
                             parallel_pair(), weighted_cycle4(), grid_box(2, 3),
                             canopy_network(2, 3), glued_canopy(1, 3, 4)}) {
    ExactTreeDistribution dist = enumerate_spanning_trees(net);
    Rational marginal_sum = 0;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      if (net.edge(e).is_self_loop()) continue;
      Rational marginal = ust_edge_marginal(net, e);
      EXPECT_EQ(marginal, prob_via_enumeration(dist, e));
      marginal_sum += marginal;
    }
    // Every spanning tree has exactly n-1 edges.
    EXPECT_EQ(marginal_sum, Rational(net.vertex_count() - 1));
  }
}

TEST(EdgeMarginal, KnownValues) {
  EXPECT_EQ(ust_edge_marginal(weighted_triangle(), 1), Rational(8, 11));
  // A bridge is in every spanning tree.
  Network path = build_network(3, {{0, 1, 1}, {1, 2, 9}});
  EXPECT_EQ(ust_edge_marginal(path, 0), Rational(1));
  EXPECT_EQ(ust_edge_marginal(path, 1), Rational(1));
  Network unit_pair = build_network(2, {{0, 1, 1}, {0, 1, 1}});
  EXPECT_EQ(ust_edge_marginal(unit_pair, 0), Rational(1, 2));
  Network loopy = build_network(2, {{0, 1, 1}, {0, 0, 3}});
  EXPECT_THROW(ust_edge_marginal(loopy, 1), Error);
}

TEST(DirectionDistribution, EqualsUnitCurrentOnOrientedEdges) {
  for (const Network& net : {unit_triangle(), weighted_triangle(), unit_k4(),
                             parallel_pair(), weighted_cycle4()}) {
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      OrientedEdge oe{e, true};
      auto dist = direction_distribution(net, oe);
      CurrentFlow flow = unit_current_flow(net, oe);
      Rational sum = 0;
      ASSERT_FALSE(dist.empty());
      for (const auto& [cand, prob] : dist) {
        EXPECT_EQ(prob, flow.through(net, cand));
        sum += prob;
      }
      EXPECT_EQ(sum, Rational(1));
    }
  }
}

TEST(DirectionDistribution, UnitTriangleSplitsTwoToOne) {
  Network net = unit_triangle();
  auto dist = direction_distribution(net, {0, true});
  ASSERT_EQ(dist.size(), 2u);
  EXPECT_EQ(dist[0].first, (OrientedEdge{0, true}));
  EXPECT_EQ(dist[0].second, Rational(2, 3));
  EXPECT_EQ(dist[1].first, (OrientedEdge{2, false}));
  EXPECT_EQ(dist[1].second, Rational(1, 3));
}

TEST(ConditionedDistribution, FiltersAndRenormalizes) {
  Network net = unit_triangle();
  EdgeId required[] = {0};
  ExactTreeDistribution with0 = exact_conditioned_distribution(net, required, {});
  ASSERT_EQ(with0.trees().size(), 2u);
  EXPECT_EQ(with0.probability({0, 1}), Rational(1, 2));
  EXPECT_EQ(with0.probability({0, 2}), Rational(1, 2));

  EdgeId forbidden[] = {0};
  ExactTreeDistribution without0 = exact_conditioned_distribution(net, {}, forbidden);
  ASSERT_EQ(without0.trees().size(), 1u);
  EXPECT_EQ(without0.probability({1, 2}), Rational(1));
}

TEST(ConditionedDistribution, RejectsNullEvents) {
  Network net = unit_triangle();
  EdgeId all[] = {0, 1, 2};  // contains a cycle
  EXPECT_THROW(exact_conditioned_distribution(net, all, {}), Error);
  EdgeId e0[] = {0};
  EXPECT_THROW(exact_conditioned_distribution(net, e0, e0), Error);
  try {
    exact_conditioned_distribution(net, all, {});
    FAIL() << "expected an error";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::null_conditioning_event);
  }
}

TEST(ConditionedDistribution, AgreesWithMinorConstruction) {
  // Conditioning on edge 0 present and edge 1 absent must match the UST of
  // the network with 0 contracted and 1 deleted, mapped back through ids.
  Network net = weighted_cycle4();
  EdgeId required[] = {0};
  EdgeId forbidden[] = {1};
  ExactTreeDistribution filtered =
      exact_conditioned_distribution(net, required, forbidden);

  DerivedNetwork minor = graph_minor(net, required, forbidden);
  ExactTreeDistribution minor_dist = enumerate_spanning_trees(minor.network);

  ASSERT_EQ(filtered.trees().size(), minor_dist.trees().size());
  for (const WeightedTree& t : minor_dist.trees()) {
    TreeKey lifted = {0};
    for (EdgeId id : t.edges) lifted.push_back(minor.edge_origin[id]);
    std::sort(lifted.begin(), lifted.end());
    EXPECT_EQ(filtered.probability(lifted), t.weight / minor_dist.total_weight());
  }
}

TEST(DistributionText, RoundTripsAndChecksTotals) {
  ExactTreeDistribution dist = enumerate_spanning_trees(weighted_triangle());
  std::string text = serialize_distribution(dist);
  EXPECT_EQ(text,
            "t 2/1 0 1\n"
            "t 3/1 0 2\n"
            "t 6/1 1 2\n"
            "total 11/1\n");
  ExactTreeDistribution parsed = parse_distribution(text);
  EXPECT_TRUE(parsed.same_distribution(dist));

  EXPECT_THROW(parse_distribution("t 1/1 0\n"), Error);                 // no total
  EXPECT_THROW(parse_distribution("t 1/1 0\ntotal 2/1\n"), Error);      // bad total
  EXPECT_THROW(parse_distribution("t 1/1 2 0\ntotal 1/1\n"), Error);    // unsorted
  EXPECT_THROW(parse_distribution("x 1/1\ntotal 1/1\n"), Error);        // bad tag
}

TEST(DistributionText, ScaledWeightsCompareEqual) {
  // same_distribution is about the probability measure, not the weights.
  ExactTreeDistribution base = enumerate_spanning_trees(unit_triangle());
  std::vector<WeightedTree> doubled;
  for (const WeightedTree& t : base.trees()) {
    doubled.push_back({t.edges, t.weight * 4});
  }
  ExactTreeDistribution scaled{std::move(doubled)};
  EXPECT_TRUE(scaled.same_distribution(enumerate_spanning_trees(unit_triangle())));
  EXPECT_FALSE(scaled.same_distribution(enumerate_spanning_trees(weighted_triangle())));
}

}  // namespace
}  // namespace usflab
