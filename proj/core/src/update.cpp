#include "usflab/update.hpp"

#include <deque>
#include <ostream>

#include "usflab/errors.hpp"
#include "usflab/exact.hpp"

namespace usflab {

const char* update_case_name(UpdateCase c) {
  switch (c) {
    case UpdateCase::noop_self_loop: return "noop_self_loop";
    case UpdateCase::noop_present: return "noop_present";
    case UpdateCase::same_component_cycle: return "same_component_cycle";
    case UpdateCase::cross_component_parent: return "cross_component_parent";
  }
  return "unknown";
}

namespace {

// First edge on the tree path from -> to over the given incident lists,
// oriented out of `from`; vertices equal to `skip` are never crossed.
// Returns nothing when `to` is unreachable under that restriction.
template <typename IncidentOf>
std::optional<OrientedEdge> restricted_first_edge(const Network& net,
                                                  const IncidentOf& incident_of,
                                                  VertexId from, VertexId to,
                                                  VertexId skip) {
  std::vector<OrientedEdge> pred(net.vertex_count());
  std::vector<char> seen(net.vertex_count(), 0);
  std::deque<VertexId> queue{to};
  seen[to] = 1;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    if (x == from) return pred[from];
    if (x == skip) continue;  // may be reached but never crossed
    for (OrientedEdge oe : incident_of(x)) {
      VertexId y = net.head(oe);
      if (!seen[y]) {
        seen[y] = 1;
        pred[y] = oe.reversed();  // oriented y -> x, i.e. toward `to`
        queue.push_back(y);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

OrientedEdge direction(const SpanningTree& tree, OrientedEdge e) {
  const Network& net = tree.network();
  net.check_edge(e.id);
  if (net.edge(e.id).is_self_loop()) {
    raise(Errc::self_loop, "direction is undefined for self-loops");
  }
  auto first = restricted_first_edge(
      net, [&](VertexId v) { return tree.incident(v); }, net.tail(e),
      net.head(e), kNoVertex);
  if (!first) raise(Errc::inconsistent_forest, "tree does not connect the endpoints");
  return *first;
}

UpdateStep update_free(SpanningTree& tree, OrientedEdge e) {
  const Network& net = tree.network();
  net.check_edge(e.id);
  if (net.edge(e.id).is_self_loop()) {
    return {UpdateCase::noop_self_loop, e, std::nullopt};
  }
  if (tree.contains(e.id)) {
    return {UpdateCase::noop_present, e, std::nullopt};
  }
  OrientedEdge out = direction(tree, e);
  tree.replace(out.id, e.id);
  return {UpdateCase::same_component_cycle, e, out};
}

namespace {

// Core wired update.  tail(e) must be interior; head(e) may be the wired
// vertex (reachable through random draws, where it re-hangs the tail).
UpdateStep apply_wired_update(BoundaryForest& forest, OrientedEdge e) {
  const Network& net = forest.network();
  if (net.edge(e.id).is_self_loop()) {
    return {UpdateCase::noop_self_loop, e, std::nullopt};
  }
  if (forest.contains(e.id)) {
    return {UpdateCase::noop_present, e, std::nullopt};
  }
  VertexId from = net.tail(e);
  VertexId to = net.head(e);
  VertexId wired = forest.wired().wired_vertex;

  if (to != wired) {
    // Same interior component iff the forest connects the endpoints without
    // crossing the wired vertex; the restricted search also hands back the
    // cycle-breaking edge.
    auto first = restricted_first_edge(
        net, [&](VertexId v) { return forest.incident(v); }, from, to, wired);
    if (first) {
      forest.replace(first->id, e.id);
      return {UpdateCase::same_component_cycle, e, *first};
    }
    OrientedEdge exit = forest.parent(from);
    forest.replace(exit.id, e.id);
    return {UpdateCase::cross_component_parent, e, exit};
  }

  // Edge to the wired vertex: the cycle through the boundary closes at the
  // tail's own exit edge.
  OrientedEdge exit = forest.parent(from);
  forest.replace(exit.id, e.id);
  return {UpdateCase::same_component_cycle, e, exit};
}

}  // namespace

UpdateStep update_wired(BoundaryForest& forest, OrientedEdge e) {
  const Network& net = forest.network();
  net.check_edge(e.id);
  VertexId wired = forest.wired().wired_vertex;
  if (net.tail(e) == wired || net.head(e) == wired) {
    raise(Errc::wired_endpoint, "updates are defined at interior edges only");
  }
  return apply_wired_update(forest, e);
}

UpdateStep random_update(SpanningTree& tree, VertexId v, RngHandle& rng) {
  return update_free(tree, walk_step(tree.network(), v, rng));
}

UpdateStep random_update(BoundaryForest& forest, VertexId v, RngHandle& rng) {
  forest.network().check_vertex(v);
  if (v == forest.wired().wired_vertex) {
    raise(Errc::wired_endpoint, "updates happen at interior vertices only");
  }
  return apply_wired_update(forest, walk_step(forest.network(), v, rng));
}

namespace {

// A spanning tree is one component; a boundary forest has one interior
// component per forest edge missing from the interior.
std::size_t component_count(const SpanningTree&) { return 1; }

std::size_t component_count(const BoundaryForest& forest) {
  const Network& net = forest.network();
  VertexId wired = forest.wired().wired_vertex;
  std::size_t interior_edges = 0;
  for (EdgeId id : forest.edges()) {
    const Edge& e = net.edge(id);
    if (e.u != wired && e.v != wired) ++interior_edges;
  }
  return forest.wired().interior.size() - interior_edges;
}

template <typename State, typename VertexPicker>
ChainReport run_chain(State& state, std::uint64_t steps,
                      const ChainOptions& options, RngHandle& rng,
                      const VertexPicker& pick,
                      void (*validator)(const State&)) {
  if (options.trajectory) {
    *options.trajectory
        << "step,case_tag,inserted_edge,removed_edge,components\n";
  }
  ChainReport report;
  for (std::uint64_t i = 0; i < steps; ++i) {
    VertexId v = pick(i, rng);
    UpdateStep step = random_update(state, v, rng);
    ++report.case_counts[std::size_t(step.applied)];
    ++report.steps;
    if (options.validate) validator(state);
    if (options.trajectory) {
      std::ostream& out = *options.trajectory;
      out << i << ',' << update_case_name(step.applied) << ','
          << step.drawn.id << ',';
      if (step.removed) out << step.removed->id;
      out << ',' << component_count(state) << '\n';
    }
  }
  return report;
}

}  // namespace

ChainReport update_chain(SpanningTree& tree, std::uint64_t steps,
                         const ChainOptions& options, RngHandle& rng) {
  const Network& net = tree.network();
  auto pick = [&](std::uint64_t i, RngHandle& r) -> VertexId {
    switch (options.schedule) {
      case Schedule::fixed_vertex:
        return options.fixed;
      case Schedule::round_robin:
        return VertexId(i % net.vertex_count());
      case Schedule::uniform_random:
      default:
        return VertexId(uniform_index(r, net.vertex_count()));
    }
  };
  return run_chain(tree, steps, options, rng, pick, &validate_tree);
}

ChainReport update_chain(BoundaryForest& forest, std::uint64_t steps,
                         const ChainOptions& options, RngHandle& rng) {
  const std::vector<VertexId>& interior = forest.wired().interior;
  auto pick = [&](std::uint64_t i, RngHandle& r) -> VertexId {
    switch (options.schedule) {
      case Schedule::fixed_vertex:
        return options.fixed;
      case Schedule::round_robin:
        return interior[i % interior.size()];
      case Schedule::uniform_random:
      default:
        return interior[uniform_index(r, interior.size())];
    }
  };
  return run_chain(forest, steps, options, rng, pick, &validate_forest);
}

ExactTreeDistribution exact_update_pushforward(const Network& net, VertexId v) {
  net.check_vertex(v);
  ExactTreeDistribution base = enumerate_spanning_trees(net);
  Rational at_v = net.vertex_conductance(v);

  std::vector<WeightedTree> mass;
  mass.reserve(base.trees().size() * net.incident(v).size());
  for (const WeightedTree& t : base.trees()) {
    Rational p_tree = t.weight / base.total_weight();
    for (OrientedEdge oe : net.incident(v)) {
      SpanningTree tree(net, t.edges);
      update_free(tree, oe);
      mass.push_back({tree.edges(),
                      p_tree * net.edge(oe.id).conductance / at_v});
    }
  }
  return ExactTreeDistribution{std::move(mass)};
}

ExactTreeDistribution exact_update_pushforward(const WiredNetwork& wnet,
                                               VertexId v) {
  const Network& net = wnet.network;
  net.check_vertex(v);
  if (v == wnet.wired_vertex) {
    raise(Errc::wired_endpoint, "updates happen at interior vertices only");
  }
  ExactTreeDistribution base = enumerate_spanning_trees(net);
  Rational at_v = net.vertex_conductance(v);

  std::vector<WeightedTree> mass;
  mass.reserve(base.trees().size() * net.incident(v).size());
  for (const WeightedTree& t : base.trees()) {
    Rational p_tree = t.weight / base.total_weight();
    for (OrientedEdge oe : net.incident(v)) {
      BoundaryForest forest(wnet, t.edges);
      apply_wired_update(forest, oe);
      mass.push_back({forest.edges(),
                      p_tree * net.edge(oe.id).conductance / at_v});
    }
  }
  return ExactTreeDistribution{std::move(mass)};
}

RatioBoundReport update_ratio_bound_check(const Network& net, OrientedEdge e) {
  net.check_edge(e.id);
  if (net.edge(e.id).is_self_loop()) {
    raise(Errc::self_loop, "the bound concerns non-loop edges");
  }
  RatioBoundReport report;
  report.edge = e;
  report.ratio = net.edge(e.id).conductance / net.vertex_conductance(net.tail(e));

  ExactTreeDistribution base = enumerate_spanning_trees(net);
  // Pushforward of the deterministic map t -> update(t, e).
  std::vector<WeightedTree> mass;
  mass.reserve(base.trees().size());
  for (const WeightedTree& t : base.trees()) {
    SpanningTree tree(net, t.edges);
    update_free(tree, e);
    mass.push_back({tree.edges(), t.weight / base.total_weight()});
  }
  ExactTreeDistribution pushed{std::move(mass)};

  bool first = true;
  report.holds = true;
  for (const WeightedTree& t : pushed.trees()) {
    Rational slack = base.probability(t.edges) - report.ratio * t.weight;
    if (first || slack < report.worst_slack) report.worst_slack = slack;
    first = false;
    if (slack < 0) report.holds = false;
  }
  return report;
}

}  // namespace usflab
