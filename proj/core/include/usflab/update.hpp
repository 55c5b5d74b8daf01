#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "usflab/sampler.hpp"

namespace usflab {

// What one cycle-breaking update did.
enum class UpdateCase : int {
  noop_self_loop = 0,        // drew a self-loop; state unchanged
  noop_present = 1,          // drew an edge already in the tree
  same_component_cycle = 2,  // broke the created cycle at its first path edge
  cross_component_parent = 3 // joined two components, dropped the old exit
};

const char* update_case_name(UpdateCase c);

struct UpdateStep {
  UpdateCase applied = UpdateCase::noop_self_loop;
  OrientedEdge drawn;                   // edge handed to the update
  std::optional<OrientedEdge> removed;  // engaged iff the state changed
};

// First edge on the unique tree path from tail(e) to head(e), oriented out of
// tail(e).  If e is a tree edge this is e itself.  Errc::self_loop for loops.
OrientedEdge direction(const SpanningTree& tree, OrientedEdge e);

// Insert e and remove direction(tree, e); no-ops on self-loops and edges
// already present.  Leaves a spanning tree in every case.
UpdateStep update_free(SpanningTree& tree, OrientedEdge e);

// Wired counterpart for an edge with both endpoints interior
// (Errc::wired_endpoint otherwise).  Same interior component: break the
// created cycle at its first path edge.  Different components: attach
// tail(e)'s component through e and drop tail(e)'s old edge toward the wired
// vertex.
UpdateStep update_wired(BoundaryForest& forest, OrientedEdge e);

// Draw an oriented edge out of v with probability proportional to
// conductance, then update.  For a boundary forest the draw ranges over all
// edges at interior v including those to the wired vertex; drawing one of
// those re-hangs v directly onto the wired vertex.  This full-support draw is
// what makes the conductance-biased single-site chain exactly stationary.
UpdateStep random_update(SpanningTree& tree, VertexId v, RngHandle& rng);
UpdateStep random_update(BoundaryForest& forest, VertexId v, RngHandle& rng);

// How update_chain picks the vertex for each step.
enum class Schedule {
  fixed_vertex,   // always options.fixed
  round_robin,    // ascending sweep, wrapping
  uniform_random  // fresh uniform vertex each step
};

struct ChainOptions {
  Schedule schedule = Schedule::uniform_random;
  VertexId fixed = 0;      // used by Schedule::fixed_vertex
  bool validate = false;   // re-check container invariants after every step
  // When set, one CSV row per step lands here:
  //   step,case_tag,inserted_edge,removed_edge,components
  // (header row included; removed_edge empty on noops).
  std::ostream* trajectory = nullptr;
};

struct ChainReport {
  std::uint64_t steps = 0;
  // Indexed by UpdateCase value; sums to steps.
  std::array<std::uint64_t, 4> case_counts{};
};

ChainReport update_chain(SpanningTree& tree, std::uint64_t steps,
                         const ChainOptions& options, RngHandle& rng);
// Wired chain: vertices are drawn from the interior only.
ChainReport update_chain(BoundaryForest& forest, std::uint64_t steps,
                         const ChainOptions& options, RngHandle& rng);

// Exact check of the one-step comparison inequality for a fixed oriented
// edge e:  P(T = t)  >=  (c(e)/c(tail(e))) * P(update(T, e) = t)  for every
// tree t, with T the conductance-weighted uniform spanning tree.  Verified
// over the full enumerated support, plus the worst slack seen.
struct RatioBoundReport {
  OrientedEdge edge;
  Rational ratio;        // c(e) / c(tail(e))
  bool holds = false;
  Rational worst_slack;  // min over t of P(T = t) - ratio * P(update = t)
};

RatioBoundReport update_ratio_bound_check(const Network& net, OrientedEdge e);

}  // namespace usflab
