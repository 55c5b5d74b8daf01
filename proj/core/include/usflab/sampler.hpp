#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "usflab/network.hpp"
#include "usflab/rng.hpp"

namespace usflab {

// Total step budget for one sampling run; Errc::step_cap_exceeded beyond it.
// Generous enough that hitting it on a connected network signals a bug, not
// bad luck.
inline constexpr std::uint64_t kStepCap = 1'000'000'000;

// One random-walk step out of v: an oriented edge with tail v, drawn with
// probability proportional to conductance.  A self-loop counts once, with its
// plain conductance.  The draw is exact (integer arithmetic, no rounding).
OrientedEdge walk_step(const Network& net, VertexId v, RngHandle& rng);

// Precomputed integer cumulative-weight tables for repeated walk steps.
// step() consumes randomness exactly like walk_step and draws the same law.
class WalkTable {
 public:
  explicit WalkTable(const Network& net);

  const Network& network() const { return *net_; }
  OrientedEdge step(VertexId v, RngHandle& rng) const;

 private:
  const Network* net_;
  std::vector<std::vector<BigInt>> cumulative_;  // aligned with incident(v)
};

// Erase cycles from a path in chronological order by dropping each loop the
// moment a vertex repeats.  Endpoints are preserved.
std::vector<VertexId> loop_erase(std::span<const VertexId> path);

// Same map computed from the textbook index recursion (repeatedly jump to the
// last revisit of the current vertex).  Cross-check twin of loop_erase.
std::vector<VertexId> loop_erase_chronological(std::span<const VertexId> path);

// A spanning tree of a network: n-1 edge ids plus adjacency for path queries.
// The constructor rejects anything that is not a spanning tree
// (Errc::inconsistent_forest).
class SpanningTree {
 public:
  SpanningTree(const Network& net, TreeKey edge_ids);

  const Network& network() const { return *net_; }
  const TreeKey& edges() const { return edges_; }  // ascending
  bool contains(EdgeId id) const;
  // Tree edges at v, oriented outward, in insertion order.
  const std::vector<OrientedEdge>& incident(VertexId v) const {
    return adjacency_[v];
  }
  // Swap one tree edge for another; Errc::inconsistent_forest unless the
  // result is again a spanning tree.
  void replace(EdgeId removed, EdgeId inserted);

 private:
  const Network* net_;
  TreeKey edges_;
  std::vector<char> present_;
  std::vector<std::vector<OrientedEdge>> adjacency_;
};

// A sample of the wired uniform spanning forest truncation: a spanning tree
// of a wired network, viewed as a forest over the interior vertices in which
// every component exits through the wired vertex.  parent(v) is the first
// oriented edge on v's tree path to the wired vertex; parents are kept
// deterministic (breadth-first from the wired vertex, ascending tie order).
class BoundaryForest {
 public:
  BoundaryForest(const WiredNetwork& wnet, TreeKey edge_ids);

  const WiredNetwork& wired() const { return *wnet_; }
  const Network& network() const { return wnet_->network; }
  const TreeKey& edges() const { return edges_; }  // ascending
  bool contains(EdgeId id) const;
  const std::vector<OrientedEdge>& incident(VertexId v) const {
    return adjacency_[v];
  }
  // Oriented edge from interior v toward the wired vertex
  // (Errc::wired_endpoint for the wired vertex itself).
  OrientedEdge parent(VertexId v) const;
  void replace(EdgeId removed, EdgeId inserted);

 private:
  void rebuild_parents();

  const WiredNetwork* wnet_;
  TreeKey edges_;
  std::vector<char> present_;
  std::vector<std::vector<OrientedEdge>> adjacency_;
  std::vector<OrientedEdge> parent_;
};

// Wilson's algorithm: start at each vertex of `order` in turn, run the
// network random walk until it hits the growing tree, keep the loop-erasure.
// The resulting law is the conductance-weighted uniform spanning tree,
// independent of root and order.  `order` may omit vertices already covered;
// listed vertices must be valid.
SpanningTree wilson_ust(const Network& net, VertexId root,
                        std::span<const VertexId> order, RngHandle& rng);
// Root 0, ascending order.
SpanningTree wilson_ust(const Network& net, RngHandle& rng);

// Wilson's algorithm with the walks for `deferred` vertices run after all
// others (each group ascending).  Same law as wilson_ust; exists so tests can
// vary the enumeration order without touching the sampler.
SpanningTree wilson_deferred(const Network& net, VertexId root,
                             std::span<const VertexId> deferred, RngHandle& rng);

// Truncated free uniform spanning forest sample: the spanning tree of the
// finite network itself.
SpanningTree sample_fusf_truncation(const Network& net, RngHandle& rng);

// Truncated wired uniform spanning forest sample: Wilson rooted at the wired
// vertex.
BoundaryForest sample_wusf_truncation(const WiredNetwork& wnet, RngHandle& rng);

// True iff the edge ids form a spanning tree of the network.
bool is_spanning_tree(const Network& net, const TreeKey& edge_ids);

// Deep invariant re-checks (Errc::inconsistent_forest on violation).  The
// containers maintain these by construction; long-running chains re-run them
// on demand to catch drift.
void validate_tree(const SpanningTree& tree);
void validate_forest(const BoundaryForest& forest);

}  // namespace usflab
