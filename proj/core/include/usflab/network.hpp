#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "usflab/errors.hpp"
#include "usflab/rational.hpp"

namespace usflab {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// Canonical identity of a tree or forest: its edge ids in ascending order.
using TreeKey = std::vector<EdgeId>;

// Undirected edge with a positive conductance.  Parallel edges and self-loops
// are legal and keep distinct ids.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational conductance = 1;

  bool is_self_loop() const { return u == v; }
};

// One of the two orientations of an edge: forward means tail u / head v.
struct OrientedEdge {
  EdgeId id = 0;
  bool forward = true;

  OrientedEdge reversed() const { return {id, !forward}; }

  friend bool operator==(const OrientedEdge& a, const OrientedEdge& b) {
    return a.id == b.id && a.forward == b.forward;
  }
};

// Finite connected weighted multigraph with dense vertex ids 0..n-1 and dense
// edge ids 0..m-1.  Immutable after construction and safe to share between
// threads.
class Network {
 public:
  // Validates endpoints, positivity, and connectivity (self-loops ignored for
  // connectivity).  Throws Errc::invalid_edge / nonpositive_conductance /
  // disconnected_network.
  Network(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return incident_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexId tail(OrientedEdge oe) const {
    const Edge& e = edges_[oe.id];
    return oe.forward ? e.u : e.v;
  }
  VertexId head(OrientedEdge oe) const {
    const Edge& e = edges_[oe.id];
    return oe.forward ? e.v : e.u;
  }

  // Oriented edges with tail v.  A self-loop at v appears exactly once, so its
  // conductance counts once toward c(v).
  const std::vector<OrientedEdge>& incident(VertexId v) const {
    return incident_[v];
  }

  // c(v): total conductance of the oriented edges with tail v.
  const Rational& vertex_conductance(VertexId v) const {
    return vertex_conductance_[v];
  }

  // Sum of c(v) over all vertices.
  const Rational& conductance_mass() const { return conductance_mass_; }

  void check_vertex(VertexId v) const {
    if (v >= vertex_count()) raise(Errc::invalid_vertex, "vertex id out of range");
  }
  void check_edge(EdgeId e) const {
    if (e >= edge_count()) raise(Errc::invalid_edge, "edge id out of range");
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<OrientedEdge>> incident_;
  std::vector<Rational> vertex_conductance_;
  Rational conductance_mass_ = 0;
};

// Free-function spelling of the validating constructor.
Network build_network(std::size_t vertex_count, std::vector<Edge> edges);

// Original vertex id -> quotient vertex id (kNoVertex where the original
// vertex was dropped, e.g. outside an induced subnetwork).
struct VertexMergeMap {
  std::vector<VertexId> to_quotient;

  VertexId at(VertexId original) const { return to_quotient[original]; }
};

// A derived network together with provenance: where each quotient vertex and
// each surviving edge came from.
struct DerivedNetwork {
  Network network;
  VertexMergeMap vertex_map;
  std::vector<EdgeId> edge_origin;  // quotient edge id -> original edge id
};

// Contraction of everything outside `interior` into a single wired vertex.
// The quotient keeps interior vertices first (ascending original id) and puts
// the wired vertex last; exterior-exterior edges become self-loops at the
// wired vertex and are deleted.
struct WiredNetwork {
  Network network;
  VertexId wired_vertex = 0;
  std::vector<VertexId> interior;  // quotient ids, ascending: 0..n-2
  VertexMergeMap vertex_map;       // original id -> quotient id
  std::vector<EdgeId> edge_origin;

  bool is_wired(VertexId v) const { return v == wired_vertex; }
};

// Subnetwork induced by a vertex set (edges with both endpoints selected).
// Quotient ids follow ascending original id.  Throws
// Errc::disconnected_network if the result is not connected, invalid_vertex
// on bad or duplicate ids, bad_params on an empty set.
DerivedNetwork induced_subnetwork(const Network& net,
                                  std::span<const VertexId> vertices);

// Wired boundary construction over an exhaustion element.  Throws
// Errc::empty_exterior when `interior` already covers every vertex.
WiredNetwork wired_contraction(const Network& net,
                               std::span<const VertexId> interior);

// Minor (G - deleted) / contracted.  Contracted edges must be acyclic
// (Errc::cycle_in_contract_set); the two edge sets must be disjoint and in
// range.  Quotient vertex classes are ranked by their lowest original id;
// edges that become self-loops in the quotient are deleted.  The result must
// stay connected (Errc::disconnected_network).
DerivedNetwork graph_minor(const Network& net, std::span<const EdgeId> deleted,
                           std::span<const EdgeId> contracted);

}  // namespace usflab
