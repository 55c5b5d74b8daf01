#include "usflab/network.hpp"

#include <algorithm>
#include <numeric>

namespace usflab {

namespace {

// Small union-find, used for connectivity and contraction bookkeeping.
class Dsu {
 public:
  explicit Dsu(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }

  VertexId find(VertexId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false if x and y were already connected.
  bool unite(VertexId x, VertexId y) {
    VertexId rx = find(x);
    VertexId ry = find(y);
    if (rx == ry) return false;
    parent_[rx] = ry;
    return true;
  }

 private:
  std::vector<VertexId> parent_;
};

std::vector<VertexId> checked_unique_vertices(const Network& net,
                                              std::span<const VertexId> vs,
                                              const char* what) {
  std::vector<VertexId> sorted(vs.begin(), vs.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    raise(Errc::invalid_vertex, std::string("duplicate vertex in ") + what);
  }
  for (VertexId v : sorted) net.check_vertex(v);
  return sorted;
}

}  // namespace

Network::Network(std::size_t vertex_count, std::vector<Edge> edges)
    : edges_(std::move(edges)) {
  if (vertex_count == 0) raise(Errc::bad_params, "network needs at least one vertex");
  incident_.resize(vertex_count);
  vertex_conductance_.assign(vertex_count, Rational(0));

  Dsu dsu(vertex_count);
  std::size_t joins = 0;
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.u >= vertex_count || e.v >= vertex_count) {
      raise(Errc::invalid_edge, "edge endpoint out of range");
    }
    if (e.conductance <= 0) {
      raise(Errc::nonpositive_conductance, "edge conductance must be positive");
    }
    incident_[e.u].push_back({id, true});
    vertex_conductance_[e.u] += e.conductance;
    if (!e.is_self_loop()) {
      incident_[e.v].push_back({id, false});
      vertex_conductance_[e.v] += e.conductance;
      if (dsu.unite(e.u, e.v)) ++joins;
    }
  }
  if (joins + 1 != vertex_count) {
    raise(Errc::disconnected_network, "network is not connected");
  }
  for (const Rational& c : vertex_conductance_) conductance_mass_ += c;
}

Network build_network(std::size_t vertex_count, std::vector<Edge> edges) {
  return Network(vertex_count, std::move(edges));
}

DerivedNetwork induced_subnetwork(const Network& net,
                                  std::span<const VertexId> vertices) {
  if (vertices.empty()) raise(Errc::bad_params, "empty vertex set");
  std::vector<VertexId> kept = checked_unique_vertices(net, vertices, "vertex set");

  VertexMergeMap map;
  map.to_quotient.assign(net.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < kept.size(); ++i) map.to_quotient[kept[i]] = VertexId(i);

  std::vector<Edge> edges;
  std::vector<EdgeId> origin;
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    const Edge& e = net.edge(id);
    VertexId qu = map.to_quotient[e.u];
    VertexId qv = map.to_quotient[e.v];
    if (qu == kNoVertex || qv == kNoVertex) continue;
    edges.push_back({qu, qv, e.conductance});
    origin.push_back(id);
  }
  return {Network(kept.size(), std::move(edges)), std::move(map), std::move(origin)};
}

WiredNetwork wired_contraction(const Network& net,
                               std::span<const VertexId> interior) {
  if (interior.empty()) raise(Errc::bad_params, "empty interior");
  std::vector<VertexId> kept = checked_unique_vertices(net, interior, "interior");
  if (kept.size() == net.vertex_count()) {
    raise(Errc::empty_exterior, "interior covers the whole network");
  }

  VertexId wired = VertexId(kept.size());
  VertexMergeMap map;
  map.to_quotient.assign(net.vertex_count(), wired);
  for (std::size_t i = 0; i < kept.size(); ++i) map.to_quotient[kept[i]] = VertexId(i);

  std::vector<Edge> edges;
  std::vector<EdgeId> origin;
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    const Edge& e = net.edge(id);
    VertexId qu = map.to_quotient[e.u];
    VertexId qv = map.to_quotient[e.v];
    if (qu == wired && qv == wired) continue;  // exterior loop, deleted
    edges.push_back({qu, qv, e.conductance});
    origin.push_back(id);
  }

  WiredNetwork result{Network(kept.size() + 1, std::move(edges)), wired, {},
                      std::move(map), std::move(origin)};
  result.interior.resize(kept.size());
  std::iota(result.interior.begin(), result.interior.end(), VertexId{0});
  return result;
}

DerivedNetwork graph_minor(const Network& net, std::span<const EdgeId> deleted,
                           std::span<const EdgeId> contracted) {
  std::vector<char> drop(net.edge_count(), 0);
  for (EdgeId id : deleted) {
    net.check_edge(id);
    if (drop[id]) raise(Errc::invalid_edge, "edge listed twice");
    drop[id] = 1;
  }
  for (EdgeId id : contracted) {
    net.check_edge(id);
    if (drop[id]) raise(Errc::invalid_edge, "edge both deleted and contracted");
    drop[id] = 2;
  }

  Dsu dsu(net.vertex_count());
  for (EdgeId id : contracted) {
    const Edge& e = net.edge(id);
    if (e.is_self_loop() || !dsu.unite(e.u, e.v)) {
      raise(Errc::cycle_in_contract_set, "contracted edges contain a cycle");
    }
  }

  // Rank classes by their lowest original member.
  std::vector<VertexId> class_min(net.vertex_count(), kNoVertex);
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    VertexId r = dsu.find(v);
    class_min[r] = std::min(class_min[r], v);
  }
  std::vector<VertexId> reps;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (dsu.find(v) == v) reps.push_back(class_min[v]);
  }
  std::sort(reps.begin(), reps.end());

  VertexMergeMap map;
  map.to_quotient.assign(net.vertex_count(), kNoVertex);
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    VertexId m = class_min[dsu.find(v)];
    auto it = std::lower_bound(reps.begin(), reps.end(), m);
    map.to_quotient[v] = VertexId(it - reps.begin());
  }

  std::vector<Edge> edges;
  std::vector<EdgeId> origin;
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    if (drop[id]) continue;
    const Edge& e = net.edge(id);
    VertexId qu = map.to_quotient[e.u];
    VertexId qv = map.to_quotient[e.v];
    if (qu == qv) continue;  // became a self-loop under contraction
    edges.push_back({qu, qv, e.conductance});
    origin.push_back(id);
  }
  return {Network(reps.size(), std::move(edges)), std::move(map), std::move(origin)};
}

}  // namespace usflab
