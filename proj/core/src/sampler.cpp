#include "usflab/sampler.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "usflab/errors.hpp"

namespace usflab {

namespace {

// Integer cumulative conductance weights over incident(v), denominators
// cleared by the per-vertex lcm so draws stay exact.
std::vector<BigInt> cumulative_weights(const Network& net, VertexId v) {
  const auto& incident = net.incident(v);
  BigInt scale = 1;
  for (OrientedEdge oe : incident) {
    scale = boost::multiprecision::lcm(scale, denominator(net.edge(oe.id).conductance));
  }
  std::vector<BigInt> cumulative;
  cumulative.reserve(incident.size());
  BigInt running = 0;
  for (OrientedEdge oe : incident) {
    const Rational& c = net.edge(oe.id).conductance;
    running += numerator(c) * (scale / denominator(c));
    cumulative.push_back(running);
  }
  return cumulative;
}

OrientedEdge draw_from_cumulative(const Network& net, VertexId v,
                                  const std::vector<BigInt>& cumulative,
                                  RngHandle& rng) {
  if (cumulative.empty()) {
    raise(Errc::bad_params, "random walk from an isolated vertex");
  }
  BigInt r = uniform_below(rng, cumulative.back());
  std::size_t idx = std::size_t(
      std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
  return net.incident(v)[idx];
}

}  // namespace

OrientedEdge walk_step(const Network& net, VertexId v, RngHandle& rng) {
  net.check_vertex(v);
  return draw_from_cumulative(net, v, cumulative_weights(net, v), rng);
}

WalkTable::WalkTable(const Network& net) : net_(&net) {
  cumulative_.reserve(net.vertex_count());
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    cumulative_.push_back(cumulative_weights(net, v));
  }
}

OrientedEdge WalkTable::step(VertexId v, RngHandle& rng) const {
  net_->check_vertex(v);
  return draw_from_cumulative(*net_, v, cumulative_[v], rng);
}

std::vector<VertexId> loop_erase(std::span<const VertexId> path) {
  std::vector<VertexId> out;
  std::unordered_map<VertexId, std::size_t> position;
  for (VertexId x : path) {
    auto it = position.find(x);
    if (it != position.end()) {
      for (std::size_t i = it->second + 1; i < out.size(); ++i) {
        position.erase(out[i]);
      }
      out.resize(it->second + 1);
    } else {
      position.emplace(x, out.size());
      out.push_back(x);
    }
  }
  return out;
}

std::vector<VertexId> loop_erase_chronological(std::span<const VertexId> path) {
  std::vector<VertexId> out;
  std::size_t i = 0;
  while (i < path.size()) {
    out.push_back(path[i]);
    std::size_t last = i;
    for (std::size_t k = i + 1; k < path.size(); ++k) {
      if (path[k] == path[i]) last = k;
    }
    i = last + 1;
  }
  return out;
}

namespace {

// Spanning-tree check shared by the containers; fills a reason when failing.
bool check_spanning_tree(const Network& net, const TreeKey& sorted_ids,
                         std::string* why) {
  std::size_t n = net.vertex_count();
  if (sorted_ids.size() + 1 != n) {
    if (why) *why = "edge count is not vertex count minus one";
    return false;
  }
  std::vector<VertexId> parent(n);
  for (VertexId v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < sorted_ids.size(); ++i) {
    if (sorted_ids[i] >= net.edge_count()) {
      if (why) *why = "unknown edge id";
      return false;
    }
    if (i > 0 && sorted_ids[i] == sorted_ids[i - 1]) {
      if (why) *why = "duplicate edge id";
      return false;
    }
    const Edge& e = net.edge(sorted_ids[i]);
    VertexId a = find(e.u);
    VertexId b = find(e.v);
    if (a == b) {
      if (why) *why = "edges contain a cycle";
      return false;
    }
    parent[a] = b;
  }
  return true;  // n-1 acyclic edges on n vertices always span
}

std::vector<std::vector<OrientedEdge>> build_adjacency(const Network& net,
                                                       const TreeKey& ids) {
  std::vector<std::vector<OrientedEdge>> adjacency(net.vertex_count());
  for (EdgeId id : ids) {
    const Edge& e = net.edge(id);
    adjacency[e.u].push_back({id, true});
    adjacency[e.v].push_back({id, false});
  }
  return adjacency;
}

void adjacency_insert(std::vector<std::vector<OrientedEdge>>& adjacency,
                      const Network& net, EdgeId id) {
  const Edge& e = net.edge(id);
  auto add = [&](VertexId v, OrientedEdge oe) {
    auto& list = adjacency[v];
    auto it = std::lower_bound(list.begin(), list.end(), oe.id,
                               [](OrientedEdge a, EdgeId b) { return a.id < b; });
    list.insert(it, oe);
  };
  add(e.u, {id, true});
  add(e.v, {id, false});
}

void adjacency_remove(std::vector<std::vector<OrientedEdge>>& adjacency,
                      const Network& net, EdgeId id) {
  const Edge& e = net.edge(id);
  for (VertexId v : {e.u, e.v}) {
    auto& list = adjacency[v];
    std::erase_if(list, [&](OrientedEdge oe) { return oe.id == id; });
  }
}

}  // namespace

bool is_spanning_tree(const Network& net, const TreeKey& edge_ids) {
  TreeKey sorted = edge_ids;
  std::sort(sorted.begin(), sorted.end());
  return check_spanning_tree(net, sorted, nullptr);
}

namespace {

// Shared structural audit: edge list sorted and spanning, adjacency in sync.
void audit_edges_and_adjacency(const Network& net, const TreeKey& edges,
                               const auto& incident_of) {
  if (!std::is_sorted(edges.begin(), edges.end())) {
    raise(Errc::inconsistent_forest, "edge list lost its ordering");
  }
  std::string why;
  if (!check_spanning_tree(net, edges, &why)) {
    raise(Errc::inconsistent_forest, why);
  }
  std::size_t listed = 0;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    for (OrientedEdge oe : incident_of(v)) {
      if (net.tail(oe) != v) {
        raise(Errc::inconsistent_forest, "adjacency entry with wrong tail");
      }
      if (!std::binary_search(edges.begin(), edges.end(), oe.id)) {
        raise(Errc::inconsistent_forest, "adjacency lists a non-tree edge");
      }
      ++listed;
    }
  }
  if (listed != 2 * edges.size()) {
    raise(Errc::inconsistent_forest, "adjacency size drifted from edge set");
  }
}

}  // namespace

void validate_tree(const SpanningTree& tree) {
  audit_edges_and_adjacency(tree.network(), tree.edges(),
                            [&](VertexId v) { return tree.incident(v); });
}

void validate_forest(const BoundaryForest& forest) {
  const Network& net = forest.network();
  audit_edges_and_adjacency(net, forest.edges(),
                            [&](VertexId v) { return forest.incident(v); });
  // Every parent chain must use forest edges and reach the wired vertex.
  VertexId wired = forest.wired().wired_vertex;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (v == wired) continue;
    VertexId x = v;
    std::size_t hops = 0;
    while (x != wired) {
      OrientedEdge up = forest.parent(x);
      if (!forest.contains(up.id) || net.tail(up) != x) {
        raise(Errc::inconsistent_forest, "parent link leaves the forest");
      }
      x = net.head(up);
      if (++hops > net.vertex_count()) {
        raise(Errc::inconsistent_forest, "parent chain does not terminate");
      }
    }
  }
}

SpanningTree::SpanningTree(const Network& net, TreeKey edge_ids)
    : net_(&net), edges_(std::move(edge_ids)) {
  std::sort(edges_.begin(), edges_.end());
  std::string why;
  if (!check_spanning_tree(net, edges_, &why)) {
    raise(Errc::inconsistent_forest, why);
  }
  present_.assign(net.edge_count(), 0);
  for (EdgeId id : edges_) present_[id] = 1;
  adjacency_ = build_adjacency(net, edges_);
}

bool SpanningTree::contains(EdgeId id) const {
  net_->check_edge(id);
  return present_[id] != 0;
}

void SpanningTree::replace(EdgeId removed, EdgeId inserted) {
  if (!contains(removed)) raise(Errc::inconsistent_forest, "removed edge absent");
  if (contains(inserted)) raise(Errc::inconsistent_forest, "inserted edge present");

  TreeKey next = edges_;
  next.erase(std::lower_bound(next.begin(), next.end(), removed));
  next.insert(std::lower_bound(next.begin(), next.end(), inserted), inserted);
  std::string why;
  if (!check_spanning_tree(*net_, next, &why)) {
    raise(Errc::inconsistent_forest, why);
  }

  edges_ = std::move(next);
  present_[removed] = 0;
  present_[inserted] = 1;
  adjacency_remove(adjacency_, *net_, removed);
  adjacency_insert(adjacency_, *net_, inserted);
}

BoundaryForest::BoundaryForest(const WiredNetwork& wnet, TreeKey edge_ids)
    : wnet_(&wnet), edges_(std::move(edge_ids)) {
  std::sort(edges_.begin(), edges_.end());
  std::string why;
  if (!check_spanning_tree(wnet.network, edges_, &why)) {
    raise(Errc::inconsistent_forest, why);
  }
  present_.assign(wnet.network.edge_count(), 0);
  for (EdgeId id : edges_) present_[id] = 1;
  adjacency_ = build_adjacency(wnet.network, edges_);
  rebuild_parents();
}

bool BoundaryForest::contains(EdgeId id) const {
  wnet_->network.check_edge(id);
  return present_[id] != 0;
}

OrientedEdge BoundaryForest::parent(VertexId v) const {
  wnet_->network.check_vertex(v);
  if (v == wnet_->wired_vertex) {
    raise(Errc::wired_endpoint, "the wired vertex has no parent");
  }
  return parent_[v];
}

void BoundaryForest::replace(EdgeId removed, EdgeId inserted) {
  if (!contains(removed)) raise(Errc::inconsistent_forest, "removed edge absent");
  if (contains(inserted)) raise(Errc::inconsistent_forest, "inserted edge present");

  TreeKey next = edges_;
  next.erase(std::lower_bound(next.begin(), next.end(), removed));
  next.insert(std::lower_bound(next.begin(), next.end(), inserted), inserted);
  std::string why;
  if (!check_spanning_tree(wnet_->network, next, &why)) {
    raise(Errc::inconsistent_forest, why);
  }

  edges_ = std::move(next);
  present_[removed] = 0;
  present_[inserted] = 1;
  adjacency_remove(adjacency_, wnet_->network, removed);
  adjacency_insert(adjacency_, wnet_->network, inserted);
  rebuild_parents();
}

void BoundaryForest::rebuild_parents() {
  const Network& net = wnet_->network;
  parent_.assign(net.vertex_count(), OrientedEdge{});
  std::vector<char> seen(net.vertex_count(), 0);
  std::deque<VertexId> queue{wnet_->wired_vertex};
  seen[wnet_->wired_vertex] = 1;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (OrientedEdge oe : adjacency_[x]) {  // ascending edge id: deterministic
      VertexId y = net.head(oe);
      if (!seen[y]) {
        seen[y] = 1;
        parent_[y] = oe.reversed();  // oriented y -> x, toward the wired vertex
        queue.push_back(y);
      }
    }
  }
}

namespace {

struct WilsonState {
  explicit WilsonState(const Network& net)
      : table(net),
        in_tree(net.vertex_count(), 0),
        stamp(net.vertex_count(), 0),
        position(net.vertex_count(), 0) {}

  WalkTable table;
  std::vector<char> in_tree;
  TreeKey tree_edges;
  std::uint64_t steps = 0;

  // Per-walk visit bookkeeping, recycled via epoch stamps.
  std::vector<std::uint32_t> stamp;
  std::vector<std::size_t> position;
  std::uint32_t epoch = 0;
};

// One loop-erased walk from `start` into the current tree, committed.
void wilson_walk(const Network& net, WilsonState& state, VertexId start,
                 RngHandle& rng) {
  if (state.in_tree[start]) return;

  ++state.epoch;
  std::vector<VertexId> path{start};
  std::vector<OrientedEdge> taken;
  state.stamp[start] = state.epoch;
  state.position[start] = 0;

  VertexId x = start;
  while (!state.in_tree[x]) {
    if (++state.steps > kStepCap) {
      raise(Errc::step_cap_exceeded, "random walk exceeded the step budget");
    }
    OrientedEdge oe = state.table.step(x, rng);
    VertexId y = net.head(oe);
    if (state.stamp[y] == state.epoch) {
      // Revisit: erase the loop walked since the first visit to y.
      std::size_t keep = state.position[y] + 1;
      for (std::size_t i = keep; i < path.size(); ++i) state.stamp[path[i]] = 0;
      path.resize(keep);
      taken.resize(keep - 1);
    } else {
      state.stamp[y] = state.epoch;
      state.position[y] = path.size();
      path.push_back(y);
      taken.push_back(oe);
    }
    x = path.back();
  }

  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    state.in_tree[path[i]] = 1;
    state.tree_edges.push_back(taken[i].id);
  }
}

}  // namespace

SpanningTree wilson_ust(const Network& net, VertexId root,
                        std::span<const VertexId> order, RngHandle& rng) {
  net.check_vertex(root);
  WilsonState state(net);
  state.in_tree[root] = 1;
  for (VertexId v : order) {
    net.check_vertex(v);
    wilson_walk(net, state, v, rng);
  }
  // Sweep for anything the caller's order missed; no-op when it was complete.
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    wilson_walk(net, state, v, rng);
  }
  return SpanningTree(net, std::move(state.tree_edges));
}

SpanningTree wilson_ust(const Network& net, RngHandle& rng) {
  return wilson_ust(net, 0, {}, rng);
}

SpanningTree wilson_deferred(const Network& net, VertexId root,
                             std::span<const VertexId> deferred, RngHandle& rng) {
  std::vector<char> is_deferred(net.vertex_count(), 0);
  for (VertexId v : deferred) {
    net.check_vertex(v);
    is_deferred[v] = 1;
  }
  std::vector<VertexId> order;
  order.reserve(net.vertex_count());
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (!is_deferred[v]) order.push_back(v);
  }
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (is_deferred[v]) order.push_back(v);
  }
  return wilson_ust(net, root, order, rng);
}

SpanningTree sample_fusf_truncation(const Network& net, RngHandle& rng) {
  return wilson_ust(net, rng);
}

BoundaryForest sample_wusf_truncation(const WiredNetwork& wnet, RngHandle& rng) {
  SpanningTree tree = wilson_ust(wnet.network, wnet.wired_vertex, {}, rng);
  return BoundaryForest(wnet, tree.edges());
}

}  // namespace usflab
