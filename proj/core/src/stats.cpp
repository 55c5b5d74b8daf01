#include "usflab/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <deque>

#include "usflab/errors.hpp"

namespace usflab {

namespace {

struct Dsu {
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

// Partition from a union-find pass, component ids ranked by lowest member.
// Vertices with skip[v] set are excluded entirely.
ComponentPartition partition_from(const Network& net, Dsu& dsu,
                                  const std::vector<char>& skip) {
  ComponentPartition parts;
  parts.component_of.assign(net.vertex_count(), ComponentPartition::kNoComponent);
  std::vector<std::uint32_t> index_of_root(net.vertex_count(),
                                           ComponentPartition::kNoComponent);
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (skip[v]) continue;
    std::size_t root = dsu.find(v);
    if (index_of_root[root] == ComponentPartition::kNoComponent) {
      index_of_root[root] = std::uint32_t(parts.members.size());
      parts.members.emplace_back();
    }
    parts.component_of[v] = index_of_root[root];
    parts.members[index_of_root[root]].push_back(v);
  }
  return parts;
}

}  // namespace

ComponentPartition components(const Network& net, const TreeKey& edges) {
  Dsu dsu(net.vertex_count());
  for (EdgeId id : edges) {
    net.check_edge(id);
    const Edge& e = net.edge(id);
    dsu.unite(e.u, e.v);
  }
  std::vector<char> skip(net.vertex_count(), 0);
  return partition_from(net, dsu, skip);
}

ComponentPartition forest_components(const BoundaryForest& forest) {
  const Network& net = forest.network();
  VertexId wired = forest.wired().wired_vertex;
  Dsu dsu(net.vertex_count());
  for (EdgeId id : forest.edges()) {
    const Edge& e = net.edge(id);
    if (e.u == wired || e.v == wired) continue;
    dsu.unite(e.u, e.v);
  }
  std::vector<char> skip(net.vertex_count(), 0);
  skip[wired] = 1;
  return partition_from(net, dsu, skip);
}

std::vector<VertexId> ball_vertices(const Network& net, VertexId v,
                                    std::size_t radius, VertexId avoid) {
  net.check_vertex(v);
  if (v == avoid) raise(Errc::bad_params, "ball center is the avoided vertex");
  std::vector<std::size_t> dist(net.vertex_count(), SIZE_MAX);
  std::deque<VertexId> queue{v};
  dist[v] = 0;
  std::vector<VertexId> ball{v};
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    if (dist[x] == radius) continue;
    for (OrientedEdge oe : net.incident(x)) {
      VertexId y = net.head(oe);
      if (y == avoid || dist[y] != SIZE_MAX) continue;
      dist[y] = dist[x] + 1;
      ball.push_back(y);
      queue.push_back(y);
    }
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

std::vector<VertexId> past_set(const BoundaryForest& forest, VertexId v) {
  const Network& net = forest.network();
  net.check_vertex(v);
  VertexId wired = forest.wired().wired_vertex;
  if (v == wired) raise(Errc::wired_endpoint, "the wired vertex has no past");

  // Children of x = forest neighbors whose parent edge leads back to x.
  std::vector<VertexId> past;
  std::deque<VertexId> queue{v};
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    past.push_back(x);
    for (OrientedEdge oe : forest.incident(x)) {
      VertexId y = net.head(oe);
      if (y == wired) continue;
      OrientedEdge up = forest.parent(y);
      if (up.id == oe.id && net.head(up) == x) queue.push_back(y);
    }
  }
  std::sort(past.begin(), past.end());
  return past;
}

std::vector<VertexId> core_vertices(const Network& net, const TreeKey& edges,
                                    std::span<const VertexId> marks) {
  for (EdgeId id : edges) net.check_edge(id);
  std::vector<char> is_mark(net.vertex_count(), 0);
  for (VertexId m : marks) {
    net.check_vertex(m);
    is_mark[m] = 1;
  }

  std::vector<VertexId> core;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    Dsu dsu(net.vertex_count());
    for (EdgeId id : edges) {
      const Edge& e = net.edge(id);
      if (e.u == v || e.v == v) continue;
      dsu.unite(e.u, e.v);
    }
    std::vector<char> marked_root(net.vertex_count(), 0);
    std::size_t marked_parts = 0;
    for (VertexId m = 0; m < net.vertex_count(); ++m) {
      if (!is_mark[m] || m == v) continue;
      std::size_t root = dsu.find(m);
      if (!marked_root[root]) {
        marked_root[root] = 1;
        ++marked_parts;
      }
    }
    if (marked_parts >= 2) core.push_back(v);
  }
  return core;
}

std::size_t ends_lower_bound(const BoundaryForest& forest, VertexId v,
                             std::size_t radius) {
  const Network& net = forest.network();
  net.check_vertex(v);
  VertexId wired = forest.wired().wired_vertex;
  if (v == wired) raise(Errc::wired_endpoint, "center must be interior");

  // v's interior component, then drop the interior ball around v.
  ComponentPartition parts = forest_components(forest);
  std::uint32_t home = parts.component_of[v];
  std::vector<char> removed(net.vertex_count(), 0);
  for (VertexId b : ball_vertices(net, v, radius, wired)) removed[b] = 1;

  Dsu dsu(net.vertex_count());
  for (EdgeId id : forest.edges()) {
    const Edge& e = forest.network().edge(id);
    if (e.u == wired || e.v == wired) continue;
    if (removed[e.u] || removed[e.v]) continue;
    if (parts.component_of[e.u] != home) continue;
    dsu.unite(e.u, e.v);
  }

  // A branch counts when it still touches the boundary in the network
  // itself: any residual edge into the wired vertex keeps it attached.
  std::vector<char> attached_root(net.vertex_count(), 0);
  std::size_t attached = 0;
  for (VertexId u = 0; u < net.vertex_count(); ++u) {
    if (u == wired || removed[u] || parts.component_of[u] != home) continue;
    bool touches_boundary = false;
    for (OrientedEdge oe : net.incident(u)) {
      if (net.head(oe) == wired) {
        touches_boundary = true;
        break;
      }
    }
    if (!touches_boundary) continue;
    std::size_t root = dsu.find(u);
    if (!attached_root[root]) {
      attached_root[root] = 1;
      ++attached;
    }
  }
  return attached;
}

std::vector<std::uint64_t> hausdorff_counts(const Network& net,
                                            std::span<const VertexId> component,
                                            VertexId v, std::size_t max_radius,
                                            VertexId avoid) {
  std::vector<char> in_component(net.vertex_count(), 0);
  for (VertexId u : component) {
    net.check_vertex(u);
    in_component[u] = 1;
  }
  if (!in_component[v]) {
    raise(Errc::bad_params, "center lies outside the component");
  }

  // Single breadth-first pass; bucket vertices by distance as they appear.
  std::vector<std::uint64_t> counts(max_radius + 1, 0);
  std::vector<std::size_t> dist(net.vertex_count(), SIZE_MAX);
  std::deque<VertexId> queue{v};
  dist[v] = 0;
  counts[0] = 1;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    if (dist[x] == max_radius) continue;
    for (OrientedEdge oe : net.incident(x)) {
      VertexId y = net.head(oe);
      if (y == avoid || dist[y] != SIZE_MAX) continue;
      dist[y] = dist[x] + 1;
      if (in_component[y]) counts[dist[y]] += 1;
      queue.push_back(y);
    }
  }
  // Accumulate: entry r is the count within distance r, not at distance r.
  for (std::size_t r = 1; r <= max_radius; ++r) counts[r] += counts[r - 1];
  return counts;
}

std::vector<Rational> spine_profile(const BoundaryForest& forest, VertexId v) {
  const Network& net = forest.network();
  net.check_vertex(v);
  VertexId wired = forest.wired().wired_vertex;
  if (v == wired) raise(Errc::wired_endpoint, "the wired vertex has no spine");

  std::vector<Rational> profile;
  VertexId x = v;
  while (x != wired) {
    OrientedEdge up = forest.parent(x);
    profile.push_back(net.edge(up.id).conductance);
    x = net.head(up);
  }
  return profile;
}

double mean_log_conductance(std::span<const Rational> profile) {
  if (profile.empty()) raise(Errc::bad_params, "empty conductance profile");
  double sum = 0.0;
  for (const Rational& c : profile) sum += std::log(c.convert_to<double>());
  return sum / double(profile.size());
}

std::vector<Rational> estimate_frequencies(const Network& net,
                                           const ComponentPartition& parts,
                                           VertexId start, std::uint64_t n,
                                           RngHandle& rng) {
  net.check_vertex(start);
  if (n == 0) raise(Errc::bad_params, "walk needs at least one step");
  if (parts.component_of.size() != net.vertex_count()) {
    raise(Errc::bad_params, "partition does not match the network");
  }

  WalkTable table(net);
  std::vector<std::uint64_t> visits(parts.count(), 0);
  std::uint64_t counted = 0;
  VertexId x = start;
  for (std::uint64_t i = 0; i < n; ++i) {
    x = net.head(table.step(x, rng));
    std::uint32_t c = parts.component_of[x];
    if (c != ComponentPartition::kNoComponent) {
      ++visits[c];
      ++counted;
    }
  }
  if (counted == 0) {
    raise(Errc::bad_params, "walk never landed in a counted component");
  }
  std::vector<Rational> freq;
  freq.reserve(parts.count());
  for (std::uint64_t count : visits) freq.push_back(Rational(count, counted));
  return freq;
}

void EmpiricalDistribution::add(TreeKey key) {
  std::sort(key.begin(), key.end());
  ++counts[std::move(key)];
  ++total;
}

GofResult chi_square_gof(const EmpiricalDistribution& empirical,
                         const ExactTreeDistribution& exact) {
  for (const auto& [key, count] : empirical.counts) {
    if (count > 0 && !exact.contains(key)) {
      raise(Errc::unsupported_outcome,
            "observed a configuration outside the exact support");
    }
  }

  // One cell per support key; pool ascending (expected, key) until every pool
  // holds expectation at least 5.
  struct Cell {
    double expected;
    std::uint64_t observed;
    const TreeKey* key;
  };
  std::vector<Cell> cells;
  cells.reserve(exact.trees().size());
  double n = double(empirical.total);
  for (const WeightedTree& t : exact.trees()) {
    double p = (t.weight / exact.total_weight()).convert_to<double>();
    auto it = empirical.counts.find(t.edges);
    std::uint64_t observed = (it == empirical.counts.end()) ? 0 : it->second;
    cells.push_back({p * n, observed, &t.edges});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.expected != b.expected) return a.expected < b.expected;
    return *a.key < *b.key;
  });

  std::vector<std::pair<double, double>> pools;  // (expected, observed)
  for (const Cell& c : cells) {
    if (!pools.empty() && pools.back().first < 5.0) {
      pools.back().first += c.expected;
      pools.back().second += double(c.observed);
    } else {
      pools.push_back({c.expected, double(c.observed)});
    }
  }
  if (pools.size() > 1 && pools.back().first < 5.0) {
    auto last = pools.back();
    pools.pop_back();
    pools.back().first += last.first;
    pools.back().second += last.second;
  }

  GofResult result;
  result.cells = pools.size();
  for (const auto& [expected, observed] : pools) {
    double diff = observed - expected;
    result.statistic += diff * diff / expected;
  }
  if (pools.size() <= 1) {
    result.p_value = 1.0;
    return result;
  }
  double df = double(pools.size() - 1);
  result.p_value = boost::math::gamma_q(df / 2.0, result.statistic / 2.0);
  return result;
}

MtpResult mtp_check(const Network& net, const Transport& transport) {
  auto mass = [&](VertexId u, VertexId v) {
    Rational m = transport(net, u, v);
    if (m < 0) raise(Errc::negative_mass, "transport sent negative mass");
    return m;
  };

  MtpResult result{0, 0};
  std::size_t n = net.vertex_count();
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) result.sent += mass(u, v);
  }
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u = 0; u < n; ++u) result.received += mass(u, v);
  }
  result.sent /= int(n);
  result.received /= int(n);
  return result;
}

Rational reversibility_check(const Network& net) {
  // Exact law of (root, first step) with a conductance-biased root: an edge
  // {u,v} contributes c/mass to the ordered pair (u,v) and to (v,u); a
  // self-loop contributes its conductance once, to (u,u).
  Rational total = net.conductance_mass();
  std::map<std::pair<VertexId, VertexId>, Rational> law;
  for (const Edge& e : net.edges()) {
    if (e.is_self_loop()) {
      law[{e.u, e.u}] += e.conductance / total;
    } else {
      law[{e.u, e.v}] += e.conductance / total;
      law[{e.v, e.u}] += e.conductance / total;
    }
  }
  Rational worst = 0;
  for (const auto& [pair, mass] : law) {
    auto flipped = law.find({pair.second, pair.first});
    Rational other = (flipped == law.end()) ? Rational(0) : flipped->second;
    Rational diff = mass - other;
    if (diff < 0) diff = -diff;
    if (diff > worst) worst = diff;
  }
  return worst;
}

Rational average_degree(const Network& net, const TreeKey& edges,
                        std::span<const VertexId> vertex_set) {
  if (vertex_set.empty()) raise(Errc::bad_params, "empty vertex set");
  std::vector<std::uint64_t> degree(net.vertex_count(), 0);
  for (EdgeId id : edges) {
    net.check_edge(id);
    const Edge& e = net.edge(id);
    degree[e.u] += 1;
    degree[e.v] += 1;  // a self-loop counts twice toward degree
  }
  BigInt sum = 0;
  for (VertexId v : vertex_set) {
    net.check_vertex(v);
    sum += degree[v];
  }
  return Rational(sum, BigInt(vertex_set.size()));
}

}  // namespace usflab
