#include "usflab/exact.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "bareiss.hpp"

namespace usflab {

ExactTreeDistribution::ExactTreeDistribution(std::vector<WeightedTree> trees)
    : trees_(std::move(trees)) {
  std::sort(trees_.begin(), trees_.end(),
            [](const WeightedTree& a, const WeightedTree& b) { return a.edges < b.edges; });
  // Accumulation routes may produce one entry per (tree, update) pair; merge.
  std::size_t out = 0;
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (out > 0 && trees_[out - 1].edges == trees_[i].edges) {
      trees_[out - 1].weight += trees_[i].weight;
    } else {
      if (out != i) trees_[out] = std::move(trees_[i]);
      ++out;
    }
  }
  trees_.resize(out);
  for (const WeightedTree& t : trees_) {
    if (t.weight <= 0) raise(Errc::bad_params, "tree weights must be positive");
    total_ += t.weight;
  }
}

bool ExactTreeDistribution::contains(const TreeKey& key) const {
  auto it = std::lower_bound(
      trees_.begin(), trees_.end(), key,
      [](const WeightedTree& t, const TreeKey& k) { return t.edges < k; });
  return it != trees_.end() && it->edges == key;
}

Rational ExactTreeDistribution::probability(const TreeKey& key) const {
  auto it = std::lower_bound(
      trees_.begin(), trees_.end(), key,
      [](const WeightedTree& t, const TreeKey& k) { return t.edges < k; });
  if (it == trees_.end() || it->edges != key) return 0;
  return it->weight / total_;
}

bool ExactTreeDistribution::same_distribution(const ExactTreeDistribution& other) const {
  if (trees_.size() != other.trees_.size()) return false;
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (trees_[i].edges != other.trees_[i].edges) return false;
    if (trees_[i].weight * other.total_ != other.trees_[i].weight * total_) return false;
  }
  return true;
}

namespace {

// Common integer scale: the lcm of all conductance denominators.  Multiplying
// the Laplacian by it keeps every solve inside exact integer arithmetic.
BigInt conductance_scale(const Network& net) {
  BigInt s = 1;
  for (const Edge& e : net.edges()) {
    s = boost::multiprecision::lcm(s, denominator(e.conductance));
  }
  return s;
}

BigInt scaled_conductance(const Edge& e, const BigInt& s) {
  return numerator(e.conductance) * (s / denominator(e.conductance));
}

// Weighted Laplacian times `scale`, with `ground`'s row and column removed.
// Self-loops never enter a Laplacian.
detail::IntMatrix grounded_laplacian(const Network& net, VertexId ground,
                                     const BigInt& scale) {
  std::size_t n = net.vertex_count();
  auto index = [&](VertexId v) { return std::size_t(v > ground ? v - 1 : v); };
  detail::IntMatrix lap(n - 1, std::vector<BigInt>(n - 1, 0));
  for (const Edge& e : net.edges()) {
    if (e.is_self_loop()) continue;
    BigInt c = scaled_conductance(e, scale);
    if (e.u != ground) lap[index(e.u)][index(e.u)] += c;
    if (e.v != ground) lap[index(e.v)][index(e.v)] += c;
    if (e.u != ground && e.v != ground) {
      lap[index(e.u)][index(e.v)] -= c;
      lap[index(e.v)][index(e.u)] -= c;
    }
  }
  return lap;
}

// Potentials of a unit flow source -> sink, sink grounded at zero.
std::vector<Rational> unit_flow_potentials(const Network& net, VertexId source,
                                           VertexId sink) {
  std::size_t n = net.vertex_count();
  BigInt scale = conductance_scale(net);
  detail::IntMatrix lap = grounded_laplacian(net, sink, scale);
  std::vector<BigInt> rhs(n - 1, 0);
  auto index = [&](VertexId v) { return std::size_t(v > sink ? v - 1 : v); };
  rhs[index(source)] = scale;  // (scale*L) phi = scale*e_source

  std::vector<Rational> reduced = detail::solve(std::move(lap), std::move(rhs));
  std::vector<Rational> potential(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (v != sink) potential[v] = reduced[index(v)];
  }
  return potential;
}

}  // namespace

BigInt spanning_tree_count(const Network& net) {
  if (net.vertex_count() == 1) return 1;
  Network unit(net.vertex_count(), [&] {
    std::vector<Edge> edges = net.edges();
    for (Edge& e : edges) e.conductance = 1;
    return edges;
  }());
  return detail::determinant(grounded_laplacian(unit, 0, BigInt(1)));
}

Rational tree_weight_total(const Network& net) {
  std::size_t n = net.vertex_count();
  if (n == 1) return 1;
  BigInt scale = conductance_scale(net);
  BigInt det = detail::determinant(grounded_laplacian(net, 0, scale));
  // det(scale * L_reduced) = scale^(n-1) * weight total
  return Rational(det, boost::multiprecision::pow(scale, unsigned(n - 1)));
}

namespace {

struct MinorEdge {
  VertexId u, v;
  EdgeId original;
};

// Deletion-contraction over a connected multigraph with sparse vertex labels.
// `nv` tracks the abstract vertex count; labels never need to be dense.
void enumerate_rec(std::size_t nv, std::vector<MinorEdge> edges,
                   std::vector<EdgeId>& chosen, const Network& net,
                   std::vector<WeightedTree>& out) {
  // Contractions breed self-loops; they can never join a spanning tree.
  std::erase_if(edges, [](const MinorEdge& e) { return e.u == e.v; });

  if (nv == 1) {
    TreeKey key = chosen;
    std::sort(key.begin(), key.end());
    Rational weight = 1;
    for (EdgeId id : key) weight *= net.edge(id).conductance;
    out.push_back({std::move(key), std::move(weight)});
    return;
  }
  if (edges.size() < nv - 1) return;

  MinorEdge pick = edges.front();

  // Include: contract pick by folding its v-label into its u-label.
  {
    std::vector<MinorEdge> contracted(edges.begin() + 1, edges.end());
    for (MinorEdge& e : contracted) {
      if (e.u == pick.v) e.u = pick.u;
      if (e.v == pick.v) e.v = pick.u;
    }
    chosen.push_back(pick.original);
    enumerate_rec(nv - 1, std::move(contracted), chosen, net, out);
    chosen.pop_back();
  }

  // Exclude: delete pick; recurse only if the rest stays connected.
  {
    std::vector<MinorEdge> rest(edges.begin() + 1, edges.end());
    std::vector<VertexId> labels;
    labels.reserve(2 * rest.size());
    for (const MinorEdge& e : rest) {
      labels.push_back(e.u);
      labels.push_back(e.v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() == nv) {
      auto label_index = [&](VertexId v) {
        return std::size_t(std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
      };
      std::vector<std::size_t> parent(labels.size());
      for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::size_t components = labels.size();
      for (const MinorEdge& e : rest) {
        std::size_t a = find(label_index(e.u));
        std::size_t b = find(label_index(e.v));
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
      if (components == 1) {
        enumerate_rec(nv, std::move(rest), chosen, net, out);
      }
    }
  }
}

}  // namespace

ExactTreeDistribution enumerate_spanning_trees(const Network& net) {
  BigInt count = spanning_tree_count(net);
  if (count > kEnumerationGuard) {
    raise(Errc::too_many_trees, "network has " + count.str() + " spanning trees");
  }

  std::vector<MinorEdge> edges;
  edges.reserve(net.edge_count());
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    const Edge& e = net.edge(id);
    edges.push_back({e.u, e.v, id});
  }
  std::vector<WeightedTree> out;
  out.reserve(std::size_t(count));
  std::vector<EdgeId> chosen;
  enumerate_rec(net.vertex_count(), std::move(edges), chosen, net, out);

  ExactTreeDistribution dist{std::move(out)};
  if (BigInt(dist.trees().size()) != count) {
    raise(Errc::bad_params, "enumeration disagrees with the matrix-tree count");
  }
  return dist;
}

Rational effective_resistance(const Network& net, VertexId u, VertexId v) {
  net.check_vertex(u);
  net.check_vertex(v);
  if (u == v) return 0;
  return unit_flow_potentials(net, u, v)[u];
}

Rational CurrentFlow::through(const Network& net, OrientedEdge oe) const {
  net.check_edge(oe.id);
  return oe.forward ? edge_current[oe.id] : -edge_current[oe.id];
}

CurrentFlow unit_current_flow(const Network& net, VertexId source, VertexId sink) {
  net.check_vertex(source);
  net.check_vertex(sink);
  if (source == sink) raise(Errc::bad_params, "source and sink coincide");

  CurrentFlow flow;
  flow.source = source;
  flow.sink = sink;
  flow.potential = unit_flow_potentials(net, source, sink);
  flow.edge_current.reserve(net.edge_count());
  for (const Edge& e : net.edges()) {
    flow.edge_current.push_back(
        e.is_self_loop() ? Rational(0)
                         : e.conductance * (flow.potential[e.u] - flow.potential[e.v]));
  }
  return flow;
}

CurrentFlow unit_current_flow(const Network& net, OrientedEdge e) {
  net.check_edge(e.id);
  if (net.edge(e.id).is_self_loop()) {
    raise(Errc::self_loop, "no current flow across a self-loop");
  }
  return unit_current_flow(net, net.tail(e), net.head(e));
}

Rational ust_edge_marginal(const Network& net, EdgeId e) {
  net.check_edge(e);
  const Edge& edge = net.edge(e);
  if (edge.is_self_loop()) {
    raise(Errc::self_loop, "self-loops never join a spanning tree");
  }
  return edge.conductance * effective_resistance(net, edge.u, edge.v);
}

namespace {

// First edge of the unique tree path from -> to, oriented out of `from`.
OrientedEdge tree_path_first_edge(const Network& net, const TreeKey& tree,
                                  VertexId from, VertexId to) {
  std::vector<std::vector<OrientedEdge>> adj(net.vertex_count());
  for (EdgeId id : tree) {
    const Edge& e = net.edge(id);
    adj[e.u].push_back({id, true});
    adj[e.v].push_back({id, false});
  }
  // BFS back from `to`; pred[v] holds the oriented edge v -> next hop.
  std::vector<OrientedEdge> pred(net.vertex_count());
  std::vector<char> seen(net.vertex_count(), 0);
  std::deque<VertexId> queue{to};
  seen[to] = 1;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    if (x == from) return pred[from];
    for (OrientedEdge oe : adj[x]) {
      VertexId y = net.head(oe);
      if (!seen[y]) {
        seen[y] = 1;
        pred[y] = oe.reversed();  // oriented y -> x
        queue.push_back(y);
      }
    }
  }
  raise(Errc::bad_params, "vertices not connected in the given tree");
}

}  // namespace

std::vector<std::pair<OrientedEdge, Rational>> direction_distribution(
    const Network& net, OrientedEdge e) {
  net.check_edge(e.id);
  if (net.edge(e.id).is_self_loop()) {
    raise(Errc::self_loop, "direction is undefined for self-loops");
  }
  VertexId from = net.tail(e);
  VertexId to = net.head(e);

  ExactTreeDistribution dist = enumerate_spanning_trees(net);

  std::vector<std::pair<OrientedEdge, Rational>> result;
  for (OrientedEdge oe : net.incident(from)) {
    if (!net.edge(oe.id).is_self_loop()) result.push_back({oe, Rational(0)});
  }
  for (const WeightedTree& t : dist.trees()) {
    OrientedEdge first = tree_path_first_edge(net, t.edges, from, to);
    for (auto& [oe, mass] : result) {
      if (oe == first) {
        mass += t.weight;
        break;
      }
    }
  }
  for (auto& [oe, mass] : result) mass /= dist.total_weight();
  return result;
}

ExactTreeDistribution exact_conditioned_distribution(
    const Network& net, std::span<const EdgeId> required,
    std::span<const EdgeId> forbidden) {
  TreeKey req(required.begin(), required.end());
  TreeKey forb(forbidden.begin(), forbidden.end());
  std::sort(req.begin(), req.end());
  std::sort(forb.begin(), forb.end());
  for (EdgeId id : req) net.check_edge(id);
  for (EdgeId id : forb) net.check_edge(id);

  ExactTreeDistribution all = enumerate_spanning_trees(net);
  std::vector<WeightedTree> kept;
  for (const WeightedTree& t : all.trees()) {
    if (!std::includes(t.edges.begin(), t.edges.end(), req.begin(), req.end())) continue;
    bool avoids = true;
    for (EdgeId id : forb) {
      if (std::binary_search(t.edges.begin(), t.edges.end(), id)) {
        avoids = false;
        break;
      }
    }
    if (avoids) kept.push_back(t);
  }
  if (kept.empty()) {
    raise(Errc::null_conditioning_event, "no spanning tree satisfies the event");
  }
  return ExactTreeDistribution{std::move(kept)};
}

std::string serialize_distribution(const ExactTreeDistribution& dist) {
  std::ostringstream out;
  for (const WeightedTree& t : dist.trees()) {
    out << "t " << format_rational(t.weight);
    for (EdgeId id : t.edges) out << " " << id;
    out << "\n";
  }
  out << "total " << format_rational(dist.total_weight()) << "\n";
  return out.str();
}

namespace {

std::uint64_t parse_dist_uint(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    raise(Errc::parse_error, "malformed edge id");
  }
  return value;
}

}  // namespace

ExactTreeDistribution parse_distribution(std::string_view text) {
  std::vector<WeightedTree> trees;
  Rational declared_total = -1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    if (line.empty() || line.front() == '#') continue;

    std::istringstream stream{std::string(line)};
    std::string tag;
    stream >> tag;
    if (tag == "t") {
      std::string weight_text;
      if (!(stream >> weight_text)) raise(Errc::parse_error, "missing tree weight");
      WeightedTree t;
      t.weight = parse_rational(weight_text);
      std::string token;
      while (stream >> token) t.edges.push_back(EdgeId(parse_dist_uint(token)));
      if (!std::is_sorted(t.edges.begin(), t.edges.end())) {
        raise(Errc::parse_error, "tree edges must be ascending");
      }
      trees.push_back(std::move(t));
    } else if (tag == "total") {
      std::string total_text;
      if (!(stream >> total_text)) raise(Errc::parse_error, "missing total");
      declared_total = parse_rational(total_text);
    } else {
      raise(Errc::parse_error, "unexpected line in distribution file");
    }
  }
  ExactTreeDistribution dist{std::move(trees)};
  if (declared_total < 0) raise(Errc::parse_error, "missing total line");
  if (declared_total != dist.total_weight()) {
    raise(Errc::parse_error, "total does not match the sum of weights");
  }
  return dist;
}

}  // namespace usflab
