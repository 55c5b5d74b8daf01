#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "usflab/network.hpp"

namespace usflab {

// A spanning tree (or forest) is keyed by its sorted edge-id list.
struct WeightedTree {
  TreeKey edges;
  Rational weight;
};

// Exact distribution over spanning trees.  For the enumeration route the
// weight of a tree is the product of its edge conductances; pushforward and
// conditioned routes store plain probability mass instead.  Either way the
// distribution is weight / total_weight, keys are unique and sorted.
class ExactTreeDistribution {
 public:
  ExactTreeDistribution() = default;
  explicit ExactTreeDistribution(std::vector<WeightedTree> trees);

  const std::vector<WeightedTree>& trees() const { return trees_; }
  const Rational& total_weight() const { return total_; }

  // Probability of a tree key; zero when absent.
  Rational probability(const TreeKey& key) const;
  bool contains(const TreeKey& key) const;

  // Equality as probability measures (weights may differ by a global scale).
  bool same_distribution(const ExactTreeDistribution& other) const;

 private:
  std::vector<WeightedTree> trees_;  // sorted by key
  Rational total_ = 0;
};

// Enumeration refuses to materialize more trees than this.
inline constexpr std::uint64_t kEnumerationGuard = 1'000'000;

// Number of spanning trees, conductances ignored (matrix-tree determinant).
BigInt spanning_tree_count(const Network& net);

// Every spanning tree, by deletion-contraction.  The tree count is
// preflighted against kEnumerationGuard (Errc::too_many_trees).
ExactTreeDistribution enumerate_spanning_trees(const Network& net);

// Total spanning-tree weight by a cofactor determinant of the weighted
// Laplacian, computed fraction-free.  Independent of enumeration.
Rational tree_weight_total(const Network& net);

// Exact effective resistance between two vertices.
Rational effective_resistance(const Network& net, VertexId u, VertexId v);

struct CurrentFlow {
  VertexId source = 0;
  VertexId sink = 0;
  // Net current through each edge in its stored u->v orientation; self-loops
  // carry none.
  std::vector<Rational> edge_current;
  // Potentials with the sink grounded at zero.
  std::vector<Rational> potential;

  // Current leaving `tail(oe)` through oe; negative when it flows against oe.
  Rational through(const Network& net, OrientedEdge oe) const;
};

// Unit current flow between distinct vertices (Errc::bad_params otherwise).
CurrentFlow unit_current_flow(const Network& net, VertexId source, VertexId sink);
// Unit flow from tail to head of an edge; Errc::self_loop for loops.
CurrentFlow unit_current_flow(const Network& net, OrientedEdge e);

// P(e in UST) = c(e) * R_eff(endpoints); Errc::self_loop for loops.
Rational ust_edge_marginal(const Network& net, EdgeId e);

// Law of the first tree-path edge out of tail(e) toward head(e) under the
// UST, by enumeration.  One entry per non-loop oriented edge with the same
// tail, in incidence order; probabilities may be zero.
std::vector<std::pair<OrientedEdge, Rational>> direction_distribution(
    const Network& net, OrientedEdge e);

// UST conditioned on containing `required` and avoiding `forbidden`
// (Errc::null_conditioning_event when no spanning tree qualifies).
ExactTreeDistribution exact_conditioned_distribution(
    const Network& net, std::span<const EdgeId> required,
    std::span<const EdgeId> forbidden);

// Law of one conductance-biased cycle-breaking update at v applied to a UST
// draw: mass sum over (tree, oriented edge at v) pairs.  Stored weights are
// probabilities.
ExactTreeDistribution exact_update_pushforward(const Network& net, VertexId v);

// Wired analogue at an interior vertex: trees are spanning trees of the wired
// network, updates follow the boundary-forest rules (Errc::wired_endpoint if
// v is the wired vertex).
ExactTreeDistribution exact_update_pushforward(const WiredNetwork& wnet,
                                               VertexId v);

// Double-precision effective resistance via a sparse Cholesky solve; the one
// deliberately non-rational solver, for networks beyond enumeration scale.
double effective_resistance_numeric(const Network& net, VertexId u, VertexId v);

// Distribution text format: one 't <num>/<den> <edge>...' row per tree in key
// order, then a 'total <num>/<den>' footer.
std::string serialize_distribution(const ExactTreeDistribution& dist);
ExactTreeDistribution parse_distribution(std::string_view text);

}  // namespace usflab
