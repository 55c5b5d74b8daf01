#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "usflab/exact.hpp"
#include "usflab/sampler.hpp"

namespace usflab {

// Connected components of a forest edge set over a network's vertices.
// Component indices are ranked by each component's lowest vertex id.
struct ComponentPartition {
  static constexpr std::uint32_t kNoComponent = 0xFFFFFFFFu;

  std::vector<std::uint32_t> component_of;     // per vertex; kNoComponent = excluded
  std::vector<std::vector<VertexId>> members;  // per component, ascending

  std::size_t count() const { return members.size(); }
};

ComponentPartition components(const Network& net, const TreeKey& edges);

// Interior components of a boundary forest: forest edges touching the wired
// vertex are ignored and the wired vertex itself is excluded.
ComponentPartition forest_components(const BoundaryForest& forest);

// Vertices within network distance r of v.  `avoid` (if given) is treated as
// absent from the network, so paths through it do not count.
std::vector<VertexId> ball_vertices(const Network& net, VertexId v,
                                    std::size_t radius,
                                    VertexId avoid = kNoVertex);

// v together with every vertex whose chain of parent edges passes through v;
// ascending.  Errc::wired_endpoint if v is the wired vertex.
std::vector<VertexId> past_set(const BoundaryForest& forest, VertexId v);

// Vertices whose removal leaves at least two parts that each contain a mark.
// Marks stand in for the attachment points ("escapes to infinity" in the
// truncation reading); a removed vertex's own mark does not count.
std::vector<VertexId> core_vertices(const Network& net, const TreeKey& edges,
                                    std::span<const VertexId> marks);

// Number of boundary-attached pieces of v's interior component after the
// interior ball of radius r around v is removed.  A piece is attached when
// one of its vertices has a network edge to the wired vertex — the finite
// stand-in for a branch that keeps going.  Nondecreasing in r while the ball
// stays clear of such boundary-adjacent vertices.
std::size_t ends_lower_bound(const BoundaryForest& forest, VertexId v,
                             std::size_t radius);

// |ball(v, r) ∩ component| for r = 0..max_radius; Errc::bad_params unless v
// lies in the component.  `avoid` as in ball_vertices.
std::vector<std::uint64_t> hausdorff_counts(const Network& net,
                                            std::span<const VertexId> component,
                                            VertexId v, std::size_t max_radius,
                                            VertexId avoid = kNoVertex);

// Conductances along the parent chain from v to the wired vertex, in walk
// order.  Errc::wired_endpoint if v is the wired vertex.
std::vector<Rational> spine_profile(const BoundaryForest& forest, VertexId v);

// Mean of log(c) over a conductance profile; Errc::bad_params when empty.
double mean_log_conductance(std::span<const Rational> profile);

// Occupation fractions of an n-step conductance-weighted walk started at
// `start`: the fraction of X_1..X_n landing in each component, over the steps
// that land in any component at all (vertices with kNoComponent are skipped,
// e.g. the wired vertex).  Exact rationals summing to 1.
std::vector<Rational> estimate_frequencies(const Network& net,
                                           const ComponentPartition& parts,
                                           VertexId start, std::uint64_t n,
                                           RngHandle& rng);

// Empirical configuration counts keyed by canonical (sorted) edge-id lists.
struct EmpiricalDistribution {
  std::map<TreeKey, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(TreeKey key);
};

// Pearson goodness-of-fit of empirical counts against an exact distribution.
// Cells with expected count below 5 are pooled (ascending expectation, then
// key, greedily until each pool reaches 5).  Errc::unsupported_outcome if an
// observed key has no exact probability: the sampler produced something the
// oracle says is impossible.
struct GofResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t cells = 0;  // pools actually compared
};

GofResult chi_square_gof(const EmpiricalDistribution& empirical,
                         const ExactTreeDistribution& exact);

// Mass-transport consistency on a finite network with uniform root: the
// expectation of mass sent by the root and of mass received by the root,
// computed as the two iteration orders of the same double sum.  They must be
// equal; both are returned so callers can assert it.  Errc::negative_mass if
// the transport goes negative.
using Transport = std::function<Rational(const Network&, VertexId, VertexId)>;

struct MtpResult {
  Rational sent;
  Rational received;
};

MtpResult mtp_check(const Network& net, const Transport& transport);

// Maximum absolute difference between the exact laws of (root, first step)
// and (first step, root) when the root is conductance-biased: zero exactly,
// by detailed balance of the weighted walk.
Rational reversibility_check(const Network& net);

// Mean degree of `vertex_set` in the forest edge set; Errc::bad_params on an
// empty set.
Rational average_degree(const Network& net, const TreeKey& edges,
                        std::span<const VertexId> vertex_set);

}  // namespace usflab
