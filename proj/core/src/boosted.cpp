#include <cmath>

#include "usflab/errors.hpp"
#include "usflab/generators.hpp"
#include "usflab/sampler.hpp"
#include "usflab/stats.hpp"

namespace usflab {

namespace {

// Exact rational value of a finite double (every finite double is dyadic).
Rational exact_from_double(double d) {
  int exponent = 0;
  double mantissa = std::frexp(d, &exponent);          // d = mantissa * 2^e
  auto scaled = std::int64_t(std::ldexp(mantissa, 53)); // integer, exact
  Rational value(scaled);
  int shift = exponent - 53;
  if (shift >= 0) {
    value *= Rational(BigInt(1) << shift);
  } else {
    value /= Rational(BigInt(1) << (-shift));
  }
  return value;
}

// exp(x) for x >= 0 as a rational with relative error below 1e-12: split
// x/ln2 into integer and fractional parts so the double step stays in [1,2)
// where it is exact to one ulp, then scale by the exact power of two.
Rational rational_exp(double x) {
  double log2x = x / std::log(2.0);
  double integral = std::floor(log2x);
  Rational mantissa = exact_from_double(std::exp2(log2x - integral));
  return mantissa * Rational(BigInt(1) << std::uint64_t(integral));
}

}  // namespace

Network boosted_tree(int radius, std::uint64_t seed) {
  WiredNetwork wnet = tree_ball_wired(radius);
  RngHandle rng(seed);
  BoundaryForest forest = sample_wusf_truncation(wnet, rng);
  ComponentPartition parts = forest_components(forest);

  // One uniform mark per component, drawn in component order.
  std::vector<double> mark(parts.count());
  for (double& u : mark) u = uniform_unit(rng);

  // The ball network shares vertex and edge ids with the wired one; only the
  // leaf-to-boundary edges are extra, and those never appear here.
  Network ball = tree_ball(radius);
  std::vector<Edge> edges = ball.edges();
  for (EdgeId id = 0; id < ball.edge_count(); ++id) {
    if (!forest.contains(id)) continue;  // off-forest edges stay at 1
    const Edge& e = edges[id];
    // The child endpoint is the one whose own parent edge this is.
    VertexId child = (forest.parent(e.u).id == id) ? e.u : e.v;
    double past_size = double(past_set(forest, child).size());
    double u = mark[parts.component_of[child]];
    edges[id].conductance = rational_exp((1.0 + u) * past_size);
  }
  return Network(ball.vertex_count(), std::move(edges));
}

}  // namespace usflab
