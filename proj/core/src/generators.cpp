#include "usflab/generators.hpp"

#include <numeric>

namespace usflab {

namespace {

Rational rational_pow(const Rational& base, int exponent) {
  using boost::multiprecision::pow;
  BigInt num = pow(numerator(base), unsigned(exponent));
  BigInt den = pow(denominator(base), unsigned(exponent));
  return Rational(num, den);
}

std::size_t checked_box_size(int dimension, int side) {
  if (dimension < 1) raise(Errc::bad_params, "dimension must be at least 1");
  if (side < 1) raise(Errc::bad_params, "side must be at least 1");
  std::size_t n = 1;
  for (int i = 0; i < dimension; ++i) {
    n *= std::size_t(side);
    if (n > (std::size_t(1) << 26)) raise(Errc::bad_params, "box too large");
  }
  return n;
}

// Decode coordinate x_dim of a mixed-radix vertex id.
int box_coord(std::size_t id, int side, int dim) {
  for (int i = 0; i < dim; ++i) id /= std::size_t(side);
  return int(id % std::size_t(side));
}

std::size_t box_stride(int side, int dim) {
  std::size_t s = 1;
  for (int i = 0; i < dim; ++i) s *= std::size_t(side);
  return s;
}

}  // namespace

Network grid_box(int dimension, int side) {
  std::size_t n = checked_box_size(dimension, side);
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (int dim = 0; dim < dimension; ++dim) {
      if (box_coord(v, side, dim) + 1 < side) {
        edges.push_back({VertexId(v), VertexId(v + box_stride(side, dim)), 1});
      }
    }
  }
  return Network(n, std::move(edges));
}

WiredNetwork grid_box_wired(int dimension, int side) {
  std::size_t n = checked_box_size(dimension, side);
  VertexId wired = VertexId(n);
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (int dim = 0; dim < dimension; ++dim) {
      if (box_coord(v, side, dim) + 1 < side) {
        edges.push_back({VertexId(v), VertexId(v + box_stride(side, dim)), 1});
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (int dim = 0; dim < dimension; ++dim) {
      int x = box_coord(v, side, dim);
      if (x == 0) edges.push_back({VertexId(v), wired, 1});
      if (x == side - 1) edges.push_back({VertexId(v), wired, 1});
    }
  }

  WiredNetwork result{Network(n + 1, std::move(edges)), wired, {}, {}, {}};
  result.interior.resize(n);
  std::iota(result.interior.begin(), result.interior.end(), VertexId{0});
  result.vertex_map.to_quotient.resize(n + 1);
  std::iota(result.vertex_map.to_quotient.begin(), result.vertex_map.to_quotient.end(), VertexId{0});
  result.edge_origin.resize(result.network.edge_count());
  std::iota(result.edge_origin.begin(), result.edge_origin.end(), EdgeId{0});
  return result;
}

Network torus_grid(int dimension, int side) {
  if (side < 2) raise(Errc::bad_params, "torus side must be at least 2");
  std::size_t n = checked_box_size(dimension, side);
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (int dim = 0; dim < dimension; ++dim) {
      std::size_t stride = box_stride(side, dim);
      int x = box_coord(v, side, dim);
      std::size_t w = (x + 1 < side) ? v + stride : v - std::size_t(x) * stride;
      edges.push_back({VertexId(v), VertexId(w), 1});
    }
  }
  return Network(n, std::move(edges));
}

namespace {

int heap_depth(std::size_t j) {
  int d = 0;
  while (j > 0) {
    j = (j - 1) / 2;
    ++d;
  }
  return d;
}

void check_canopy_params(int height, const Rational& k) {
  if (height < 1) raise(Errc::bad_params, "canopy height must be at least 1");
  if (height > 24) raise(Errc::bad_params, "canopy height too large");
  if (k <= 0) raise(Errc::bad_params, "canopy ratio must be positive");
}

}  // namespace

Network canopy_network(int height, const Rational& k) {
  check_canopy_params(height, k);
  std::size_t m_vertices = (std::size_t(1) << (height + 1)) - 1;
  std::vector<Edge> edges;
  edges.reserve(m_vertices - 1);
  for (std::size_t j = 1; j < m_vertices; ++j) {
    int level = height - heap_depth(j);  // levels above the leaves
    edges.push_back({VertexId((j - 1) / 2), VertexId(j), rational_pow(k, level)});
  }
  return Network(m_vertices, std::move(edges));
}

Network glued_canopy(int height, const Rational& k1, const Rational& k2) {
  check_canopy_params(height, k1);
  check_canopy_params(height, k2);
  std::size_t m_vertices = (std::size_t(1) << (height + 1)) - 1;
  std::size_t leaves = std::size_t(1) << height;
  std::size_t internal = m_vertices - leaves;

  // Second tree: heap index h maps to a fresh id for internal vertices and to
  // the first tree's leaf of the same left-to-right rank otherwise.  Leaf heap
  // indices coincide with the first tree's leaf ids, which makes the shared
  // ids literally h.
  auto second_id = [&](std::size_t h) {
    return h < internal ? VertexId(m_vertices + h) : VertexId(h);
  };

  std::vector<Edge> edges;
  edges.reserve(2 * (m_vertices - 1));
  for (std::size_t j = 1; j < m_vertices; ++j) {
    int level = height - heap_depth(j);
    edges.push_back({VertexId((j - 1) / 2), VertexId(j), rational_pow(k1, level)});
  }
  for (std::size_t h = 1; h < m_vertices; ++h) {
    int level = height - heap_depth(h);
    edges.push_back({second_id((h - 1) / 2), second_id(h), rational_pow(k2, level)});
  }
  return Network(m_vertices + internal, std::move(edges));
}

Network tree_ball(int radius) {
  if (radius < 0) raise(Errc::bad_params, "radius must be nonnegative");
  if (radius > 20) raise(Errc::bad_params, "radius too large");
  std::size_t n = 1 +3 * ((std::size_t(1) << radius) - 1);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  // Breadth-first ids: the center has three children, every later vertex two.
  std::size_t next = 1;
  for (std::size_t v = 0; v < n && next < n; ++v) {
    int fanout = (v == 0) ? 3 : 2;
    for (int i = 0; i < fanout && next < n; ++i) {
      edges.push_back({VertexId(v), VertexId(next), 1});
      ++next;
    }
  }
  return Network(n, std::move(edges));
}

WiredNetwork tree_ball_wired(int radius) {
  if (radius < 1) raise(Errc::bad_params, "radius must be at least 1");
  Network ball = tree_ball(radius);
  std::size_t n = ball.vertex_count();
  std::size_t leaf_count = 3 * (std::size_t(1) << (radius - 1));
  VertexId wired = VertexId(n);

  std::vector<Edge> edges = ball.edges();
  for (std::size_t leaf = n - leaf_count; leaf < n; ++leaf) {
    edges.push_back({VertexId(leaf), wired, 1});
    edges.push_back({VertexId(leaf), wired, 1});
  }

  WiredNetwork result{Network(n + 1, std::move(edges)), wired, {}, {}, {}};
  result.interior.resize(n);
  std::iota(result.interior.begin(), result.interior.end(), VertexId{0});
  result.vertex_map.to_quotient.resize(n + 1);
  std::iota(result.vertex_map.to_quotient.begin(), result.vertex_map.to_quotient.end(), VertexId{0});
  result.edge_origin.resize(result.network.edge_count());
  std::iota(result.edge_origin.begin(), result.edge_origin.end(), EdgeId{0});
  return result;
}

}  // namespace usflab
