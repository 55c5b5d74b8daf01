#pragma once

#include <cstdint>

#include "usflab/network.hpp"

namespace usflab {

// d-dimensional box {0..L-1}^d with unit conductances and free boundary.
// Vertex ids are mixed-radix: id = sum_i x_i * L^i.
Network grid_box(int dimension, int side);

// The same box with its one-vertex-thick exterior layer wired: every lattice
// neighbor just outside the box contributes one unit edge from the boundary
// cell to the wired vertex (so corners in 2D carry two).
WiredNetwork grid_box_wired(int dimension, int side);

// d-dimensional torus (Z/L)^d with unit conductances; side 2 doubles edges.
Network torus_grid(int dimension, int side);

// Binary tree of height n in heap order (root 0, children of i are 2i+1 and
// 2i+2).  An edge whose lower endpoint sits h levels above the leaves has
// conductance k^h, so leaf edges always have conductance 1.
Network canopy_network(int height, const Rational& k);

// Two canopy trees of the same height glued leaf-to-leaf in planar
// left-to-right order.  First tree keeps ids 0..M-1; the second tree's
// internal vertices continue from M, its leaves are the shared ones.
Network glued_canopy(int height, const Rational& k1, const Rational& k2);

// Ball of radius R around a vertex of the 3-regular tree, unit conductances,
// vertices in breadth-first order.
Network tree_ball(int radius);

// The same ball with everything outside wired: each radius-R leaf carries two
// unit edges to the wired vertex, one per missing subtree.
WiredNetwork tree_ball_wired(int radius);

// Tree ball whose conductances are boosted along an internally drawn wired
// spanning-forest sample: off-forest edges keep conductance 1, a forest edge
// e gets exp((1 + U(T)) * s(e)) where U(T) is one uniform mark per forest
// component and s(e) the size of the finite side e cuts off its component.
// The exponential is rounded to a rational with relative error below 1e-12.
Network boosted_tree(int radius, std::uint64_t seed);

}  // namespace usflab
