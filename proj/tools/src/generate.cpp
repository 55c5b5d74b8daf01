#include "commands.hpp"

#include <optional>

#include "usflab/errors.hpp"
#include "usflab/generators.hpp"
#include "usflab/netio.hpp"

namespace usflab::cli {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) raise(Errc::bad_params, what);
}

}  // namespace

void run_generate(const RunContext& ctx, const GenerateConfig& cfg) {
  Network net = build_network(1, {});
  std::optional<VertexId> wired;

  if (cfg.family == "grid") {
    require(cfg.dimension >= 1 && cfg.side >= 1, "grid needs --d and --side");
    if (cfg.wired) {
      WiredNetwork wnet = grid_box_wired(cfg.dimension, cfg.side);
      net = wnet.network;
      wired = wnet.wired_vertex;
    } else {
      net = grid_box(cfg.dimension, cfg.side);
    }
  } else if (cfg.family == "torus") {
    require(cfg.dimension >= 1 && cfg.side >= 2, "torus needs --d and --side");
    require(!cfg.wired, "a torus has no boundary to wire");
    net = torus_grid(cfg.dimension, cfg.side);
  } else if (cfg.family == "canopy") {
    require(cfg.height >= 1, "canopy needs --n");
    net = canopy_network(cfg.height, parse_rational(cfg.k));
    if (cfg.wired) wired = 0;  // the root is where the tree was cut off
  } else if (cfg.family == "glued-canopy") {
    require(cfg.height >= 1, "glued-canopy needs --n");
    net = glued_canopy(cfg.height, parse_rational(cfg.k1),
                       parse_rational(cfg.k2));
    if (cfg.wired) {
      // Both cut-off roots stand for the same point at infinity: contract
      // them into one wired vertex.  The first tree's root is vertex 0; the
      // second tree's internal ids start right after the first tree.
      VertexId second_root = VertexId((1u << (cfg.height + 1)) - 1);
      std::vector<VertexId> interior;
      for (VertexId v = 0; v < net.vertex_count(); ++v) {
        if (v != 0 && v != second_root) interior.push_back(v);
      }
      WiredNetwork wnet = wired_contraction(net, interior);
      net = wnet.network;
      wired = wnet.wired_vertex;
    }
  } else if (cfg.family == "tree-ball") {
    require(cfg.radius >= 0, "tree-ball needs --radius");
    if (cfg.wired) {
      WiredNetwork wnet = tree_ball_wired(cfg.radius);
      net = wnet.network;
      wired = wnet.wired_vertex;
    } else {
      net = tree_ball(cfg.radius);
    }
  } else if (cfg.family == "boosted-tree") {
    require(cfg.radius >= 0, "boosted-tree needs --radius");
    net = boosted_tree(cfg.radius, cfg.seed);
    // The ball's exterior vertex is the last one; --wired marks it.
    if (cfg.wired) wired = net.vertex_count() - 1;
  } else {
    raise(Errc::unknown_family, "unknown family '" + cfg.family + "'");
  }

  save_network(cfg.out, net, wired, header_text(ctx, cfg.seed));
}

}  // namespace usflab::cli
