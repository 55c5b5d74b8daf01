#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <optional>

#include "usflab/errors.hpp"
#include "usflab/netio.hpp"
#include "usflab/stats.hpp"

namespace usflab::cli {

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

// The per-component row bundle for one loaded forest file.
struct ComponentRow {
  std::uint32_t id = 0;
  std::size_t size = 0;
  std::vector<std::size_t> ends;  // one entry per radius 0..K
  double mean_log = 0.0;
};

[[noreturn]] void inconsistent(const std::filesystem::path& path,
                               const std::string& why) {
  raise(Errc::inconsistent_forest, path.string() + ": " + why);
}

}  // namespace

void run_stats(const RunContext& ctx, const StatsConfig& cfg) {
  if (cfg.walk_steps < 1) raise(Errc::bad_params, "--walk-steps must be positive");
  if (cfg.forests.empty()) raise(Errc::bad_params, "no forest files given");
  NetworkFile file = load_network(cfg.net);
  const Network& net = file.network;
  net.check_vertex(VertexId(cfg.start));
  std::optional<WiredNetwork> wnet;
  if (file.wired_vertex) {
    wnet = make_wired_view(net, *file.wired_vertex);
  }

  std::string csv;
  std::string head = header_text(
      ctx, cfg.seed, {"samples: " + std::to_string(cfg.forests.size())});
  std::size_t pos = 0;
  while (pos <= head.size()) {
    std::size_t eol = head.find('\n', pos);
    if (eol == std::string::npos) eol = head.size();
    csv += "# ";
    csv.append(head, pos, eol - pos);
    csv += '\n';
    pos = eol + 1;
  }
  csv += "sample,component_id,size,frequency";
  for (std::uint64_t r = 0; r <= cfg.ends_radius; ++r) {
    csv += ",ends_lb_r" + std::to_string(r);
  }
  csv += ",mean_log_conductance\n";

  for (std::size_t s = 0; s < cfg.forests.size(); ++s) {
    const std::filesystem::path& path = cfg.forests[s];
    ForestFile forest = load_forest(path);
    for (EdgeId id : forest.edges) {
      if (id >= net.edge_count()) inconsistent(path, "edge id out of range");
    }

    ComponentPartition parts;
    std::vector<ComponentRow> rows;
    if (!forest.parents.empty()) {
      // Boundary forest route: re-derive the structure from the edge set and
      // insist the file's parent rows agree with it.
      if (!wnet) inconsistent(path, "parent rows but the network has no wired vertex");
      std::optional<BoundaryForest> loaded;
      try {
        loaded.emplace(*wnet, forest.edges);
      } catch (const Error& e) {
        inconsistent(path, e.what());
      }
      for (const auto& [v, oe] : forest.parents) {
        if (v >= net.vertex_count() || v == wnet->wired_vertex ||
            !(loaded->parent(v) == oe)) {
          inconsistent(path, "parent rows disagree with the edge set");
        }
      }
      parts = forest_components(*loaded);
      for (std::uint32_t c = 0; c < parts.count(); ++c) {
        ComponentRow row;
        row.id = c;
        row.size = parts.members[c].size();
        VertexId anchor = parts.members[c].front();
        for (std::uint64_t r = 0; r <= cfg.ends_radius; ++r) {
          row.ends.push_back(ends_lower_bound(*loaded, anchor, r));
        }
        std::vector<Rational> spine = spine_profile(*loaded, anchor);
        row.mean_log = mean_log_conductance(spine);
        rows.push_back(std::move(row));
      }
    } else {
      // Free route: plain components; a cycle would hide a component, so the
      // partition size must match the forest identity exactly.
      parts = components(net, forest.edges);
      if (parts.count() != net.vertex_count() - forest.edges.size()) {
        inconsistent(path, "edge set contains a cycle");
      }
      std::vector<std::vector<Rational>> profiles(parts.count());
      for (EdgeId id : forest.edges) {
        const Edge& e = net.edge(id);
        profiles[parts.component_of[e.u]].push_back(e.conductance);
      }
      for (std::uint32_t c = 0; c < parts.count(); ++c) {
        ComponentRow row;
        row.id = c;
        row.size = parts.members[c].size();
        row.ends.assign(cfg.ends_radius + 1, 0);  // needs a boundary to mean anything
        row.mean_log = profiles[c].empty()
                           ? 0.0
                           : mean_log_conductance(profiles[c]);
        rows.push_back(std::move(row));
      }
    }

    RngHandle rng = RngHandle(cfg.seed).substream(s);
    std::vector<Rational> freq = estimate_frequencies(
        net, parts, VertexId(cfg.start), cfg.walk_steps, rng);

    for (const ComponentRow& row : rows) {
      csv += std::to_string(s);
      csv += ',';
      csv += std::to_string(row.id);
      csv += ',';
      csv += std::to_string(row.size);
      csv += ',';
      csv += format_double(freq[row.id].convert_to<double>());
      for (std::size_t count : row.ends) {
        csv += ',';
        csv += std::to_string(count);
      }
      csv += ',';
      csv += format_double(row.mean_log);
      csv += '\n';
    }
  }

  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) raise(Errc::bad_params, "cannot write " + cfg.out.string());
  out << csv;
}

}  // namespace usflab::cli
