#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "usflab/network.hpp"

namespace usflab {

// Network text format, one record per line:
//   network <vertex_count> <edge_count>
//   e <id> <u> <v> <num>/<den>      edges with dense ascending ids
//   wired <vertex_id>               optional trailer
// Lines starting with '#' and blank lines are skipped on input.  Canonical
// files contain neither, and parse -> serialize reproduces them byte for byte.

struct NetworkFile {
  Network network;
  std::optional<VertexId> wired_vertex;
};

// `header` may hold free-form text; each line is emitted as a '#' comment in
// front of the records.
std::string serialize_network(const Network& net,
                              std::optional<VertexId> wired_vertex = {},
                              std::string_view header = {});
NetworkFile parse_network(std::string_view text);
NetworkFile load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const Network& net,
                  std::optional<VertexId> wired_vertex = {},
                  std::string_view header = {});

// View a parsed network containing its wired vertex as a WiredNetwork.
// Rejects self-loops at the wired vertex (Errc::invalid_edge).
WiredNetwork make_wired_view(Network net, VertexId wired_vertex);

// Forest text format:
//   forest <edge_count>
//   f <edge_id>                     tree/forest edges, ascending
//   p <vertex> <edge_id> <dir>      optional parent rows, ascending vertex;
//                                   dir 1 orients the edge forward (tail u)
// Parent rows appear for boundary forests and point each interior vertex
// toward the wired vertex.

struct ForestFile {
  std::vector<EdgeId> edges;
  std::vector<std::pair<VertexId, OrientedEdge>> parents;
};

std::string serialize_forest(const ForestFile& forest,
                             std::string_view header = {});
ForestFile parse_forest(std::string_view text);
ForestFile load_forest(const std::filesystem::path& path);
void save_forest(const std::filesystem::path& path, const ForestFile& forest,
                 std::string_view header = {});

}  // namespace usflab
