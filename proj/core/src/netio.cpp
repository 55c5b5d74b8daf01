#include "usflab/netio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace usflab {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t parse_uint(std::string_view token, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    raise(Errc::parse_error, std::string("malformed ") + what);
  }
  return value;
}

// Splits text into record lines, dropping comments and blanks.
std::vector<std::string_view> record_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

void emit_header(std::ostringstream& out, std::string_view header) {
  std::size_t pos = 0;
  while (pos < header.size()) {
    std::size_t eol = header.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? header.substr(pos)
                                : header.substr(pos, eol - pos);
    out << "# " << line << "\n";
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::parse_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::parse_error, "cannot write " + path.string());
  out << text;
}

}  // namespace

std::string serialize_network(const Network& net,
                              std::optional<VertexId> wired_vertex,
                              std::string_view header) {
  std::ostringstream out;
  emit_header(out, header);
  out << "network " << net.vertex_count() << " " << net.edge_count() << "\n";
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    const Edge& e = net.edge(id);
    out << "e " << id << " " << e.u << " " << e.v << " "
        << format_rational(e.conductance) << "\n";
  }
  if (wired_vertex) out << "wired " << *wired_vertex << "\n";
  return out.str();
}

NetworkFile parse_network(std::string_view text) {
  std::vector<std::string_view> lines = record_lines(text);
  if (lines.empty()) raise(Errc::parse_error, "missing network line");

  auto head = split_tokens(lines[0]);
  if (head.size() != 3 || head[0] != "network") {
    raise(Errc::parse_error, "expected 'network <vertices> <edges>'");
  }
  std::uint64_t n = parse_uint(head[1], "vertex count");
  std::uint64_t m = parse_uint(head[2], "edge count");

  std::vector<Edge> edges;
  edges.reserve(m);
  std::size_t row = 1;
  for (; row < lines.size() && edges.size() < m; ++row) {
    auto tok = split_tokens(lines[row]);
    if (tok.size() != 5 || tok[0] != "e") raise(Errc::parse_error, "expected edge line");
    if (parse_uint(tok[1], "edge id") != edges.size()) {
      raise(Errc::parse_error, "edge ids must be dense and ascending");
    }
    Edge e;
    e.u = VertexId(parse_uint(tok[2], "edge endpoint"));
    e.v = VertexId(parse_uint(tok[3], "edge endpoint"));
    e.conductance = parse_rational(tok[4]);
    edges.push_back(std::move(e));
  }
  if (edges.size() != m) raise(Errc::parse_error, "fewer edges than declared");

  std::optional<VertexId> wired;
  if (row < lines.size()) {
    auto tok = split_tokens(lines[row]);
    if (tok.size() != 2 || tok[0] != "wired") raise(Errc::parse_error, "unexpected trailing line");
    wired = VertexId(parse_uint(tok[1], "wired vertex"));
    ++row;
  }
  if (row != lines.size()) raise(Errc::parse_error, "unexpected trailing line");

  NetworkFile result{Network(n, std::move(edges)), wired};
  if (wired) result.network.check_vertex(*wired);
  return result;
}

NetworkFile load_network(const std::filesystem::path& path) {
  return parse_network(read_file(path));
}

void save_network(const std::filesystem::path& path, const Network& net,
                  std::optional<VertexId> wired_vertex, std::string_view header) {
  write_file(path, serialize_network(net, wired_vertex, header));
}

WiredNetwork make_wired_view(Network net, VertexId wired_vertex) {
  net.check_vertex(wired_vertex);
  for (OrientedEdge oe : net.incident(wired_vertex)) {
    if (net.edge(oe.id).is_self_loop()) {
      raise(Errc::invalid_edge, "self-loop at the wired vertex");
    }
  }
  WiredNetwork result{std::move(net), wired_vertex, {}, {}, {}};
  for (VertexId v = 0; v < result.network.vertex_count(); ++v) {
    if (v != wired_vertex) result.interior.push_back(v);
  }
  result.vertex_map.to_quotient.resize(result.network.vertex_count());
  for (VertexId v = 0; v < result.network.vertex_count(); ++v) {
    result.vertex_map.to_quotient[v] = v;
  }
  result.edge_origin.resize(result.network.edge_count());
  for (EdgeId e = 0; e < result.network.edge_count(); ++e) result.edge_origin[e] = e;
  return result;
}

std::string serialize_forest(const ForestFile& forest, std::string_view header) {
  std::ostringstream out;
  emit_header(out, header);
  out << "forest " << forest.edges.size() << "\n";
  for (EdgeId e : forest.edges) out << "f " << e << "\n";
  for (const auto& [v, oe] : forest.parents) {
    out << "p " << v << " " << oe.id << " " << (oe.forward ? 1 : 0) << "\n";
  }
  return out.str();
}

ForestFile parse_forest(std::string_view text) {
  std::vector<std::string_view> lines = record_lines(text);
  if (lines.empty()) raise(Errc::parse_error, "missing forest line");
  auto head = split_tokens(lines[0]);
  if (head.size() != 2 || head[0] != "forest") {
    raise(Errc::parse_error, "expected 'forest <edge_count>'");
  }
  std::uint64_t m = parse_uint(head[1], "edge count");

  ForestFile result;
  std::size_t row = 1;
  for (; row < lines.size() && result.edges.size() < m; ++row) {
    auto tok = split_tokens(lines[row]);
    if (tok.size() != 2 || tok[0] != "f") raise(Errc::parse_error, "expected edge line");
    EdgeId id = EdgeId(parse_uint(tok[1], "edge id"));
    if (!result.edges.empty() && id <= result.edges.back()) {
      raise(Errc::parse_error, "forest edges must be ascending");
    }
    result.edges.push_back(id);
  }
  if (result.edges.size() != m) raise(Errc::parse_error, "fewer edges than declared");

  for (; row < lines.size(); ++row) {
    auto tok = split_tokens(lines[row]);
    if (tok.size() != 4 || tok[0] != "p") raise(Errc::parse_error, "expected parent line");
    VertexId v = VertexId(parse_uint(tok[1], "vertex id"));
    EdgeId e = EdgeId(parse_uint(tok[2], "edge id"));
    std::uint64_t dir = parse_uint(tok[3], "direction flag");
    if (dir > 1) raise(Errc::parse_error, "direction flag must be 0 or 1");
    if (!result.parents.empty() && v <= result.parents.back().first) {
      raise(Errc::parse_error, "parent rows must be ascending by vertex");
    }
    result.parents.push_back({v, OrientedEdge{e, dir == 1}});
  }
  return result;
}

ForestFile load_forest(const std::filesystem::path& path) {
  return parse_forest(read_file(path));
}

void save_forest(const std::filesystem::path& path, const ForestFile& forest,
                 std::string_view header) {
  write_file(path, serialize_forest(forest, header));
}

}  // namespace usflab
