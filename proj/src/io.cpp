#include "hyperclust/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace hyperclust {

namespace {

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t j = 0;
  while (j < line.size()) {
    while (j < line.size() && is_separator(line[j])) ++j;
    const std::size_t start = j;
    while (j < line.size() && !is_separator(line[j])) ++j;
    if (j > start) tokens.push_back(line.substr(start, j - start));
  }
  return tokens;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}

LabeledHypergraph read_edge_list(std::istream& in, const ReadOptions& options,
                                 const std::string& source) {
  LabeledHypergraph result;
  std::unordered_map<std::string, VertexId> ids;
  auto intern = [&](std::string_view name) {
    auto [it, fresh] = ids.try_emplace(std::string(name), static_cast<VertexId>(ids.size()));
    if (fresh) result.labels.emplace_back(name);
    return it->second;
  };
  for (const auto& name : options.preset_labels) intern(name);

  std::vector<std::vector<VertexId>> edges;
  std::set<std::vector<VertexId>> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<VertexId> edge;
    for (auto token : tokenize(line)) edge.push_back(intern(token));
    if (edge.empty()) continue;
    if (!options.allow_multi_inclusion) {
      std::vector<VertexId> sorted = edge;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParseError(source, line_number, "vertex repeated within an edge");
      }
    }
    if (options.dedupe) {
      std::vector<VertexId> canonical = edge;
      std::sort(canonical.begin(), canonical.end());
      if (!seen.insert(std::move(canonical)).second) continue;
    }
    edges.push_back(std::move(edge));
  }
  if (in.bad()) throw std::runtime_error("read error in " + source);

  BuildOptions build;
  build.allow_multi_inclusion = options.allow_multi_inclusion;
  build.num_vertices = result.labels.size();
  result.graph = Hypergraph::build(std::move(edges), build);
  return result;
}

LabeledHypergraph read_edge_list(const std::filesystem::path& path, const ReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_edge_list(in, options, path.string());
}

void write_edge_list(std::ostream& out, const Hypergraph& graph,
                     std::span<const std::string> labels) {
  for (const auto& edge : graph.edges()) {
    for (std::size_t j = 0; j < edge.size(); ++j) {
      if (j > 0) out << ',';
      out << labels[edge[j]];
    }
    out << '\n';
  }
}

AssignmentTable read_assignments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  AssignmentTable table;
  std::set<std::string> names;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(path.string(), line_number, "expected two tab-separated columns");
    }
    std::string vertex = line.substr(0, tab);
    if (!names.insert(vertex).second) {
      throw ParseError(path.string(), line_number, "vertex '" + vertex + "' listed twice");
    }
    table.vertices.push_back(std::move(vertex));
    table.clusters.push_back(line.substr(tab + 1));
  }
  return table;
}

void write_assignments(std::ostream& out, std::span<const std::string> vertex_labels,
                       std::span<const Label> clusters) {
  for (std::size_t v = 0; v < vertex_labels.size(); ++v) {
    out << vertex_labels[v] << '\t' << clusters[v] << '\n';
  }
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  return labels;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buffer[1 << 14];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    for (std::streamsize j = 0; j < in.gcount(); ++j) {
      h ^= static_cast<unsigned char>(buffer[j]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path temporary = path;
  temporary += ".tmp";
  {
    std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + temporary.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("cannot write " + temporary.string());
  }
  std::filesystem::rename(temporary, path);
}

}  // namespace hyperclust
