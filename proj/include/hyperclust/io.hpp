#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperclust/compression_state.hpp"
#include "hyperclust/hypergraph.hpp"

namespace hyperclust {

/// Hypergraph whose vertex v carries the external name labels[v].
struct LabeledHypergraph {
  Hypergraph graph;
  std::vector<std::string> labels;
};

struct ReadOptions {
  /// Drop repeated edge lines (same members in any order).
  bool dedupe = false;
  bool allow_multi_inclusion = false;
  /// Names interned before the edge list is read, so that vertices without
  /// edges still exist and keep this order.
  std::vector<std::string> preset_labels;
};

/// Error with the 1-based line number of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
};

/// One hyperedge per line; members are tokens separated by commas and/or
/// whitespace; blank lines and lines starting with '#' are skipped. Names are
/// interned in first-appearance order.
LabeledHypergraph read_edge_list(std::istream& in, const ReadOptions& options = {},
                                 const std::string& source = "<input>");
LabeledHypergraph read_edge_list(const std::filesystem::path& path,
                                 const ReadOptions& options = {});

/// Comma-separated names, one edge per line.
void write_edge_list(std::ostream& out, const Hypergraph& graph,
                     std::span<const std::string> labels);

/// Rows of `name<TAB>cluster`, no header.
struct AssignmentTable {
  std::vector<std::string> vertices;
  std::vector<std::string> clusters;
};

AssignmentTable read_assignments(const std::filesystem::path& path);
void write_assignments(std::ostream& out, std::span<const std::string> vertex_labels,
                       std::span<const Label> clusters);

/// Decimal vertex names "0" .. "n-1".
std::vector<std::string> index_labels(std::size_t n);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

/// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace hyperclust
