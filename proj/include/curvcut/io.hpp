#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "curvcut/fields.hpp"
#include "curvcut/graph.hpp"

namespace curvcut {

/// Edge list as parsed from text, before measure assignment. Vertex labels
/// are arbitrary whitespace-free strings, assigned dense indices in order of
/// first appearance.
struct EdgeListData {
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    std::unordered_map<std::string, VertexId> index;

    VertexId require(const std::string& label) const;
};

/// Labels "0".."n-1" for generated graphs.
EdgeListData default_labels(std::size_t n);

// Text formats. Lines starting with '#' and blank lines are ignored
// everywhere; parse errors carry the 1-based line number.

/// One edge per line: `u v w` with w a positive decimal (omitted w means 1).
EdgeListData parse_edge_list(std::istream& in);
EdgeListData parse_edge_list_file(const std::filesystem::path& path);

/// One `v m` pair per line; every vertex exactly once.
std::vector<double> parse_measure(std::istream& in, const EdgeListData& names);
std::vector<double> parse_measure_file(const std::filesystem::path& path,
                                       const EdgeListData& names);

/// One vertex label per line; duplicates are tolerated.
std::vector<VertexId> parse_vertex_set(std::istream& in, const EdgeListData& names);
std::vector<VertexId> parse_vertex_set_file(const std::filesystem::path& path,
                                            const EdgeListData& names);

/// One `v value` pair per line; every vertex exactly once.
ScalarField parse_field(std::istream& in, const EdgeListData& names);
ScalarField parse_field_file(const std::filesystem::path& path, const EdgeListData& names);

void write_edge_list(std::ostream& out, const WeightedGraph& g,
                     const std::vector<std::string>& labels);
void write_field(std::ostream& out, const ScalarField& f,
                 const std::vector<std::string>& labels);

} // namespace curvcut
