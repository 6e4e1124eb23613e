#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "odyn/graph.hpp"
#include "odyn/thresholds.hpp"

namespace odyn {

struct GraphFile {
  Graph graph;
  std::optional<ThresholdAssignment> thresholds;
};

// Graph interchange format: a JSON object with fields
//   n         integer node count
//   directed  boolean
//   edges     array of [source, target] integer pairs
//   thresholds optional array of n nonnegative integers
// Parsing rejects self-loops, duplicate edges, out-of-range indices and
// malformed thresholds; messages carry the offending position (byte offset
// for syntax errors, array index for semantic ones).
GraphFile parse_graph_json(const std::string& text);

// Canonical serialization: fixed key order, edges in canonical edge_list()
// order. Reserializing a parsed graph reproduces the same bytes.
std::string graph_to_json(const Graph& g,
                          const std::optional<ThresholdAssignment>& thresholds = {});

GraphFile load_graph_file(const std::filesystem::path& path);
void save_graph_file(const std::filesystem::path& path, const Graph& g,
                     const std::optional<ThresholdAssignment>& thresholds = {});

}  // namespace odyn
