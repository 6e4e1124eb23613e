#include "odyn/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "odyn/error.hpp"

namespace odyn {

namespace {

using json = nlohmann::ordered_json;

const json* find_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

int require_int(const json& obj, const char* key) {
  const json* field = find_field(obj, key);
  if (field == nullptr || !field->is_number_integer()) {
    fail(ErrorCode::ParseError,
         std::string("graph field \"") + key + "\" must be an integer");
  }
  return field->get<int>();
}

bool require_bool(const json& obj, const char* key) {
  const json* field = find_field(obj, key);
  if (field == nullptr || !field->is_boolean()) {
    fail(ErrorCode::ParseError,
         std::string("graph field \"") + key + "\" must be a boolean");
  }
  return field->get<bool>();
}

}  // namespace

GraphFile parse_graph_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries the byte offset of the syntax error.
    fail(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) {
    fail(ErrorCode::ParseError, "graph file must be a JSON object");
  }

  int n = require_int(doc, "n");
  bool directed = require_bool(doc, "directed");

  const json* edges_field = find_field(doc, "edges");
  if (edges_field == nullptr || !edges_field->is_array()) {
    fail(ErrorCode::ParseError, "graph field \"edges\" must be an array");
  }
  std::vector<Edge> edges;
  edges.reserve(edges_field->size());
  for (std::size_t k = 0; k < edges_field->size(); ++k) {
    const json& pair = (*edges_field)[k];
    if (!pair.is_array() || pair.size() != 2 ||
        !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
      fail(ErrorCode::ParseError,
           "edge " + std::to_string(k) +
               " must be a [source, target] integer pair");
    }
    edges.emplace_back(pair[0].get<int>(), pair[1].get<int>());
  }

  GraphFile out;
  out.graph = Graph::build(n, directed, edges);

  if (const json* th = find_field(doc, "thresholds");
      th != nullptr && !th->is_null()) {
    if (!th->is_array()) {
      fail(ErrorCode::ParseError,
           "graph field \"thresholds\" must be an array of integers");
    }
    ThresholdAssignment assignment;
    assignment.t.reserve(th->size());
    for (std::size_t i = 0; i < th->size(); ++i) {
      if (!(*th)[i].is_number_integer()) {
        fail(ErrorCode::ParseError,
             "threshold " + std::to_string(i) + " must be an integer");
      }
      assignment.t.push_back((*th)[i].get<int>());
    }
    assignment.validate_for(n);
    out.thresholds = std::move(assignment);
  }
  return out;
}

std::string graph_to_json(const Graph& g,
                          const std::optional<ThresholdAssignment>& thresholds) {
  if (thresholds) thresholds->validate_for(g.n());
  json doc;
  doc["n"] = g.n();
  doc["directed"] = g.directed();
  json edges = json::array();
  for (const Edge& e : g.edge_list()) {
    edges.push_back(json::array({e.first, e.second}));
  }
  doc["edges"] = std::move(edges);
  if (thresholds) doc["thresholds"] = thresholds->t;
  return doc.dump();
}

GraphFile load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::Io, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    fail(ErrorCode::Io, "cannot read " + path.string());
  }
  return parse_graph_json(buffer.str());
}

void save_graph_file(const std::filesystem::path& path, const Graph& g,
                     const std::optional<ThresholdAssignment>& thresholds) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  }
  out << graph_to_json(g, thresholds) << '\n';
  out.flush();
  if (!out) {
    fail(ErrorCode::Io, "cannot write " + path.string());
  }
}

}  // namespace odyn
