#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "resilens/graph.hpp"

namespace resilens {

// Malformed interchange input. `where` is "line L, column C" for syntax
// errors or a JSON pointer such as "/nodes/3/colour" for schema errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& msg)
      : std::runtime_error(where.empty() ? msg : where + ": " + msg),
        where_(std::move(where)),
        message_(msg) {}
  const std::string& where() const noexcept { return where_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string where_;
  std::string message_;
};

// A file could not be opened for reading or writing.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                                const std::string& ptr) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(ptr + "/" + key, "unknown key '" + key + "'");
  }
}

inline const json& require(const json& obj, const char* key, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(ptr, std::string("missing key '") + key + "'");
  return *it;
}

inline std::string get_string(const json& v, const std::string& ptr) {
  if (!v.is_string()) throw ParseError(ptr, "expected a string");
  return v.get<std::string>();
}

inline bool get_bool(const json& v, const std::string& ptr) {
  if (!v.is_boolean()) throw ParseError(ptr, "expected a boolean");
  return v.get<bool>();
}

inline LayerSet get_layers(const json& v, const std::string& ptr) {
  if (!v.is_array()) throw ParseError(ptr, "expected an array of layer names");
  LayerSet set;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = ptr + "/" + std::to_string(i);
    auto layer = parse_layer(get_string(v[i], p));
    if (!layer) throw ParseError(p, "invalid layer '" + v[i].get<std::string>() + "'");
    set.insert(*layer);
  }
  return set;
}

inline json layers_json(LayerSet s) {
  json arr = json::array();
  for (Layer l : s.to_vector()) arr.push_back(std::string(to_string(l)));
  return arr;
}

}  // namespace detail

// Parses one design document. Structural problems raise ParseError;
// graph invariants are left to validate().
inline MultilayerGraph graph_from_json(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  if (!doc.is_object()) throw ParseError("/", "top level must be an object");
  detail::reject_unknown_keys(doc, {"name", "nodes", "edges"}, "");

  std::string name = detail::get_string(detail::require(doc, "name", ""), "/name");
  const json& jnodes = detail::require(doc, "nodes", "");
  const json& jedges = detail::require(doc, "edges", "");
  if (!jnodes.is_array()) throw ParseError("/nodes", "expected an array");
  if (!jedges.is_array()) throw ParseError("/edges", "expected an array");

  std::vector<Node> nodes;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string p = "/nodes/" + std::to_string(i);
    const json& jn = jnodes[i];
    if (!jn.is_object()) throw ParseError(p, "expected an object");
    detail::reject_unknown_keys(jn, {"id", "kind", "layers", "protected", "auxiliary", "stage", "label"}, p);
    Node n;
    n.id = detail::get_string(detail::require(jn, "id", p), p + "/id");
    n.kind = detail::get_string(detail::require(jn, "kind", p), p + "/kind");
    n.layers = detail::get_layers(detail::require(jn, "layers", p), p + "/layers");
    if (auto it = jn.find("protected"); it != jn.end()) n.is_protected = detail::get_bool(*it, p + "/protected");
    if (auto it = jn.find("auxiliary"); it != jn.end()) n.auxiliary = detail::get_bool(*it, p + "/auxiliary");
    if (auto it = jn.find("stage"); it != jn.end() && !it->is_null()) {
      if (!it->is_number_integer()) throw ParseError(p + "/stage", "expected an integer");
      n.stage = it->get<int>();
    }
    if (auto it = jn.find("label"); it != jn.end() && !it->is_null())
      n.label = detail::get_string(*it, p + "/label");
    nodes.push_back(std::move(n));
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    const json& je = jedges[i];
    if (!je.is_object()) throw ParseError(p, "expected an object");
    detail::reject_unknown_keys(je, {"source", "target", "relation", "layers", "directed"}, p);
    Edge e;
    e.source = detail::get_string(detail::require(je, "source", p), p + "/source");
    e.target = detail::get_string(detail::require(je, "target", p), p + "/target");
    e.relation = detail::get_string(detail::require(je, "relation", p), p + "/relation");
    e.layers = detail::get_layers(detail::require(je, "layers", p), p + "/layers");
    if (auto it = je.find("directed"); it != je.end()) e.directed = detail::get_bool(*it, p + "/directed");
    edges.push_back(std::move(e));
  }
  return MultilayerGraph(std::move(name), std::move(nodes), std::move(edges));
}

// Serializes in canonical form: nodes sorted by id, edges by
// (source, target, relation, layers), keys in fixed order, 2-space indent.
inline std::string graph_to_json(const MultilayerGraph& graph) {
  using detail::json;
  const MultilayerGraph g = graph.canonicalized();
  nlohmann::ordered_json doc;
  doc["name"] = g.name();
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : g.nodes()) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    jn["kind"] = n.kind;
    jn["layers"] = detail::layers_json(n.layers);
    jn["protected"] = n.is_protected;
    jn["auxiliary"] = n.auxiliary;
    if (n.stage) jn["stage"] = *n.stage;
    if (n.label) jn["label"] = *n.label;
    doc["nodes"].push_back(std::move(jn));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::ordered_json je;
    je["source"] = e.source;
    je["target"] = e.target;
    je["relation"] = e.relation;
    je["layers"] = detail::layers_json(e.layers);
    je["directed"] = e.directed;
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(2) + "\n";
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

inline MultilayerGraph load_graph(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return graph_from_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), e.message());
  }
}

}  // namespace resilens
