#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "resilens/graph.hpp"
#include "resilens/json_io.hpp"

namespace resilens {

// Node/edge CSV pair for graph-exploration tools. Layers are ';'-joined.
inline constexpr std::string_view kNodesCsvHeader = "id,kind,layers,protected,auxiliary,stage,label";
inline constexpr std::string_view kEdgesCsvHeader = "source,target,relation,layers,directed";

namespace csv {

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Splits RFC 4180 text into records. Quoted fields may span lines.
inline std::vector<std::vector<std::string>> parse(const std::string& text, const std::string& file,
                                                   std::vector<std::size_t>* record_lines = nullptr) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false, field_started = false;
  std::size_t line = 1, record_line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    if (record_lines) record_lines->push_back(record_line);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started || !field.empty())
          throw ParseError(file + ": line " + std::to_string(line), "stray quote inside field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        record_line = line;
        break;
      default:
        field.push_back(c);
    }
  }
  if (in_quotes)
    throw ParseError(file + ": line " + std::to_string(record_line), "unterminated quoted field");
  if (!field.empty() || !row.empty() || field_started) end_row();
  return rows;
}

inline bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError(where, "expected true or false, got '" + s + "'");
}

inline LayerSet parse_layers(const std::string& s, const std::string& where) {
  LayerSet set;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto l = parse_layer(item);
    if (!l) throw ParseError(where, "invalid layer '" + item + "'");
    set.insert(*l);
  }
  return set;
}

}  // namespace csv

inline std::string nodes_to_csv(const MultilayerGraph& graph) {
  std::string out(kNodesCsvHeader);
  out.push_back('\n');
  const MultilayerGraph g = graph.canonicalized();
  for (const Node& n : g.nodes()) {
    out += csv::quote(n.id) + ',' + csv::quote(n.kind) + ',' + n.layers.join(';') + ',' +
           (n.is_protected ? "true" : "false") + ',' + (n.auxiliary ? "true" : "false") + ',' +
           (n.stage ? std::to_string(*n.stage) : std::string()) + ',' +
           (n.label ? csv::quote(*n.label) : std::string()) + '\n';
  }
  return out;
}

inline std::string edges_to_csv(const MultilayerGraph& graph) {
  std::string out(kEdgesCsvHeader);
  out.push_back('\n');
  const MultilayerGraph g = graph.canonicalized();
  for (const Edge& e : g.edges()) {
    out += csv::quote(e.source) + ',' + csv::quote(e.target) + ',' + csv::quote(e.relation) + ',' +
           e.layers.join(';') + ',' + (e.directed ? "true" : "false") + '\n';
  }
  return out;
}

// Rebuilds a graph from the CSV pair. An empty label cell means "no label".
inline MultilayerGraph graph_from_csv(const std::string& name, const std::string& nodes_text,
                                      const std::string& edges_text,
                                      const std::string& nodes_file = "nodes.csv",
                                      const std::string& edges_file = "edges.csv") {
  std::vector<Node> nodes;
  std::vector<std::size_t> lines;
  auto rows = csv::parse(nodes_text, nodes_file, &lines);
  if (rows.empty() || rows[0].size() != 7 || rows[0][0] != "id")
    throw ParseError(nodes_file + ": line 1", "expected header '" + std::string(kNodesCsvHeader) + "'");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    const std::string where = nodes_file + ": line " + std::to_string(lines[r]);
    if (f.size() != 7) throw ParseError(where, "expected 7 fields, got " + std::to_string(f.size()));
    Node n;
    n.id = f[0];
    n.kind = f[1];
    n.layers = csv::parse_layers(f[2], where);
    n.is_protected = csv::parse_bool(f[3], where);
    n.auxiliary = csv::parse_bool(f[4], where);
    if (!f[5].empty()) {
      try {
        std::size_t used = 0;
        n.stage = std::stoi(f[5], &used);
        if (used != f[5].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(where, "invalid stage '" + f[5] + "'");
      }
    }
    if (!f[6].empty()) n.label = f[6];
    nodes.push_back(std::move(n));
  }

  std::vector<Edge> edges;
  lines.clear();
  rows = csv::parse(edges_text, edges_file, &lines);
  if (rows.empty() || rows[0].size() != 5 || rows[0][0] != "source")
    throw ParseError(edges_file + ": line 1", "expected header '" + std::string(kEdgesCsvHeader) + "'");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    const std::string where = edges_file + ": line " + std::to_string(lines[r]);
    if (f.size() != 5) throw ParseError(where, "expected 5 fields, got " + std::to_string(f.size()));
    edges.push_back(Edge{f[0], f[1], f[2], csv::parse_layers(f[3], where), csv::parse_bool(f[4], where)});
  }
  return MultilayerGraph(name, std::move(nodes), std::move(edges));
}

}  // namespace resilens
