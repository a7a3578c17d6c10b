#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resilens/layer.hpp"

namespace resilens {

enum class Rule : std::uint8_t {
  DuplicateId,
  EmptyLayerSet,
  KindLayerRule,
  UnknownEndpoint,
  LayerMismatch,
  DuplicateEdge,
  SelfLoop,
  InvalidStage,
  UnknownKind,  // warning only
};

inline constexpr std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::DuplicateId:     return "DuplicateId";
    case Rule::EmptyLayerSet:   return "EmptyLayerSet";
    case Rule::KindLayerRule:   return "KindLayerRule";
    case Rule::UnknownEndpoint: return "UnknownEndpoint";
    case Rule::LayerMismatch:   return "LayerMismatch";
    case Rule::DuplicateEdge:   return "DuplicateEdge";
    case Rule::SelfLoop:        return "SelfLoop";
    case Rule::InvalidStage:    return "InvalidStage";
    case Rule::UnknownKind:     return "UnknownKind";
  }
  return "?";
}

class GraphError : public std::runtime_error {
 public:
  GraphError(Rule rule, const std::string& what) : std::runtime_error(what), rule_(rule) {}
  Rule rule() const noexcept { return rule_; }

 private:
  Rule rule_;
};

// Canonical component kinds; other strings are accepted with a warning.
inline constexpr std::array<std::string_view, 11> kCanonicalKinds = {
    "tank", "pipe", "mixer", "membrane", "uv-unit", "ro-unit",
    "pump", "valve", "sensor", "controller", "other"};

inline bool is_canonical_kind(std::string_view kind) {
  return std::find(kCanonicalKinds.begin(), kCanonicalKinds.end(), kind) != kCanonicalKinds.end();
}

inline bool is_actuating_kind(std::string_view kind) {
  return kind == "pump" || kind == "valve" || kind == "controller";
}

struct Node {
  std::string id;
  std::string kind;
  LayerSet layers;
  bool is_protected = false;
  bool auxiliary = false;
  std::optional<int> stage;
  std::optional<std::string> label;

  // The component name as printed in reports; falls back to the id.
  const std::string& display_name() const { return label ? *label : id; }

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::string source;
  std::string target;
  std::string relation;
  LayerSet layers;
  bool directed = true;

  auto key() const { return std::tie(source, target, relation, layers); }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Violation {
  Rule rule;
  std::string subject;  // node id or "source->target [relation]"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;

  bool ok() const { return violations.empty(); }
  std::size_t count(Rule r) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [r](const Violation& v) { return v.rule == r; }));
  }
};

namespace detail {

inline std::optional<Violation> check_node_local(const Node& n) {
  if (n.layers.empty())
    return Violation{Rule::EmptyLayerSet, n.id, "node '" + n.id + "' has no layers"};
  if (n.kind == "sensor" && !n.layers.contains(Layer::Sensor))
    return Violation{Rule::KindLayerRule, n.id,
                     "sensor '" + n.id + "' must belong to the sensor layer"};
  if ((n.kind == "pump" || n.kind == "valve" || n.kind == "controller") &&
      !n.layers.contains(Layer::Actuator))
    return Violation{Rule::KindLayerRule, n.id,
                     n.kind + " '" + n.id + "' must belong to the actuator layer"};
  if (n.stage && (*n.stage < 1 || *n.stage > 6))
    return Violation{Rule::InvalidStage, n.id,
                     "node '" + n.id + "' has stage " + std::to_string(*n.stage) + " outside 1..6"};
  return std::nullopt;
}

inline std::string edge_subject(const Edge& e) {
  return e.source + "->" + e.target + " [" + e.relation + "]";
}

}  // namespace detail

// Node/edge store with per-layer membership tags.
//
// The checked mutators (add_node, add_edge) keep the graph valid. The
// bulk constructor accepts arbitrary content so parsers can hand
// malformed input to validate() and report every problem at once.
class MultilayerGraph {
 public:
  MultilayerGraph() = default;
  explicit MultilayerGraph(std::string name) : name_(std::move(name)) {}
  MultilayerGraph(std::string name, std::vector<Node> nodes, std::vector<Edge> edges)
      : name_(std::move(name)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    reindex();
  }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }

  bool contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

  const Node* find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &nodes_[it->second];
  }

  const Node& at(std::string_view id) const {
    const Node* n = find(id);
    if (!n) throw GraphError(Rule::UnknownEndpoint, "unknown node '" + std::string(id) + "'");
    return *n;
  }

  MultilayerGraph& add_node(Node node) {
    if (contains(node.id))
      throw GraphError(Rule::DuplicateId, "duplicate node id '" + node.id + "'");
    if (auto v = detail::check_node_local(node)) throw GraphError(v->rule, v->message);
    index_.emplace(node.id, nodes_.size());
    nodes_.push_back(std::move(node));
    return *this;
  }

  MultilayerGraph& add_edge(Edge edge) {
    if (auto v = check_edge(edge)) throw GraphError(v->rule, v->message);
    edges_.push_back(std::move(edge));
    return *this;
  }

  // Removes a node together with every incident edge.
  MultilayerGraph& remove_node(std::string_view id) {
    auto it = std::find_if(nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.id == id; });
    if (it == nodes_.end())
      throw GraphError(Rule::UnknownEndpoint, "unknown node '" + std::string(id) + "'");
    nodes_.erase(it);
    std::erase_if(edges_, [&](const Edge& e) { return e.source == id || e.target == id; });
    reindex();
    return *this;
  }

  // Copy with nodes and edges sorted by id / (source, target, relation, layers).
  MultilayerGraph canonicalized() const {
    auto nodes = nodes_;
    auto edges = edges_;
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.key() < b.key(); });
    return MultilayerGraph(name_, std::move(nodes), std::move(edges));
  }

  // Order-insensitive content equality.
  friend bool operator==(const MultilayerGraph& a, const MultilayerGraph& b) {
    if (a.name_ != b.name_) return false;
    auto ca = a.canonicalized();
    auto cb = b.canonicalized();
    return ca.nodes_ == cb.nodes_ && ca.edges_ == cb.edges_;
  }

  std::optional<Violation> check_edge(const Edge& e) const {
    const std::string subject = detail::edge_subject(e);
    if (e.layers.empty())
      return Violation{Rule::EmptyLayerSet, subject, "edge " + subject + " has no layers"};
    const Node* s = find(e.source);
    const Node* t = find(e.target);
    if (!s || !t)
      return Violation{Rule::UnknownEndpoint, subject,
                       "edge " + subject + " references unknown node '" +
                           (s ? e.target : e.source) + "'"};
    if (e.source == e.target)
      return Violation{Rule::SelfLoop, subject, "self-loop on '" + e.source + "'"};
    for (Layer l : e.layers.to_vector()) {
      if (is_transversal(l)) continue;
      if (!s->layers.contains(l) || !t->layers.contains(l))
        return Violation{Rule::LayerMismatch, subject,
                         "edge " + subject + " is tagged '" + std::string(to_string(l)) +
                             "' but an endpoint is not in that layer"};
    }
    for (const Edge& other : edges_)
      if (other.key() == e.key())
        return Violation{Rule::DuplicateEdge, subject, "duplicate edge " + subject};
    return std::nullopt;
  }

 private:
  void reindex() {
    index_.clear();
    // First occurrence wins; duplicates are reported by validate().
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].id, i);
  }

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline ValidationReport validate(const MultilayerGraph& g) {
  ValidationReport report;
  std::set<std::string> seen;
  for (const Node& n : g.nodes()) {
    if (!seen.insert(n.id).second)
      report.violations.push_back({Rule::DuplicateId, n.id, "duplicate node id '" + n.id + "'"});
    if (auto v = detail::check_node_local(n)) report.violations.push_back(*v);
    if (!is_canonical_kind(n.kind))
      report.warnings.push_back(
          {Rule::UnknownKind, n.id, "node '" + n.id + "' has non-canonical kind '" + n.kind + "'"});
  }
  std::set<std::tuple<std::string, std::string, std::string, std::uint8_t>> edge_keys;
  for (const Edge& e : g.edges()) {
    const std::string subject = detail::edge_subject(e);
    if (e.layers.empty()) {
      report.violations.push_back({Rule::EmptyLayerSet, subject, "edge " + subject + " has no layers"});
      continue;
    }
    const Node* s = g.find(e.source);
    const Node* t = g.find(e.target);
    if (!s || !t) {
      report.violations.push_back({Rule::UnknownEndpoint, subject,
                                   "edge " + subject + " references unknown node '" +
                                       (s ? e.target : e.source) + "'"});
      continue;
    }
    if (e.source == e.target) {
      report.violations.push_back({Rule::SelfLoop, subject, "self-loop on '" + e.source + "'"});
      continue;
    }
    for (Layer l : e.layers.to_vector()) {
      if (is_transversal(l)) continue;
      if (!s->layers.contains(l) || !t->layers.contains(l)) {
        report.violations.push_back({Rule::LayerMismatch, subject,
                                     "edge " + subject + " is tagged '" +
                                         std::string(to_string(l)) +
                                         "' but an endpoint is not in that layer"});
        break;
      }
    }
    if (!edge_keys.emplace(e.source, e.target, e.relation, e.layers.bits()).second)
      report.violations.push_back({Rule::DuplicateEdge, subject, "duplicate edge " + subject});
  }
  return report;
}

// Subgraph induced by the nodes satisfying `keep`.
inline MultilayerGraph induced_subgraph(const MultilayerGraph& g,
                                        const std::function<bool(const Node&)>& keep) {
  std::vector<Node> nodes;
  std::set<std::string> ids;
  for (const Node& n : g.nodes())
    if (keep(n)) {
      nodes.push_back(n);
      ids.insert(n.id);
    }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (ids.count(e.source) && ids.count(e.target)) edges.push_back(e);
  return MultilayerGraph(g.name(), std::move(nodes), std::move(edges));
}

inline MultilayerGraph stage_subgraph(const MultilayerGraph& g, int stage) {
  return induced_subgraph(g, [stage](const Node& n) { return n.stage == stage; });
}

// Sorted distinct stage numbers present in the graph.
inline std::vector<int> stages_of(const MultilayerGraph& g) {
  std::set<int> s;
  for (const Node& n : g.nodes())
    if (n.stage) s.insert(*n.stage);
  return {s.begin(), s.end()};
}

// Dense square 0/1 matrix, row-major.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint8_t v = 1) { cells_[i * n_ + j] = v; }

  bool symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  AdjacencyMatrix symmetrized() const {
    AdjacencyMatrix out = *this;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if ((*this)(i, j)) out.set(j, i);
    return out;
  }

  std::size_t edge_entries() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
  }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Induced subgraph of one layer: the unit of centrality computation.
struct LayerView {
  Layer layer = Layer::Physical;
  bool undirected = true;
  std::vector<std::string> node_ids;  // sorted
  AdjacencyMatrix adjacency;

  std::size_t size() const { return node_ids.size(); }
  bool empty() const { return node_ids.empty(); }

  std::optional<std::size_t> index_of(std::string_view id) const {
    auto it = std::lower_bound(node_ids.begin(), node_ids.end(), id);
    if (it == node_ids.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - node_ids.begin());
  }

  friend bool operator==(const LayerView&, const LayerView&) = default;
};

// Nodes carrying `layer` and the `layer`-tagged edges between them.
//
// Edges stored with directed=false always fill both cells; with
// `undirected` set every edge does.
inline LayerView layer_view(const MultilayerGraph& g, Layer layer, bool undirected = true) {
  LayerView view;
  view.layer = layer;
  view.undirected = undirected;
  for (const Node& n : g.nodes())
    if (n.layers.contains(layer)) view.node_ids.push_back(n.id);
  std::sort(view.node_ids.begin(), view.node_ids.end());
  view.node_ids.erase(std::unique(view.node_ids.begin(), view.node_ids.end()), view.node_ids.end());
  view.adjacency = AdjacencyMatrix(view.node_ids.size());
  for (const Edge& e : g.edges()) {
    if (!e.layers.contains(layer) || e.source == e.target) continue;
    auto s = view.index_of(e.source);
    auto t = view.index_of(e.target);
    if (!s || !t) continue;
    view.adjacency.set(*s, *t);
    if (undirected || !e.directed) view.adjacency.set(*t, *s);
  }
  return view;
}

}  // namespace resilens
