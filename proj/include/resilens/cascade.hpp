#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "resilens/graph.hpp"

namespace resilens {

class UnknownOrigin : public std::invalid_argument {
 public:
  explicit UnknownOrigin(const std::string& id)
      : std::invalid_argument("unknown origin node '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

inline constexpr LayerSet kDefaultPropagationLayers = {Layer::Physical, Layer::Mission};

// Breadth-first spread of a compromise. waves[k] holds the nodes first
// reached after k hops; each wave is sorted.
struct PropagationTrace {
  std::string origin;
  std::vector<std::vector<std::string>> waves;
  std::set<std::string> affected;
  LayerSet propagation_layers;

  // Hop count at which `id` was reached, or -1.
  int wave_of(const std::string& id) const {
    for (std::size_t k = 0; k < waves.size(); ++k)
      for (const auto& n : waves[k])
        if (n == id) return static_cast<int>(k);
    return -1;
  }
};

struct ResilienceVerdict {
  bool detectable = false;
  std::set<std::string> detecting_sensors;
  bool absorbable = false;
  bool vacuous = false;  // no pump, valve or controller was affected
  std::set<std::string> substitutes;
  std::map<std::string, std::set<std::string>> substitutes_for;  // affected actuator -> candidates
  std::vector<std::string> narrative;
};

namespace detail {

// Neighbour lists over edges carrying any of `layers`; undirected edges
// contribute both directions and `both_ways` makes every edge do so.
inline std::map<std::string, std::set<std::string>> neighbours(const MultilayerGraph& g,
                                                               LayerSet layers, bool both_ways) {
  std::map<std::string, std::set<std::string>> adj;
  for (const Edge& e : g.edges()) {
    if ((e.layers.bits() & layers.bits()) == 0) continue;
    adj[e.source].insert(e.target);
    if (both_ways || !e.directed) adj[e.target].insert(e.source);
  }
  return adj;
}

inline std::string join_ids(const std::set<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

}  // namespace detail

inline PropagationTrace propagate(const MultilayerGraph& graph, const std::string& origin,
                                  LayerSet layers = kDefaultPropagationLayers) {
  if (!graph.contains(origin)) throw UnknownOrigin(origin);
  if (layers.empty()) throw std::invalid_argument("propagation needs at least one layer");
  const auto adj = detail::neighbours(graph, layers, false);
  PropagationTrace t;
  t.origin = origin;
  t.propagation_layers = layers;
  t.affected.insert(origin);
  std::vector<std::string> frontier = {origin};
  while (!frontier.empty()) {
    t.waves.push_back(frontier);
    std::set<std::string> next;
    for (const auto& u : frontier) {
      auto it = adj.find(u);
      if (it == adj.end()) continue;
      for (const auto& w : it->second)
        if (!t.affected.count(w)) next.insert(w);
    }
    t.affected.insert(next.begin(), next.end());
    frontier.assign(next.begin(), next.end());
  }
  return t;
}

// Unaffected sensor-layer nodes sharing a Sensor- or Cyber-tagged edge
// with an affected node.
inline std::set<std::string> detectability(const MultilayerGraph& graph,
                                           const PropagationTrace& trace) {
  std::set<std::string> out;
  auto is_observer = [&](const std::string& id) {
    const Node* n = graph.find(id);
    return n && n->layers.contains(Layer::Sensor) && !trace.affected.count(id);
  };
  for (const Edge& e : graph.edges()) {
    if (!e.layers.contains(Layer::Sensor) && !e.layers.contains(Layer::Cyber)) continue;
    if (trace.affected.count(e.source) && is_observer(e.target)) out.insert(e.target);
    if (trace.affected.count(e.target) && is_observer(e.source)) out.insert(e.source);
  }
  return out;
}

// Whether every affected pump, valve and controller can be replaced.
//
// A substitute is an auxiliary node of the same kind and stage that the
// compromise did not reach and that the affected subsystem can hand over
// to: it is reachable from an affected node of that stage over Actuator-
// or Cyber-tagged edges (either direction) through unaffected nodes of
// the same stage.
inline ResilienceVerdict absorbability(const MultilayerGraph& graph, const PropagationTrace& trace) {
  ResilienceVerdict v;
  v.detecting_sensors = detectability(graph, trace);
  v.detectable = !v.detecting_sensors.empty();

  const auto control = detail::neighbours(graph, {Layer::Actuator, Layer::Cyber}, true);
  // Unaffected nodes reachable from the affected part of `stage`.
  auto handover_reach = [&](const std::optional<int>& stage) {
    std::set<std::string> seen;
    std::vector<std::string> stack;
    for (const auto& id : trace.affected)
      if (graph.at(id).stage == stage) stack.push_back(id);
    while (!stack.empty()) {
      const std::string u = stack.back();
      stack.pop_back();
      auto it = control.find(u);
      if (it == control.end()) continue;
      for (const auto& w : it->second) {
        if (trace.affected.count(w) || seen.count(w) || graph.at(w).stage != stage) continue;
        seen.insert(w);
        stack.push_back(w);
      }
    }
    return seen;
  };

  std::vector<const Node*> actuating;
  for (const auto& id : trace.affected)
    if (const Node& n = graph.at(id); is_actuating_kind(n.kind)) actuating.push_back(&n);

  std::string layers_text = trace.propagation_layers.join('+');
  v.narrative.push_back("compromise of " + trace.origin + " spreads over " + layers_text +
                        " edges to " + std::to_string(trace.affected.size() - 1) +
                        " further component(s) in " + std::to_string(trace.waves.size() - 1) +
                        " wave(s)");
  for (std::size_t k = 1; k < trace.waves.size(); ++k) {
    std::set<std::string> w(trace.waves[k].begin(), trace.waves[k].end());
    v.narrative.push_back("wave " + std::to_string(k) + ": " + detail::join_ids(w));
  }
  if (v.detectable)
    v.narrative.push_back("detectable=true: " + std::to_string(v.detecting_sensors.size()) +
                          " sensor(s) observe affected components (" +
                          detail::join_ids(v.detecting_sensors) + ")");
  else
    v.narrative.push_back("detectable=false: no sensor observes the affected components");

  if (actuating.empty()) {
    v.absorbable = true;
    v.vacuous = true;
    v.narrative.push_back("absorbable=true vacuous=true: no pump, valve or controller was affected");
    return v;
  }

  std::map<std::optional<int>, std::set<std::string>> reach_cache;
  bool all = true;
  for (const Node* n : actuating) {
    auto it = reach_cache.find(n->stage);
    if (it == reach_cache.end()) it = reach_cache.emplace(n->stage, handover_reach(n->stage)).first;
    std::set<std::string> subs;
    for (const auto& id : it->second) {
      const Node& c = graph.at(id);
      if (c.auxiliary && c.kind == n->kind) subs.insert(id);
    }
    const std::string where =
        n->stage ? " in stage " + std::to_string(*n->stage) : std::string(" without a stage");
    if (subs.empty()) {
      all = false;
      v.narrative.push_back(n->id + " (" + n->kind + "): no auxiliary " + n->kind + where +
                            " can take over");
    } else {
      v.narrative.push_back(n->id + " (" + n->kind + "): can be replaced by " +
                            detail::join_ids(subs));
    }
    v.substitutes.insert(subs.begin(), subs.end());
    v.substitutes_for.emplace(n->id, std::move(subs));
  }
  v.absorbable = all;
  v.narrative.push_back(std::string("absorbable=") + (all ? "true" : "false") + " vacuous=false");
  return v;
}

inline nlohmann::ordered_json trace_to_json(const PropagationTrace& t, const ResilienceVerdict& v) {
  nlohmann::ordered_json j;
  j["origin"] = t.origin;
  j["waves"] = t.waves;
  j["detecting_sensors"] = std::vector<std::string>(v.detecting_sensors.begin(), v.detecting_sensors.end());
  j["absorbable"] = v.absorbable;
  j["substitutes"] = std::vector<std::string>(v.substitutes.begin(), v.substitutes.end());
  j["narrative"] = v.narrative;
  return j;
}

}  // namespace resilens
