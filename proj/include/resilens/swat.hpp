#pragma once

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "resilens/graph.hpp"
#include "resilens/resilience.hpp"

namespace resilens {

// Three designs of the six-stage water-treatment testbed:
// A1 the original plant, A2 with extra pump sensors, A3 with extra
// sensors plus auxiliary pumps and redundant controllers.
enum class SwatVariant : std::uint8_t { A1 = 1, A2 = 2, A3 = 3 };

inline constexpr std::array<SwatVariant, 3> kAllSwatVariants = {SwatVariant::A1, SwatVariant::A2,
                                                                SwatVariant::A3};

inline std::string to_string(SwatVariant v) {
  return "A" + std::to_string(static_cast<int>(v));
}

inline SwatVariant parse_swat_variant(std::string_view s) {
  if (s == "a1" || s == "A1") return SwatVariant::A1;
  if (s == "a2" || s == "A2") return SwatVariant::A2;
  if (s == "a3" || s == "A3") return SwatVariant::A3;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (expected a1, a2 or a3)");
}

inline constexpr std::array<std::string_view, 6> kStageNames = {
    "Pumping", "Chemical Dosing", "Ultrafiltration", "Dechlorination", "Reverse Osmosis", "Backwash"};

inline std::string_view stage_name(int stage) {
  if (stage < 1 || stage > 6) throw std::out_of_range("stage must be 1..6");
  return kStageNames[static_cast<std::size_t>(stage - 1)];
}

// A set of interchangeable pumps moving water from `source` to `destination`.
// `pattern` holds "{}" where the pump index goes.
struct PumpFamily {
  std::string pattern;
  std::string source;       // label of a passive element of the stage
  std::string destination;  // likewise
  std::vector<std::string> process_sensors;
};

struct PassiveElement {
  std::string label;
  std::string kind;
};

struct WaterLink {
  std::string source;  // node ids
  std::string target;
  std::string relation = "feeds";
};

struct StageSpec {
  int stage = 0;
  std::string_view name;
  std::vector<PassiveElement> elements;
  std::vector<WaterLink> links;  // inside the stage and from upstream stages
  std::vector<PumpFamily> families;
};

// Id of a stage-local component; labels repeat across stages.
inline std::string stage_node_id(int stage, std::string_view label) {
  std::string id = "S" + std::to_string(stage) + "_" + std::string(label);
  for (char& c : id)
    if (c == ' ') c = '_';
  return id;
}

inline std::vector<StageSpec> swat_stage_specs() {
  auto id = stage_node_id;
  std::vector<StageSpec> specs;

  StageSpec s1{1, stage_name(1), {{"Pipe1", "pipe"}, {"Tank1", "tank"}, {"Pipe2", "pipe"}}, {}, {}};
  s1.links = {{id(1, "Pipe1"), id(1, "Tank1")}, {id(1, "Tank1"), id(1, "Pipe2")}};
  s1.families = {{"Pump{}", "Tank1", "Pipe2", {"Tank1_level", "Pipe2_flow"}}};
  specs.push_back(s1);

  StageSpec s2{2, stage_name(2), {{"Pipe1", "pipe"}, {"Mixer", "mixer"}, {"Pipe2", "pipe"}}, {}, {}};
  s2.links = {{id(1, "Pipe2"), id(2, "Pipe1")},
              {id(2, "Pipe1"), id(2, "Mixer")},
              {id(2, "Mixer"), id(2, "Pipe2")}};
  const std::array<std::pair<std::string, std::string>, 3> chemicals = {
      {{"NaCl", "Pipe2_conductivity"}, {"NaOCl", "Pipe2_ORP"}, {"HCl", "Pipe2_pH"}}};
  for (const auto& [chem, analyser] : chemicals) {
    s2.elements.push_back({"Tank_" + chem, "tank"});
    s2.elements.push_back({"Pipe_" + chem, "pipe"});
    s2.links.push_back({id(2, "Pipe_" + chem), id(2, "Mixer")});
    s2.families.push_back({"Pump{}_" + chem, "Tank_" + chem, "Pipe_" + chem, {analyser}});
  }
  specs.push_back(s2);

  StageSpec s3{3,
               stage_name(3),
               {{"Tank3", "tank"}, {"Pipe1", "pipe"}, {"Membrane", "membrane"}, {"Pipe2", "pipe"},
                {"Pipe3", "pipe"}},
               {},
               {}};
  s3.links = {{id(2, "Pipe2"), id(3, "Tank3")},
              {id(3, "Tank3"), id(3, "Pipe1")},
              {id(3, "Pipe1"), id(3, "Membrane")},
              {id(3, "Membrane"), id(3, "Pipe2")},
              {id(3, "Membrane"), id(3, "Pipe3")}};
  s3.families = {{"Pump{}", "Tank3", "Pipe1", {"Tank3_level", "Pipe1_flow", "Membrane_dp"}}};
  specs.push_back(s3);

  StageSpec s4{4,
               stage_name(4),
               {{"Tank4", "tank"}, {"Pipe1", "pipe"}, {"UV Unit", "uv-unit"}, {"Pipe2", "pipe"},
                {"Tank_NaHSO3", "tank"}, {"Pipe_NaHSO3", "pipe"}},
               {},
               {}};
  s4.links = {{id(3, "Pipe2"), id(4, "Tank4")},
              {id(4, "Tank4"), id(4, "Pipe1")},
              {id(4, "Pipe1"), id(4, "UV Unit")},
              {id(4, "UV Unit"), id(4, "Pipe2")},
              {id(4, "Pipe_NaHSO3"), id(4, "UV Unit")}};
  s4.families = {{"Pump{}", "Tank4", "Pipe1", {"Tank4_level", "Pipe1_flow"}},
                 {"Pump{}_NaHSO3", "Tank_NaHSO3", "Pipe_NaHSO3", {"Pipe2_ORP"}}};
  specs.push_back(s4);

  StageSpec s5{5, stage_name(5), {}, {}, {}};
  for (int k = 1; k <= 6; ++k) s5.elements.push_back({"Pipe" + std::to_string(k), "pipe"});
  s5.elements.push_back({"RO Unit", "ro-unit"});
  s5.links = {{id(4, "Pipe2"), id(5, "Pipe1")},
              {id(5, "Pipe1"), id(5, "Pipe6")},
              {id(5, "Pipe2"), id(5, "RO Unit")},
              {id(5, "RO Unit"), id(5, "Pipe3")},
              {id(5, "RO Unit"), id(5, "Pipe4")},
              {id(5, "RO Unit"), id(5, "Pipe5")}};
  s5.families = {{"PumpBoost{}", "Pipe6", "Pipe2", {"Pipe2_pressure", "Pipe3_flow"}}};
  specs.push_back(s5);

  StageSpec s6{6,
               stage_name(6),
               {{"Tank6", "tank"}, {"Pipe1", "pipe"}, {"Pipe2", "pipe"}, {"Pipe3", "pipe"}},
               {},
               {}};
  s6.links = {{id(5, "Pipe3"), id(6, "Tank6")},
              {id(6, "Tank6"), id(6, "Pipe3")},
              {id(6, "Pipe1"), id(6, "Pipe3")},
              {id(6, "Pipe3"), id(6, "Pipe2")},
              {id(6, "Pipe1"), id(3, "Membrane"), "backwashes"}};
  s6.families = {{"Pump_Backwash{}", "Pipe2", "Pipe1", {"Tank6_level", "Pipe1_flow"}}};
  specs.push_back(s6);
  return specs;
}

namespace detail {

inline std::string pump_label(const std::string& pattern, int k) {
  const auto pos = pattern.find("{}");
  // The backwash family is a single pump plus one auxiliary.
  if (pattern == "Pump_Backwash{}") {
    if (k == 1) return "Pump_Backwash";
    if (k == 3) return "Pump_Backwash_aux";
    return {};
  }
  return pattern.substr(0, pos) + std::to_string(k) + pattern.substr(pos + 2);
}

}  // namespace detail

// Canonical reconstruction of one design.
//
// Water only flows along Physical edges; pumps sit in the Mission layer
// next to the elements they draw from and drive to. Every sensor reports
// to its stage controller over Cyber edges, and controllers form a ring.
inline MultilayerGraph build_swat(SwatVariant variant) {
  using L = Layer;
  const int v = static_cast<int>(variant);
  MultilayerGraph g(to_string(variant));
  const auto specs = swat_stage_specs();

  auto node = [&](std::string id, std::string kind, LayerSet layers, int stage,
                  std::optional<std::string> label, bool aux = false) {
    g.add_node(Node{std::move(id), std::move(kind), layers, false, aux, stage, std::move(label)});
  };
  auto edge = [&](const std::string& a, const std::string& b, std::string rel, LayerSet layers,
                  bool directed = true) {
    g.add_edge(Edge{a, b, std::move(rel), layers, directed});
  };
  auto pairwise = [&](const std::vector<std::string>& ids, const std::string& rel, LayerSet layers) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) edge(ids[i], ids[j], rel, layers, false);
  };

  for (const StageSpec& spec : specs) {
    for (const auto& el : spec.elements)
      node(stage_node_id(spec.stage, el.label), el.kind, {L::Physical, L::Mission}, spec.stage,
           el.label);
    for (const auto& link : spec.links) edge(link.source, link.target, link.relation, {L::Physical});
  }

  std::vector<int> pump_indices = {1, 2};
  if (v == 3) pump_indices.insert(pump_indices.end(), {3, 4});
  std::vector<std::string> y_suffixes = {"status"};
  if (v >= 2) y_suffixes.insert(y_suffixes.end(), {"temp", "rotation"});

  for (const StageSpec& spec : specs) {
    const int st = spec.stage;
    const std::string ctrl = "CTRL" + std::to_string(st);
    const std::string ctrl2 = ctrl + "_2";
    node(ctrl, "controller", {L::Actuator, L::Cyber}, st, std::nullopt);
    std::vector<std::string> ctrls = {ctrl};
    if (v == 3) {
      node(ctrl2, "controller", {L::Actuator, L::Cyber}, st, std::nullopt, true);
      ctrls.push_back(ctrl2);
      edge(ctrl2, ctrl, "can shut down", {L::Actuator, L::Cyber});
    }

    std::vector<std::string> pump_sensors[2];  // original, auxiliary
    std::vector<std::string> shared_sensors;   // report to every stage controller
    for (const PumpFamily& fam : spec.families) {
      std::vector<std::string> procs;
      for (const auto& pr : fam.process_sensors) {
        const std::string pid = stage_node_id(st, pr);
        procs.push_back(pid);
        if (g.contains(pid)) continue;
        node(pid, "sensor", {L::Sensor, L::Cyber}, st, pr);
        shared_sensors.push_back(pid);
        edge(pid, stage_node_id(st, pr.substr(0, pr.rfind('_'))), "measures", {L::Cyber});
      }
      std::vector<std::string> members[2];
      for (int k : pump_indices) {
        const std::string label = detail::pump_label(fam.pattern, k);
        if (label.empty()) continue;
        const bool aux = k >= 3;
        const std::string p = stage_node_id(st, label);
        node(p, "pump", {L::Actuator, L::Mission}, st, label, aux);
        edge(p, stage_node_id(st, fam.source), "draws water from", {L::Mission});
        edge(p, stage_node_id(st, fam.destination), "drives water to", {L::Mission});
        edge(aux ? ctrl2 : ctrl, p, "commands", {L::Actuator, L::Cyber, L::Mission});
        if (v == 3 && !aux) edge(ctrl2, p, "can take over", {L::Actuator});
        for (const auto& y : y_suffixes) {
          const std::string s = p + "_" + y;
          node(s, "sensor", {L::Sensor, L::Cyber, L::Mission}, st, label + "_" + y);
          edge(s, p, "monitors", {L::Cyber, L::Mission});
          pump_sensors[aux].push_back(s);
          for (const auto& pr : procs) edge(s, pr, "corroborates", {L::Sensor});
          edge(s, aux ? ctrl2 : ctrl, "sends data to", {L::Cyber});
        }
        members[aux].push_back(p);
      }
      pairwise(members[0], "runs in parallel with", {L::Mission});
      pairwise(members[1], "runs in parallel with", {L::Mission});
      for (const auto& a : members[1])
        for (const auto& b : members[0]) edge(a, b, "backs up", {L::Mission});
    }
    pairwise(pump_sensors[0], "cross-checks", {L::Sensor});
    pairwise(pump_sensors[1], "cross-checks", {L::Sensor});

    if (st == 6) {
      const std::string valve = stage_node_id(6, "Valve1");
      node(valve, "valve", {L::Actuator, L::Mission}, 6, "Valve1");
      edge(ctrl, valve, "commands", {L::Actuator, L::Cyber, L::Mission});
      edge(valve, stage_node_id(6, "Pipe1"), "regulates", {L::Mission});
      if (v == 3) edge(ctrl2, valve, "can take over", {L::Actuator});
    }

    if (v == 3) {
      const std::string fb = ctrl2 + "_feedback";
      node(fb, "sensor", {L::Sensor, L::Cyber}, st, std::nullopt);
      for (const Node& n : g.nodes())
        if (n.kind == "sensor" && n.stage == st && n.id != fb)
          edge(fb, n.id, "cross-checks", {L::Sensor}, false);
      shared_sensors.push_back(fb);
    }
    for (const auto& s : shared_sensors)
      for (const auto& c : ctrls) edge(s, c, "sends data to", {L::Cyber});
  }

  for (int st = 1; st <= 5; ++st) {
    const std::string a = "CTRL" + std::to_string(st), b = "CTRL" + std::to_string(st + 1);
    edge(a, b, "exchanges data with", {L::Cyber}, false);
    if (v == 3) edge(a + "_2", b + "_2", "exchanges data with", {L::Cyber}, false);
  }
  return g;
}

// The reference per-stage critical points for each design, keyed by
// (stage, layer) and holding component names (node labels, or ids for
// controllers and feedback sensors).
inline CriticalTable expected_critical_points(SwatVariant variant) {
  using L = Layer;
  const std::array<std::string, 3> chem = {"NaCl", "NaOCl", "HCl"};
  auto indexed = [](const std::string& pattern, std::initializer_list<int> ks) {
    std::set<std::string> out;
    for (int k : ks) out.insert(detail::pump_label(pattern, k));
    return out;
  };
  auto with_suffixes = [](const std::set<std::string>& names, std::initializer_list<const char*> ys) {
    std::set<std::string> out;
    for (const auto& n : names)
      for (const char* y : ys) out.insert(n + "_" + y);
    return out;
  };
  auto chem_pumps = [&](std::initializer_list<int> ks) {
    std::set<std::string> out;
    for (const auto& c : chem)
      for (auto& p : indexed("Pump{}_" + c, ks)) out.insert(p);
    return out;
  };
  auto unite = [](std::set<std::string> a, const std::set<std::string>& b) {
    a.insert(b.begin(), b.end());
    return a;
  };
  auto ctrl = [](int st, const char* suffix = "") { return "CTRL" + std::to_string(st) + suffix; };

  CriticalTable t;
  auto row = [&](int st, std::set<std::string> p, std::set<std::string> s, std::set<std::string> a,
                 std::set<std::string> c, std::set<std::string> m) {
    t[{st, L::Physical}] = std::move(p);
    t[{st, L::Sensor}] = std::move(s);
    t[{st, L::Actuator}] = std::move(a);
    t[{st, L::Cyber}] = std::move(c);
    t[{st, L::Mission}] = std::move(m);
  };
  const std::set<std::string> p12 = indexed("Pump{}", {1, 2});
  const std::set<std::string> boost12 = indexed("PumpBoost{}", {1, 2});
  const std::set<std::string> nahso3_12 = indexed("Pump{}_NaHSO3", {1, 2});

  switch (variant) {
    case SwatVariant::A1:
      row(1, {"Pipe1"}, with_suffixes(p12, {"status"}), {ctrl(1)}, {ctrl(1)}, p12);
      row(2, {"Mixer"}, with_suffixes(chem_pumps({1, 2}), {"status"}), {ctrl(2)}, {ctrl(2)},
          chem_pumps({1, 2}));
      row(3, {"Membrane"}, with_suffixes(p12, {"status"}), {ctrl(3)}, {ctrl(3)}, p12);
      row(4, {"UV Unit"}, with_suffixes(p12, {"status"}), {ctrl(4)}, {ctrl(4)}, unite(p12, nahso3_12));
      row(5, {"RO Unit"}, with_suffixes(boost12, {"status"}), {ctrl(5)}, {ctrl(5)},
          unite({"Pipe6"}, boost12));
      row(6, {"Pipe3"}, {"Pump_Backwash_status"}, {ctrl(6)}, {ctrl(6)}, {"Pump_Backwash"});
      break;
    case SwatVariant::A2: {
      auto y3 = [&](const std::set<std::string>& n) {
        return with_suffixes(n, {"status", "temp", "rotation"});
      };
      row(1, {"Tank1"}, y3(p12), {ctrl(1)}, {ctrl(1)}, p12);
      row(2, {"Mixer"}, y3(chem_pumps({1, 2})), {ctrl(2)}, {ctrl(2)}, chem_pumps({1, 2}));
      row(3, {"Membrane"}, y3(p12), {ctrl(3)}, {ctrl(3)}, p12);
      row(4, {"UV Unit"}, y3(p12), {ctrl(4)}, {ctrl(4)}, unite(p12, nahso3_12));
      row(5, {"RO Unit"}, y3(boost12), {ctrl(5)}, {ctrl(5)}, boost12);
      row(6, {"Pipe3"}, y3({"Pump_Backwash"}), {ctrl(6)}, {ctrl(6)}, {"Pump_Backwash"});
      break;
    }
    case SwatVariant::A3: {
      const auto p14 = indexed("Pump{}", {1, 2, 3, 4});
      row(1, {"Tank1"}, {ctrl(1, "_feedback")}, {ctrl(1)}, {ctrl(1), ctrl(1, "_2")},
          unite({"Tank1"}, p14));
      row(2, {"Mixer"}, {ctrl(2, "_feedback")}, {ctrl(2)}, {ctrl(2), ctrl(2, "_2")},
          unite({"Mixer"}, chem_pumps({1, 2, 3, 4})));
      row(3, {"Membrane"}, {ctrl(3, "_feedback")}, {ctrl(3)}, {ctrl(3), ctrl(3, "_2")},
          unite({"Membrane"}, p14));
      row(4, {"UV Unit"}, {ctrl(4, "_2_feedback")}, {ctrl(4, "_2")}, {ctrl(4), ctrl(4, "_2")},
          unite(unite({"UV Unit"}, p14), indexed("Pump{}_NaHSO3", {1, 2, 3, 4})));
      row(5, {"RO Unit"}, {ctrl(5, "_2_feedback")}, {ctrl(5, "_2")}, {ctrl(5), ctrl(5, "_2")},
          unite({"RO Unit", "Pipe6"}, indexed("PumpBoost{}", {1, 2, 3, 4})));
      row(6, {"Pipe3"}, {ctrl(6, "_2_feedback")}, {ctrl(6, "_2")}, {ctrl(6), ctrl(6, "_2")},
          {"Pump_Backwash", "Pump_Backwash_aux"});
      break;
    }
  }
  return t;
}

}  // namespace resilens
