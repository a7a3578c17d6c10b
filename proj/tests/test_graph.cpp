#include <gtest/gtest.h>

#include "resilens/graph.hpp"
#include "resilens/swat.hpp"

using namespace resilens;
using L = Layer;

namespace {

Node node(std::string id, std::string kind, LayerSet layers, std::optional<int> stage = std::nullopt) {
  return Node{std::move(id), std::move(kind), layers, false, false, stage, std::nullopt};
}

MultilayerGraph small_plant() {
  MultilayerGraph g("plant");
  g.add_node(node("T", "tank", {L::Physical, L::Mission}, 1));
  g.add_node(node("P", "pipe", {L::Physical, L::Mission}, 1));
  g.add_node(node("M", "pump", {L::Actuator, L::Mission}, 1));
  g.add_node(node("S", "sensor", {L::Sensor, L::Cyber}, 1));
  g.add_node(node("C", "controller", {L::Actuator, L::Cyber}, 1));
  g.add_edge({"T", "P", "feeds", {L::Physical}});
  g.add_edge({"C", "M", "commands", {L::Actuator, L::Cyber, L::Mission}});
  g.add_edge({"S", "C", "sends data to", {L::Cyber}});
  g.add_edge({"M", "P", "drives water to", {L::Mission}});
  return g;
}

}  // namespace

TEST(LayerSet, ParsesAndJoinsInCanonicalOrder) {
  LayerSet s{L::Mission, L::Sensor};
  EXPECT_EQ(s.join(';'), "sensor;mission");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_FALSE(s.contains(L::Cyber));
  EXPECT_EQ(parse_layer("cyber"), L::Cyber);
  EXPECT_FALSE(parse_layer("Cyber").has_value());
  EXPECT_TRUE(is_transversal(L::Mission));
  EXPECT_FALSE(is_transversal(L::Actuator));
}

TEST(MultilayerGraph, AddNodeRejectsDuplicateId) {
  MultilayerGraph g = small_plant();
  try {
    g.add_node(node("T", "tank", {L::Physical}));
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.rule(), Rule::DuplicateId);
  }
}

TEST(MultilayerGraph, AddNodeEnforcesKindLayerRules) {
  MultilayerGraph g("g");
  EXPECT_THROW(g.add_node(node("s", "sensor", {L::Cyber})), GraphError);
  EXPECT_THROW(g.add_node(node("p", "pump", {L::Mission})), GraphError);
  EXPECT_THROW(g.add_node(node("e", "tank", {})), GraphError);
  EXPECT_THROW(g.add_node(node("x", "tank", {L::Physical}, 7)), GraphError);
  EXPECT_NO_THROW(g.add_node(node("v", "valve", {L::Actuator})));
}

TEST(MultilayerGraph, AddEdgeChecksEndpointsAndLayers) {
  MultilayerGraph g = small_plant();
  auto rule_of = [&](Edge e) {
    try {
      g.add_edge(std::move(e));
    } catch (const GraphError& err) {
      return err.rule();
    }
    return Rule::UnknownKind;  // sentinel: accepted
  };
  EXPECT_EQ(rule_of({"T", "nowhere", "feeds", {L::Physical}}), Rule::UnknownEndpoint);
  EXPECT_EQ(rule_of({"T", "T", "feeds", {L::Physical}}), Rule::SelfLoop);
  EXPECT_EQ(rule_of({"S", "T", "measures", {L::Sensor}}), Rule::LayerMismatch);
  EXPECT_EQ(rule_of({"T", "P", "feeds", {L::Physical}}), Rule::DuplicateEdge);
  EXPECT_EQ(rule_of({"T", "P", "feeds", {}}), Rule::EmptyLayerSet);
  // Transversal tags are exempt from the endpoint-layer rule.
  EXPECT_EQ(rule_of({"S", "T", "measures", {L::Cyber}}), Rule::UnknownKind);
}

TEST(MultilayerGraph, RemoveNodeDropsIncidentEdges) {
  MultilayerGraph g = small_plant();
  g.remove_node("C");
  EXPECT_FALSE(g.contains("C"));
  for (const Edge& e : g.edges()) {
    EXPECT_NE(e.source, "C");
    EXPECT_NE(e.target, "C");
  }
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_THROW(g.remove_node("C"), GraphError);
}

TEST(MultilayerGraph, EqualityIgnoresInsertionOrder) {
  MultilayerGraph a = small_plant();
  std::vector<Node> nodes(a.nodes().rbegin(), a.nodes().rend());
  std::vector<Edge> edges(a.edges().rbegin(), a.edges().rend());
  MultilayerGraph b("plant", nodes, edges);
  EXPECT_EQ(a, b);
  b.set_name("other");
  EXPECT_FALSE(a == b);
}

TEST(Validate, ReportsEveryViolation) {
  std::vector<Node> nodes = {node("a", "tank", {L::Physical}), node("a", "tank", {L::Physical}),
                             node("s", "sensor", {L::Cyber}), node("z", "gizmo", {L::Physical})};
  std::vector<Edge> edges = {{"a", "ghost", "feeds", {L::Physical}},
                             {"a", "a", "feeds", {L::Physical}},
                             {"a", "z", "feeds", {L::Physical}},
                             {"a", "z", "feeds", {L::Physical}}};
  const auto rep = validate(MultilayerGraph("bad", nodes, edges));
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.count(Rule::DuplicateId), 1u);
  EXPECT_EQ(rep.count(Rule::KindLayerRule), 1u);
  EXPECT_EQ(rep.count(Rule::UnknownEndpoint), 1u);
  EXPECT_EQ(rep.count(Rule::SelfLoop), 1u);
  EXPECT_EQ(rep.count(Rule::DuplicateEdge), 1u);
  ASSERT_EQ(rep.warnings.size(), 1u);
  EXPECT_EQ(rep.warnings[0].rule, Rule::UnknownKind);
}

TEST(Validate, WellFormedModelsAreClean) {
  for (auto v : kAllSwatVariants) {
    const auto rep = validate(build_swat(v));
    EXPECT_TRUE(rep.ok()) << to_string(v);
    EXPECT_TRUE(rep.warnings.empty()) << to_string(v);
  }
}

TEST(LayerView, InducesLayerNodesAndTaggedEdges) {
  const MultilayerGraph g = small_plant();
  const LayerView mission = layer_view(g, L::Mission);
  EXPECT_EQ(mission.node_ids, (std::vector<std::string>{"M", "P", "T"}));
  // C is not a Mission node, so the command edge is dropped from this view.
  EXPECT_EQ(mission.adjacency.edge_entries(), 2u);
  EXPECT_TRUE(mission.adjacency.symmetric());

  const LayerView directed = layer_view(g, L::Cyber, false);
  EXPECT_EQ(directed.node_ids, (std::vector<std::string>{"C", "S"}));
  EXPECT_EQ(directed.adjacency(*directed.index_of("S"), *directed.index_of("C")), 1);
  EXPECT_EQ(directed.adjacency(*directed.index_of("C"), *directed.index_of("S")), 0);
}

TEST(LayerView, UndirectedEdgesFillBothCellsEvenInDirectedViews) {
  MultilayerGraph g("g");
  g.add_node(node("a", "pump", {L::Actuator}));
  g.add_node(node("b", "pump", {L::Actuator}));
  g.add_edge({"a", "b", "runs in parallel with", {L::Actuator}, false});
  const LayerView v = layer_view(g, L::Actuator, false);
  EXPECT_TRUE(v.adjacency.symmetric());
  EXPECT_EQ(v.adjacency.edge_entries(), 2u);
}

TEST(LayerView, ControllersFormTheCyberCoreOfTheOriginalDesign) {
  const LayerView cyber = layer_view(build_swat(SwatVariant::A1), L::Cyber);
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(cyber.index_of("CTRL" + std::to_string(k)).has_value());
}

TEST(StageSubgraph, KeepsOnlyInternalEdges) {
  const MultilayerGraph g = build_swat(SwatVariant::A1);
  const MultilayerGraph s2 = stage_subgraph(g, 2);
  for (const Node& n : s2.nodes()) EXPECT_EQ(n.stage, 2);
  for (const Edge& e : s2.edges()) {
    EXPECT_TRUE(s2.contains(e.source));
    EXPECT_TRUE(s2.contains(e.target));
  }
  EXPECT_EQ(stages_of(g), (std::vector<int>{1, 2, 3, 4, 5, 6}));
}
