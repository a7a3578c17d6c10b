#include <gtest/gtest.h>

#include "resilens/csv_io.hpp"
#include "resilens/json_io.hpp"
#include "resilens/swat.hpp"

using namespace resilens;
using L = Layer;

namespace {

std::string model_path(SwatVariant v) {
  std::string name = to_string(v);
  name[0] = 'a';
  return std::string(RESILENS_MODELS_DIR) + "/swat_" + name + ".json";
}

MultilayerGraph awkward_graph() {
  MultilayerGraph g("quoting \"test\"");
  g.add_node({"a,b", "tank", {L::Physical, L::Mission}, true, false, 3, std::string("Tank \"A\", left")});
  g.add_node({"c", "pipe", {L::Physical}, false, true, std::nullopt, std::nullopt});
  g.add_node({"line\nbreak", "other", {L::Mission}, false, false, 1, std::nullopt});
  g.add_edge({"a,b", "c", "feeds, slowly", {L::Physical}, true});
  g.add_edge({"c", "line\nbreak", "\"quoted\"", {L::Mission}, false});
  return g;
}

}  // namespace

TEST(Json, RoundTripsEveryField) {
  const MultilayerGraph g = awkward_graph();
  const MultilayerGraph back = graph_from_json(graph_to_json(g));
  EXPECT_EQ(back, g);
  const Node& a = back.at("a,b");
  EXPECT_TRUE(a.is_protected);
  EXPECT_EQ(a.stage, 3);
  EXPECT_EQ(a.label, "Tank \"A\", left");
  EXPECT_TRUE(back.at("c").auxiliary);
  EXPECT_FALSE(back.at("c").stage.has_value());
}

TEST(Json, OutputIsCanonical) {
  const MultilayerGraph g = awkward_graph();
  std::vector<Node> nodes(g.nodes().rbegin(), g.nodes().rend());
  std::vector<Edge> edges(g.edges().rbegin(), g.edges().rend());
  EXPECT_EQ(graph_to_json(g), graph_to_json(MultilayerGraph(g.name(), nodes, edges)));
}

TEST(Json, SyntaxErrorNamesLineAndColumn) {
  try {
    graph_from_json("{\n  \"name\": \"x\",\n  \"nodes\": [,]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "line 3, column 13");
  }
}

TEST(Json, SchemaErrorsNamePointer) {
  auto where_of = [](const std::string& text) {
    try {
      graph_from_json(text);
    } catch (const ParseError& e) {
      return e.where();
    }
    return std::string("accepted");
  };
  EXPECT_EQ(where_of(R"({"name":"x","nodes":[{"id":"a","kind":"tank","layers":["physical"],"colour":1}],"edges":[]})"),
            "/nodes/0/colour");
  EXPECT_EQ(where_of(R"({"name":"x","nodes":[{"id":"a","kind":"tank","layers":["water"]}],"edges":[]})"),
            "/nodes/0/layers/0");
  EXPECT_EQ(where_of(R"({"name":"x","nodes":[{"id":"a","kind":"tank"}],"edges":[]})"), "/nodes/0");
  EXPECT_EQ(where_of(R"({"name":"x","nodes":[],"edges":[{"source":"a","target":"b","relation":"r","layers":[],"directed":"yes"}]})"),
            "/edges/0/directed");
  EXPECT_EQ(where_of(R"({"name":"x","nodes":[]})"), "");
  EXPECT_EQ(where_of(R"({"name":"x","nodes":[],"edges":[]})"), "accepted");
}

TEST(Json, LoadGraphPrefixesPath) {
  try {
    load_graph(std::string(RESILENS_MODELS_DIR) + "/does-not-exist.json");
    FAIL();
  } catch (const IoError&) {
  }
}

TEST(Csv, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(csv::quote("plain"), "plain");
  EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Csv, HeadersAreFixed) {
  const MultilayerGraph g = awkward_graph();
  EXPECT_EQ(nodes_to_csv(g).substr(0, kNodesCsvHeader.size()), kNodesCsvHeader);
  EXPECT_EQ(edges_to_csv(g).substr(0, kEdgesCsvHeader.size()), kEdgesCsvHeader);
  EXPECT_NE(nodes_to_csv(g).find("physical;mission"), std::string::npos);
}

TEST(Csv, RoundTripsAwkwardContent) {
  const MultilayerGraph g = awkward_graph();
  EXPECT_EQ(graph_from_csv(g.name(), nodes_to_csv(g), edges_to_csv(g)), g);
}

TEST(Csv, ErrorsNameFileAndLine) {
  auto where_of = [](const std::string& nodes, const std::string& edges) {
    try {
      graph_from_csv("x", nodes, edges, "n.csv", "e.csv");
    } catch (const ParseError& e) {
      return e.where();
    }
    return std::string("accepted");
  };
  const std::string nh = std::string(kNodesCsvHeader) + "\n";
  const std::string eh = std::string(kEdgesCsvHeader) + "\n";
  EXPECT_EQ(where_of("id,kind\n", eh), "n.csv: line 1");
  EXPECT_EQ(where_of(nh + "a,tank,physical,false,false,,\nb,tank,lava,false,false,,\n", eh), "n.csv: line 3");
  EXPECT_EQ(where_of(nh + "a,tank,physical,no,false,,\n", eh), "n.csv: line 2");
  EXPECT_EQ(where_of(nh + "a,tank,physical,false,false,x,\n", eh), "n.csv: line 2");
  EXPECT_EQ(where_of(nh, eh + "a,b,r,physical\n"), "e.csv: line 2");
  EXPECT_EQ(where_of(nh, eh + "\"a,b,r,physical,true\n"), "e.csv: line 2");
  EXPECT_EQ(where_of(nh + "a,tank,physical,false,false,,\n", eh), "accepted");
}

TEST(Csv, AcceptsCrLfLineEndings) {
  const std::string nodes = std::string(kNodesCsvHeader) + "\r\na,tank,physical,false,false,2,\r\n";
  const std::string edges = std::string(kEdgesCsvHeader) + "\r\n";
  const MultilayerGraph g = graph_from_csv("x", nodes, edges);
  EXPECT_EQ(g.at("a").stage, 2);
  EXPECT_FALSE(g.at("a").label.has_value());
}

TEST(Models, CheckedInFilesMatchBuilders) {
  for (auto v : kAllSwatVariants) {
    const MultilayerGraph file = load_graph(model_path(v));
    EXPECT_EQ(file, build_swat(v)) << model_path(v);
    EXPECT_EQ(read_text_file(model_path(v)), graph_to_json(build_swat(v))) << model_path(v);
  }
}

TEST(Models, JsonAndCsvRoundTrip) {
  for (auto v : kAllSwatVariants) {
    const MultilayerGraph g = load_graph(model_path(v));
    EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
    EXPECT_EQ(graph_from_csv(g.name(), nodes_to_csv(g), edges_to_csv(g)), g);
  }
}
