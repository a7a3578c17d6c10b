// resilens: command-line front end for multilayer resilience assessment.
//
//   resilens build-swat --variant a1 -o models/swat_a1.json
//   resilens assess models/swat_a1.json --layer cyber
//   resilens critical models/swat_a3.json
//   resilens compare models/swat_a1.json models/swat_a2.json models/swat_a3.json
//   resilens cascade models/swat_a1.json --origin CTRL2
//   resilens export to-csv models/swat_a1.json --nodes n.csv --edges e.csv
//
// Exit status: 0 success, 1 parse/usage error, 2 semantic error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "resilens.hpp"

namespace {

using namespace resilens;

// Raised for input that parses but makes no sense (unknown node, bad layer).
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EigenvectorConfig config_from_env() {
  EigenvectorConfig cfg;
  if (const char* tol = std::getenv("RESILENS_TOLERANCE")) {
    try {
      std::size_t used = 0;
      cfg.tolerance = std::stod(tol, &used);
      if (used != std::string(tol).size() || !(cfg.tolerance > 0.0)) throw std::invalid_argument(tol);
    } catch (const std::exception&) {
      throw UsageError(std::string("RESILENS_TOLERANCE must be a positive number, got '") + tol + "'");
    }
  }
  return cfg;
}

Layer layer_arg(const std::string& s) {
  if (auto l = parse_layer(s)) return *l;
  throw SemanticError("invalid layer '" + s + "' (expected physical, sensor, actuator, cyber or mission)");
}

LayerSet layers_arg(const std::vector<std::string>& items) {
  LayerSet set;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) set.insert(layer_arg(part));
  }
  return set;
}

// Loads and validates; warnings go to stderr, violations are fatal.
MultilayerGraph load_checked(const std::string& path) {
  MultilayerGraph g = load_graph(path);
  const ValidationReport rep = validate(g);
  for (const auto& w : rep.warnings) fmt::print(stderr, "{}: warning: {}\n", path, w.message);
  if (!rep.ok()) {
    for (const auto& v : rep.violations)
      fmt::print(stderr, "{}: {}: {}\n", path, to_string(v.rule), v.message);
    throw SemanticError(path + ": " + std::to_string(rep.violations.size()) + " validation error(s)");
  }
  return g;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    fmt::print("{}", text);
  else
    write_text_file(path, text);
}

std::string joined(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out.empty() ? "-" : out;
}

void run_assess(const std::string& path, const std::string& layer_name, const std::string& metric,
                const std::string& csv_path) {
  const MultilayerGraph g = load_checked(path);
  const EigenvectorConfig cfg = config_from_env();
  std::vector<Layer> layers(kAllLayers.begin(), kAllLayers.end());
  if (!layer_name.empty()) layers = {layer_arg(layer_name)};

  if (metric == "wcc") {
    for (Layer l : layers) {
      const auto part = weakly_connected_components(layer_view(g, l));
      fmt::print("# {} layer: {} component(s)\n", to_string(l), part.count());
      for (std::size_t c = 0; c < part.count(); ++c) {
        std::string members;
        for (const auto& id : part.components[c]) members += (members.empty() ? "" : " ") + id;
        fmt::print("{:>4}  {:>4}  {}\n", c, part.components[c].size(), members);
      }
    }
    return;
  }

  const DesignAssessment design = assess_design(g, cfg);
  for (Layer l : layers) {
    std::map<std::string, double> scores;
    std::set<std::string> critical;
    double mean = 0.0, sd = 0.0;
    if (metric == "betweenness") {
      scores = betweenness_centrality(layer_view(g, l)).as_map();
      critical = argmax_set(scores);
      std::tie(mean, sd) = mean_and_std(scores);
    } else {
      const LayerAssessment& la = design[l];
      scores = la.per_node_scores;
      critical = la.critical_points;
      mean = la.mean;
      sd = la.std;
      if (!la.converged) fmt::print(stderr, "warning: {} layer did not converge\n", to_string(l));
    }
    std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    fmt::print("# {} layer ({}), {} node(s)\n", to_string(l), metric, rows.size());
    for (const auto& [id, s] : rows)
      fmt::print("{:<32} {:>12}{}\n", id, fixed7(s), critical.count(id) ? "  *" : "");
    fmt::print("mean {}  std {}  critical: {}\n", fixed7(mean), fixed7(sd), joined(critical));
  }
  if (metric == "eigenvector") fmt::print("overall mean {}\n", fixed7(design.overall_mean));
  if (!csv_path.empty()) {
    if (metric != "eigenvector") throw UsageError("--csv is only available for the eigenvector metric");
    write_text_file(csv_path, scores_csv(g, design));
  }
}

void run_critical(const std::string& path, const std::string& csv_path) {
  const MultilayerGraph g = load_checked(path);
  const EigenvectorConfig cfg = config_from_env();
  const CriticalTable table = by_display_name(g, stage_critical_points(g, cfg));
  fmt::print("# {}: critical points per stage\n", g.name());
  for (int st : stages_of(g)) {
    fmt::print("stage {} ({})\n", st, st >= 1 && st <= 6 ? stage_name(st) : "?");
    for (Layer l : kAllLayers) fmt::print("  {:<9} {}\n", to_string(l), joined(table.at({st, l})));
  }
  const DesignAssessment design = assess_design(g, cfg);
  fmt::print("# {}: critical points per layer (whole design)\n", g.name());
  for (Layer l : kAllLayers) fmt::print("  {:<9} {}\n", to_string(l), joined(design[l].critical_points));
  const ExposureReport e = exposure(g, design);
  fmt::print("protection rate {}  exposition rate {}  ({} critical, {} protected, {} components)\n",
             fixed7(e.protection_rate), fixed7(e.exposition_rate), e.critical_total,
             e.critical_protected, e.component_total);
  if (!csv_path.empty()) {
    std::string csv = "design,stage,layer,component\n";
    for (const auto& [key, names] : table)
      for (const auto& n : names)
        csv += g.name() + ',' + std::to_string(key.first) + ',' + std::string(to_string(key.second)) +
               ',' + csv::quote(n) + '\n';
    write_text_file(csv_path, csv);
  }
}

void run_compare(const std::vector<std::string>& paths, const std::string& csv_path,
                 const std::string& summary_path) {
  const EigenvectorConfig cfg = config_from_env();
  std::vector<DesignAssessment> designs;
  for (const auto& p : paths) designs.push_back(assess_design(load_checked(p), cfg));
  const ComparisonReport rep = compare_designs(designs);
  fmt::print("{:<10}", "design");
  for (Layer l : kAllLayers) fmt::print(" {:>10}", to_string(l));
  fmt::print(" {:>10}\n", "mean");
  for (std::size_t i = 0; i < rep.designs.size(); ++i) {
    fmt::print("{:<10}", rep.designs[i].design_name);
    for (double c : rep.normalized_matrix[i]) fmt::print(" {:>10}", fixed7(c));
    fmt::print(" {:>10}\n", fixed7(rep.normalized_means[i]));
  }
  std::string ranking;
  for (const auto& n : rep.ranking) ranking += (ranking.empty() ? "" : " < ") + n;
  fmt::print("{} (lower = more resilient)\n", ranking);
  for (const auto& tie : rep.ties) {
    std::string names;
    for (const auto& n : tie) names += (names.empty() ? "" : ", ") + n;
    fmt::print("tie: {}\n", names);
  }
  if (!csv_path.empty()) write_text_file(csv_path, comparison_csv(rep));
  if (!summary_path.empty()) write_text_file(summary_path, summary_csv(rep.designs));
}

void run_cascade(const std::string& path, const std::string& origin,
                 const std::vector<std::string>& layer_items, const std::string& out_path) {
  const MultilayerGraph g = load_checked(path);
  const LayerSet layers = layer_items.empty() ? kDefaultPropagationLayers : layers_arg(layer_items);
  if (layers.empty()) throw SemanticError("--layers selects no layer");
  PropagationTrace trace;
  try {
    trace = propagate(g, origin, layers);
  } catch (const UnknownOrigin& e) {
    throw SemanticError(e.what());
  }
  const ResilienceVerdict v = absorbability(g, trace);
  const std::string json = trace_to_json(trace, v).dump(2) + "\n";
  if (!out_path.empty()) write_text_file(out_path, json);
  fmt::print("{}", json);
  fmt::print("verdict: detectable={} absorbable={}{}\n", v.detectable, v.absorbable,
             v.vacuous ? " (vacuous)" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilayer resilience assessment of cyber-physical system designs"};
  app.require_subcommand(1);

  std::string variant, out;
  auto* build = app.add_subcommand("build-swat", "Write the canonical model of a testbed design");
  build->add_option("--variant", variant, "a1, a2 or a3")->required();
  build->add_option("-o,--output", out, "Output file (default: stdout)");

  std::string graph, layer, metric = "eigenvector", csv_out;
  auto* assess = app.add_subcommand("assess", "Per-node scores and per-layer summary");
  assess->add_option("graph", graph, "Graph JSON file")->required();
  assess->add_option("--layer", layer, "Restrict to one layer");
  assess->add_option("--metric", metric, "eigenvector, betweenness or wcc")
      ->check(CLI::IsMember({"eigenvector", "betweenness", "wcc"}));
  assess->add_option("--csv", csv_out, "Also write per-node scores as CSV");

  auto* critical = app.add_subcommand("critical", "Critical-point table (stage x layer) and exposure");
  critical->add_option("graph", graph, "Graph JSON file")->required();
  critical->add_option("--csv", csv_out, "Also write the table as CSV");

  std::vector<std::string> graphs;
  std::string summary_out;
  auto* compare = app.add_subcommand("compare", "Normalized comparison and ranking of designs");
  compare->add_option("graphs", graphs, "Two or more graph JSON files")->required();
  compare->add_option("--csv", csv_out, "Also write the normalized matrix as CSV");
  compare->add_option("--summary-csv", summary_out, "Also write raw per-layer mean/std as CSV");

  std::string origin;
  std::vector<std::string> prop_layers;
  auto* cascade = app.add_subcommand("cascade", "Propagate a compromise and judge the outcome");
  cascade->add_option("graph", graph, "Graph JSON file")->required();
  cascade->add_option("--origin", origin, "Compromised node id")->required();
  cascade->add_option("--layers", prop_layers, "Propagation layers (default physical,mission)");
  cascade->add_option("-o,--output", out, "Also write the trace JSON to a file");

  std::string nodes_csv, edges_csv, name;
  auto* exp = app.add_subcommand("export", "Convert between graph JSON and node/edge CSV");
  exp->require_subcommand(1);
  auto* to_csv = exp->add_subcommand("to-csv", "Graph JSON to nodes.csv + edges.csv");
  to_csv->add_option("graph", graph, "Graph JSON file")->required();
  to_csv->add_option("--nodes", nodes_csv, "Nodes CSV output")->required();
  to_csv->add_option("--edges", edges_csv, "Edges CSV output")->required();
  auto* to_json = exp->add_subcommand("to-json", "nodes.csv + edges.csv to graph JSON");
  to_json->add_option("--nodes", nodes_csv, "Nodes CSV input")->required();
  to_json->add_option("--edges", edges_csv, "Edges CSV input")->required();
  to_json->add_option("--name", name, "Graph name")->required();
  to_json->add_option("-o,--output", out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) {
      SwatVariant v;
      try {
        v = parse_swat_variant(variant);
      } catch (const std::invalid_argument& e) {
        throw SemanticError(e.what());
      }
      write_or_print(out, graph_to_json(build_swat(v)));
    } else if (*assess) {
      run_assess(graph, layer, metric, csv_out);
    } else if (*critical) {
      run_critical(graph, csv_out);
    } else if (*compare) {
      if (graphs.size() < 2) throw UsageError("compare needs at least two graphs");
      run_compare(graphs, csv_out, summary_out);
    } else if (*cascade) {
      run_cascade(graph, origin, prop_layers, out);
    } else if (*to_csv) {
      const MultilayerGraph g = load_graph(graph);
      write_text_file(nodes_csv, nodes_to_csv(g));
      write_text_file(edges_csv, edges_to_csv(g));
    } else if (*to_json) {
      const MultilayerGraph g = graph_from_csv(name, read_text_file(nodes_csv), read_text_file(edges_csv),
                                               nodes_csv, edges_csv);
      write_or_print(out, graph_to_json(g));
    }
  } catch (const ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const SemanticError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const GraphError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
