#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resilens/centrality.hpp"
#include "resilens/graph.hpp"

namespace resilens {

// Relative tolerance under which two scores count as tied for the maximum.
inline constexpr double kTieTolerance = 1e-9;

struct LayerAssessment {
  Layer layer = Layer::Physical;
  std::map<std::string, double> per_node_scores;
  double mean = 0.0;
  double std = 0.0;  // population
  std::set<std::string> critical_points;
  bool empty = false;
  bool converged = true;
};

struct DesignAssessment {
  std::string design_name;
  std::array<LayerAssessment, 5> layers;
  double overall_mean = 0.0;

  const LayerAssessment& operator[](Layer l) const { return layers[layer_index(l)]; }
};

struct ComparisonReport {
  std::vector<DesignAssessment> designs;
  std::vector<std::array<double, 5>> normalized_matrix;  // one row per design
  std::vector<double> normalized_means;                  // row means of the matrix
  std::vector<std::string> ranking;                      // ascending overall_mean
  std::vector<std::vector<std::string>> ties;            // groups of equal overall_mean
  double raw_min = 0.0;
  double raw_max = 0.0;
};

struct ExposureReport {
  std::string design_name;
  double protection_rate = 0.0;
  double exposition_rate = 0.0;
  int critical_total = 0;
  int critical_protected = 0;
  int component_total = 0;
};

class TooFewDesigns : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Every index whose score is within the tie tolerance of the maximum.
// All-zero (or empty) input has no maximum worth reporting.
template <class Scores>
std::set<std::string> argmax_set(const Scores& scores) {
  double best = 0.0;
  for (const auto& [id, s] : scores) best = std::max(best, s);
  std::set<std::string> out;
  if (!(best > 0.0)) return out;
  const double cut = best - kTieTolerance * std::max(1.0, best);
  for (const auto& [id, s] : scores)
    if (s >= cut) out.insert(id);
  return out;
}

inline std::pair<double, double> mean_and_std(const std::map<std::string, double>& scores) {
  if (scores.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (const auto& [id, s] : scores) sum += s;
  const double mean = sum / static_cast<double>(scores.size());
  double sq = 0.0;
  for (const auto& [id, s] : scores) sq += (s - mean) * (s - mean);
  return {mean, std::sqrt(sq / static_cast<double>(scores.size()))};
}

inline LayerAssessment assess_layer(const MultilayerGraph& graph, Layer layer,
                                    const EigenvectorConfig& config = {}) {
  LayerAssessment a;
  a.layer = layer;
  const LayerView view = layer_view(graph, layer, true);
  const CentralityResult r = eigenvector_centrality(view, config);
  a.empty = r.empty_view;
  a.converged = r.converged;
  a.per_node_scores = r.as_map();
  std::tie(a.mean, a.std) = mean_and_std(a.per_node_scores);
  a.critical_points = argmax_set(a.per_node_scores);
  return a;
}

inline DesignAssessment assess_design(const MultilayerGraph& graph,
                                      const EigenvectorConfig& config = {}) {
  DesignAssessment d;
  d.design_name = graph.name();
  double sum = 0.0;
  for (Layer l : kAllLayers) {
    d.layers[layer_index(l)] = assess_layer(graph, l, config);
    sum += d.layers[layer_index(l)].mean;
  }
  d.overall_mean = sum / static_cast<double>(kAllLayers.size());
  return d;
}

// Joint min-max rescaling of the design x layer mean matrix onto [0, 10].
//
// The smallest cell maps to 0 and the largest to 10. A matrix of equal
// positive cells maps to all 10; an all-zero matrix stays zero.
inline ComparisonReport compare_designs(std::vector<DesignAssessment> designs) {
  if (designs.size() < 2)
    throw TooFewDesigns("comparison needs at least two designs, got " +
                        std::to_string(designs.size()));
  ComparisonReport rep;
  double lo = designs[0].layers[0].mean, hi = lo;
  for (const auto& d : designs)
    for (const auto& la : d.layers) {
      lo = std::min(lo, la.mean);
      hi = std::max(hi, la.mean);
    }
  rep.raw_min = lo;
  rep.raw_max = hi;
  for (const auto& d : designs) {
    std::array<double, 5> row{};
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double x = d.layers[i].mean;
      if (hi > lo)
        row[i] = x == hi ? 10.0 : (x - lo) / (hi - lo) * 10.0;
      else
        row[i] = hi > 0.0 ? 10.0 : 0.0;
    }
    double s = 0.0;
    for (double c : row) s += c;
    rep.normalized_matrix.push_back(row);
    rep.normalized_means.push_back(s / static_cast<double>(row.size()));
  }

  std::vector<std::size_t> order(designs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto same = [&](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = designs[a].overall_mean, mb = designs[b].overall_mean;
    if (!same(ma, mb)) return ma < mb;
    return designs[a].design_name < designs[b].design_name;
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    rep.ranking.push_back(designs[order[k]].design_name);
    if (k > 0 && same(designs[order[k]].overall_mean, designs[order[k - 1]].overall_mean)) {
      if (rep.ties.empty() || rep.ties.back().back() != designs[order[k - 1]].design_name)
        rep.ties.push_back({designs[order[k - 1]].design_name});
      rep.ties.back().push_back(designs[order[k]].design_name);
    }
  }
  rep.designs = std::move(designs);
  return rep;
}

// Protection and exposition rates over the union of per-layer critical points.
inline ExposureReport exposure(const MultilayerGraph& graph, const DesignAssessment& assessment) {
  ExposureReport r;
  r.design_name = assessment.design_name;
  std::set<std::string> critical;
  for (const auto& la : assessment.layers) critical.insert(la.critical_points.begin(), la.critical_points.end());
  r.critical_total = static_cast<int>(critical.size());
  for (const auto& id : critical)
    if (const Node* n = graph.find(id); n && n->is_protected) ++r.critical_protected;
  r.component_total = static_cast<int>(graph.node_count());
  if (r.critical_total > 0)
    r.protection_rate = static_cast<double>(r.critical_protected) / r.critical_total;
  if (r.component_total > 0)
    r.exposition_rate =
        static_cast<double>(r.critical_total - r.critical_protected) / r.component_total;
  return r;
}

// Critical points keyed by (stage, layer).
using CriticalTable = std::map<std::pair<int, Layer>, std::set<std::string>>;

// Critical points of each stage, each layer assessed on the subgraph
// induced by that stage's components.
inline CriticalTable stage_critical_points(const MultilayerGraph& graph,
                                           const EigenvectorConfig& config = {}) {
  CriticalTable t;
  for (int st : stages_of(graph)) {
    const MultilayerGraph sub = stage_subgraph(graph, st);
    for (Layer l : kAllLayers) t[{st, l}] = assess_layer(sub, l, config).critical_points;
  }
  return t;
}

// Replaces node ids by display names, for comparison with reference tables.
inline CriticalTable by_display_name(const MultilayerGraph& graph, const CriticalTable& ids) {
  CriticalTable out;
  for (const auto& [key, set] : ids) {
    auto& names = out[key];
    for (const auto& id : set) names.insert(graph.at(id).display_name());
  }
  return out;
}

struct CellMismatch {
  int stage;
  Layer layer;
  std::set<std::string> got;
  std::set<std::string> expected;
};

struct TableMatch {
  int cells = 0;
  int matching = 0;
  std::vector<CellMismatch> mismatches;

  double rate() const { return cells ? static_cast<double>(matching) / cells : 0.0; }
};

// Cell-by-cell exact set comparison over the expected table's keys.
inline TableMatch match_tables(const CriticalTable& got, const CriticalTable& expected) {
  TableMatch m;
  for (const auto& [key, exp] : expected) {
    ++m.cells;
    auto it = got.find(key);
    const std::set<std::string> g = it == got.end() ? std::set<std::string>{} : it->second;
    if (g == exp)
      ++m.matching;
    else
      m.mismatches.push_back({key.first, key.second, g, exp});
  }
  return m;
}

// ---- CSV reports -----------------------------------------------------------

inline std::string fixed7(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7f", x == 0.0 ? 0.0 : x);  // no "-0.0000000"
  return buf;
}

inline std::string scores_csv(const MultilayerGraph& graph, const DesignAssessment& d) {
  std::string out = "design,layer,node,score,critical,protected\n";
  for (const auto& la : d.layers)
    for (const auto& [id, s] : la.per_node_scores) {
      const Node* n = graph.find(id);
      out += d.design_name + ',' + std::string(to_string(la.layer)) + ',' + id + ',' + fixed7(s) +
             ',' + (la.critical_points.count(id) ? "true" : "false") + ',' +
             (n && n->is_protected ? "true" : "false") + '\n';
    }
  return out;
}

inline std::string summary_csv(const std::vector<DesignAssessment>& ds) {
  std::string out = "design,layer,mean,std\n";
  for (const auto& d : ds)
    for (const auto& la : d.layers)
      out += d.design_name + ',' + std::string(to_string(la.layer)) + ',' + fixed7(la.mean) + ',' +
             fixed7(la.std) + '\n';
  return out;
}

inline std::string comparison_csv(const ComparisonReport& rep) {
  std::string out = "design,physical,sensor,actuator,cyber,mission,mean\n";
  for (std::size_t i = 0; i < rep.designs.size(); ++i) {
    out += rep.designs[i].design_name;
    for (double c : rep.normalized_matrix[i]) out += ',' + fixed7(c);
    out += ',' + fixed7(rep.normalized_means[i]) + '\n';
  }
  return out;
}

}  // namespace resilens
