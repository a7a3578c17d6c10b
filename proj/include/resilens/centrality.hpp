#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "resilens/graph.hpp"

namespace resilens {

enum class Norm : std::uint8_t { Euclidean, Max };

struct EigenvectorConfig {
  int max_iterations = 1000;
  double tolerance = 1e-8;
  Norm norm = Norm::Euclidean;
  bool symmetrize = true;

  void check() const {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  }
};

struct CentralityResult {
  std::vector<std::string> node_ids;  // same order as the view
  std::vector<double> scores;
  double dominant_eigenvalue = 0.0;
  int iterations_used = 0;
  bool converged = true;
  bool empty_view = false;

  std::map<std::string, double> as_map() const {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < node_ids.size(); ++i) out.emplace(node_ids[i], scores[i]);
    return out;
  }

  double score_of(std::string_view id) const {
    for (std::size_t i = 0; i < node_ids.size(); ++i)
      if (node_ids[i] == id) return scores[i];
    throw std::out_of_range("no score for '" + std::string(id) + "'");
  }
};

struct ComponentPartition {
  std::vector<std::vector<std::string>> components;  // each sorted
  std::map<std::string, std::size_t> component_of;

  std::size_t count() const { return components.size(); }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> out_lists(const AdjacencyMatrix& a) {
  std::vector<std::vector<std::size_t>> adj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a(i, j)) adj[i].push_back(j);
  return adj;
}

inline void multiply(const std::vector<std::vector<std::size_t>>& adj, const std::vector<double>& x,
                     std::vector<double>& y) {
  for (std::size_t i = 0; i < adj.size(); ++i) {
    double s = 0.0;
    for (std::size_t j : adj[i]) s += x[j];
    y[i] = s;
  }
}

inline double norm_of(const std::vector<double>& x, Norm norm) {
  if (norm == Norm::Max) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

inline double rayleigh(const std::vector<std::vector<std::size_t>>& adj, const std::vector<double>& x,
                       const std::vector<std::size_t>& support) {
  double num = 0.0, den = 0.0;
  for (std::size_t i : support) {
    double ax = 0.0;
    for (std::size_t j : adj[i]) ax += x[j];
    num += x[i] * ax;
    den += x[i] * x[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Groups of view indices, one per weakly connected component, in index order.
inline std::vector<std::vector<std::size_t>> index_components(const AdjacencyMatrix& a) {
  DisjointSet ds(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a(i, j)) ds.unite(i, j);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < a.size(); ++i) groups[ds.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace detail

// Eigenvector centrality by global power iteration.
//
// Iterates x <- (A + I)x from the uniform positive vector. The unit shift
// keeps the dominant eigenvector and removes the +/-lambda oscillation of
// bipartite views. On a disconnected view every component whose spectral
// radius is below the global maximum decays geometrically towards 0; once
// the iteration has converged those components are set to that limit.
inline CentralityResult eigenvector_centrality(const LayerView& view,
                                               const EigenvectorConfig& config = {}) {
  config.check();
  CentralityResult result;
  result.node_ids = view.node_ids;
  const std::size_t n = view.size();
  result.scores.assign(n, 0.0);
  if (n == 0) {
    result.empty_view = true;
    return result;
  }
  const AdjacencyMatrix a = config.symmetrize ? view.adjacency.symmetrized() : view.adjacency;
  const auto adj = detail::out_lists(a);
  if (a.edge_entries() == 0) return result;  // all nodes isolated

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  result.converged = false;
  const double residual_bound = 10.0 * config.tolerance;

  auto residual_of = [&](const std::vector<double>& v, double lambda) {
    std::vector<double> av(n);
    detail::multiply(adj, v, av);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(av[i] - lambda * v[i]));
    return r;
  };

  int it = 0;
  while (it < config.max_iterations) {
    ++it;
    detail::multiply(adj, x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
    const double len = detail::norm_of(y, Norm::Euclidean);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= len;
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (delta < config.tolerance) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), std::size_t{0});
      const double lambda = detail::rayleigh(adj, x, all);
      if (residual_of(x, lambda) <= residual_bound) {
        result.converged = true;
        break;
      }
    }
  }
  result.iterations_used = it;

  // Flush sub-dominant components to their limit.
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  double lambda = detail::rayleigh(adj, x, all);
  const double gap = std::sqrt(config.tolerance) * std::max(1.0, lambda);
  for (const auto& comp : detail::index_components(a)) {
    const double rho = detail::rayleigh(adj, x, comp);
    if (rho < lambda - gap)
      for (std::size_t i : comp) x[i] = 0.0;
  }
  const double len = detail::norm_of(x, config.norm);
  if (len > 0.0)
    for (double& v : x) v /= len;
  std::vector<double> unit = x;
  const double unit_len = detail::norm_of(unit, Norm::Euclidean);
  if (unit_len > 0.0)
    for (double& v : unit) v /= unit_len;
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] > 0.0) support.push_back(i);
  lambda = detail::rayleigh(adj, unit, support);

  for (double& v : x) v = std::max(v, 0.0);
  result.scores = std::move(x);
  result.dominant_eigenvalue = lambda;
  return result;
}

// Largest |(A x - lambda x)_i| over the view, using the same symmetrization
// rule as eigenvector_centrality.
inline double eigen_residual(const LayerView& view, const CentralityResult& r,
                             bool symmetrize = true) {
  const AdjacencyMatrix a = symmetrize ? view.adjacency.symmetrized() : view.adjacency;
  const auto adj = detail::out_lists(a);
  std::vector<double> ax(view.size());
  detail::multiply(adj, r.scores, ax);
  double worst = 0.0;
  for (std::size_t i = 0; i < view.size(); ++i)
    worst = std::max(worst, std::abs(ax[i] - r.dominant_eigenvalue * r.scores[i]));
  return worst;
}

// Exact Brandes accumulation over unit-length edges.
//
// O(n + m) space, O(n m) time. On undirected views each unordered pair is
// counted once.
inline CentralityResult betweenness_centrality(const LayerView& view) {
  CentralityResult result;
  result.node_ids = view.node_ids;
  const std::size_t n = view.size();
  result.scores.assign(n, 0.0);
  if (n == 0) {
    result.empty_view = true;
    return result;
  }
  const auto adj = detail::out_lists(view.adjacency);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1L);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      order.push_back(v);
      for (std::size_t w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) result.scores[w] += delta[w];
    }
  }
  if (view.undirected || view.adjacency.symmetric())
    for (double& v : result.scores) v /= 2.0;
  return result;
}

// Weakly connected components; direction is ignored.
//
// Components come in descending size, ties broken by smallest member id.
inline ComponentPartition weakly_connected_components(const LayerView& view) {
  ComponentPartition part;
  for (const auto& comp : detail::index_components(view.adjacency)) {
    std::vector<std::string> ids;
    ids.reserve(comp.size());
    for (std::size_t i : comp) ids.push_back(view.node_ids[i]);
    std::sort(ids.begin(), ids.end());
    part.components.push_back(std::move(ids));
  }
  std::sort(part.components.begin(), part.components.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  for (std::size_t c = 0; c < part.components.size(); ++c)
    for (const auto& id : part.components[c]) part.component_of.emplace(id, c);
  return part;
}

}  // namespace resilens
