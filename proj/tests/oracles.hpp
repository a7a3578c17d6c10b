#pragma once

// Independent reference implementations used to check the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "resilens/centrality.hpp"
#include "resilens/graph.hpp"

namespace oracle {

using resilens::AdjacencyMatrix;
using resilens::LayerView;

// G(n, p) undirected graph as a symmetric layer view with ids n00, n01, ...
inline LayerView random_view(std::mt19937& rng, std::size_t n, double p) {
  LayerView v;
  v.undirected = true;
  for (std::size_t i = 0; i < n; ++i) v.node_ids.push_back("n" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  v.adjacency = AdjacencyMatrix(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) {
        v.adjacency.set(i, j);
        v.adjacency.set(j, i);
      }
  return v;
}

inline Eigen::MatrixXd dense(const AdjacencyMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

struct Eigenpair {
  double lambda = 0.0;
  Eigen::MatrixXd basis;     // orthonormal basis of the dominant eigenspace
  Eigen::VectorXd expected;  // projection of the all-ones vector, unit length
};

// Dominant eigenspace of a symmetric 0/1 matrix by full dense
// decomposition. When it is degenerate (several components sharing the
// spectral radius) the projection of the all-ones vector is the one
// eigenvector a uniform start converges to.
inline Eigenpair principal(const AdjacencyMatrix& a) {
  Eigenpair out;
  const Eigen::MatrixXd m = dense(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd& ev = es.eigenvalues();
  out.lambda = ev(ev.size() - 1);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (std::abs(ev(k) - out.lambda) < 1e-9) cols.push_back(k);
  out.basis.resize(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    out.basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.rows());
  out.expected = out.basis * (out.basis.transpose() * ones);
  out.expected.normalize();
  return out;
}

// Distance from `x` to the span of `basis` after normalising x.
inline double off_eigenspace(const Eigen::MatrixXd& basis, Eigen::VectorXd x) {
  x.normalize();
  return (x - basis * (basis.transpose() * x)).cwiseAbs().maxCoeff();
}

// Exact fraction with 64-bit parts; path counts here stay tiny.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational& operator+=(const Rational& o) {
    std::int64_t n = num * o.den + o.num * den;
    std::int64_t d = den * o.den;
    const std::int64_t g = std::gcd(n, d);
    num = n / (g ? g : 1);
    den = d / (g ? g : 1);
    return *this;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Betweenness by listing every shortest path of every unordered pair.
inline std::vector<Rational> betweenness_by_enumeration(const AdjacencyMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Rational> score(n);
  // All-pairs hop distances by Floyd-Warshall.
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);

  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      if (d[s][t] >= inf) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> path = {s};
      std::function<void(std::size_t)> walk = [&](std::size_t u) {
        if (u == t) {
          paths.push_back(path);
          return;
        }
        for (std::size_t w = 0; w < n; ++w)
          if (a(u, w) && d[s][w] == d[s][u] + 1 && d[w][t] == d[u][t] - 1) {
            path.push_back(w);
            walk(w);
            path.pop_back();
          }
      };
      walk(s);
      std::vector<std::int64_t> through(n, 0);
      for (const auto& p : paths)
        for (std::size_t k = 1; k + 1 < p.size(); ++k) ++through[p[k]];
      for (std::size_t v = 0; v < n; ++v)
        if (through[v]) score[v] += Rational{through[v], static_cast<std::int64_t>(paths.size())};
    }
  return score;
}

// Components by iterative depth-first labelling, as sets of ids.
inline std::set<std::set<std::string>> components_by_dfs(const LayerView& v) {
  const std::size_t n = v.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> stack = {s};
    label[s] = next;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w)
        if ((v.adjacency(u, w) || v.adjacency(w, u)) && label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  std::vector<std::set<std::string>> groups(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < n; ++i) groups[static_cast<std::size_t>(label[i])].insert(v.node_ids[i]);
  return {groups.begin(), groups.end()};
}

struct EigenCheck {
  double max_error = 0.0;       // against the projected all-ones vector
  double max_off_space = 0.0;   // distance from the dominant eigenspace
  double lambda_error = 0.0;
};

// Compares one eigenvector result with the dense oracle, after aligning scale.
inline EigenCheck check_eigenvector(const LayerView& v, const resilens::CentralityResult& r) {
  EigenCheck c;
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = r.scores[static_cast<std::size_t>(i)];
  if (v.adjacency.edge_entries() == 0) {
    c.max_error = x.cwiseAbs().maxCoeff();
    return c;
  }
  const Eigenpair p = principal(v.adjacency);
  Eigen::VectorXd unit = x.normalized();
  c.max_error = (unit - p.expected).cwiseAbs().maxCoeff();
  c.max_off_space = off_eigenspace(p.basis, x);
  c.lambda_error = std::abs(r.dominant_eigenvalue - p.lambda);
  return c;
}

}  // namespace oracle
