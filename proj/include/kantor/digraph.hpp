#pragma once

#include <numeric>
#include <queue>
#include <vector>

namespace kantor {

// Adjacency-list view used for connectivity / periodicity questions.
struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> out;

  explicit Digraph(int n_) : n(n_), out(n_) {}

  template <class Pred>
  static Digraph from_edges(int n, const Pred& has_edge) {
    Digraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (has_edge(i, j)) g.out[i].push_back(j);
    return g;
  }

  std::vector<bool> reachable_from(int s) const {
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : out[u])
        if (!seen[v]) {
          seen[v] = true;
          q.push(v);
        }
    }
    return seen;
  }

  Digraph reversed() const {
    Digraph r(n);
    for (int u = 0; u < n; ++u)
      for (int v : out[u]) r.out[v].push_back(u);
    return r;
  }

  bool strongly_connected() const {
    if (n == 0) return true;
    auto fwd = reachable_from(0);
    auto bwd = reversed().reachable_from(0);
    for (int i = 0; i < n; ++i)
      if (!fwd[i] || !bwd[i]) return false;
    return true;
  }

  // gcd of cycle lengths; call on a strongly connected graph.  Computed from
  // BFS levels: period = gcd over edges (u,v) of level(u) + 1 - level(v).
  int period() const {
    std::vector<int> level(n, -1);
    std::queue<int> q;
    level[0] = 0;
    q.push(0);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : out[u])
        if (level[v] < 0) {
          level[v] = level[u] + 1;
          q.push(v);
        }
    }
    int g = 0;
    for (int u = 0; u < n; ++u)
      for (int v : out[u]) g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
    return g == 0 ? 1 : g;
  }
};

}  // namespace kantor
