#pragma once

// Device connectivity: undirected coupling graph with all-pairs shortest-path
// distances precomputed at construction (devices are small; O(n^2) storage is
// the cheap option and makes dist() a table lookup).

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcmap {

class CouplingGraph {
 public:
  CouplingGraph() = default;

  /// Raw constructor: tolerates disconnected graphs (dist() returns -1 across
  /// components, connected() reports false). Rejects self-loops and
  /// out-of-range endpoints. Duplicate edges are collapsed.
  CouplingGraph(int num_qubits, const std::vector<std::pair<int, int>>& edges) {
    if (num_qubits <= 0) throw std::invalid_argument("CouplingGraph: need at least one qubit");
    n_ = num_qubits;
    adj_.assign(static_cast<size_t>(n_), {});
    std::vector<std::pair<int, int>> norm;
    norm.reserve(edges.size());
    for (auto [a, b] : edges) {
      if (a < 0 || a >= n_ || b < 0 || b >= n_)
        throw std::invalid_argument("CouplingGraph: edge endpoint out of range");
      if (a == b) throw std::invalid_argument("CouplingGraph: self-loop");
      norm.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(norm.begin(), norm.end());
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
    edges_ = std::move(norm);
    for (auto [a, b] : edges_) {
      adj_[static_cast<size_t>(a)].push_back(b);
      adj_[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    compute_distances();
  }

  /// Validating constructor: additionally requires connectivity.
  static CouplingGraph from_edges(int num_qubits, const std::vector<std::pair<int, int>>& edges) {
    CouplingGraph g(num_qubits, edges);
    if (!g.connected())
      throw std::invalid_argument("CouplingGraph: disconnected coupling graph");
    return g;
  }

  /// Line 0-1-...-n-1.
  static CouplingGraph lnn(int n) {
    if (n < 2) throw std::invalid_argument("CouplingGraph: lnn needs at least two qubits");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return from_edges(n, e);
  }

  /// rows x cols grid, row-major indexing.
  static CouplingGraph grid(int rows, int cols) {
    if (rows <= 0 || cols <= 0 || rows * cols < 2)
      throw std::invalid_argument("CouplingGraph: degenerate grid shape");
    std::vector<std::pair<int, int>> e;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
        if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
      }
    return from_edges(rows * cols, e);
  }

  /// 4-qubit star: center 1, leaves 0, 2, 3.
  static CouplingGraph t4() { return from_edges(4, {{0, 1}, {1, 2}, {1, 3}}); }

  int num_qubits() const { return n_; }
  bool connected() const { return connected_; }

  /// Shortest-path distance in edges; -1 if unreachable.
  int dist(int p, int q) const {
    check(p);
    check(q);
    return dist_[static_cast<size_t>(p) * static_cast<size_t>(n_) + static_cast<size_t>(q)];
  }

  bool adjacent(int p, int q) const { return dist(p, q) == 1; }

  /// Undirected edge list, each stored (min,max), sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  const std::vector<int>& neighbors(int p) const {
    check(p);
    return adj_[static_cast<size_t>(p)];
  }

  /// Common neighbors of p and q, ascending. The candidate middle wires for a
  /// bridge when dist(p,q) == 2.
  std::vector<int> middles(int p, int q) const {
    const std::vector<int>& a = neighbors(p);
    const std::vector<int>& b = neighbors(q);
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

 private:
  void check(int p) const {
    if (p < 0 || p >= n_) throw std::invalid_argument("CouplingGraph: qubit out of range");
  }

  void compute_distances() {
    dist_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), -1);
    for (int s = 0; s < n_; ++s) {
      auto row = dist_.begin() + static_cast<size_t>(s) * static_cast<size_t>(n_);
      row[s] = 0;
      std::queue<int> q;
      q.push(s);
      while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj_[static_cast<size_t>(u)])
          if (row[v] == -1) {
            row[v] = row[u] + 1;
            q.push(v);
          }
      }
    }
    connected_ = std::find(dist_.begin(), dist_.end(), -1) == dist_.end();
  }

  int n_ = 0;
  bool connected_ = false;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> dist_;
};

inline std::vector<int> middles(const CouplingGraph& g, int p, int q) { return g.middles(p, q); }

}  // namespace qcmap
