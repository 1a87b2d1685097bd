#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphlim {

// Small simple graph used as the pattern of a homomorphism density. Vertices
// are 0..v-1; edges are stored sorted with a < b.
struct Motif {
  int v = 0;
  std::vector<std::pair<int, int>> edges;

  Motif(int v_, std::vector<std::pair<int, int>> edges_) : v(v_), edges(std::move(edges_)) {
    if (v < 1) throw std::invalid_argument("Motif: needs at least one vertex");
    for (auto& [a, b] : edges) {
      if (a > b) std::swap(a, b);
      if (a < 0 || b >= v) throw std::invalid_argument("Motif: edge endpoint out of range");
      if (a == b) throw std::invalid_argument("Motif: self-loops are not allowed");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      throw std::invalid_argument("Motif: duplicate edge");
    }
  }

  static Motif edge() { return Motif(2, {{0, 1}}); }

  static Motif cycle(int m) {
    if (m < 3) throw std::invalid_argument("Motif: cycles need at least 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
    return Motif(m, std::move(e));
  }

  // Star on v vertices: vertex 0 joined to each of the v-1 leaves.
  static Motif star(int v) {
    if (v < 2) throw std::invalid_argument("Motif: stars need at least 2 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < v; ++i) e.emplace_back(0, i);
    return Motif(v, std::move(e));
  }

  static Motif path(int v) {
    if (v < 2) throw std::invalid_argument("Motif: paths need at least 2 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < v; ++i) e.emplace_back(i, i + 1);
    return Motif(v, std::move(e));
  }

  int edge_count() const { return static_cast<int>(edges.size()); }

  std::vector<int> degrees() const {
    std::vector<int> deg(v, 0);
    for (const auto& [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  bool connected() const {
    if (v == 0) return false;
    std::vector<std::vector<int>> adj(v);
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<char> seen(v, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
      }
    }
    return count == v;
  }

  // Shape tests are structural, not name-based, so e.g. the 3-vertex star is
  // also recognized as a path.
  bool is_cycle() const {
    if (v < 3 || edge_count() != v || !connected()) return false;
    for (int d : degrees()) {
      if (d != 2) return false;
    }
    return true;
  }

  bool is_path() const {
    if (v < 2 || edge_count() != v - 1 || !connected()) return false;
    int ones = 0;
    for (int d : degrees()) {
      if (d > 2) return false;
      if (d == 1) ++ones;
    }
    return ones == 2;
  }

  // Returns the center vertex, or -1 when the motif is not a star.
  int star_center() const {
    if (v < 2 || edge_count() != v - 1) return -1;
    const std::vector<int> deg = degrees();
    int center = -1;
    for (int i = 0; i < v; ++i) {
      if (deg[i] == v - 1) center = i;
      else if (deg[i] != 1) return -1;
    }
    return v == 2 ? 0 : center;
  }
};

}  // namespace graphlim
