#include "mfd/graph.hpp"

#include "mfd/error.hpp"

#include <algorithm>
#include <queue>

namespace mfd {

std::vector<Edge> BipartiteCycle::forward_edges() const {
  std::vector<Edge> out;
  for (std::size_t k = 0; k < evens.size(); ++k) out.push_back({evens[k], odds[k]});
  return out;
}

std::vector<Edge> BipartiteCycle::backward_edges() const {
  std::vector<Edge> out;
  for (std::size_t k = 0; k < evens.size(); ++k) out.push_back({evens[(k + 1) % evens.size()], odds[k]});
  return out;
}

std::vector<std::size_t> BipartiteCycle::flattened() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < evens.size(); ++k) {
    out.push_back(evens[k]);
    out.push_back(odds[k]);
  }
  return out;
}

BipartiteGraph::BipartiteGraph(std::size_t a, std::size_t b, std::vector<Edge> edges)
    : a_(a), b_(b), edges_(std::move(edges)), adjacency_(a + b) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& e : edges_) {
    if (e.i >= a_ || e.j >= b_) throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    adjacency_[e.i].push_back(a_ + e.j);
    adjacency_[a_ + e.j].push_back(e.i);
  }

  const std::size_t n = a_ + b_;
  parent_.assign(n, -1);
  depth_.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<bool> in_tree_edge(edges_.size(), false);

  // Roots: even vertices first so every component containing an even vertex
  // is rooted at its smallest even vertex.
  std::vector<std::size_t> roots(n);
  for (std::size_t v = 0; v < n; ++v) roots[v] = v;
  for (std::size_t root : roots) {
    if (seen[root]) continue;
    Component comp;
    std::queue<std::size_t> queue;
    queue.push(root);
    seen[root] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop();
      if (v < a_) {
        comp.evens.push_back(v);
      } else {
        comp.odds.push_back(v - a_);
      }
      for (std::size_t w : adjacency_[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        parent_[w] = static_cast<std::ptrdiff_t>(v);
        depth_[w] = depth_[v] + 1;
        Edge e = v < a_ ? Edge{v, w - a_} : Edge{w, v - a_};
        tree_.push_back(e);
        walk_.push_back({e, v < a_});
        queue.push(w);
      }
    }
    std::sort(comp.evens.begin(), comp.evens.end());
    std::sort(comp.odds.begin(), comp.odds.end());
    components_.push_back(std::move(comp));
  }

  std::vector<Edge> sorted_tree = tree_;
  std::sort(sorted_tree.begin(), sorted_tree.end());
  for (const auto& e : edges_) {
    if (!std::binary_search(sorted_tree.begin(), sorted_tree.end(), e)) non_tree_.push_back(e);
  }
}

BipartiteGraph BipartiteGraph::from_support(const Matrix& pattern) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pattern.rows(); ++i)
    for (std::size_t j = 0; j < pattern.cols(); ++j)
      if (!pattern(i, j).is_zero()) edges.push_back({i, j});
  return BipartiteGraph(pattern.rows(), pattern.cols(), std::move(edges));
}

BipartiteGraph BipartiteGraph::from_support(const PartialMatrix& pattern) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pattern.rows(); ++i)
    for (std::size_t j = 0; j < pattern.cols(); ++j)
      if (pattern.has(i, j)) edges.push_back({i, j});
  return BipartiteGraph(pattern.rows(), pattern.cols(), std::move(edges));
}

BipartiteGraph BipartiteGraph::complete(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) edges.push_back({i, j});
  return BipartiteGraph(a, b, std::move(edges));
}

bool BipartiteGraph::has_edge(std::size_t i, std::size_t j) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

std::vector<std::size_t> BipartiteGraph::tree_path(std::size_t from, std::size_t to) const {
  std::vector<std::size_t> up;
  std::vector<std::size_t> down;
  std::size_t u = from;
  std::size_t v = to;
  while (depth_[u] > depth_[v]) {
    up.push_back(u);
    u = static_cast<std::size_t>(parent_[u]);
  }
  while (depth_[v] > depth_[u]) {
    down.push_back(v);
    v = static_cast<std::size_t>(parent_[v]);
  }
  while (u != v) {
    up.push_back(u);
    down.push_back(v);
    u = static_cast<std::size_t>(parent_[u]);
    v = static_cast<std::size_t>(parent_[v]);
  }
  up.push_back(u);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<BipartiteCycle> BipartiteGraph::fundamental_cycles() const {
  std::vector<BipartiteCycle> cycles;
  for (const auto& e : non_tree_) {
    // i -> j along the non-tree edge, then back to i through the tree.
    std::vector<std::size_t> path = tree_path(a_ + e.j, e.i);
    std::vector<std::size_t> walk;
    walk.push_back(e.i);
    walk.insert(walk.end(), path.begin(), path.end() - 1);
    BipartiteCycle c;
    for (std::size_t k = 0; k < walk.size(); k += 2) {
      c.evens.push_back(walk[k]);
      c.odds.push_back(walk[k + 1] - a_);
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

}  // namespace mfd
