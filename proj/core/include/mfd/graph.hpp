#ifndef MFD_GRAPH_HPP
#define MFD_GRAPH_HPP

#include "mfd/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace mfd {

/// Edge (i, j) between even vertex i < a and odd vertex j < b.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Closed walk i_0 j_0 i_1 j_1 ... i_{n-1} j_{n-1} (back to i_0).
///
/// Its "forward" edges are (i_k, j_k), its "backward" edges (i_{k+1}, j_k).
struct BipartiteCycle {
  std::vector<std::size_t> evens;
  std::vector<std::size_t> odds;

  std::size_t length() const { return 2 * evens.size(); }
  std::vector<Edge> forward_edges() const;
  std::vector<Edge> backward_edges() const;
  /// Flattened (i_0, j_0, i_1, j_1, ...).
  std::vector<std::size_t> flattened() const;
};

/// One connected component: even and odd vertex indices.
struct Component {
  std::vector<std::size_t> evens;
  std::vector<std::size_t> odds;
};

/// Simple bipartite graph on a even and b odd vertices together with a
/// deterministic BFS spanning forest rooted at the smallest even vertex of
/// each component.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t a, std::size_t b, std::vector<Edge> edges);

  /// Edge (i, j) iff pattern(i, j) != 0.
  static BipartiteGraph from_support(const Matrix& pattern);
  static BipartiteGraph from_support(const PartialMatrix& pattern);
  static BipartiteGraph complete(std::size_t a, std::size_t b);

  std::size_t a() const { return a_; }
  std::size_t b() const { return b_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t i, std::size_t j) const;

  const std::vector<Component>& components() const { return components_; }
  bool connected() const { return components_.size() == 1; }

  const std::vector<Edge>& tree_edges() const { return tree_; }
  const std::vector<Edge>& non_tree_edges() const { return non_tree_; }
  /// One cycle per non-tree edge, closing it through the spanning tree.
  std::vector<BipartiteCycle> fundamental_cycles() const;

  /// Tree edges in BFS discovery order from the root: each edge has exactly
  /// one endpoint discovered before it.
  struct TreeStep {
    Edge edge;
    bool discovers_odd;  // true: j is new, i known; false: i is new
  };
  const std::vector<TreeStep>& tree_walk() const { return walk_; }

 private:
  // Vertices are numbered 0..a-1 (even) and a..a+b-1 (odd).
  std::vector<std::size_t> tree_path(std::size_t from, std::size_t to) const;

  std::size_t a_;
  std::size_t b_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Component> components_;
  std::vector<Edge> tree_;
  std::vector<Edge> non_tree_;
  std::vector<TreeStep> walk_;
  std::vector<std::ptrdiff_t> parent_;
  std::vector<std::size_t> depth_;
};

}  // namespace mfd

#endif  // MFD_GRAPH_HPP
