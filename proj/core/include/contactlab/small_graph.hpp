#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace contactlab {

/// Simple undirected graph on at most 16 vertices, adjacency as bitmasks.
class SmallGraph {
 public:
  static constexpr int kMaxVertices = 16;

  SmallGraph() = default;
  explicit SmallGraph(int n);
  SmallGraph(int n, const std::vector<std::pair<int, int>>& edges);

  [[nodiscard]] int order() const noexcept { return n_; }
  [[nodiscard]] bool has_edge(int i, int j) const noexcept { return (adj_[i] >> j) & 1U; }
  [[nodiscard]] std::uint16_t neighbors(int i) const noexcept { return adj_[i]; }
  [[nodiscard]] int degree(int i) const noexcept;
  [[nodiscard]] int edge_count() const noexcept;
  [[nodiscard]] int max_degree() const noexcept;
  [[nodiscard]] int min_degree() const noexcept;
  /// Sorted, i < j.
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;

  void add_edge(int i, int j);
  void remove_edge(int i, int j);

  [[nodiscard]] SmallGraph complement() const;
  /// Vertex v of the result is vertex perm[v] of this graph.
  [[nodiscard]] SmallGraph relabeled(const std::vector<int>& perm) const;

  friend bool operator==(const SmallGraph&, const SmallGraph&) = default;

 private:
  int n_ = 0;
  std::array<std::uint16_t, kMaxVertices> adj_{};
};

/// Upper-triangle adjacency bits in the order (0,1), (0,2), ..., (n-2,n-1),
/// most significant first. Needs n <= 11.
[[nodiscard]] std::uint64_t adjacency_code(const SmallGraph& g);

struct CanonicalForm {
  /// adjacency_code of the canonically relabeled graph; equal iff isomorphic
  /// (for graphs of the same order).
  std::uint64_t code = 0;
  /// labeling[v] is the original vertex placed at canonical position v.
  std::vector<int> labeling;
  /// Automorphisms found during the search; they generate a subgroup of
  /// Aut(g), not necessarily all of it.
  std::vector<std::vector<int>> automorphisms;
};

/// Canonical labeling by individualization and equitable refinement, with
/// pruning by the automorphisms discovered along the way. Requires n <= 11.
[[nodiscard]] CanonicalForm canonical_form(const SmallGraph& g);

/// One representative (in canonical labeling) of every isomorphism class of
/// graphs on n vertices with exactly m edges and maximum degree at most
/// max_degree, sorted by canonical code. Built level by level, adding one edge
/// at a time and deduplicating by canonical code.
[[nodiscard]] std::vector<SmallGraph> nonisomorphic_graphs(int n, int m, int max_degree);

/// Every isomorphism class on n vertices, all edge counts, ascending by edge
/// count and then by canonical code.
[[nodiscard]] std::vector<SmallGraph> all_nonisomorphic_graphs(int n);

}  // namespace contactlab
