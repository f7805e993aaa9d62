#include "contactlab/small_graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "contactlab/errors.hpp"

namespace contactlab {

SmallGraph::SmallGraph(int n) : n_(n) {
  if (n < 0 || n > kMaxVertices) throw DomainError("SmallGraph supports 0..16 vertices");
}

SmallGraph::SmallGraph(int n, const std::vector<std::pair<int, int>>& edges) : SmallGraph(n) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

int SmallGraph::degree(int i) const noexcept { return std::popcount(adj_[i]); }

int SmallGraph::edge_count() const noexcept {
  int s = 0;
  for (int i = 0; i < n_; ++i) s += degree(i);
  return s / 2;
}

int SmallGraph::max_degree() const noexcept {
  int m = 0;
  for (int i = 0; i < n_; ++i) m = std::max(m, degree(i));
  return m;
}

int SmallGraph::min_degree() const noexcept {
  int m = n_;
  for (int i = 0; i < n_; ++i) m = std::min(m, degree(i));
  return m;
}

std::vector<std::pair<int, int>> SmallGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

void SmallGraph::add_edge(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw MalformedInput("edge endpoint out of range");
  if (i == j) throw MalformedInput("self-loops are not allowed");
  adj_[i] = static_cast<std::uint16_t>(adj_[i] | (1U << j));
  adj_[j] = static_cast<std::uint16_t>(adj_[j] | (1U << i));
}

void SmallGraph::remove_edge(int i, int j) {
  adj_[i] = static_cast<std::uint16_t>(adj_[i] & ~(1U << j));
  adj_[j] = static_cast<std::uint16_t>(adj_[j] & ~(1U << i));
}

SmallGraph SmallGraph::complement() const {
  SmallGraph c(n_);
  const auto all = static_cast<std::uint16_t>((1U << n_) - 1U);
  for (int i = 0; i < n_; ++i) c.adj_[i] = static_cast<std::uint16_t>(~adj_[i] & all & ~(1U << i));
  return c;
}

SmallGraph SmallGraph::relabeled(const std::vector<int>& perm) const {
  SmallGraph r(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (has_edge(perm[i], perm[j])) r.add_edge(i, j);
    }
  }
  return r;
}

std::uint64_t adjacency_code(const SmallGraph& g) {
  if (g.order() > 11) throw DomainError("adjacency codes need at most 11 vertices");
  std::uint64_t code = 0;
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) code = (code << 1) | (g.has_edge(i, j) ? 1U : 0U);
  }
  return code;
}

namespace {

using Partition = std::vector<std::vector<int>>;

// Split every cell by neighbour count into each cell until stable. Sub-cells
// are ordered by ascending count, which keeps the result label-invariant.
void refine(const SmallGraph& g, Partition& part) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t w = 0; w < part.size() && !changed; ++w) {
      std::uint16_t mask = 0;
      for (int v : part[w]) mask = static_cast<std::uint16_t>(mask | (1U << v));
      for (std::size_t x = 0; x < part.size(); ++x) {
        if (part[x].size() < 2) continue;
        std::vector<std::pair<int, int>> keyed;
        for (int v : part[x]) keyed.emplace_back(std::popcount(static_cast<std::uint16_t>(g.neighbors(v) & mask)), v);
        std::sort(keyed.begin(), keyed.end());
        if (keyed.front().first == keyed.back().first) continue;
        Partition pieces;
        for (std::size_t t = 0; t < keyed.size(); ++t) {
          if (t == 0 || keyed[t].first != keyed[t - 1].first) pieces.emplace_back();
          pieces.back().push_back(keyed[t].second);
        }
        part.erase(part.begin() + static_cast<std::ptrdiff_t>(x));
        part.insert(part.begin() + static_cast<std::ptrdiff_t>(x), pieces.begin(), pieces.end());
        changed = true;
        break;
      }
    }
  }
}

class Search {
 public:
  explicit Search(const SmallGraph& g) : g_(g) {}

  CanonicalForm run() {
    Partition root{std::vector<int>(static_cast<std::size_t>(g_.order()))};
    std::iota(root.front().begin(), root.front().end(), 0);
    if (g_.order() == 0) return {};
    refine(g_, root);
    std::vector<int> prefix;
    descend(root, prefix);
    CanonicalForm out;
    out.code = best_code_;
    out.labeling = best_;
    out.automorphisms = std::move(autos_);
    return out;
  }

 private:
  void descend(const Partition& part, std::vector<int>& prefix) {
    auto target = std::find_if(part.begin(), part.end(), [](const auto& c) { return c.size() > 1; });
    if (target == part.end()) {
      leaf(part);
      return;
    }
    const auto cell_idx = static_cast<std::size_t>(target - part.begin());
    std::vector<int> cell = *target;
    std::sort(cell.begin(), cell.end());
    std::vector<int> explored;
    for (int v : cell) {
      if (equivalent_to_explored(v, explored, prefix)) continue;
      explored.push_back(v);
      Partition child = part;
      auto& c = child[cell_idx];
      c.erase(std::find(c.begin(), c.end(), v));
      child.insert(child.begin() + static_cast<std::ptrdiff_t>(cell_idx), std::vector<int>{v});
      refine(g_, child);
      prefix.push_back(v);
      descend(child, prefix);
      prefix.pop_back();
    }
  }

  // v is skipped when some discovered automorphism fixing the prefix
  // pointwise maps an explored sibling onto it: both subtrees then yield the
  // same set of leaf codes.
  bool equivalent_to_explored(int v, const std::vector<int>& explored, const std::vector<int>& prefix) const {
    if (explored.empty() || autos_.empty()) return false;
    const int n = g_.order();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& a : autos_) {
      if (!std::all_of(prefix.begin(), prefix.end(), [&](int p) { return a[p] == p; })) continue;
      for (int x = 0; x < n; ++x) parent[find(x)] = find(a[x]);
    }
    const int root = find(v);
    return std::any_of(explored.begin(), explored.end(), [&](int e) { return find(e) == root; });
  }

  void leaf(const Partition& part) {
    std::vector<int> order;
    order.reserve(part.size());
    for (const auto& c : part) order.push_back(c.front());
    const std::uint64_t code = adjacency_code(g_.relabeled(order));
    if (first_.empty()) {
      first_ = order;
      first_code_ = code;
    } else if (code == first_code_) {
      record_automorphism(first_, order);
    }
    if (best_.empty() || code > best_code_) {
      best_ = order;
      best_code_ = code;
    } else if (code == best_code_ && best_ != first_) {
      record_automorphism(best_, order);
    }
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> a(from.size());
    for (std::size_t p = 0; p < from.size(); ++p) a[from[p]] = to[p];
    bool identity = true;
    for (std::size_t x = 0; x < a.size(); ++x) identity = identity && a[x] == static_cast<int>(x);
    if (!identity) autos_.push_back(std::move(a));
  }

  const SmallGraph& g_;
  std::vector<int> first_;
  std::uint64_t first_code_ = 0;
  std::vector<int> best_;
  std::uint64_t best_code_ = 0;
  std::vector<std::vector<int>> autos_;
};

}  // namespace

CanonicalForm canonical_form(const SmallGraph& g) {
  if (g.order() > 11) throw DomainError("canonical labeling supports at most 11 vertices");
  return Search(g).run();
}

namespace {

std::vector<SmallGraph> next_level(const std::vector<SmallGraph>& level, int n, int max_degree) {
  std::set<std::uint64_t> seen;
  std::vector<SmallGraph> next;
  for (const auto& g : level) {
    for (int i = 0; i < n; ++i) {
      if (g.degree(i) >= max_degree) continue;
      for (int j = i + 1; j < n; ++j) {
        if (g.has_edge(i, j) || g.degree(j) >= max_degree) continue;
        SmallGraph h = g;
        h.add_edge(i, j);
        const auto cf = canonical_form(h);
        if (seen.insert(cf.code).second) next.push_back(h.relabeled(cf.labeling));
      }
    }
  }
  std::sort(next.begin(), next.end(),
            [](const SmallGraph& a, const SmallGraph& b) { return adjacency_code(a) < adjacency_code(b); });
  return next;
}

void check_order(int n) {
  if (n < 1 || n > 11) throw DomainError("graph generation supports 1..11 vertices");
}

}  // namespace

std::vector<SmallGraph> nonisomorphic_graphs(int n, int m, int max_degree) {
  check_order(n);
  if (m < 0 || m > n * (n - 1) / 2) return {};
  std::vector<SmallGraph> level{SmallGraph(n)};
  for (int e = 1; e <= m && !level.empty(); ++e) level = next_level(level, n, max_degree);
  return level;
}

std::vector<SmallGraph> all_nonisomorphic_graphs(int n) {
  check_order(n);
  std::vector<SmallGraph> level{SmallGraph(n)};
  std::vector<SmallGraph> out = level;
  for (int e = 1; e <= n * (n - 1) / 2; ++e) {
    level = next_level(level, n, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace contactlab
