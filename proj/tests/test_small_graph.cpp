#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "contactlab/errors.hpp"
#include "contactlab/small_graph.hpp"

using namespace contactlab;

namespace {

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

// Independent invariant: the smallest edge-set bitmask over all relabelings.
std::uint64_t min_labelled_code(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<std::vector<int>>& perms) {
  const auto pairs = all_pairs(n);
  std::uint64_t best = UINT64_MAX;
  for (const auto& p : perms) {
    std::uint64_t code = 0;
    for (const auto& [i, j] : edges) {
      const int a = std::min(p[i], p[j]);
      const int b = std::max(p[i], p[j]);
      const auto idx = std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) - pairs.begin();
      code |= std::uint64_t{1} << idx;
    }
    best = std::min(best, code);
  }
  return best;
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::int64_t automorphism_count(const SmallGraph& g, const std::vector<std::vector<int>>& perms) {
  std::int64_t c = 0;
  for (const auto& p : perms) c += g.relabeled(p) == g ? 1 : 0;
  return c;
}

SmallGraph random_graph(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution coin(density);
  SmallGraph g(n);
  for (const auto& [i, j] : all_pairs(n)) {
    if (coin(rng)) g.add_edge(i, j);
  }
  return g;
}

}  // namespace

TEST_SUITE("small_graph") {
  TEST_CASE("basic operations") {
    SmallGraph g(4, {{0, 1}, {1, 2}});
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.max_degree() == 2);
    CHECK(g.min_degree() == 0);
    CHECK(g.complement().edge_count() == 4);
    g.remove_edge(0, 1);
    CHECK_FALSE(g.has_edge(1, 0));
    CHECK_THROWS_AS(g.add_edge(2, 2), MalformedInput);
    CHECK_THROWS_AS(g.add_edge(0, 7), MalformedInput);
    CHECK_THROWS_AS(SmallGraph(17), DomainError);
  }

  TEST_CASE("adjacency code layout") {
    // Path 0-1-2: bits (0,1) (0,2) (1,2) -> 101.
    CHECK(adjacency_code(SmallGraph(3, {{0, 1}, {1, 2}})) == 5);
    CHECK(adjacency_code(SmallGraph(3, {{0, 2}})) == 2);
  }

  TEST_CASE("isomorphism class counts") {
    const std::vector<std::size_t> expected{1, 2, 4, 11, 34, 156, 1044};
    for (int n = 1; n <= 7; ++n) CHECK(all_nonisomorphic_graphs(n).size() == expected[n - 1]);
    CHECK_THROWS_AS((void)all_nonisomorphic_graphs(12), DomainError);
  }

  TEST_CASE("orbit sizes add up to all labelled graphs") {
    for (int n = 3; n <= 6; ++n) {
      const auto perms = all_perms(n);
      std::int64_t total = 0;
      for (const auto& g : all_nonisomorphic_graphs(n)) {
        total += static_cast<std::int64_t>(perms.size()) / automorphism_count(g, perms);
      }
      CHECK(total == std::int64_t{1} << (n * (n - 1) / 2));
    }
  }

  TEST_CASE("canonical codes agree with brute-force isomorphism classes") {
    const int n = 6;
    const auto perms = all_perms(n);
    const auto pairs = all_pairs(n);
    // The two invariants must induce the same partition of the sample.
    std::map<std::uint64_t, std::uint64_t> to_canon;
    std::map<std::uint64_t, std::uint64_t> to_brute;
    for (std::uint32_t mask = 0; mask < (1U << pairs.size()); mask += 37) {
      std::vector<std::pair<int, int>> edges;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if ((mask >> k) & 1U) edges.push_back(pairs[k]);
      }
      const auto b = min_labelled_code(n, edges, perms);
      const auto c = canonical_form(SmallGraph(n, edges)).code;
      CHECK(to_canon.emplace(b, c).first->second == c);
      CHECK(to_brute.emplace(c, b).first->second == b);
    }
    CHECK(to_canon.size() > 100);
  }

  TEST_CASE("canonical form is invariant under relabeling") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
      const int n = 3 + t % 9;
      const auto g = random_graph(rng, n, t % 3 == 0 ? 0.8 : 0.4);
      const auto cf = canonical_form(g);
      CHECK(adjacency_code(g.relabeled(cf.labeling)) == cf.code);
      for (const auto& a : cf.automorphisms) CHECK(g.relabeled(a) == g);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(canonical_form(g.relabeled(perm)).code == cf.code);
    }
  }

  TEST_CASE("highly symmetric graphs") {
    // Petersen graph.
    SmallGraph p(10);
    for (int i = 0; i < 5; ++i) {
      p.add_edge(i, (i + 1) % 5);
      p.add_edge(i, i + 5);
      p.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    const auto cf = canonical_form(p);
    std::vector<int> perm{3, 1, 4, 0, 2, 8, 6, 9, 5, 7};
    CHECK(canonical_form(p.relabeled(perm)).code == cf.code);
    CHECK(canonical_form(SmallGraph(11)).code == 0);
    CHECK(canonical_form(SmallGraph(11).complement()).code == (std::uint64_t{1} << 55) - 1);
  }

  TEST_CASE("degree-capped enumeration") {
    const auto cubic8 = nonisomorphic_graphs(8, 12, 3);
    // Cubic graphs on 8 vertices: five connected ones plus two disjoint K4.
    CHECK(cubic8.size() == 6);
    for (const auto& g : cubic8) CHECK(g.max_degree() <= 3);
    CHECK(nonisomorphic_graphs(5, 10, 4).size() == 1);
    CHECK(nonisomorphic_graphs(5, 10, 3).empty());
  }
}
