#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contactlab/geometry.hpp"
#include "contactlab/small_graph.hpp"

namespace contactlab::cluster {

/// A graph in the candidate stream, stored in canonical labeling.
struct CandidateGraph {
  SmallGraph graph;
  std::uint64_t canonical_code = 0;

  [[nodiscard]] int n() const noexcept { return graph.order(); }
  [[nodiscard]] int edge_count() const noexcept { return graph.edge_count(); }
  [[nodiscard]] std::vector<std::vector<int>> adjacency() const;
  [[nodiscard]] ContactGraph to_contact_graph() const;
  [[nodiscard]] static CandidateGraph from(const SmallGraph& g);
};

/// All graphs on n vertices with 3n - 6 edges and minimum degree >= 3, one
/// per isomorphism class, in ascending canonical-code order. These are the
/// complements of graphs with (n-3)(n-4)/2 edges and maximum degree <= n-4,
/// which is much the cheaper side to generate. 4 <= n <= 9; n >= 8 takes
/// seconds.
[[nodiscard]] std::vector<CandidateGraph> enumerate_candidates(int n);

/// A pruning rule rejects graphs that cannot be the contact graph of a unit
/// ball packing in 3-space.
struct PruneRule {
  std::string id;
  std::function<bool(const SmallGraph&)> rejects;
};

/// R1: a vertex of degree above 12 would need more than k(3) = 12 unit
/// balls touching one unit ball.
/// R2: K5 is not realizable: five points pairwise at distance 2 form a
/// regular 4-simplex, whose Cayley-Menger determinant shows it needs four
/// dimensions.
/// R3: balls touching both balls of a touching pair have centers at distance
/// 2 from both, i.e. on a circle of radius sqrt(3) around the pair's
/// midpoint. Two of them must be 2 apart, an angle of at least
/// 2 asin(1/sqrt(3)) = 70.53 degrees, so at most 5 fit.
[[nodiscard]] std::vector<PruneRule> default_rules();

struct PruneVerdict {
  bool keep = true;
  std::string rule_id;
};

[[nodiscard]] PruneVerdict prune(const SmallGraph& g, const std::vector<PruneRule>& rules);
[[nodiscard]] PruneVerdict prune(const SmallGraph& g);

struct SolverConfig {
  int restarts = 50;
  std::uint64_t seed = 0;
  double tol_eq = 1e-10;
  double tol_ineq = 1e-9;
  int workers = 1;
  int max_iterations = 400;

  /// Throws DomainError on non-positive counts or tolerances.
  void check() const;
};

/// Tolerance used to count contacts in a solved configuration. Looser than
/// the solver's acceptance so that pairs left a hair off contact by the
/// solver are still recognized.
[[nodiscard]] ToleranceConfig recount_tolerance() noexcept;

struct EmbeddingResult {
  /// Gauge-fixed: vertex 0 at the origin, vertex 1 on the x axis, vertex 2
  /// in the xy plane.
  std::vector<std::array<double, 3>> coordinates;
  /// max |d_ij - 2| over edges.
  double residual = 0.0;
  /// min d_ij - 2 over non-edges; +inf for complete graphs.
  double min_slack = 0.0;
  int realized_contacts = 0;
  bool realized = false;
  bool minimally_rigid = false;
  bool infinitesimally_rigid = false;
  int rigidity_rank = 0;
  int restarts_used = 0;

  /// Unit balls on the coordinates.
  [[nodiscard]] Packing packing() const;
};

/// Gauge-fixed least-squares solve of d_ij = 2 on edges, d_ij >= 2 on
/// non-edges, by Levenberg-Marquardt with multistart. Non-edges contribute
/// hinge residuals min(0, d^2 - 4). Failing every restart returns
/// realized = false, which means "not found", not "infeasible".
[[nodiscard]] EmbeddingResult solve_embedding(const SmallGraph& g, const SolverConfig& cfg);

/// Gauge-fixes an existing configuration and evaluates it against g.
[[nodiscard]] EmbeddingResult embedding_from_packing(const Packing& p, const SmallGraph& g);

struct RigidityFlags {
  bool minimally_rigid = false;
  bool infinitesimally_rigid = false;
  int rank = 0;
};

/// Sets the two rigidity flags in place and returns them. Minimal rigidity:
/// every ball has >= 3 contacts and there are >= 3n - 6 contacts, counted on
/// the realized contacts. Infinitesimal rigidity: the rigidity matrix of the
/// realized contacts has rank 3n - 6 (singular values above 1e-7).
/// Throws DomainError for unrealized results or n < 4.
RigidityFlags classify_rigidity(EmbeddingResult& e);

struct SearchReport {
  int n = 0;
  std::int64_t graphs_enumerated = 0;
  std::map<std::string, std::int64_t> graphs_pruned_by_rule;
  std::int64_t graphs_solved = 0;
  std::int64_t graphs_realized = 0;
  std::int64_t minimally_rigid = 0;
  std::int64_t infinitesimally_rigid = 0;
  int best_contacts = 0;
  std::uint64_t best_canonical_code = 0;
  Packing best_packing;
  double wall_time_seconds = 0.0;

  [[nodiscard]] std::int64_t graphs_pruned() const;
};

/// enumerate -> prune -> solve -> classify for 4 <= n <= 9. Candidates are
/// solved independently with seeds derived from (cfg.seed, stream index);
/// workers only split the stream, so results do not depend on their number.
/// Ties for the best count go to the smallest canonical code. When trace is
/// non-null it receives one line per candidate.
[[nodiscard]] SearchReport max_contact_search(int n, const SolverConfig& cfg, std::ostream* trace = nullptr);

/// n + 2 vertices: g plus two new vertices adjacent to each other and to
/// every vertex of g.
[[nodiscard]] ContactGraph join_with_k2(const ContactGraph& g);

/// Maximum realizable edge count over all graphs on n vertices, 2 <= n <= 5,
/// checked by solve_embedding in descending edge order.
[[nodiscard]] int brute_force_small(int n, const SolverConfig& cfg = {});

/// Nine balls: two triangular bipyramids sharing one equatorial ball, mirror
/// images of each other, with three extra contacts between mirrored balls.
/// 21 contacts; the two halves can be counter-rotated about the common
/// axis to first order.
[[nodiscard]] Packing twin_bipyramid();

}  // namespace contactlab::cluster
