#include "contactlab/cluster_search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "contactlab/errors.hpp"
#include "contactlab/random.hpp"

namespace contactlab::cluster {

std::vector<std::vector<int>> CandidateGraph::adjacency() const {
  const int n = graph.order();
  std::vector<std::vector<int>> a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = graph.has_edge(i, j) ? 1 : 0;
  }
  return a;
}

ContactGraph CandidateGraph::to_contact_graph() const {
  ContactGraph g;
  g.n = graph.order();
  g.edges = graph.edges();
  return g;
}

CandidateGraph CandidateGraph::from(const SmallGraph& g) {
  const auto cf = canonical_form(g);
  return CandidateGraph{g.relabeled(cf.labeling), cf.code};
}

std::vector<CandidateGraph> enumerate_candidates(int n) {
  if (n < 4 || n > 9) throw DomainError("enumerate_candidates requires 4 <= n <= 9, got n = " + std::to_string(n));
  std::vector<CandidateGraph> out;
  for (const auto& h : nonisomorphic_graphs(n, (n - 3) * (n - 4) / 2, n - 4)) {
    out.push_back(CandidateGraph::from(h.complement()));
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateGraph& a, const CandidateGraph& b) { return a.canonical_code < b.canonical_code; });
  return out;
}

namespace {

bool has_clique(const SmallGraph& g, std::uint16_t candidates, int size) {
  if (size == 0) return true;
  if (std::popcount(candidates) < size) return false;
  while (candidates != 0) {
    const int v = std::countr_zero(candidates);
    candidates = static_cast<std::uint16_t>(candidates & (candidates - 1));
    if (has_clique(g, static_cast<std::uint16_t>(candidates & g.neighbors(v)), size - 1)) return true;
  }
  return false;
}

}  // namespace

std::vector<PruneRule> default_rules() {
  return {
      {"R1",
       [](const SmallGraph& g) { return g.max_degree() > 12; }},
      {"R2",
       [](const SmallGraph& g) {
         return has_clique(g, static_cast<std::uint16_t>((1U << g.order()) - 1U), 5);
       }},
      {"R3",
       [](const SmallGraph& g) {
         for (const auto& [i, j] : g.edges()) {
           if (std::popcount(static_cast<std::uint16_t>(g.neighbors(i) & g.neighbors(j))) > 5) return true;
         }
         return false;
       }},
  };
}

PruneVerdict prune(const SmallGraph& g, const std::vector<PruneRule>& rules) {
  for (const auto& r : rules) {
    if (r.rejects(g)) return {false, r.id};
  }
  return {};
}

PruneVerdict prune(const SmallGraph& g) {
  static const auto rules = default_rules();
  return prune(g, rules);
}

void SolverConfig::check() const {
  if (restarts < 1) throw DomainError("restarts must be at least 1");
  if (workers < 1) throw DomainError("workers must be at least 1");
  if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
  if (!(tol_eq > 0.0) || !(tol_ineq > 0.0)) throw DomainError("solver tolerances must be positive");
}

ToleranceConfig recount_tolerance() noexcept { return ToleranceConfig{1e-7, 1e-9}; }

Packing EmbeddingResult::packing() const {
  Packing p;
  p.dim = 3;
  p.radius = 1.0;
  for (const auto& c : coordinates) p.centers.push_back({c[0], c[1], c[2]});
  return p;
}

namespace {

using Coords = std::vector<std::array<double, 3>>;

int gauge_unknowns(int n) {
  int u = 0;
  for (int i = 0; i < n; ++i) u += std::min(i, 3);
  return u;
}

Coords unpack(const Eigen::VectorXd& x, int n) {
  Coords c(static_cast<std::size_t>(n), {0.0, 0.0, 0.0});
  int at = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < std::min(i, 3); ++k) c[i][k] = x[at++];
  }
  return c;
}

double sq_dist(const Coords& c, int i, int j) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += (c[i][k] - c[j][k]) * (c[i][k] - c[j][k]);
  return s;
}

// Residuals d^2 - 4 on edges and min(0, d^2 - 4) on non-edges, one per
// unordered pair, with the Jacobian over the gauge unknowns.
void residuals(const SmallGraph& g, const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
  const int n = g.order();
  const Coords c = unpack(x, n);
  std::vector<int> base(static_cast<std::size_t>(n), 0);
  for (int i = 1; i < n; ++i) base[i] = base[i - 1] + std::min(i - 1, 3);
  if (jac) jac->setZero();
  int row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++row) {
      const double v = sq_dist(c, i, j) - 4.0;
      const bool active = g.has_edge(i, j) || v < 0.0;
      r[row] = active ? v : 0.0;
      if (!jac || !active) continue;
      for (int k = 0; k < 3; ++k) {
        const double d = 2.0 * (c[i][k] - c[j][k]);
        if (k < std::min(i, 3)) (*jac)(row, base[i] + k) += d;
        if (k < std::min(j, 3)) (*jac)(row, base[j] + k) -= d;
      }
    }
  }
}

// Nielsen-damped Levenberg-Marquardt.
Eigen::VectorXd levenberg_marquardt(const SmallGraph& g, Eigen::VectorXd x, int max_iterations) {
  const int n = g.order();
  const auto m = static_cast<Eigen::Index>(n * (n - 1) / 2);
  const auto u = x.size();
  if (u == 0) return x;
  Eigen::VectorXd r(m), r_new(m);
  Eigen::MatrixXd jac(m, u);
  residuals(g, x, r, &jac);
  Eigen::MatrixXd a = jac.transpose() * jac;
  Eigen::VectorXd grad = jac.transpose() * r;
  double f = 0.5 * r.squaredNorm();
  double mu = 1e-3 * a.diagonal().maxCoeff();
  double nu = 2.0;
  for (int it = 0; it < max_iterations; ++it) {
    if (f < 1e-28 || grad.lpNorm<Eigen::Infinity>() < 1e-24) break;
    Eigen::MatrixXd damped = a;
    damped.diagonal().array() += mu;
    const Eigen::VectorXd h = damped.ldlt().solve(-grad);
    if (h.norm() < 1e-16 * (x.norm() + 1e-16)) break;
    const Eigen::VectorXd x_new = x + h;
    residuals(g, x_new, r_new, nullptr);
    const double f_new = 0.5 * r_new.squaredNorm();
    const double predicted = 0.5 * h.dot(mu * h - grad);
    const double rho = predicted > 0.0 ? (f - f_new) / predicted : -1.0;
    if (rho > 0.0) {
      x = x_new;
      residuals(g, x, r, &jac);
      a = jac.transpose() * jac;
      grad = jac.transpose() * r;
      f = 0.5 * r.squaredNorm();
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
    }
  }
  return x;
}

struct Fit {
  double residual = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
};

Fit evaluate_fit(const SmallGraph& g, const Coords& c) {
  Fit fit;
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      const double d = std::sqrt(sq_dist(c, i, j));
      if (g.has_edge(i, j)) {
        fit.residual = std::max(fit.residual, std::abs(d - 2.0));
      } else {
        fit.min_slack = std::min(fit.min_slack, d - 2.0);
      }
    }
  }
  return fit;
}

bool accepted(const Fit& fit, const SolverConfig& cfg) {
  return fit.residual <= cfg.tol_eq && fit.min_slack >= -cfg.tol_ineq;
}

Eigen::VectorXd pack(const Coords& c) {
  const int n = static_cast<int>(c.size());
  Eigen::VectorXd x(gauge_unknowns(n));
  int at = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < std::min(i, 3); ++k) x[at++] = c[i][k];
  }
  return x;
}

std::optional<ContactGraph> realized_graph(const Coords& c) {
  Packing p;
  p.dim = 3;
  p.radius = 1.0;
  for (const auto& q : c) p.centers.push_back({q[0], q[1], q[2]});
  try {
    return contact_graph(p, recount_tolerance());
  } catch (const InvalidPacking&) {
    return std::nullopt;
  }
}

void finish(EmbeddingResult& e, const SmallGraph& g, const SolverConfig& cfg) {
  const Fit fit = evaluate_fit(g, e.coordinates);
  e.residual = fit.residual;
  e.min_slack = fit.min_slack;
  e.realized = accepted(fit, cfg);
  e.realized_contacts = 0;
  if (!e.realized) return;
  if (auto cg = realized_graph(e.coordinates)) {
    e.realized_contacts = static_cast<int>(cg->contact_count());
  } else {
    e.realized = false;
  }
}

}  // namespace

EmbeddingResult solve_embedding(const SmallGraph& g, const SolverConfig& cfg) {
  cfg.check();
  const int n = g.order();
  if (n < 1) throw DomainError("solve_embedding needs at least one vertex");
  EmbeddingResult best;
  best.residual = std::numeric_limits<double>::infinity();
  const double spread = 1.0 + 1.5 * std::cbrt(static_cast<double>(n));
  for (int attempt = 0; attempt < cfg.restarts; ++attempt) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(attempt)));
    Eigen::VectorXd x(gauge_unknowns(n));
    for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = rng.uniform(-spread, spread);
    x = levenberg_marquardt(g, x, cfg.max_iterations);

    EmbeddingResult e;
    e.coordinates = unpack(x, n);
    e.restarts_used = attempt + 1;
    finish(e, g, cfg);
    if (e.realized) {
      // Pairs that came out touching although g does not ask for it are
      // pulled onto exact contact when the enlarged system stays solvable.
      if (e.realized_contacts > g.edge_count()) {
        SmallGraph wider(n, realized_graph(e.coordinates)->edges);
        EmbeddingResult polished = e;
        polished.coordinates = unpack(levenberg_marquardt(wider, pack(e.coordinates), cfg.max_iterations), n);
        finish(polished, wider, cfg);
        if (polished.realized && accepted(evaluate_fit(g, polished.coordinates), cfg)) {
          const Fit fit = evaluate_fit(g, polished.coordinates);
          polished.residual = fit.residual;
          polished.min_slack = fit.min_slack;
          e = polished;
        }
      }
      return e;
    }
    if (e.residual < best.residual) best = e;
  }
  return best;
}

EmbeddingResult embedding_from_packing(const Packing& p, const SmallGraph& g) {
  check_well_formed(p);
  if (p.dim != 3) throw DomainError("embeddings live in 3-space");
  if (static_cast<int>(p.size()) != g.order()) throw MalformedInput("graph and packing sizes differ");
  if (std::abs(p.radius - 1.0) > 1e-12) throw DomainError("embeddings use unit balls");
  using V = Eigen::Vector3d;
  const std::size_t n = p.size();
  auto at = [&](std::size_t i) { return V(p.centers[i][0], p.centers[i][1], p.centers[i][2]); };
  const V origin = at(0);
  V e1 = V::UnitX();
  if (n > 1) e1 = (at(1) - origin).normalized();
  V e2 = V::Zero();
  for (std::size_t i = 2; i < n && e2.norm() < 1e-9; ++i) {
    const V v = at(i) - origin;
    e2 = v - v.dot(e1) * e1;
  }
  if (e2.norm() < 1e-9) e2 = std::abs(e1.x()) < 0.9 ? V::UnitX() - e1.x() * e1 : V::UnitY() - e1.y() * e1;
  e2.normalize();
  const V e3 = e1.cross(e2);
  EmbeddingResult e;
  for (std::size_t i = 0; i < n; ++i) {
    const V v = at(i) - origin;
    e.coordinates.push_back({v.dot(e1), v.dot(e2), v.dot(e3)});
  }
  // Strip rounding noise from the gauge-fixed slots.
  if (n > 1) e.coordinates[1][1] = e.coordinates[1][2] = 0.0;
  if (n > 2) e.coordinates[2][2] = 0.0;
  finish(e, g, SolverConfig{});
  return e;
}

RigidityFlags classify_rigidity(EmbeddingResult& e) {
  if (!e.realized) throw DomainError("rigidity is only defined for realized embeddings");
  const int n = static_cast<int>(e.coordinates.size());
  if (n < 4) throw DomainError("rigidity classification needs n >= 4, got n = " + std::to_string(n));
  const auto cg = realized_graph(e.coordinates);
  if (!cg) throw DomainError("embedding overlaps");
  const auto degrees = cg->degrees();
  RigidityFlags flags;
  flags.minimally_rigid = std::all_of(degrees.begin(), degrees.end(), [](int d) { return d >= 3; }) &&
                          static_cast<int>(cg->contact_count()) >= 3 * n - 6;
  Eigen::MatrixXd rig = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cg->contact_count()), 3 * n);
  Eigen::Index row = 0;
  for (const auto& [i, j] : cg->edges) {
    for (int k = 0; k < 3; ++k) {
      const double d = e.coordinates[i][k] - e.coordinates[j][k];
      rig(row, 3 * i + k) = d;
      rig(row, 3 * j + k) = -d;
    }
    ++row;
  }
  int rank = 0;
  if (rig.rows() > 0) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(rig);
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      if (svd.singularValues()[k] > 1e-7) ++rank;
    }
  }
  flags.rank = rank;
  flags.infinitesimally_rigid = rank == 3 * n - 6;
  e.minimally_rigid = flags.minimally_rigid;
  e.infinitesimally_rigid = flags.infinitesimally_rigid;
  e.rigidity_rank = rank;
  return flags;
}

std::int64_t SearchReport::graphs_pruned() const {
  std::int64_t s = 0;
  for (const auto& [id, count] : graphs_pruned_by_rule) s += count;
  return s;
}

namespace {

struct CandidateOutcome {
  PruneVerdict verdict;
  EmbeddingResult embedding;
};

CandidateOutcome process(const CandidateGraph& c, const SolverConfig& cfg, std::size_t index) {
  CandidateOutcome out;
  out.verdict = prune(c.graph);
  if (!out.verdict.keep) return out;
  SolverConfig local = cfg;
  local.seed = derive_seed(cfg.seed, index);
  out.embedding = solve_embedding(c.graph, local);
  if (out.embedding.realized) classify_rigidity(out.embedding);
  return out;
}

}  // namespace

SearchReport max_contact_search(int n, const SolverConfig& cfg, std::ostream* trace) {
  cfg.check();
  const auto start = std::chrono::steady_clock::now();
  const auto candidates = enumerate_candidates(n);
  std::vector<CandidateOutcome> outcomes(candidates.size());
  const auto workers = static_cast<std::size_t>(std::max(1, cfg.workers));
  if (workers == 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) outcomes[i] = process(candidates[i], cfg, i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < candidates.size(); i += workers) outcomes[i] = process(candidates[i], cfg, i);
      });
    }
  }

  SearchReport report;
  report.n = n;
  report.graphs_enumerated = static_cast<std::int64_t>(candidates.size());
  for (const auto& rule : default_rules()) report.graphs_pruned_by_rule[rule.id] = 0;
  const EmbeddingResult* best = nullptr;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& o = outcomes[i];
    char line[160];
    if (!o.verdict.keep) {
      ++report.graphs_pruned_by_rule[o.verdict.rule_id];
      std::snprintf(line, sizeof line, "graph=%016llx verdict=pruned:%s",
                    static_cast<unsigned long long>(candidates[i].canonical_code), o.verdict.rule_id.c_str());
    } else {
      ++report.graphs_solved;
      const auto& e = o.embedding;
      if (e.realized) {
        ++report.graphs_realized;
        report.minimally_rigid += e.minimally_rigid ? 1 : 0;
        report.infinitesimally_rigid += e.infinitesimally_rigid ? 1 : 0;
        // Candidates arrive in ascending canonical order, so strict
        // improvement keeps the smallest code on ties.
        if (!best || e.realized_contacts > best->realized_contacts) {
          best = &e;
          report.best_canonical_code = candidates[i].canonical_code;
        }
      }
      std::snprintf(line, sizeof line, "graph=%016llx verdict=%s residual=%.3e contacts=%d",
                    static_cast<unsigned long long>(candidates[i].canonical_code),
                    e.realized ? "realized" : "unrealized", e.residual, e.realized_contacts);
    }
    if (trace) *trace << line << '\n';
  }
  if (best) {
    report.best_contacts = best->realized_contacts;
    report.best_packing = best->packing();
  }
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ContactGraph join_with_k2(const ContactGraph& g) {
  ContactGraph out;
  out.n = g.n + 2;
  out.edges = g.edges;
  const int a = g.n;
  const int b = g.n + 1;
  for (int v = 0; v < g.n; ++v) {
    out.edges.emplace_back(v, a);
    out.edges.emplace_back(v, b);
  }
  out.edges.emplace_back(a, b);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

int brute_force_small(int n, const SolverConfig& cfg) {
  if (n < 2 || n > 5) throw DomainError("brute_force_small requires 2 <= n <= 5, got n = " + std::to_string(n));
  auto graphs = all_nonisomorphic_graphs(n);
  std::stable_sort(graphs.begin(), graphs.end(),
                   [](const SmallGraph& a, const SmallGraph& b) { return a.edge_count() > b.edge_count(); });
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    SolverConfig local = cfg;
    local.seed = derive_seed(cfg.seed, i);
    if (solve_embedding(graphs[i], local).realized) return graphs[i].edge_count();
  }
  return 0;
}

Packing twin_bipyramid() {
  const double s3 = std::sqrt(3.0);
  const double h = 2.0 * std::sqrt(2.0 / 3.0);
  // Body one: equator {L, P, M1} with apexes T1, B1; body two is its mirror
  // image in the plane x = 0 through the shared ball P.
  const std::vector<Point> half{{-2.0, 0.0, 0.0}, {-1.0, s3, 0.0}, {-1.0, s3 / 3.0, h}, {-1.0, s3 / 3.0, -h}};
  Packing p;
  p.dim = 3;
  p.radius = 1.0;
  p.centers.push_back({0.0, 0.0, 0.0});
  for (const auto& c : half) p.centers.push_back(c);
  for (const auto& c : half) p.centers.push_back({-c[0], c[1], c[2]});
  return p;
}

}  // namespace contactlab::cluster
