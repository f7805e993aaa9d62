#include "contactlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "contactlab/errors.hpp"
#include "json.hpp"

namespace contactlab::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw MalformedInput(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return field<T>(j, key);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json packing_json(const Packing& p) {
  ordered_json j;
  j["dim"] = p.dim;
  j["radius"] = p.radius;
  j["exact_lattice"] = p.exact_lattice;
  ordered_json centers = ordered_json::array();
  for (const auto& c : p.centers) centers.push_back(c);
  j["centers"] = std::move(centers);
  if (p.lattice) j["lattice"] = {{"gram", p.lattice->gram}, {"coords", p.lattice->coords}};
  return j;
}

ordered_json graph_json(const ContactGraph& g) {
  ordered_json edges = ordered_json::array();
  for (const auto& [i, j] : g.edges) edges.push_back({i, j});
  return {{"n", g.n}, {"edges", std::move(edges)}, {"contacts", g.contact_count()}};
}

ordered_json plane_json(const separability::Hyperplane& h) { return {{"normal", h.normal}, {"offset", h.offset}}; }

}  // namespace

std::string format_number(double v) {
  const ordered_json j = number(v);
  return j.dump();
}

std::string to_json(const Packing& p) { return dump(packing_json(p)); }

std::string to_json(const Packing& p, const ConstructionInfo& info) {
  ordered_json j = packing_json(p);
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : info.params) params[k] = v;
  j["construction"] = {{"name", info.name}, {"params", std::move(params)}};
  return dump(j);
}

Packing packing_from_json(std::string_view text) {
  const json j = parse(text);
  Packing p;
  p.dim = field<int>(j, "dim");
  p.radius = field<double>(j, "radius");
  p.exact_lattice = field_or<bool>(j, "exact_lattice", false);
  p.centers = field<std::vector<Point>>(j, "centers");
  if (j.contains("lattice")) {
    const auto& lat = j.at("lattice");
    LatticeEmbedding e;
    e.gram = field<std::vector<std::vector<std::int64_t>>>(lat, "gram");
    e.coords = field<std::vector<std::vector<std::int64_t>>>(lat, "coords");
    p.lattice = std::move(e);
  }
  check_well_formed(p);
  return p;
}

std::string to_json(const ContactGraph& g) { return dump(graph_json(g)); }

ContactGraph contact_graph_from_json(std::string_view text) {
  const json j = parse(text);
  ContactGraph g;
  g.n = field<int>(j, "n");
  if (g.n < 0) throw MalformedInput("graph size must be non-negative");
  for (auto [a, b] : field<std::vector<std::pair<int, int>>>(j, "edges")) {
    if (a == b || a < 0 || b < 0 || a >= g.n || b >= g.n) throw MalformedInput("edge endpoint out of range");
    if (a > b) std::swap(a, b);
    g.edges.emplace_back(a, b);
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
    throw MalformedInput("duplicate edge");
  }
  return g;
}

std::string to_json(const digital::Polyomino& poly) {
  ordered_json j;
  j["dim"] = poly.dim();
  j["cells"] = poly.cells();
  return dump(j);
}

digital::Polyomino polyomino_from_json(std::string_view text) {
  const json j = parse(text);
  return digital::Polyomino(field<int>(j, "dim"), field<std::vector<digital::Cell>>(j, "cells"));
}

std::string to_json(const bounds::BoundReport& r) {
  ordered_json j;
  j["kind"] = bounds::kind_name(r.kind);
  j["n"] = r.n;
  j["d"] = r.d;
  j["value_real"] = r.value_real;
  j["value_int"] = r.value_int;
  j["direction"] = bounds::direction_name(r.direction);
  j["strict"] = r.strict;
  if (r.linear_coeff) j["linear_coeff"] = *r.linear_coeff;
  if (r.sublinear_coeff) j["sublinear_coeff"] = *r.sublinear_coeff;
  if (r.exponent) j["exponent"] = *r.exponent;
  j["anchor"] = r.anchor;
  return dump(j);
}

std::string csv_header_bound_report() { return "kind,n,d,value_real,value_int,direction,strict\n"; }

std::string to_csv_row(const bounds::BoundReport& r) {
  char real[64];
  std::snprintf(real, sizeof real, "%.10g", r.value_real);
  std::ostringstream os;
  os << bounds::kind_name(r.kind) << ',' << r.n << ',' << r.d << ',' << real << ',' << r.value_int << ','
     << bounds::direction_name(r.direction) << ',' << (r.strict ? "true" : "false") << '\n';
  return os.str();
}

std::string to_json(const separability::SeparabilityReport& r) {
  ordered_json j;
  j["status"] = separability::status_name(r.status);
  ordered_json witnesses = ordered_json::array();
  for (const auto& [pair, plane] : r.witnesses) {
    ordered_json w = plane_json(plane);
    w["pair"] = {pair.first, pair.second};
    witnesses.push_back(std::move(w));
  }
  j["witnesses"] = std::move(witnesses);
  if (r.violation) {
    const auto& c = *r.violation;
    j["certificate"] = {{"pair", {c.pair.first, c.pair.second}},
                        {"blocking", c.blocking},
                        {"plane", plane_json(c.plane)},
                        {"clearance", c.clearance}};
  }
  ordered_json unresolved = ordered_json::array();
  for (const auto& [a, b] : r.unresolved) unresolved.push_back({a, b});
  j["unresolved"] = std::move(unresolved);
  return dump(j);
}

std::string to_json(const cluster::SolverConfig& cfg) {
  ordered_json j;
  j["restarts"] = cfg.restarts;
  j["seed"] = cfg.seed;
  j["tol_eq"] = cfg.tol_eq;
  j["tol_ineq"] = cfg.tol_ineq;
  j["workers"] = cfg.workers;
  return dump(j);
}

cluster::SolverConfig solver_config_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw MalformedInput("solver config must be a JSON object");
  cluster::SolverConfig cfg;
  cfg.restarts = field_or<int>(j, "restarts", cfg.restarts);
  cfg.seed = field_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.tol_eq = field_or<double>(j, "tol_eq", cfg.tol_eq);
  cfg.tol_ineq = field_or<double>(j, "tol_ineq", cfg.tol_ineq);
  cfg.workers = field_or<int>(j, "workers", cfg.workers);
  cfg.check();
  return cfg;
}

std::string to_json(const cluster::SearchReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["graphs_enumerated"] = r.graphs_enumerated;
  ordered_json pruned = ordered_json::object();
  for (const auto& [id, count] : r.graphs_pruned_by_rule) pruned[id] = count;
  j["graphs_pruned_by_rule"] = std::move(pruned);
  j["graphs_solved"] = r.graphs_solved;
  j["graphs_realized"] = r.graphs_realized;
  j["graphs_unrealized"] = r.graphs_solved - r.graphs_realized;
  j["minimally_rigid"] = r.minimally_rigid;
  j["infinitesimally_rigid"] = r.infinitesimally_rigid;
  j["best_contacts"] = r.best_contacts;
  char code[32];
  std::snprintf(code, sizeof code, "%016llx", static_cast<unsigned long long>(r.best_canonical_code));
  j["best_canonical_code"] = code;
  if (!r.best_packing.centers.empty()) j["best_packing"] = packing_json(r.best_packing);
  return dump(j);
}

std::string to_json(const VolumeEstimate& v) {
  ordered_json j;
  j["estimate"] = v.estimate;
  j["standard_error"] = v.standard_error;
  j["box_volume"] = v.box_volume;
  j["samples"] = v.samples;
  j["hits"] = v.hits;
  return dump(j);
}

}  // namespace contactlab::io
