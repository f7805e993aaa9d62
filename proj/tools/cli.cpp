#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "contactlab/bounds.hpp"
#include "contactlab/cluster_search.hpp"
#include "contactlab/constructors.hpp"
#include "contactlab/digital.hpp"
#include "contactlab/errors.hpp"
#include "contactlab/geometry.hpp"
#include "contactlab/io.hpp"
#include "contactlab/separability.hpp"

namespace contactlab::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LogLevel { Off, Info, Trace };

LogLevel log_level() {
  const char* v = std::getenv("CONTACTLAB_LOG");
  if (!v) return LogLevel::Off;
  const std::string s(v);
  if (s == "trace" || s == "debug") return LogLevel::Trace;
  if (s == "info" || s == "1") return LogLevel::Info;
  return LogLevel::Off;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("error while writing '" + path + "'");
}

struct Common {
  std::string in;
  std::string out;
  std::optional<double> eps_contact;
  std::optional<double> eps_overlap;
  std::uint64_t seed = 0;
  int workers = 1;
};

void add_tolerances(CLI::App* cmd, Common& c) {
  cmd->add_option("--eps-contact", c.eps_contact, "Contact tolerance (default 1e-9 * radius)");
  cmd->add_option("--eps-overlap", c.eps_overlap, "Overlap tolerance (default 1e-9 * radius)");
}

ToleranceConfig tolerances(const Common& c, const Packing& p) {
  auto tol = ToleranceConfig::defaults(p.radius);
  if (c.eps_contact) tol.contact = *c.eps_contact;
  if (c.eps_overlap) tol.overlap = *c.eps_overlap;
  tol.check();
  return tol;
}

int default_dimension(bounds::Kind k) { return bounds::is_exact_kind(k) ? 2 : 3; }

struct ConstructSummary {
  Packing packing;
  io::ConstructionInfo info;
  bounds::BoundReport bound;
};

ConstructSummary build(const std::string& name, std::optional<std::int64_t> n, std::optional<std::int64_t> k) {
  auto need = [&](const std::optional<std::int64_t>& v, const char* flag) {
    if (!v) throw DomainError("construct " + name + " requires " + flag);
    return *v;
  };
  ConstructSummary s;
  s.info.name = name;
  if (name == "hex") {
    const auto m = need(n, "--n");
    s.info.params["n"] = m;
    s.packing = constructors::hex_spiral(m);
    s.bound = bounds::exact_formula(bounds::Kind::C2, std::max<std::int64_t>(m, 2));
  } else if (name == "fcc-bipyramid") {
    const auto m = need(k, "--k");
    s.info.params["k"] = m;
    s.packing = constructors::fcc_bipyramid(m);
    s.bound = bounds::upper_bound(bounds::Kind::C3Fcc, static_cast<std::int64_t>(s.packing.size()), 3);
  } else if (name == "quasi-square") {
    const auto m = need(n, "--n");
    s.info.params["n"] = m;
    s.packing = digital::to_digital_packing(digital::quasi_square(m));
    s.bound = bounds::exact_formula(bounds::Kind::CZ2, std::max<std::int64_t>(m, 2));
  } else {
    const auto m = need(n, "--n");
    s.info.params["n"] = m;
    s.packing = digital::to_digital_packing(digital::quasi_cube(m));
    s.bound = bounds::upper_bound(bounds::Kind::CZd, std::max<std::int64_t>(m, 2), 3);
  }
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contact numbers of ball packings: bounds, constructions, separability and cluster search",
               "contactlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "contactlab 0.1.0");

  Common common;

  // bounds
  auto* cmd_bounds = app.add_subcommand("bounds", "Evaluate an exact formula or a bound");
  std::string kind_text;
  std::int64_t bound_n = 0;
  std::optional<int> bound_d;
  std::string format = "json";
  cmd_bounds->add_option("--kind", kind_text, "c2, c2-parallelogram, cz2, csep2, cstar2, c3-general, c3-fcc, "
                                              "csep3, czd, csepd, universal-translates, kissing-based, ks-noncongruent")
      ->required();
  cmd_bounds->add_option("--n", bound_n, "Number of balls")->required();
  cmd_bounds->add_option("--d", bound_d, "Dimension (default 2 for planar formulas, else 3)");
  cmd_bounds->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // table1
  auto* cmd_table = app.add_subcommand("table1", "CSV of fcc lower, fcc upper and general upper bounds");
  std::int64_t t_from = 2;
  std::int64_t t_to = 19;
  cmd_table->add_option("from", t_from, "First n (>= 2)")->required();
  cmd_table->add_option("to", t_to, "Last n (<= 1000000)")->required();
  cmd_table->add_option("--out", common.out, "Output path (default stdout)");

  // construct
  auto* cmd_construct = app.add_subcommand("construct", "Build an optimal or near-optimal packing");
  std::string cname;
  std::optional<std::int64_t> cn;
  std::optional<std::int64_t> ck;
  cmd_construct->add_option("name", cname, "hex, fcc-bipyramid, quasi-square or quasi-cube")
      ->required()
      ->check(CLI::IsMember({"hex", "fcc-bipyramid", "quasi-square", "quasi-cube"}));
  cmd_construct->add_option("--n", cn, "Number of balls (hex, quasi-square, quasi-cube)");
  cmd_construct->add_option("--k", ck, "Bipyramid size (fcc-bipyramid, k >= 2)");
  cmd_construct->add_option("--out", common.out, "Write the packing JSON here");

  // graph
  auto* cmd_graph = app.add_subcommand("graph", "Contact graph of a packing");
  cmd_graph->add_option("--in", common.in, "Packing JSON")->required();
  cmd_graph->add_option("--out", common.out, "Output path (default stdout)");
  add_tolerances(cmd_graph, common);

  // separable
  auto* cmd_sep = app.add_subcommand("separable", "Total separability check");
  cmd_sep->add_option("--in", common.in, "Packing JSON")->required();
  cmd_sep->add_option("--out", common.out, "Output path (default stdout)");
  add_tolerances(cmd_sep, common);

  // enumerate
  auto* cmd_enum = app.add_subcommand("enumerate", "Maximum-contact search over rigid cluster candidates");
  int en = 0;
  std::string config_path;
  std::optional<int> restarts;
  bool trace = false;
  cmd_enum->add_option("--n", en, "Number of balls, 4..9")->required();
  cmd_enum->add_option("--config", config_path, "SolverConfig JSON");
  cmd_enum->add_option("--restarts", restarts, "Multistart count (default 50)");
  cmd_enum->add_option("--seed", common.seed, "Random seed (default 0)");
  cmd_enum->add_option("--workers", common.workers, "Worker threads (default 1)");
  cmd_enum->add_flag("--trace", trace, "One line per candidate on stderr");
  cmd_enum->add_option("--out", common.out, "Output path (default stdout)");

  // volume
  auto* cmd_vol = app.add_subcommand("volume", "Monte Carlo volume of the inflated union of balls");
  double lambda = 0.0;
  std::int64_t samples = 1000000;
  cmd_vol->add_option("--in", common.in, "Packing JSON")->required();
  cmd_vol->add_option("--lambda", lambda, "Relative inflation, > 0")->required();
  cmd_vol->add_option("--samples", samples, "Sample count (default 1000000)");
  cmd_vol->add_option("--seed", common.seed, "Random seed (default 0)");
  cmd_vol->add_option("--workers", common.workers, "Worker threads (default 1)");
  cmd_vol->add_option("--out", common.out, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const LogLevel level = trace ? LogLevel::Trace : log_level();
  try {
    if (cmd_bounds->parsed()) {
      const auto kind = bounds::parse_kind(kind_text);
      if (!kind) throw DomainError("unknown bound kind '" + kind_text + "'");
      const auto r = bounds::evaluate(*kind, bound_n, bound_d.value_or(default_dimension(*kind)));
      out << (format == "csv" ? io::csv_header_bound_report() + io::to_csv_row(r) : io::to_json(r));
    } else if (cmd_table->parsed()) {
      if (t_to > 1000000) throw DomainError("table1 requires n_to <= 1000000");
      write_output(common.out, bounds::table1_csv(bounds::table1(t_from, t_to)), out);
    } else if (cmd_construct->parsed()) {
      const auto s = build(cname, cn, ck);
      const auto g = contact_graph(s.packing);
      if (!common.out.empty()) write_output(common.out, io::to_json(s.packing, s.info), out);
      out << "n=" << s.packing.size() << " contacts=" << g.contact_count() << " bound=" << bounds::kind_name(s.bound.kind)
          << ':' << s.bound.value_int << '\n';
    } else if (cmd_graph->parsed()) {
      const auto p = io::packing_from_json(read_file(common.in));
      write_output(common.out, io::to_json(contact_graph(p, tolerances(common, p))), out);
    } else if (cmd_sep->parsed()) {
      const auto p = io::packing_from_json(read_file(common.in));
      write_output(common.out, io::to_json(separability::total_separability(p, tolerances(common, p))), out);
    } else if (cmd_enum->parsed()) {
      cluster::SolverConfig cfg;
      if (!config_path.empty()) cfg = io::solver_config_from_json(read_file(config_path));
      if (restarts) cfg.restarts = *restarts;
      if (cmd_enum->count("--seed") > 0) cfg.seed = common.seed;
      if (cmd_enum->count("--workers") > 0) cfg.workers = common.workers;
      cfg.check();
      std::ostringstream trace_lines;
      const auto report = cluster::max_contact_search(en, cfg, level == LogLevel::Trace ? &trace_lines : nullptr);
      err << trace_lines.str();
      if (level != LogLevel::Off) err << "enumerate: n=" << en << " wall_time=" << report.wall_time_seconds << "s\n";
      write_output(common.out, io::to_json(report), out);
    } else if (cmd_vol->parsed()) {
      const auto p = io::packing_from_json(read_file(common.in));
      const auto v = parallel_volume_estimate(p, lambda, samples, common.seed, common.workers);
      write_output(common.out, io::to_json(v), out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidPacking& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    // DomainError, MalformedInput and UnsupportedConstant all land here.
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace contactlab::cli
