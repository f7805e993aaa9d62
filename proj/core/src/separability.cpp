#include "contactlab/separability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "contactlab/random.hpp"

namespace contactlab::separability {

double Hyperplane::signed_distance(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < normal.size(); ++k) s += normal[k] * x[k];
  return s - offset;
}

std::string_view status_name(Status s) noexcept {
  switch (s) {
    case Status::Separable: return "Separable";
    case Status::NotSeparable: return "NotSeparable";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

bool plane_clears_all(const Packing& p, const Hyperplane& h, double eps) {
  const double need = p.radius - eps;
  return std::all_of(p.centers.begin(), p.centers.end(),
                     [&](const Point& c) { return std::abs(h.signed_distance(c)) >= need; });
}

namespace {

using Direction = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void normalize(Direction& u) {
  const double len = std::sqrt(dot(u, u));
  for (auto& x : u) x /= len;
}

// Flip so that the first non-negligible component is positive; planes with
// normals u and -u coincide.
void canonical_sign(Direction& u) {
  for (double x : u) {
    if (std::abs(x) > 1e-12) {
      if (x < 0) {
        for (auto& y : u) y = -y;
      }
      return;
    }
  }
}

void dedupe(std::vector<Direction>& dirs) {
  std::sort(dirs.begin(), dirs.end());
  auto close = [](const Direction& a, const Direction& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (std::abs(a[k] - b[k]) > 1e-9) return false;
    }
    return true;
  };
  dirs.erase(std::unique(dirs.begin(), dirs.end(), close), dirs.end());
}

std::vector<Direction> geodesic_axes(int frequency) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> v;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-phi, phi}) {
      v.push_back({0.0, a, b});
      v.push_back({a, b, 0.0});
      v.push_back({b, 0.0, a});
    }
  }
  auto dist2 = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
  };
  std::vector<Direction> pts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        if (std::abs(dist2(v[i], v[j]) - 4.0) > 1e-9 || std::abs(dist2(v[j], v[k]) - 4.0) > 1e-9 ||
            std::abs(dist2(v[i], v[k]) - 4.0) > 1e-9) {
          continue;
        }
        for (int a = 0; a <= frequency; ++a) {
          for (int b = 0; a + b <= frequency; ++b) {
            const int c = frequency - a - b;
            Direction u(3);
            for (int t = 0; t < 3; ++t) u[t] = a * v[i][t] + b * v[j][t] + c * v[k][t];
            normalize(u);
            canonical_sign(u);
            pts.push_back(std::move(u));
          }
        }
      }
    }
  }
  dedupe(pts);
  return pts;
}

// Slab decomposition of the packing along one direction: balls whose
// projections are separated by a gap of at least 2(r - eps) lie in
// different slabs, and the gap midpoint is a separating offset.
struct Slabs {
  Direction normal;
  std::vector<int> slab;        // per ball
  std::vector<double> offsets;  // offsets[s]: plane between slab s and s + 1
};

Slabs slab_decomposition(const Packing& p, Direction u, double eps) {
  const std::size_t n = p.size();
  std::vector<double> proj(n);
  for (std::size_t i = 0; i < n; ++i) proj[i] = dot(u, p.centers[i]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return proj[a] < proj[b] || (proj[a] == proj[b] && a < b);
  });
  Slabs s;
  s.normal = std::move(u);
  s.slab.assign(n, 0);
  const double gap = 2.0 * (p.radius - eps);
  int current = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0 && proj[order[r]] - proj[order[r - 1]] >= gap) {
      s.offsets.push_back(0.5 * (proj[order[r]] + proj[order[r - 1]]));
      ++current;
    }
    s.slab[order[r]] = current;
  }
  return s;
}

std::optional<Hyperplane> witness_from(const Slabs& s, int i, int j) {
  if (s.slab[i] == s.slab[j]) return std::nullopt;
  const int lower = std::min(s.slab[i], s.slab[j]);
  return Hyperplane{s.normal, s.offsets[static_cast<std::size_t>(lower)]};
}

Direction unit_difference(const Packing& p, std::size_t i, std::size_t j) {
  Direction u(static_cast<std::size_t>(p.dim));
  for (int k = 0; k < p.dim; ++k) u[k] = p.centers[j][k] - p.centers[i][k];
  normalize(u);
  return u;
}

Hyperplane tangent_plane(const Packing& p, std::size_t i, std::size_t j) {
  Hyperplane h{unit_difference(p, i, j), 0.0};
  Point mid(static_cast<std::size_t>(p.dim));
  for (int k = 0; k < p.dim; ++k) mid[k] = 0.5 * (p.centers[i][k] + p.centers[j][k]);
  h.offset = dot(h.normal, mid);
  return h;
}

// First ball the tangent plane of touching pair (i, j) cuts, if any. Exact
// lattice packings are decided in integers: the clearance of ball k is
// |<2u_k - u_i - u_j, u_j - u_i>_G| / (4r), and it must reach r.
std::optional<std::size_t> tangent_plane_blocker(const Packing& p, std::size_t i, std::size_t j,
                                                 const Hyperplane& h, double eps) {
  const std::size_t n = p.size();
  if (p.uses_exact_arithmetic()) {
    const auto& lat = *p.lattice;
    const std::size_t rank = lat.gram.size();
    std::vector<std::int64_t> delta(rank), g_delta(rank, 0);
    for (std::size_t r = 0; r < rank; ++r) delta[r] = lat.coords[j][r] - lat.coords[i][r];
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t c = 0; c < rank; ++c) g_delta[r] += lat.gram[r][c] * delta[c];
    }
    const std::int64_t need = p.lattice_contact_sq();
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      std::int64_t val = 0;
      for (std::size_t r = 0; r < rank; ++r) {
        val += (2 * lat.coords[k][r] - lat.coords[i][r] - lat.coords[j][r]) * g_delta[r];
      }
      if (std::llabs(val) < need) return k;
    }
    return std::nullopt;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    if (std::abs(h.signed_distance(p.centers[k])) < p.radius - eps) return k;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::vector<double>> sampled_directions(int d) {
  std::vector<Direction> dirs;
  if (d == 2) {
    for (int k = 0; k < 240; ++k) {
      const double t = std::numbers::pi * k / 240.0;
      dirs.push_back({std::cos(t), std::sin(t)});
    }
  } else if (d == 3) {
    dirs = geodesic_axes(7);
  } else {
    Rng rng(derive_seed(0x5e9a7ab1eULL, static_cast<std::uint64_t>(d)));
    for (int k = 0; k < 240; ++k) {
      Direction u(static_cast<std::size_t>(d));
      for (auto& x : u) x = rng.normal();
      normalize(u);
      dirs.push_back(std::move(u));
    }
  }
  return dirs;
}

SeparabilityReport total_separability(const Packing& p, const ToleranceConfig& tol) {
  auto validation = validate_packing(p, tol);
  if (!validation.ok()) throw InvalidPacking(std::move(validation.violations));

  const std::size_t n = p.size();
  const double eps = tol.contact;
  SeparabilityReport report;

  std::vector<std::pair<std::size_t, std::size_t>> apart;
  std::vector<Direction> contact_dirs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (classify_pair(p, i, j, tol) != PairRelation::Touching) {
        apart.emplace_back(i, j);
        continue;
      }
      Hyperplane h = tangent_plane(p, i, j);
      if (auto k = tangent_plane_blocker(p, i, j, h, eps)) {
        Certificate cert;
        cert.pair = {static_cast<int>(i), static_cast<int>(j)};
        cert.blocking = static_cast<int>(*k);
        cert.clearance = std::abs(h.signed_distance(p.centers[*k]));
        cert.plane = std::move(h);
        report.status = Status::NotSeparable;
        report.violation = std::move(cert);
        report.witnesses.clear();
        return report;
      }
      Direction u = h.normal;
      canonical_sign(u);
      contact_dirs.push_back(std::move(u));
      report.witnesses.emplace(std::pair{static_cast<int>(i), static_cast<int>(j)}, std::move(h));
    }
  }
  dedupe(contact_dirs);
  if (contact_dirs.size() > 64) contact_dirs.resize(64);

  // Global directions, cheapest first: lattice axes, contact directions.
  std::vector<Slabs> global;
  if (p.exact_lattice || is_digital(p, tol).digital) {
    for (int k = 0; k < p.dim; ++k) {
      Direction e(static_cast<std::size_t>(p.dim), 0.0);
      e[k] = 1.0;
      global.push_back(slab_decomposition(p, std::move(e), eps));
    }
  }
  for (auto& u : contact_dirs) global.push_back(slab_decomposition(p, std::move(u), eps));

  std::vector<Slabs> sampled;
  bool sampled_ready = false;

  for (const auto& [i, j] : apart) {
    const std::pair key{static_cast<int>(i), static_cast<int>(j)};
    std::optional<Hyperplane> found;
    for (const auto& s : global) {
      if ((found = witness_from(s, key.first, key.second))) break;
    }
    if (!found) {
      // Bisector plane, then any free gap along the center direction.
      Hyperplane h = tangent_plane(p, i, j);
      if (plane_clears_all(p, h, eps)) {
        found = std::move(h);
      } else {
        found = witness_from(slab_decomposition(p, unit_difference(p, i, j), eps), key.first, key.second);
      }
    }
    if (!found) {
      if (!sampled_ready) {
        for (auto& u : sampled_directions(p.dim)) sampled.push_back(slab_decomposition(p, std::move(u), eps));
        sampled_ready = true;
      }
      for (const auto& s : sampled) {
        if ((found = witness_from(s, key.first, key.second))) break;
      }
    }
    if (found) {
      report.witnesses.emplace(key, std::move(*found));
    } else {
      report.unresolved.push_back(key);
    }
  }

  report.status = report.unresolved.empty() ? Status::Separable : Status::Unknown;
  return report;
}

SeparabilityReport total_separability(const Packing& p) {
  return total_separability(p, ToleranceConfig::defaults(p.radius));
}

DigitalFit is_digital(const Packing& p, const ToleranceConfig& tol) {
  check_well_formed(p);
  DigitalFit fit;
  const double spacing = 2.0 * p.radius;
  if (p.uses_exact_arithmetic()) {
    const auto& g = p.lattice->gram;
    bool scalar = g.size() == static_cast<std::size_t>(p.dim);
    for (std::size_t r = 0; scalar && r < g.size(); ++r) {
      for (std::size_t c = 0; c < g.size(); ++c) {
        if (g[r][c] != (r == c ? p.lattice_contact_sq() : 0)) {
          scalar = false;
          break;
        }
      }
    }
    if (scalar) {
      fit.digital = true;
      fit.scale = spacing;
      fit.offset = p.centers.front();
      return fit;
    }
  }
  const auto& origin = p.centers.front();
  const double slack = tol.contact / spacing;
  for (const auto& c : p.centers) {
    for (int k = 0; k < p.dim; ++k) {
      const double t = (c[k] - origin[k]) / spacing;
      if (std::abs(t - std::round(t)) > slack) return fit;
    }
  }
  fit.digital = true;
  fit.scale = spacing;
  fit.offset = origin;
  return fit;
}

DigitalFit is_digital(const Packing& p) { return is_digital(p, ToleranceConfig::defaults(p.radius)); }

}  // namespace contactlab::separability
