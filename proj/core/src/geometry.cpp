#include "contactlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "contactlab/errors.hpp"
#include "contactlab/random.hpp"

namespace contactlab {

std::int64_t LatticeEmbedding::squared_distance(std::size_t i, std::size_t j) const {
  const auto& a = coords[i];
  const auto& b = coords[j];
  const std::size_t rank = a.size();
  std::int64_t q = 0;
  for (std::size_t r = 0; r < rank; ++r) {
    const std::int64_t dr = a[r] - b[r];
    if (dr == 0) continue;
    for (std::size_t c = 0; c < rank; ++c) {
      q += dr * gram[r][c] * (a[c] - b[c]);
    }
  }
  return q;
}

std::int64_t Packing::lattice_contact_sq() const {
  const double sq = 4.0 * radius * radius;
  return std::llround(sq);
}

void ToleranceConfig::check() const {
  if (!(contact > 0.0) || !(overlap > 0.0)) {
    throw DomainError("tolerances must be positive");
  }
  if (overlap > contact) {
    throw DomainError("overlap tolerance must not exceed contact tolerance");
  }
}

std::vector<int> ContactGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [i, j] : edges) {
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  return deg;
}

bool ContactGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::pair{i, j});
}

namespace {

std::string describe(const std::vector<Violation>& v) {
  std::ostringstream os;
  os << "packing has " << v.size() << " overlapping pair(s)";
  if (!v.empty()) {
    os << ", first (" << v.front().i << "," << v.front().j << ") at distance " << v.front().distance;
  }
  return os.str();
}

}  // namespace

InvalidPacking::InvalidPacking(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

void check_well_formed(const Packing& p) {
  if (p.dim < 2) throw MalformedInput("packing dimension must be at least 2");
  if (!(p.radius > 0.0) || !std::isfinite(p.radius)) {
    throw MalformedInput("packing radius must be a positive finite number");
  }
  if (p.centers.empty()) throw MalformedInput("packing has no centers");
  for (std::size_t i = 0; i < p.centers.size(); ++i) {
    if (p.centers[i].size() != static_cast<std::size_t>(p.dim)) {
      std::ostringstream os;
      os << "center " << i << " has " << p.centers[i].size() << " coordinates, expected " << p.dim;
      throw MalformedInput(os.str());
    }
    for (double x : p.centers[i]) {
      if (!std::isfinite(x)) throw MalformedInput("center coordinates must be finite");
    }
  }
  if (p.exact_lattice && p.lattice) {
    const auto& lat = *p.lattice;
    if (lat.coords.size() != p.centers.size()) {
      throw MalformedInput("lattice coordinate count differs from center count");
    }
    const std::size_t rank = lat.gram.size();
    for (const auto& row : lat.gram) {
      if (row.size() != rank) throw MalformedInput("lattice Gram matrix must be square");
    }
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t c = 0; c < rank; ++c) {
        if (lat.gram[r][c] != lat.gram[c][r]) throw MalformedInput("lattice Gram matrix must be symmetric");
      }
    }
    for (const auto& u : lat.coords) {
      if (u.size() != rank) throw MalformedInput("lattice coordinates must match the Gram matrix rank");
    }
    const double sq = 4.0 * p.radius * p.radius;
    if (std::abs(sq - std::round(sq)) > 1e-12) {
      throw MalformedInput("exact lattice packings need an integral squared contact distance");
    }
  }
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

PairRelation classify_pair(const Packing& p, std::size_t i, std::size_t j, const ToleranceConfig& tol) {
  if (p.uses_exact_arithmetic()) {
    const std::int64_t q = p.lattice->squared_distance(i, j);
    const std::int64_t contact = p.lattice_contact_sq();
    if (q < contact) return PairRelation::Overlapping;
    return q == contact ? PairRelation::Touching : PairRelation::Apart;
  }
  const double d = distance(p.centers[i], p.centers[j]);
  const double target = 2.0 * p.radius;
  if (d < target - tol.overlap) return PairRelation::Overlapping;
  return std::abs(d - target) <= tol.contact ? PairRelation::Touching : PairRelation::Apart;
}

ValidationResult validate_packing(const Packing& p, const ToleranceConfig& tol) {
  check_well_formed(p);
  tol.check();
  ValidationResult result;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (classify_pair(p, i, j, tol) == PairRelation::Overlapping) {
        result.violations.push_back(
            {static_cast<int>(i), static_cast<int>(j), distance(p.centers[i], p.centers[j])});
      }
    }
  }
  return result;
}

ValidationResult validate_packing(const Packing& p) {
  return validate_packing(p, ToleranceConfig::defaults(p.radius));
}

ContactGraph contact_graph(const Packing& p, const ToleranceConfig& tol) {
  auto validation = validate_packing(p, tol);
  if (!validation.ok()) throw InvalidPacking(std::move(validation.violations));
  ContactGraph g;
  g.n = static_cast<int>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (classify_pair(p, i, j, tol) == PairRelation::Touching) {
        g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return g;
}

ContactGraph contact_graph(const Packing& p) { return contact_graph(p, ToleranceConfig::defaults(p.radius)); }

double unit_ball_volume(int d) {
  if (d < 0) throw DomainError("dimension must be non-negative");
  double even = 1.0;  // omega_0
  double odd = 2.0;   // omega_1
  if (d == 0) return even;
  if (d == 1) return odd;
  double w = (d % 2 == 0) ? even : odd;
  for (int k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) {
    w *= 2.0 * std::numbers::pi / k;
  }
  return w;
}

namespace {

constexpr std::int64_t kChunk = 1 << 16;

std::int64_t count_hits(const Packing& p, double inflated, const std::vector<double>& lo,
                        const std::vector<double>& hi, std::int64_t chunk, std::int64_t count,
                        std::uint64_t seed) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
  const auto d = static_cast<std::size_t>(p.dim);
  const double r2 = inflated * inflated;
  std::vector<double> x(d);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < count; ++s) {
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.uniform(lo[k], hi[k]);
    for (const auto& c : p.centers) {
      double acc = 0.0;
      for (std::size_t k = 0; k < d && acc <= r2; ++k) {
        const double t = x[k] - c[k];
        acc += t * t;
      }
      if (acc <= r2) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

}  // namespace

VolumeEstimate parallel_volume_estimate(const Packing& p, double lambda, std::int64_t samples,
                                        std::uint64_t seed, int workers) {
  check_well_formed(p);
  if (!(lambda > 0.0)) throw DomainError("outer radius lambda must be positive");
  if (samples < 1) throw DomainError("at least one sample is required");

  const auto d = static_cast<std::size_t>(p.dim);
  const double inflated = (1.0 + lambda) * p.radius;
  std::vector<double> lo(d, INFINITY), hi(d, -INFINITY);
  for (const auto& c : p.centers) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], c[k] - inflated);
      hi[k] = std::max(hi[k], c[k] + inflated);
    }
  }
  double box = 1.0;
  for (std::size_t k = 0; k < d; ++k) box *= hi[k] - lo[k];

  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
  auto run = [&](std::int64_t first, std::int64_t stride) {
    for (std::int64_t c = first; c < chunks; c += stride) {
      const std::int64_t count = std::min(kChunk, samples - c * kChunk);
      hits[static_cast<std::size_t>(c)] = count_hits(p, inflated, lo, hi, c, count, seed);
    }
  };
  const int w = std::max(1, std::min<int>(workers, static_cast<int>(chunks)));
  if (w == 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) pool.emplace_back(run, t, w);
  }

  VolumeEstimate out;
  out.samples = samples;
  out.box_volume = box;
  for (auto h : hits) out.hits += h;
  const double frac = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.estimate = box * frac;
  out.standard_error = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return out;
}

}  // namespace contactlab
