#include "contactlab/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "contactlab/errors.hpp"

namespace contactlab::constructors {

namespace {

// Neighbour offsets in (a, b) coordinates, listed counter-clockwise from
// the direction toward ring corner (0, k) when standing on corner (k, 0).
constexpr std::array<HexCell, 6> kRingSteps{{
    {-1, 1},  // (k,0)   -> (0,k)
    {-1, 0},  // (0,k)   -> (-k,k)
    {0, -1},  // (-k,k)  -> (-k,0)
    {1, -1},  // (-k,0)  -> (0,-k)
    {1, 0},   // (0,-k)  -> (k,-k)
    {0, 1},   // (k,-k)  -> (k,0)
}};

// Ring k in counter-clockwise order starting at its east corner (k, 0).
std::vector<HexCell> ring_from_east(std::int64_t k) {
  std::vector<HexCell> ring;
  ring.reserve(static_cast<std::size_t>(6 * k));
  HexCell c{k, 0};
  for (const auto& step : kRingSteps) {
    for (std::int64_t s = 0; s < k; ++s) {
      ring.push_back(c);
      c.a += step.a;
      c.b += step.b;
    }
  }
  return ring;
}

}  // namespace

std::vector<HexCell> hex_spiral_cells(std::int64_t n) {
  if (n < 1) throw DomainError("hex_spiral requires n >= 1");
  std::vector<HexCell> cells;
  cells.reserve(static_cast<std::size_t>(n));
  cells.push_back({0, 0});
  for (std::int64_t k = 1; static_cast<std::int64_t>(cells.size()) < n; ++k) {
    auto ring = ring_from_east(k);
    // Start one step past the south-east corner (k, -k), so the walk continues
    // from the end of ring k-1. For k = 1 that is the east corner itself.
    std::rotate(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>((5 * k + 1) % (6 * k)), ring.end());
    for (const auto& c : ring) {
      if (static_cast<std::int64_t>(cells.size()) == n) break;
      cells.push_back(c);
    }
  }
  return cells;
}

Packing hex_spiral(std::int64_t n) {
  const auto cells = hex_spiral_cells(n);
  Packing p;
  p.dim = 2;
  p.radius = 1.0;
  p.exact_lattice = true;
  LatticeEmbedding lat;
  lat.gram = {{4, 2}, {2, 4}};
  const double root3 = std::sqrt(3.0);
  for (const auto& c : cells) {
    p.centers.push_back({2.0 * static_cast<double>(c.a) + static_cast<double>(c.b),
                         root3 * static_cast<double>(c.b)});
    lat.coords.push_back({c.a, c.b});
  }
  p.lattice = std::move(lat);
  return p;
}

std::vector<FccCoordinate> fcc_bipyramid_points(std::int64_t k) {
  if (k < 2) throw DomainError("fcc_bipyramid requires k >= 2, got k = " + std::to_string(k));
  // Layer z = +-m holds a (k-m) x (k-m) square spanned by (1,1,0) and
  // (1,-1,0), offset by (m,0,+-m) so that each ball sits in a pocket of
  // four balls of the neighbouring larger layer.
  std::vector<FccCoordinate> pts;
  for (std::int64_t z = -(k - 1); z <= k - 1; ++z) {
    const std::int64_t m = z < 0 ? -z : z;
    const std::int64_t side = k - m;
    for (std::int64_t i = 0; i < side; ++i) {
      for (std::int64_t j = 0; j < side; ++j) {
        pts.push_back({m + i + j, i - j, z});
      }
    }
  }
  return pts;
}

Packing fcc_bipyramid(std::int64_t k) {
  const auto pts = fcc_bipyramid_points(k);
  return fcc_cluster(pts);
}

Packing fcc_cluster(std::span<const FccCoordinate> points) {
  if (points.empty()) throw MalformedInput("fcc cluster needs at least one point");
  std::set<FccCoordinate> seen;
  for (const auto& q : points) {
    if (!q.in_lattice()) {
      throw MalformedInput("fcc point (" + std::to_string(q.x) + "," + std::to_string(q.y) + "," +
                           std::to_string(q.z) + ") has odd coordinate sum");
    }
    if (!seen.insert(q).second) throw MalformedInput("duplicate fcc point");
  }
  Packing p;
  p.dim = 3;
  p.radius = 1.0;
  p.exact_lattice = true;
  LatticeEmbedding lat;
  lat.gram = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  const double s = std::sqrt(2.0);
  for (const auto& q : points) {
    p.centers.push_back({s * static_cast<double>(q.x), s * static_cast<double>(q.y),
                         s * static_cast<double>(q.z)});
    lat.coords.push_back({q.x, q.y, q.z});
  }
  p.lattice = std::move(lat);
  return p;
}

std::array<FccCoordinate, 12> fcc_neighbors() {
  std::array<FccCoordinate, 12> out{};
  std::size_t i = 0;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      out[i++] = {a, b, 0};
      out[i++] = {a, 0, b};
      out[i++] = {0, a, b};
    }
  }
  return out;
}

}  // namespace contactlab::constructors
