#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's own formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "contactlab/geometry.hpp"

namespace oracle {

/// Smallest s with s * s >= m.
inline std::int64_t ceil_sqrt(std::int64_t m) {
  std::int64_t s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(m)));
  while (s * s < m) ++s;
  while (s > 0 && (s - 1) * (s - 1) >= m) --s;
  return s;
}

/// Smallest s with s^3 >= m.
inline std::int64_t ceil_cbrt(std::int64_t m) {
  std::int64_t s = static_cast<std::int64_t>(std::cbrt(static_cast<double>(m)));
  while (s * s * s < m) ++s;
  while (s > 0 && (s - 1) * (s - 1) * (s - 1) >= m) --s;
  return s;
}

/// floor(3n - sqrt(12n - 3)).
inline std::int64_t hex_contacts(std::int64_t n) { return 3 * n - ceil_sqrt(12 * n - 3); }
/// floor(2n - 2 sqrt n).
inline std::int64_t square_contacts(std::int64_t n) { return 2 * n - ceil_sqrt(4 * n); }
/// floor(3n - 3 n^(2/3)).
inline std::int64_t cube_cap(std::int64_t n) { return 3 * n - ceil_cbrt(27 * n * n); }

/// Contact count by plain floating-point distances.
inline std::int64_t float_contacts(const contactlab::Packing& p, double eps = 1e-7) {
  std::int64_t c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      double s = 0.0;
      for (int k = 0; k < p.dim; ++k) s += (p.centers[i][k] - p.centers[j][k]) * (p.centers[i][k] - p.centers[j][k]);
      if (std::abs(std::sqrt(s) - 2.0 * p.radius) <= eps) ++c;
    }
  }
  return c;
}

using Cell = std::vector<std::int64_t>;

/// Random facet-connected cell set grown from the origin.
inline std::vector<Cell> random_polyomino(std::mt19937_64& rng, int d, std::size_t size) {
  std::set<Cell> cells{Cell(static_cast<std::size_t>(d), 0)};
  std::vector<Cell> order(cells.begin(), cells.end());
  std::uniform_int_distribution<int> axis(0, d - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  while (cells.size() < size) {
    std::uniform_int_distribution<std::size_t> pick(0, order.size() - 1);
    Cell c = order[pick(rng)];
    c[axis(rng)] += sign(rng) ? 1 : -1;
    if (cells.insert(c).second) order.push_back(c);
  }
  return order;
}

/// Number of cell facets not shared with another cell.
inline std::int64_t boundary_facets(const std::vector<Cell>& cells) {
  const std::set<Cell> s(cells.begin(), cells.end());
  std::int64_t b = 0;
  for (const auto& c : cells) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      for (int sg : {-1, 1}) {
        Cell nb = c;
        nb[k] += sg;
        if (!s.count(nb)) ++b;
      }
    }
  }
  return b;
}

/// Regular tetrahedron with edge 2 centered at the origin.
inline contactlab::Packing tetrahedron() {
  const double a = 1.0 / std::sqrt(2.0);
  contactlab::Packing p;
  p.dim = 3;
  p.radius = 1.0;
  p.centers = {{a, a, a}, {a, -a, -a}, {-a, a, -a}, {-a, -a, a}};
  return p;
}

/// Regular octahedron with edge 2.
inline contactlab::Packing octahedron() {
  const double s = std::sqrt(2.0);
  contactlab::Packing p;
  p.dim = 3;
  p.radius = 1.0;
  p.centers = {{s, 0, 0}, {0, s, 0}, {0, 0, s}, {-s, 0, 0}, {0, -s, 0}, {0, 0, -s}};
  return p;
}

/// Volume of the union of two balls of radius R whose centers are dist apart.
inline double two_ball_union(double r, double dist) {
  const double ball = 4.0 / 3.0 * std::numbers::pi * r * r * r;
  if (dist >= 2.0 * r) return 2.0 * ball;
  const double lens = std::numbers::pi * (4.0 * r + dist) * (2.0 * r - dist) * (2.0 * r - dist) / 12.0;
  return 2.0 * ball - lens;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Cayley-Menger determinant of k points with the given squared distances.
/// k points embed in dimension k - 2 only if it vanishes.
inline double cayley_menger(const std::vector<std::vector<double>>& sq) {
  const std::size_t k = sq.size();
  std::vector<std::vector<double>> m(k + 1, std::vector<double>(k + 1, 1.0));
  m[0][0] = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i + 1][j + 1] = sq[i][j];
  }
  return determinant(m);
}

/// Random proper rotation in 3-space (QR of a Gaussian matrix).
inline std::vector<std::vector<double>> random_rotation(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> q(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d)));
  for (auto& row : q) {
    for (auto& x : row) x = g(rng);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += q[i][k] * q[j][k];
      for (int k = 0; k < d; ++k) q[i][k] -= dot * q[j][k];
    }
    double len = 0.0;
    for (int k = 0; k < d; ++k) len += q[i][k] * q[i][k];
    len = std::sqrt(len);
    for (int k = 0; k < d; ++k) q[i][k] /= len;
  }
  return q;
}

inline contactlab::Packing transformed(const contactlab::Packing& p, const std::vector<std::vector<double>>& rot,
                                       const std::vector<double>& shift) {
  contactlab::Packing out = p;
  out.exact_lattice = false;
  out.lattice.reset();
  for (auto& c : out.centers) {
    std::vector<double> x(c.size(), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t k = 0; k < c.size(); ++k) x[i] += rot[i][k] * c[k];
      x[i] += shift[i];
    }
    c = x;
  }
  return out;
}

/// Sorted pairwise distances.
template <class Coords>
std::vector<double> distance_multiset(const Coords& c) {
  std::vector<double> d;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += (c[i][k] - c[j][k]) * (c[i][k] - c[j][k]);
      d.push_back(std::sqrt(s));
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace oracle
