#include "contactlab/digital.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>

#include "contactlab/bounds.hpp"
#include "contactlab/errors.hpp"

namespace contactlab::digital {

using bounds::uint128;

Polyomino::Polyomino(int dim, std::vector<Cell> cells) : dim_(dim), cells_(std::move(cells)) {
  if (dim_ < 2) throw MalformedInput("polyomino dimension must be at least 2");
  if (cells_.empty()) throw DomainError("polyomino must be non-empty");
  for (const auto& c : cells_) {
    if (c.size() != static_cast<std::size_t>(dim_)) {
      throw MalformedInput("polyomino cell has the wrong number of coordinates");
    }
  }
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
    throw MalformedInput("polyomino has duplicate cells");
  }

  std::vector<bool> seen(cells_.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    Cell nb = cells_[at];
    for (int k = 0; k < dim_; ++k) {
      for (int s : {-1, 1}) {
        nb[k] += s;
        auto it = std::lower_bound(cells_.begin(), cells_.end(), nb);
        if (it != cells_.end() && *it == nb) {
          const auto idx = static_cast<std::size_t>(it - cells_.begin());
          if (!seen[idx]) {
            seen[idx] = true;
            ++reached;
            queue.push_back(idx);
          }
        }
        nb[k] -= s;
      }
    }
  }
  if (reached != cells_.size()) throw DomainError("polyomino is not facet-connected");
}

bool Polyomino::contains(const Cell& c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

std::vector<std::int64_t> Polyomino::extents() const {
  std::vector<std::int64_t> lo(cells_.front()), hi(cells_.front());
  for (const auto& c : cells_) {
    for (int k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
  std::vector<std::int64_t> ext(static_cast<std::size_t>(dim_));
  for (int k = 0; k < dim_; ++k) ext[k] = hi[k] - lo[k] + 1;
  return ext;
}

bool Polyomino::is_cube() const {
  const auto ext = extents();
  std::int64_t vol = 1;
  for (auto e : ext) {
    if (e != ext.front()) return false;
    vol *= e;
  }
  return vol == static_cast<std::int64_t>(cells_.size());
}

std::int64_t facet_contacts(const Polyomino& poly) {
  std::int64_t count = 0;
  for (const auto& c : poly.cells()) {
    Cell nb = c;
    for (int k = 0; k < poly.dim(); ++k) {
      ++nb[k];
      if (poly.contains(nb)) ++count;
      --nb[k];
    }
  }
  return count;
}

std::int64_t surface_volume(const Polyomino& poly) {
  return 2 * poly.dim() * static_cast<std::int64_t>(poly.size()) - 2 * facet_contacts(poly);
}

namespace {

std::optional<uint128> pow_checked(uint128 base, int k) {
  uint128 r = 1;
  for (int i = 0; i < k; ++i) {
    if (base != 0 && r > static_cast<uint128>(-1) / base) return std::nullopt;
    r *= base;
  }
  return r;
}

}  // namespace

IsoQuotient iso_quotient_check(const Polyomino& poly) {
  const int d = poly.dim();
  const auto s = surface_volume(poly);
  const auto n = static_cast<std::int64_t>(poly.size());
  IsoQuotient out;
  out.quotient = std::pow(static_cast<double>(s), d) / std::pow(static_cast<double>(n), d - 1);

  auto lhs = pow_checked(static_cast<uint128>(s), d);
  auto cube = pow_checked(static_cast<uint128>(2 * d), d);
  auto vol = pow_checked(static_cast<uint128>(n), d - 1);
  if (lhs && cube && vol && (*vol == 0 || *cube <= static_cast<uint128>(-1) / *vol)) {
    const uint128 rhs = *cube * *vol;
    out.satisfied = *lhs >= rhs;
    out.equality = *lhs == rhs;
  } else {
    const long double bound = std::pow(static_cast<long double>(2 * d), d);
    const long double q = std::pow(static_cast<long double>(s), d) /
                          std::pow(static_cast<long double>(n), d - 1);
    out.satisfied = q >= bound;
    out.equality = false;
  }
  return out;
}

namespace {

// Occupancy grid over [0, side)^2 for the greedy planar builder.
class Grid {
 public:
  explicit Grid(std::int64_t side) : side_(side), bits_(static_cast<std::size_t>(side * side), false) {}
  [[nodiscard]] bool at(std::int64_t r, std::int64_t c) const {
    if (r < 0 || c < 0 || r >= side_ || c >= side_) return false;
    return bits_[static_cast<std::size_t>(r * side_ + c)];
  }
  void set(std::int64_t r, std::int64_t c) { bits_[static_cast<std::size_t>(r * side_ + c)] = true; }

 private:
  std::int64_t side_;
  std::vector<bool> bits_;
};

}  // namespace

Polyomino quasi_square(std::int64_t n) {
  if (n < 1) throw DomainError("quasi_square requires n >= 1");
  const std::int64_t side = bounds::isqrt(n) + 3;
  Grid grid(side);
  std::vector<Cell> cells{{0, 0}};
  grid.set(0, 0);
  std::int64_t rows = 1;
  std::int64_t cols = 1;
  while (static_cast<std::int64_t>(cells.size()) < n) {
    int best_gain = -1;
    std::int64_t best_r = 0;
    std::int64_t best_c = 0;
    for (std::int64_t r = 0; r <= rows; ++r) {
      for (std::int64_t c = 0; c <= cols; ++c) {
        if (grid.at(r, c)) continue;
        const std::int64_t nr = std::max(rows, r + 1);
        const std::int64_t nc = std::max(cols, c + 1);
        if (nr - nc > 1 || nc - nr > 1) continue;
        const int gain = grid.at(r - 1, c) + grid.at(r + 1, c) + grid.at(r, c - 1) + grid.at(r, c + 1);
        if (gain == 0) continue;
        if (gain > best_gain) {  // row-major scan keeps the lowest (row, column) on ties
          best_gain = gain;
          best_r = r;
          best_c = c;
        }
      }
    }
    if (best_gain < 0) throw std::logic_error("quasi_square: no admissible cell");
    grid.set(best_r, best_c);
    cells.push_back({best_r, best_c});
    rows = std::max(rows, best_r + 1);
    cols = std::max(cols, best_c + 1);
  }
  return Polyomino(2, std::move(cells));
}

Polyomino quasi_cube(std::int64_t n) {
  if (n < 1) throw DomainError("quasi_cube requires n >= 1");
  std::int64_t k = 1;
  while ((k + 1) * (k + 1) * (k + 1) <= n) ++k;

  // Growth order x, then y, then z: k^3 -> (k+1)k^2 -> (k+1)^2 k.
  std::array<std::int64_t, 3> ext{k, k, k};
  int grow_axis = 0;
  if ((k + 1) * (k + 1) * k <= n) {
    ext = {k + 1, k + 1, k};
    grow_axis = 2;
  } else if ((k + 1) * k * k <= n) {
    ext = {k + 1, k, k};
    grow_axis = 1;
  }

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n));
  for (std::int64_t x = 0; x < ext[0]; ++x) {
    for (std::int64_t y = 0; y < ext[1]; ++y) {
      for (std::int64_t z = 0; z < ext[2]; ++z) cells.push_back({x, y, z});
    }
  }

  const std::int64_t rest = n - ext[0] * ext[1] * ext[2];
  if (rest > 0) {
    // The layer's column direction goes along the longer face axis.
    std::array<int, 2> face{};
    int f = 0;
    for (int a = 0; a < 3; ++a) {
      if (a != grow_axis) face[f++] = a;
    }
    const int col_axis = ext[face[0]] >= ext[face[1]] ? face[0] : face[1];
    const int row_axis = col_axis == face[0] ? face[1] : face[0];
    const auto layer = quasi_square(rest);
    for (const auto& rc : layer.cells()) {
      if (rc[0] >= ext[row_axis] || rc[1] >= ext[col_axis]) {
        throw std::logic_error("quasi_cube: layer does not fit on the face");
      }
      Cell c(3, 0);
      c[grow_axis] = ext[grow_axis];
      c[row_axis] = rc[0];
      c[col_axis] = rc[1];
      cells.push_back(std::move(c));
    }
  }
  return Polyomino(3, std::move(cells));
}

Packing to_digital_packing(const Polyomino& poly) {
  Packing p;
  p.dim = poly.dim();
  p.radius = 0.5;
  p.exact_lattice = true;
  LatticeEmbedding lat;
  lat.gram.assign(static_cast<std::size_t>(p.dim), std::vector<std::int64_t>(static_cast<std::size_t>(p.dim), 0));
  for (int k = 0; k < p.dim; ++k) lat.gram[k][k] = 1;
  for (const auto& c : poly.cells()) {
    Point x(c.size());
    std::transform(c.begin(), c.end(), x.begin(), [](std::int64_t v) { return static_cast<double>(v); });
    p.centers.push_back(std::move(x));
    lat.coords.push_back(c);
  }
  p.lattice = std::move(lat);
  return p;
}

}  // namespace contactlab::digital
