#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "contactlab/geometry.hpp"

namespace contactlab::constructors {

/// Point of the fcc lattice as an integer triple with even coordinate sum.
/// The physical center is sqrt(2) times the triple, so nearest neighbours
/// sit at distance 2.
struct FccCoordinate {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend auto operator<=>(const FccCoordinate&, const FccCoordinate&) = default;
  [[nodiscard]] bool in_lattice() const noexcept { return ((x + y + z) % 2) == 0; }
};

/// Triangular-lattice cell a*(2,0) + b*(1,sqrt 3) in integer (a, b) form.
struct HexCell {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend auto operator<=>(const HexCell&, const HexCell&) = default;
};

/// The first n cells of the hexagonal spiral: the origin, then ring 1
/// counter-clockwise from due east, then each ring k >= 2 counter-clockwise
/// from (k, 1 - k), the cell just past its south-east corner.
[[nodiscard]] std::vector<HexCell> hex_spiral_cells(std::int64_t n);

/// Unit disks on the spiral; exact lattice packing with Gram [[4,2],[2,4]].
[[nodiscard]] Packing hex_spiral(std::int64_t n);

/// Square-bipyramid fcc cluster with layers 1^2, 2^2, ..., k^2, ..., 1^2.
[[nodiscard]] std::vector<FccCoordinate> fcc_bipyramid_points(std::int64_t k);
[[nodiscard]] Packing fcc_bipyramid(std::int64_t k);

/// Unit balls at sqrt(2) * points. Throws MalformedInput on parity
/// violations or duplicates.
[[nodiscard]] Packing fcc_cluster(std::span<const FccCoordinate> points);

/// The 12 nearest neighbours of the origin in the fcc lattice.
[[nodiscard]] std::array<FccCoordinate, 12> fcc_neighbors();

}  // namespace contactlab::constructors
