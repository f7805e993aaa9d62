#pragma once

#include <cstdint>
#include <vector>

#include "contactlab/geometry.hpp"

namespace contactlab::digital {

using Cell = std::vector<std::int64_t>;

/// Facet-connected, non-empty set of lattice cells. Cells are kept sorted
/// lexicographically; construction validates connectivity.
class Polyomino {
 public:
  /// Throws MalformedInput for dim < 2, wrong tuple lengths or duplicate
  /// cells, DomainError for an empty or disconnected cell set.
  Polyomino(int dim, std::vector<Cell> cells);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<Cell>& cells() const noexcept { return cells_; }
  [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
  [[nodiscard]] bool contains(const Cell& c) const;

  /// Box extents (max - min + 1) per axis.
  [[nodiscard]] std::vector<std::int64_t> extents() const;
  /// True iff the cells fill an axis-parallel cube.
  [[nodiscard]] bool is_cube() const;

 private:
  int dim_;
  std::vector<Cell> cells_;
};

/// Number of unordered facet-adjacent cell pairs.
[[nodiscard]] std::int64_t facet_contacts(const Polyomino& poly);

/// 2 d n - 2 facet_contacts: the number of boundary facets.
[[nodiscard]] std::int64_t surface_volume(const Polyomino& poly);

struct IsoQuotient {
  double quotient = 0.0;
  bool satisfied = false;
  /// Exact equality with the cube value (2d)^d.
  bool equality = false;
};

/// svol^d / n^(d-1) against the box-polytope bound (2d)^d, compared exactly
/// in integers.
[[nodiscard]] IsoQuotient iso_quotient_check(const Polyomino& poly);

/// Greedy planar construction: each new cell keeps the bounding box a
/// quasi-square (sides differ by at most one), maximizes the new contacts,
/// ties going to the lowest (row, column). Cells stay in the non-negative
/// quadrant.
[[nodiscard]] Polyomino quasi_square(std::int64_t n);

/// Largest quasi-cube with at most n cells, a quasi-square layer on its
/// largest face, and the remainder as a row on that layer.
[[nodiscard]] Polyomino quasi_cube(std::int64_t n);

/// Unit-diameter balls on the cell centers, exact lattice with Gram = I.
[[nodiscard]] Packing to_digital_packing(const Polyomino& poly);

}  // namespace contactlab::digital
