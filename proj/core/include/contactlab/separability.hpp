#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "contactlab/geometry.hpp"

namespace contactlab::separability {

/// {x : <normal, x> = offset}, with a unit normal.
struct Hyperplane {
  std::vector<double> normal;
  double offset = 0.0;

  [[nodiscard]] double signed_distance(std::span<const double> x) const;
};

enum class Status { Separable, NotSeparable, Unknown };

/// A touching pair whose (unique) tangent plane cuts the interior of a third
/// ball.
struct Certificate {
  std::pair<int, int> pair;
  int blocking = -1;
  Hyperplane plane;
  /// |<normal, c_blocking> - offset|; strictly below r - eps.
  double clearance = 0.0;
};

struct SeparabilityReport {
  Status status = Status::Unknown;
  std::map<std::pair<int, int>, Hyperplane> witnesses;
  std::optional<Certificate> violation;
  std::vector<std::pair<int, int>> unresolved;
};

[[nodiscard]] std::string_view status_name(Status s) noexcept;

/// Tri-state total-separability decision.
///
/// Two tangent balls admit exactly one separating hyperplane: any plane
/// missing both open balls must pass through the tangency point, and the
/// only plane through that point avoiding both interiors is the common
/// tangent plane, normal to the center segment. Touching pairs are therefore
/// decided exactly. Non-touching pairs are witnessed heuristically by
/// searching a fixed, deterministic list of normal directions; when the
/// search is exhausted the verdict is Unknown, never NotSeparable.
[[nodiscard]] SeparabilityReport total_separability(const Packing& p, const ToleranceConfig& tol);
[[nodiscard]] SeparabilityReport total_separability(const Packing& p);

/// True when every ball clears the plane by at least r - eps.
[[nodiscard]] bool plane_clears_all(const Packing& p, const Hyperplane& h, double eps);

/// The fixed direction set used for non-touching pairs in dimension d: 240
/// angles in the plane, the axes of a frequency-7 geodesic icosahedron in
/// 3-space (246 axes), and 240 seeded-random unit vectors above that.
[[nodiscard]] std::vector<std::vector<double>> sampled_directions(int d);

struct DigitalFit {
  bool digital = false;
  double scale = 0.0;
  std::vector<double> offset;
};

/// Detects centers lying on offset + (2r) Z^d, axis-aligned.
[[nodiscard]] DigitalFit is_digital(const Packing& p, const ToleranceConfig& tol);
[[nodiscard]] DigitalFit is_digital(const Packing& p);

}  // namespace contactlab::separability
