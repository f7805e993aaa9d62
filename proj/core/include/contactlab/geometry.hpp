#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace contactlab {

using Point = std::vector<double>;

/// Integer lattice coordinates attached to a packing built on a lattice.
///
/// The physical squared distance between centers i and j is exactly
/// (u_i - u_j)^T G (u_i - u_j), where u are the integer coordinates and G is
/// the integer Gram matrix. Contact and overlap decisions on such packings
/// are made in integer arithmetic and never consult a tolerance.
struct LatticeEmbedding {
  std::vector<std::vector<std::int64_t>> gram;
  std::vector<std::vector<std::int64_t>> coords;

  [[nodiscard]] std::int64_t squared_distance(std::size_t i, std::size_t j) const;
};

/// A finite family of congruent balls: common radius plus center list.
struct Packing {
  int dim = 0;
  double radius = 1.0;
  std::vector<Point> centers;
  bool exact_lattice = false;
  std::optional<LatticeEmbedding> lattice;

  [[nodiscard]] std::size_t size() const noexcept { return centers.size(); }
  /// True when contact decisions go through the integer lattice path.
  [[nodiscard]] bool uses_exact_arithmetic() const noexcept {
    return exact_lattice && lattice.has_value();
  }
  /// (2r)^2 as an integer; only meaningful for exact packings.
  [[nodiscard]] std::int64_t lattice_contact_sq() const;
};

/// Absolute tolerances. A pair touches iff |dist - 2r| <= contact and
/// overlaps iff dist < 2r - overlap. overlap <= contact is required.
struct ToleranceConfig {
  double contact = 1e-9;
  double overlap = 1e-9;

  static ToleranceConfig defaults(double radius) {
    return ToleranceConfig{1e-9 * radius, 1e-9 * radius};
  }
  /// Throws DomainError if the invariants do not hold.
  void check() const;
};

struct ContactGraph {
  int n = 0;
  /// i < j, sorted lexicographically, no duplicates.
  std::vector<std::pair<int, int>> edges;

  [[nodiscard]] std::size_t contact_count() const noexcept { return edges.size(); }
  [[nodiscard]] std::vector<int> degrees() const;
  [[nodiscard]] bool has_edge(int i, int j) const;
};

struct Violation {
  int i = 0;
  int j = 0;
  double distance = 0.0;
};

struct ValidationResult {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Raised by operations that require a valid (non-overlapping) packing.
class InvalidPacking : public std::runtime_error {
 public:
  explicit InvalidPacking(std::vector<Violation> violations);
  [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

enum class PairRelation { Overlapping, Touching, Apart };

/// Throws MalformedInput for dim < 2, non-positive radius, empty center list,
/// ragged coordinates, or an inconsistent lattice block.
void check_well_formed(const Packing& p);

[[nodiscard]] double distance(std::span<const double> a, std::span<const double> b);

[[nodiscard]] PairRelation classify_pair(const Packing& p, std::size_t i, std::size_t j,
                                         const ToleranceConfig& tol);

[[nodiscard]] ValidationResult validate_packing(const Packing& p, const ToleranceConfig& tol);
[[nodiscard]] ValidationResult validate_packing(const Packing& p);

[[nodiscard]] ContactGraph contact_graph(const Packing& p, const ToleranceConfig& tol);
[[nodiscard]] ContactGraph contact_graph(const Packing& p);

/// Volume of the d-dimensional unit ball, via omega_d = omega_{d-2} * 2 pi / d.
[[nodiscard]] double unit_ball_volume(int d);

struct VolumeEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  double box_volume = 0.0;
  std::int64_t samples = 0;
  std::int64_t hits = 0;
};

/// Hit-or-miss Monte Carlo estimate of the volume of the union of the balls
/// inflated to radius (1 + lambda) * radius, sampled over their common
/// axis-aligned bounding box.
///
/// The sample index space is cut into fixed-size chunks, each with its own
/// stream derived from (seed, chunk index), so the result depends only on
/// (p, lambda, samples, seed) and not on the worker count.
[[nodiscard]] VolumeEstimate parallel_volume_estimate(const Packing& p, double lambda,
                                                      std::int64_t samples, std::uint64_t seed,
                                                      int workers = 1);

}  // namespace contactlab
