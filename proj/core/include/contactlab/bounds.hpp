#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contactlab::bounds {

__extension__ typedef unsigned __int128 uint128;

enum class Kind {
  // exact formulas
  C2,
  C2Parallelogram,
  CZ2,
  CSep2,
  CStar2,
  // upper bounds
  C3General,
  C3Fcc,
  CSep3,
  CZd,
  CSepd,
  UniversalTranslates,
  KissingBased,
  KsNoncongruent,
};

enum class Direction { Exact, Upper, Lower };

struct BoundReport {
  Kind kind{};
  std::int64_t n = 0;
  int d = 0;
  double value_real = 0.0;
  /// Largest integer compatible with the statement: floor for exact
  /// formulas and non-strict caps, one less for strict caps at integral
  /// values.
  std::int64_t value_int = 0;
  Direction direction = Direction::Exact;
  /// Whether the underlying statement is a strict inequality.
  bool strict = false;
  /// For bounds of the form a n - b n^e: the triple (a, b, e).
  std::optional<double> linear_coeff;
  std::optional<double> sublinear_coeff;
  std::optional<double> exponent;
  std::string anchor;
};

struct KissingTable {
  /// k(d) for d in {2, 3, 4, 8, 24}; throws UnsupportedConstant otherwise.
  static std::int64_t kissing_number(int d);
  /// Densest packing density delta_d, known here only for d = 3.
  static double packing_density(int d);
  static bool has_kissing_number(int d) noexcept;
  static bool has_packing_density(int d) noexcept;
};

[[nodiscard]] std::string_view kind_name(Kind k) noexcept;
/// Parses the CLI spelling ("c2", "c3-general", "csepd", ...).
[[nodiscard]] std::optional<Kind> parse_kind(std::string_view s) noexcept;
[[nodiscard]] std::string_view direction_name(Direction d) noexcept;
[[nodiscard]] bool is_exact_kind(Kind k) noexcept;

/// Closed-form exact values: c(n,2), c(K,n,2) for parallelograms, c_Z(n,2),
/// c_sep(n,2) and c*(n,2).
[[nodiscard]] BoundReport exact_formula(Kind kind, std::int64_t n);

[[nodiscard]] BoundReport upper_bound(Kind kind, std::int64_t n, int d);

/// Evaluates either family; dispatches on kind.
[[nodiscard]] BoundReport evaluate(Kind kind, std::int64_t n, int d);

struct OctahedralLower {
  std::int64_t n = 0;
  std::int64_t contacts = 0;
};

/// Square-bipyramid fcc cluster size k(2k^2+1)/3 and its contact count
/// 2k(2k^2-3k+1).
[[nodiscard]] OctahedralLower fcc_octahedral_lower(std::int64_t k);

/// k such that n = k(2k^2+1)/3, if any.
[[nodiscard]] std::optional<std::int64_t> octahedral_index(std::int64_t n) noexcept;

enum class GapMode { Planar, Spatial, SepPlanar, SepSpatial };

/// (a n - c) / n^e with (a, e) = (3, 1/2), (6, 2/3), (2, 1/2), (3, 2/3).
[[nodiscard]] double gap_ratio(std::int64_t n, std::int64_t c, GapMode mode);

struct Table1Row {
  std::int64_t n = 0;
  std::optional<std::int64_t> fcc_lower;
  std::int64_t fcc_upper = 0;
  std::int64_t general_upper = 0;
};

[[nodiscard]] std::vector<Table1Row> table1(std::int64_t n_from, std::int64_t n_to);
/// Header line plus one line per row; empty field when fcc_lower is absent.
[[nodiscard]] std::string table1_csv(const std::vector<Table1Row>& rows);

/// Putatively largest known c(n,3) for 2 <= n <= 19 (conjectural for n >= 6).
/// Search targets only.
[[nodiscard]] std::optional<std::int64_t> putative_largest_c3(std::int64_t n) noexcept;

// Exact integer helpers shared with the digital module.
[[nodiscard]] std::int64_t isqrt(std::int64_t m) noexcept;
/// Smallest r >= 0 with r^k >= m; m >= 0, k >= 1.
[[nodiscard]] std::int64_t ceil_root(uint128 m, int k) noexcept;
/// floor(d n - d n^((d-1)/d)) computed exactly.
[[nodiscard]] std::int64_t cubic_digital_cap(std::int64_t n, int d);

}  // namespace contactlab::bounds
