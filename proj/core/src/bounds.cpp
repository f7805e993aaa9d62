#include "contactlab/bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "contactlab/errors.hpp"
#include "contactlab/geometry.hpp"

namespace contactlab::bounds {

namespace {

struct KindInfo {
  Kind kind;
  std::string_view name;
};

constexpr std::array kKindNames{
    KindInfo{Kind::C2, "c2"},
    KindInfo{Kind::C2Parallelogram, "c2-parallelogram"},
    KindInfo{Kind::CZ2, "cz2"},
    KindInfo{Kind::CSep2, "csep2"},
    KindInfo{Kind::CStar2, "cstar2"},
    KindInfo{Kind::C3General, "c3-general"},
    KindInfo{Kind::C3Fcc, "c3-fcc"},
    KindInfo{Kind::CSep3, "csep3"},
    KindInfo{Kind::CZd, "czd"},
    KindInfo{Kind::CSepd, "csepd"},
    KindInfo{Kind::UniversalTranslates, "universal-translates"},
    KindInfo{Kind::KissingBased, "kissing-based"},
    KindInfo{Kind::KsNoncongruent, "ks-noncongruent"},
};

// The two decimal constants are used exactly as published; the fcc constant
// 3 * cbrt(18 pi) / pi is evaluated in double precision.
constexpr double kGeneral3dCoeff = 0.926;
constexpr double kSeparable3dCoeff = 1.346;

double fcc_coeff() { return 3.0 * std::cbrt(18.0 * std::numbers::pi) / std::numbers::pi; }

std::int64_t cap_of(double value, bool strict) {
  const double f = std::floor(value);
  auto v = static_cast<std::int64_t>(f);
  if (strict && f == value) --v;
  return v;
}

void require_n(std::int64_t n, std::int64_t min, std::string_view what) {
  if (n < min) {
    std::ostringstream os;
    os << what << " requires n >= " << min << ", got n = " << n;
    throw DomainError(os.str());
  }
}

void require_d(bool ok, Kind kind, int d, std::string_view need) {
  if (!ok) {
    std::ostringstream os;
    os << "no constant for " << kind_name(kind) << " in dimension d = " << d << " (" << need << ")";
    throw UnsupportedConstant(os.str());
  }
}

std::optional<uint128> checked_pow(uint128 base, int k) {
  uint128 r = 1;
  for (int i = 0; i < k; ++i) {
    if (base != 0 && r > static_cast<uint128>(-1) / base) return std::nullopt;
    r *= base;
  }
  return r;
}

BoundReport sublinear_upper(Kind kind, std::int64_t n, int d, double a, double b, double e,
                            bool strict, std::string anchor) {
  BoundReport r;
  r.kind = kind;
  r.n = n;
  r.d = d;
  r.direction = Direction::Upper;
  r.strict = strict;
  r.linear_coeff = a;
  r.sublinear_coeff = b;
  r.exponent = e;
  const auto nn = static_cast<double>(n);
  r.value_real = a * nn - b * std::pow(nn, e);
  r.value_int = cap_of(r.value_real, strict);
  r.anchor = std::move(anchor);
  return r;
}

}  // namespace

std::int64_t KissingTable::kissing_number(int d) {
  switch (d) {
    case 2: return 6;
    case 3: return 12;
    case 4: return 24;
    case 8: return 240;
    case 24: return 196560;
    default: break;
  }
  throw UnsupportedConstant("kissing number k(" + std::to_string(d) + ") is not tabulated");
}

double KissingTable::packing_density(int d) {
  if (d == 3) return std::numbers::pi / std::sqrt(18.0);
  throw UnsupportedConstant("packing density delta_" + std::to_string(d) + " is not tabulated");
}

bool KissingTable::has_kissing_number(int d) noexcept {
  return d == 2 || d == 3 || d == 4 || d == 8 || d == 24;
}

bool KissingTable::has_packing_density(int d) noexcept { return d == 3; }

std::string_view kind_name(Kind k) noexcept {
  for (const auto& info : kKindNames) {
    if (info.kind == k) return info.name;
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view s) noexcept {
  for (const auto& info : kKindNames) {
    if (info.name == s) return info.kind;
  }
  return std::nullopt;
}

std::string_view direction_name(Direction d) noexcept {
  switch (d) {
    case Direction::Exact: return "exact";
    case Direction::Upper: return "upper";
    case Direction::Lower: return "lower";
  }
  return "unknown";
}

bool is_exact_kind(Kind k) noexcept {
  return k == Kind::C2 || k == Kind::C2Parallelogram || k == Kind::CZ2 || k == Kind::CSep2 ||
         k == Kind::CStar2;
}

std::int64_t isqrt(std::int64_t m) noexcept {
  if (m <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  return r;
}

std::int64_t ceil_root(uint128 m, int k) noexcept {
  if (m == 0) return 0;
  if (k == 1) return static_cast<std::int64_t>(m);
  // Largest candidate whose k-th power can exceed m.
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  while (true) {
    auto p = checked_pow(static_cast<uint128>(hi), k);
    if (!p || *p >= m) break;
    hi *= 2;
  }
  // Invariant: lo^k < m <= hi^k.
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    auto p = checked_pow(static_cast<uint128>(mid), k);
    if (!p || *p >= m) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::int64_t cubic_digital_cap(std::int64_t n, int d) {
  if (n < 1 || d < 1) throw DomainError("cubic_digital_cap needs n >= 1 and d >= 1");
  // floor(d n - d n^((d-1)/d)) = d n - ceil((d^d n^(d-1))^(1/d)).
  auto dd = checked_pow(static_cast<uint128>(d), d);
  auto nd = checked_pow(static_cast<uint128>(n), d - 1);
  if (dd && nd && (*nd == 0 || *dd <= static_cast<uint128>(-1) / *nd)) {
    return static_cast<std::int64_t>(d) * n - ceil_root(*dd * *nd, d);
  }
  const long double nn = n;
  const long double v = d * nn - d * std::pow(nn, static_cast<long double>(d - 1) / d);
  return static_cast<std::int64_t>(std::floor(v));
}

BoundReport exact_formula(Kind kind, std::int64_t n) {
  BoundReport r;
  r.kind = kind;
  r.n = n;
  r.d = 2;
  r.direction = Direction::Exact;
  const auto nn = static_cast<double>(n);
  switch (kind) {
    case Kind::C2:
      require_n(n, 2, "c(n,2)");
      r.value_real = 3.0 * nn - std::sqrt(12.0 * nn - 3.0);
      r.value_int = 3 * n - ceil_root(static_cast<uint128>(12 * n - 3), 2);
      r.anchor = "harborth: c(n,2) = floor(3n - sqrt(12n - 3))";
      break;
    case Kind::C2Parallelogram:
      require_n(n, 2, "c(K,n,2) for a parallelogram");
      r.value_real = 4.0 * nn - std::sqrt(28.0 * nn - 12.0);
      r.value_int = 4 * n - ceil_root(static_cast<uint128>(28 * n - 12), 2);
      r.anchor = "brass: c(K,n,2) = floor(4n - sqrt(28n - 12)) for parallelograms";
      break;
    case Kind::CZ2:
    case Kind::CSep2:
      require_n(n, 2, kind == Kind::CZ2 ? "c_Z(n,2)" : "c_sep(n,2)");
      r.value_real = 2.0 * nn - 2.0 * std::sqrt(nn);
      r.value_int = 2 * n - ceil_root(static_cast<uint128>(4 * n), 2);
      r.anchor = kind == Kind::CZ2 ? "digital planar: c_Z(n,2) = floor(2n - 2 sqrt(n))"
                                   : "separable planar: c_sep(n,2) = floor(2n - 2 sqrt(n))";
      break;
    case Kind::CStar2:
      require_n(n, 3, "c*(n,2)");
      r.value_real = static_cast<double>(3 * n - 6);
      r.value_int = 3 * n - 6;
      r.anchor = "circle packing theorem: c*(n,2) = 3n - 6";
      break;
    default:
      throw UnsupportedConstant(std::string(kind_name(kind)) + " is not an exact formula");
  }
  return r;
}

BoundReport upper_bound(Kind kind, std::int64_t n, int d) {
  require_n(n, 2, kind_name(kind));
  switch (kind) {
    case Kind::C3General:
      require_d(d == 3, kind, d, "d = 3 only");
      return sublinear_upper(kind, n, d, 6.0, kGeneral3dCoeff, 2.0 / 3.0, true,
                             "general 3-space: c(n,3) < 6n - 0.926 n^(2/3)");
    case Kind::C3Fcc:
      require_d(d == 3, kind, d, "d = 3 only");
      return sublinear_upper(kind, n, d, 6.0, fcc_coeff(), 2.0 / 3.0, true,
                             "fcc lattice: c_fcc(n) < 6n - (3 cbrt(18 pi) / pi) n^(2/3)");
    case Kind::CSep3:
      require_d(d == 3, kind, d, "d = 3 only");
      return sublinear_upper(kind, n, d, 3.0, kSeparable3dCoeff, 2.0 / 3.0, true,
                             "totally separable 3-space: c_sep(n,3) < 3n - 1.346 n^(2/3)");
    case Kind::CZd: {
      require_d(d >= 2, kind, d, "d >= 2");
      auto r = sublinear_upper(kind, n, d, d, d, (d - 1.0) / d, false,
                               "digital d-space: c_Z(n,d) <= floor(dn - d n^((d-1)/d))");
      r.value_int = cubic_digital_cap(n, d);
      return r;
    }
    case Kind::CSepd: {
      require_d(d >= 4, kind, d, "d >= 4");
      const double b = 1.0 / (2.0 * std::pow(static_cast<double>(d), (d - 1.0) / 2.0));
      return sublinear_upper(kind, n, d, d, b, (d - 1.0) / d, false,
                             "totally separable d-space: c_sep(n,d) <= dn - n^((d-1)/d) / (2 d^((d-1)/2))");
    }
    case Kind::UniversalTranslates: {
      require_d(d >= 3, kind, d, "d >= 3");
      const double a = (std::pow(3.0, d) - 1.0) / 2.0;
      const double b = std::pow(unit_ball_volume(d), 1.0 / d) / std::pow(2.0, d + 1);
      return sublinear_upper(kind, n, d, a, b, (d - 1.0) / d, false,
                             "translates of a convex body: (3^d - 1)/2 n - (omega_d^(1/d) / 2^(d+1)) n^((d-1)/d)");
    }
    case Kind::KissingBased: {
      require_d(d >= 3 && KissingTable::has_kissing_number(d) && KissingTable::has_packing_density(d),
                kind, d, "needs tabulated k(d) and delta_d; d = 3 only");
      const double a = 0.5 * static_cast<double>(KissingTable::kissing_number(d));
      const double delta = KissingTable::packing_density(d);
      const double b = std::pow(delta, -(d - 1.0) / d) / std::pow(2.0, d);
      return sublinear_upper(kind, n, d, a, b, (d - 1.0) / d, true,
                             "kissing/density: c(n,d) < k(d)/2 n - 2^-d delta_d^(-(d-1)/d) n^((d-1)/d)");
    }
    case Kind::KsNoncongruent: {
      require_d(d == 3, kind, d, "d = 3 only");
      BoundReport r;
      r.kind = kind;
      r.n = n;
      r.d = d;
      r.direction = Direction::Upper;
      r.strict = true;
      r.linear_coeff = 4.0 + 2.0 * std::sqrt(3.0);
      r.value_real = *r.linear_coeff * static_cast<double>(n);
      r.value_int = cap_of(r.value_real, true);
      r.anchor = "kuperberg-schramm: c*(n,3) < (4 + 2 sqrt 3) n";
      return r;
    }
    default:
      throw UnsupportedConstant(std::string(kind_name(kind)) + " is not an upper bound");
  }
}

BoundReport evaluate(Kind kind, std::int64_t n, int d) {
  if (is_exact_kind(kind)) {
    if (d != 2) {
      throw UnsupportedConstant(std::string(kind_name(kind)) + " is a planar formula; d must be 2");
    }
    return exact_formula(kind, n);
  }
  return upper_bound(kind, n, d);
}

OctahedralLower fcc_octahedral_lower(std::int64_t k) {
  if (k < 2) throw DomainError("octahedral lower bound requires k >= 2, got k = " + std::to_string(k));
  return {k * (2 * k * k + 1) / 3, 2 * k * (2 * k * k - 3 * k + 1)};
}

std::optional<std::int64_t> octahedral_index(std::int64_t n) noexcept {
  for (std::int64_t k = 2;; ++k) {
    const std::int64_t m = k * (2 * k * k + 1) / 3;
    if (m == n) return k;
    if (m > n) return std::nullopt;
  }
}

double gap_ratio(std::int64_t n, std::int64_t c, GapMode mode) {
  if (n < 2) throw DomainError("gap ratio requires n >= 2");
  if (c < 0) throw DomainError("gap ratio requires c >= 0");
  double a = 0.0;
  double e = 0.0;
  switch (mode) {
    case GapMode::Planar: a = 3.0; e = 0.5; break;
    case GapMode::Spatial: a = 6.0; e = 2.0 / 3.0; break;
    case GapMode::SepPlanar: a = 2.0; e = 0.5; break;
    case GapMode::SepSpatial: a = 3.0; e = 2.0 / 3.0; break;
  }
  const auto nn = static_cast<double>(n);
  return (a * nn - static_cast<double>(c)) / std::pow(nn, e);
}

std::vector<Table1Row> table1(std::int64_t n_from, std::int64_t n_to) {
  if (n_from < 2 || n_from > n_to) throw DomainError("table1 requires 2 <= n_from <= n_to");
  std::vector<Table1Row> rows;
  rows.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  for (std::int64_t n = n_from; n <= n_to; ++n) {
    Table1Row row;
    row.n = n;
    if (auto k = octahedral_index(n)) row.fcc_lower = fcc_octahedral_lower(*k).contacts;
    row.fcc_upper = upper_bound(Kind::C3Fcc, n, 3).value_int;
    row.general_upper = upper_bound(Kind::C3General, n, 3).value_int;
    rows.push_back(row);
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "n,fcc_lower,fcc_upper,general_upper\n";
  for (const auto& r : rows) {
    os << r.n << ',';
    if (r.fcc_lower) os << *r.fcc_lower;
    os << ',' << r.fcc_upper << ',' << r.general_upper << '\n';
  }
  return os.str();
}

std::optional<std::int64_t> putative_largest_c3(std::int64_t n) noexcept {
  static constexpr std::array<std::int64_t, 18> kLargest{1,  3,  6,  9,  12, 15, 18, 21, 25,
                                                          29, 33, 36, 40, 44, 48, 52, 56, 60};
  if (n < 2 || n > 19) return std::nullopt;
  return kLargest[static_cast<std::size_t>(n - 2)];
}

}  // namespace contactlab::bounds
