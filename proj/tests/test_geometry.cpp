#include <doctest.h>

#include <cmath>
#include <numbers>

#include "contactlab/digital.hpp"
#include "contactlab/errors.hpp"
#include "contactlab/geometry.hpp"
#include "oracles.hpp"

using namespace contactlab;

namespace {

Packing pair_at(double dist, int dim = 3, double r = 1.0) {
  Packing p;
  p.dim = dim;
  p.radius = r;
  Point a(static_cast<std::size_t>(dim), 0.0);
  Point b = a;
  b[0] = dist;
  p.centers = {a, b};
  return p;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("validate_packing accepts tangency and reports overlaps") {
    CHECK(validate_packing(pair_at(2.0)).ok());
    const auto bad = validate_packing(pair_at(1.9));
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].i == 0);
    CHECK(bad.violations[0].j == 1);
    CHECK(bad.violations[0].distance == doctest::Approx(1.9));
    CHECK(validate_packing(oracle::tetrahedron()).ok());
  }

  TEST_CASE("malformed packings are rejected before validation") {
    Packing p = pair_at(2.0);
    p.centers[1].pop_back();
    CHECK_THROWS_AS((void)validate_packing(p), MalformedInput);
    Packing empty;
    empty.dim = 3;
    CHECK_THROWS_AS((void)validate_packing(empty), MalformedInput);
    Packing flat = pair_at(2.0);
    flat.dim = 1;
    flat.centers = {{0.0}, {2.0}};
    CHECK_THROWS_AS((void)validate_packing(flat), MalformedInput);
    Packing neg = pair_at(2.0);
    neg.radius = -1.0;
    CHECK_THROWS_AS((void)validate_packing(neg), MalformedInput);
  }

  TEST_CASE("tolerance invariants") {
    CHECK_NOTHROW(ToleranceConfig{1e-9, 1e-9}.check());
    CHECK_THROWS_AS((ToleranceConfig{1e-9, 1e-6}.check()), DomainError);
    CHECK_THROWS_AS((ToleranceConfig{0.0, 0.0}.check()), DomainError);
  }

  TEST_CASE("contact_graph examples") {
    CHECK(contact_graph(pair_at(2.0)).contact_count() == 1);
    CHECK(contact_graph(pair_at(2.5)).contact_count() == 0);
    const auto tet = contact_graph(oracle::tetrahedron());
    CHECK(tet.contact_count() == 6);
    for (const auto& [i, j] : tet.edges) CHECK(i < j);
    std::vector<digital::Cell> cells;
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) cells.push_back({x, y});
    }
    CHECK(contact_graph(digital::to_digital_packing(digital::Polyomino(2, cells))).contact_count() == 12);
  }

  TEST_CASE("contact_graph on an invalid packing carries the violations") {
    try {
      (void)contact_graph(pair_at(1.5));
      FAIL("expected InvalidPacking");
    } catch (const InvalidPacking& e) {
      REQUIRE(e.violations().size() == 1);
      CHECK(e.violations()[0].distance == doctest::Approx(1.5));
    }
  }

  TEST_CASE("contact counts are invariant under rigid motion and scaling") {
    std::mt19937_64 rng(11);
    const Packing base = oracle::octahedron();
    const auto ref = contact_graph(base);
    for (int t = 0; t < 20; ++t) {
      const auto rot = oracle::random_rotation(rng, 3);
      const auto moved = oracle::transformed(base, rot, {0.3 * t, -1.7, 5.0});
      CHECK(contact_graph(moved).edges == ref.edges);
    }
    Packing scaled = base;
    scaled.radius = 3.5;
    for (auto& c : scaled.centers) {
      for (auto& x : c) x *= 3.5;
    }
    CHECK(contact_graph(scaled).edges == ref.edges);
  }

  TEST_CASE("exact lattice decisions ignore the tolerance") {
    Packing p = digital::to_digital_packing(digital::Polyomino(2, {{0, 0}, {0, 1}}));
    // Perturb the float centers; the integer path must still see one contact.
    p.centers[1][1] += 1e-4;
    CHECK(contact_graph(p).contact_count() == 1);
    Packing loose = p;
    loose.lattice.reset();
    CHECK(contact_graph(loose).contact_count() == 0);
  }

  TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 / 3.0 * std::numbers::pi));
    CHECK(unit_ball_volume(4) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0));
    CHECK(unit_ball_volume(5) == doctest::Approx(8.0 * std::numbers::pi * std::numbers::pi / 15.0));
  }

  TEST_CASE("volume estimate preconditions") {
    CHECK_THROWS_AS((void)parallel_volume_estimate(pair_at(2.0), 0.0, 100, 1), DomainError);
    CHECK_THROWS_AS((void)parallel_volume_estimate(pair_at(2.0), -1.0, 100, 1), DomainError);
    CHECK_THROWS_AS((void)parallel_volume_estimate(pair_at(2.0), 0.5, 0, 1), DomainError);
  }

  TEST_CASE("volume estimate is reproducible and independent of workers") {
    const Packing p = pair_at(2.0);
    const auto a = parallel_volume_estimate(p, 0.5, 300000, 42, 1);
    const auto b = parallel_volume_estimate(p, 0.5, 300000, 42, 1);
    const auto c = parallel_volume_estimate(p, 0.5, 300000, 42, 3);
    CHECK(a.hits == b.hits);
    CHECK(a.hits == c.hits);
    CHECK(a.estimate == c.estimate);
    const auto other = parallel_volume_estimate(p, 0.5, 300000, 43, 1);
    CHECK(other.hits != a.hits);
  }

  TEST_CASE("volume estimates against closed forms") {
    const double one = 4.0 / 3.0 * std::numbers::pi * std::pow(1.5, 3);
    Packing single = pair_at(2.0);
    single.centers.pop_back();
    const auto v1 = parallel_volume_estimate(single, 0.5, 400000, 5);
    CHECK(std::abs(v1.estimate - one) <= 4.0 * v1.standard_error);

    const auto apart = parallel_volume_estimate(pair_at(10.0), 0.5, 400000, 5);
    CHECK(std::abs(apart.estimate - 2.0 * one) <= 4.0 * apart.standard_error);

    const auto tangent = parallel_volume_estimate(pair_at(2.0), 0.5, 400000, 5);
    CHECK(std::abs(tangent.estimate - oracle::two_ball_union(1.5, 2.0)) <= 4.0 * tangent.standard_error);
  }

  TEST_CASE("volume never exceeds the sum of inflated balls and grows with lambda") {
    const Packing p = oracle::tetrahedron();
    const double cap = 4.0 * unit_ball_volume(3);
    const auto small = parallel_volume_estimate(p, 0.2, 200000, 9);
    const auto large = parallel_volume_estimate(p, 0.6, 200000, 9);
    CHECK(small.estimate <= cap * std::pow(1.2, 3) + 3.0 * small.standard_error);
    CHECK(large.estimate <= cap * std::pow(1.6, 3) + 3.0 * large.standard_error);
    CHECK(large.estimate >= small.estimate - 3.0 * (small.standard_error + large.standard_error));
  }
}
