#include <doctest.h>

#include <cmath>

#include "contactlab/bounds.hpp"
#include "contactlab/constructors.hpp"
#include "contactlab/digital.hpp"
#include "contactlab/separability.hpp"
#include "oracles.hpp"

using namespace contactlab;
using namespace contactlab::separability;

namespace {

// Every witness must keep every ball at least r - eps away and split its pair.
void check_witnesses(const Packing& p, const SeparabilityReport& r) {
  const double eps = 1e-9 * p.radius;
  for (const auto& [pair, h] : r.witnesses) {
    double norm = 0.0;
    for (double x : h.normal) norm += x * x;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-12);
    for (const auto& c : p.centers) CHECK(std::abs(h.signed_distance(c)) >= p.radius - eps);
    CHECK(h.signed_distance(p.centers[pair.first]) * h.signed_distance(p.centers[pair.second]) < 0.0);
  }
}

bool axis_aligned(const Hyperplane& h) {
  int nonzero = 0;
  for (double x : h.normal) nonzero += std::abs(x) > 1e-12 ? 1 : 0;
  return nonzero == 1;
}

}  // namespace

TEST_SUITE("separability") {
  TEST_CASE("2x2 digital square is separable by axis planes") {
    const auto p = digital::to_digital_packing(digital::quasi_square(4));
    const auto r = total_separability(p);
    CHECK(r.status == Status::Separable);
    CHECK(r.witnesses.size() == 6);
    for (const auto& [pair, h] : r.witnesses) CHECK(axis_aligned(h));
    check_witnesses(p, r);
  }

  TEST_CASE("regular tetrahedron is not separable, with a checkable certificate") {
    const auto p = oracle::tetrahedron();
    const auto r = total_separability(p);
    REQUIRE(r.status == Status::NotSeparable);
    REQUIRE(r.violation);
    const auto& c = *r.violation;
    const auto& a = p.centers[c.pair.first];
    const auto& b = p.centers[c.pair.second];
    CHECK(distance(a, b) == doctest::Approx(2.0));
    // Re-derive the unique tangent plane.
    std::vector<double> u(3);
    double len = 0.0;
    for (int k = 0; k < 3; ++k) {
      u[k] = b[k] - a[k];
      len += u[k] * u[k];
    }
    len = std::sqrt(len);
    double off = 0.0;
    for (int k = 0; k < 3; ++k) {
      u[k] /= len;
      off += u[k] * 0.5 * (a[k] + b[k]);
    }
    for (int k = 0; k < 3; ++k) CHECK(std::abs(c.plane.normal[k]) == doctest::Approx(std::abs(u[k])));
    double clearance = 0.0;
    for (int k = 0; k < 3; ++k) clearance += u[k] * p.centers[c.blocking][k];
    clearance = std::abs(clearance - off);
    CHECK(clearance < p.radius - 1e-9);
    CHECK(clearance == doctest::Approx(c.clearance));
  }

  TEST_CASE("far-apart pair is separable") {
    Packing p;
    p.dim = 3;
    p.radius = 1.0;
    p.centers = {{0, 0, 0}, {10, 0, 0}};
    const auto r = total_separability(p);
    CHECK(r.status == Status::Separable);
    check_witnesses(p, r);
  }

  TEST_CASE("hexagonal packings with a full triangle are not separable") {
    for (std::int64_t n = 3; n <= 30; ++n) CHECK(total_separability(constructors::hex_spiral(n)).status ==
                                                 Status::NotSeparable);
  }

  TEST_CASE("invalid packings are rejected") {
    Packing p;
    p.dim = 2;
    p.radius = 1.0;
    p.centers = {{0, 0}, {1, 0}};
    CHECK_THROWS_AS((void)total_separability(p), InvalidPacking);
  }

  TEST_CASE("digital packings are separable, witnesses sound") {
    std::mt19937_64 rng(17);
    for (int d = 2; d <= 4; ++d) {
      for (int t = 0; t < 40; ++t) {
        const digital::Polyomino poly(d, oracle::random_polyomino(rng, d, 1 + t));
        const auto p = digital::to_digital_packing(poly);
        const auto r = total_separability(p);
        CHECK(r.status == Status::Separable);
        CHECK(r.witnesses.size() == p.size() * (p.size() - 1) / 2);
        for (const auto& [pair, h] : r.witnesses) CHECK(axis_aligned(h));
        check_witnesses(p, r);
        if (d == 2) {
          CHECK(static_cast<std::int64_t>(contact_graph(p).contact_count()) <= oracle::square_contacts(
                                                                                   static_cast<std::int64_t>(p.size())));
        }
        if (d == 3 && p.size() >= 2) {
          CHECK(static_cast<double>(contact_graph(p).contact_count()) <
                bounds::upper_bound(bounds::Kind::CSep3, static_cast<std::int64_t>(p.size()), 3).value_real);
        }
      }
    }
  }

  TEST_CASE("digital packings without the exact flag are still separable") {
    auto p = digital::to_digital_packing(digital::quasi_square(12));
    p.exact_lattice = false;
    p.lattice.reset();
    for (auto& c : p.centers) {
      c[0] += 0.25;
      c[1] -= 3.0;
    }
    CHECK(is_digital(p).digital);
    CHECK(total_separability(p).status == Status::Separable);
  }

  TEST_CASE("verdicts are invariant under rigid motion") {
    std::mt19937_64 rng(5);
    const std::vector<Packing> cases{oracle::tetrahedron(), oracle::octahedron(),
                                     digital::to_digital_packing(digital::quasi_cube(8)), constructors::fcc_bipyramid(2)};
    for (const auto& base : cases) {
      const auto ref = total_separability(base).status;
      for (int t = 0; t < 5; ++t) {
        const auto moved = oracle::transformed(base, oracle::random_rotation(rng, 3), {1.0, 2.0, -3.0});
        const auto r = total_separability(moved);
        CHECK(r.status == ref);
        check_witnesses(moved, r);
      }
    }
  }

  TEST_CASE("sparse packings are never reported not separable") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int t = 0; t < 20; ++t) {
      Packing p;
      p.dim = 3;
      p.radius = 1.0;
      while (p.centers.size() < 12) {
        Point c{u(rng), u(rng), u(rng)};
        bool ok = true;
        for (const auto& q : p.centers) ok = ok && distance(c, q) > 2.5;
        if (ok) p.centers.push_back(c);
      }
      const auto r = total_separability(p);
      CHECK(r.status != Status::NotSeparable);
      check_witnesses(p, r);
    }
  }

  TEST_CASE("is_digital examples") {
    const auto sq = digital::to_digital_packing(digital::quasi_square(9));
    const auto fit = is_digital(sq);
    CHECK(fit.digital);
    CHECK(fit.scale == doctest::Approx(1.0));
    CHECK_FALSE(is_digital(constructors::hex_spiral(7)).digital);
    Packing one;
    one.dim = 3;
    one.radius = 1.0;
    one.centers = {{0.3, 0.1, 7.0}};
    CHECK(is_digital(one).digital);
    CHECK_FALSE(is_digital(constructors::fcc_bipyramid(2)).digital);
  }

  TEST_CASE("sampled direction sets") {
    CHECK(sampled_directions(2).size() == 240);
    CHECK(sampled_directions(3).size() == 246);
    CHECK(sampled_directions(5).size() == 240);
    for (int d = 2; d <= 5; ++d) {
      for (const auto& u : sampled_directions(d)) {
        double s = 0.0;
        for (double x : u) s += x * x;
        CHECK(std::abs(s - 1.0) < 1e-12);
      }
    }
    CHECK(sampled_directions(4) == sampled_directions(4));
  }
}
