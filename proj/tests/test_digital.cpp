#include <doctest.h>

#include "contactlab/digital.hpp"
#include "contactlab/errors.hpp"
#include "oracles.hpp"

using namespace contactlab;
using namespace contactlab::digital;

namespace {

Polyomino box(std::vector<std::int64_t> ext) {
  std::vector<Cell> cells;
  Cell c(ext.size(), 0);
  while (true) {
    cells.push_back(c);
    std::size_t k = 0;
    while (k < ext.size() && ++c[k] == ext[k]) c[k++] = 0;
    if (k == ext.size()) break;
  }
  return Polyomino(static_cast<int>(ext.size()), cells);
}

}  // namespace

TEST_SUITE("digital") {
  TEST_CASE("facet contacts") {
    CHECK(facet_contacts(Polyomino(2, {{0, 0}})) == 0);
    CHECK(facet_contacts(box({3, 3})) == 12);
    CHECK(facet_contacts(box({2, 2, 2})) == 12);
  }

  TEST_CASE("surface volume") {
    CHECK(surface_volume(Polyomino(3, {{0, 0, 0}})) == 6);
    CHECK(surface_volume(box({2, 2, 2})) == 24);
    CHECK(surface_volume(box({1, 5})) == 12);
  }

  TEST_CASE("isoperimetric quotient examples") {
    const auto cube = iso_quotient_check(box({2, 2, 2}));
    CHECK(cube.quotient == doctest::Approx(216.0));
    CHECK(cube.satisfied);
    CHECK(cube.equality);
    const auto domino = iso_quotient_check(box({1, 2}));
    // Perimeter 6, so 6^2 / 2.
    CHECK(domino.quotient == doctest::Approx(18.0));
    CHECK(domino.satisfied);
    CHECK_FALSE(domino.equality);
    const auto sq = iso_quotient_check(box({3, 3}));
    CHECK(sq.quotient == doctest::Approx(16.0));
    CHECK(sq.equality);
  }

  TEST_CASE("invalid polyominoes") {
    CHECK_THROWS_AS(Polyomino(2, {{0, 0}, {2, 0}}), DomainError);
    CHECK_THROWS_AS(Polyomino(2, {}), DomainError);
    CHECK_THROWS_AS(Polyomino(2, {{0, 0}, {0, 0}}), MalformedInput);
    CHECK_THROWS_AS(Polyomino(2, {{0, 0}, {0, 1, 0}}), MalformedInput);
    CHECK_THROWS_AS(Polyomino(1, {{0}}), MalformedInput);
  }

  TEST_CASE("quasi-square examples") {
    CHECK(quasi_square(4).cells() == box({2, 2}).cells());
    CHECK(facet_contacts(quasi_square(4)) == 4);
    CHECK(facet_contacts(quasi_square(2)) == 1);
    CHECK(quasi_square(9).cells() == box({3, 3}).cells());
    CHECK(facet_contacts(quasi_square(9)) == 12);
    CHECK_THROWS_AS((void)quasi_square(0), DomainError);
  }

  TEST_CASE("quasi-square keeps a quasi-square box and the optimal count") {
    for (std::int64_t n = 1; n <= 300; ++n) {
      const auto q = quasi_square(n);
      const auto ext = q.extents();
      CHECK(std::abs(ext[0] - ext[1]) <= 1);
      CHECK(facet_contacts(q) == oracle::square_contacts(n));
    }
  }

  TEST_CASE("quasi-cube examples and sandwich") {
    CHECK(facet_contacts(quasi_cube(8)) == 12);
    CHECK(facet_contacts(quasi_cube(27)) == 54);
    CHECK(facet_contacts(quasi_cube(2)) == 1);
    std::int64_t prev = 0;
    for (std::int64_t n = 1; n <= 300; ++n) {
      const auto c = facet_contacts(quasi_cube(n));
      CHECK(c >= prev);
      CHECK(c <= oracle::cube_cap(n));
      CHECK(quasi_cube(n).size() == static_cast<std::size_t>(n));
      prev = c;
    }
  }

  TEST_CASE("digital packing matches facet contacts on random polyominoes") {
    std::mt19937_64 rng(3);
    for (int d = 2; d <= 4; ++d) {
      for (int t = 0; t < 150; ++t) {
        const auto cells = oracle::random_polyomino(rng, d, 1 + t % 40);
        const Polyomino poly(d, cells);
        const auto p = to_digital_packing(poly);
        CHECK(static_cast<std::int64_t>(contact_graph(p).contact_count()) == facet_contacts(poly));
        CHECK(surface_volume(poly) == oracle::boundary_facets(cells));
        CHECK(iso_quotient_check(poly).satisfied);
      }
    }
  }

  TEST_CASE("adversarial snakes satisfy the quotient bound") {
    for (int d = 2; d <= 4; ++d) {
      std::vector<Cell> snake;
      Cell c(static_cast<std::size_t>(d), 0);
      for (int i = 0; i < 60; ++i) {
        snake.push_back(c);
        c[static_cast<std::size_t>(i % d)] += 1;
      }
      const Polyomino poly(d, snake);
      CHECK(iso_quotient_check(poly).satisfied);
      CHECK_FALSE(iso_quotient_check(poly).equality);
    }
  }

  TEST_CASE("to_digital_packing examples") {
    const auto one = to_digital_packing(Polyomino(2, {{0, 0}}));
    CHECK(one.size() == 1);
    CHECK(one.radius == 0.5);
    CHECK(contact_graph(one).contact_count() == 0);
    const auto dom = to_digital_packing(box({1, 2}));
    CHECK(distance(dom.centers[0], dom.centers[1]) == doctest::Approx(1.0));
    CHECK(contact_graph(dom).contact_count() == 1);
    CHECK(contact_graph(to_digital_packing(box({3, 3}))).contact_count() == 12);
  }

  TEST_CASE("cube detection") {
    CHECK(box({3, 3, 3}).is_cube());
    CHECK_FALSE(box({3, 3, 2}).is_cube());
    CHECK(Polyomino(2, {{5, 5}}).is_cube());
  }
}
