#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fraclab/geometry.hpp"

using namespace fraclab;

TEST_SUITE("geometry") {
  TEST_CASE("vector basics") {
    Vec a{1.0, 2.0, 2.0};
    CHECK(a.dim() == 3);
    CHECK(a.norm() == 3.0);
    Vec b = a - Vec{1.0, 2.0, 2.0};
    CHECK(b.norm() == 0.0);
    CHECK(dot(Vec{1.0, 0.0}, Vec{0.0, 1.0}) == 0.0);
    CHECK(Vec::unit(2, 1)[1] == 1.0);
    CHECK_THROWS_AS(Vec(4), std::invalid_argument);
  }

  TEST_CASE("distance to complement: single shapes") {
    const Domain ball = Domain::ball(Vec::zero(1), 1.0);
    CHECK(dist_to_complement(ball, Vec{0.0}) == 1.0);
    CHECK(dist_to_complement(ball, Vec{0.75}) == doctest::Approx(0.25));
    CHECK(dist_to_complement(ball, Vec{2.0}) == 0.0);

    const Domain box = Domain::box(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
    CHECK(dist_to_complement(box, Vec{0.5, 0.0}) == doctest::Approx(0.5));
    CHECK(dist_to_complement(box, Vec{0.0, 0.0}) == 1.0);
    CHECK(dist_to_complement(box, Vec{3.0, 0.0}) == 0.0);
  }

  TEST_CASE("union distance against a dense boundary-sampling oracle") {
    Domain omega = Domain::ball(Vec{0.0, 0.0}, 1.0);
    omega.add_ball(Vec{3.0, 0.0}, 1.0);

    CHECK(dist_to_complement(omega, Vec{0.0, 0.0}) == 1.0);

    // Disjoint components: the true distance to the complement equals the
    // minimum distance to a component boundary not covered by the union.
    for (const Vec& x : {Vec{0.2, 0.1}, Vec{3.4, -0.2}, Vec{0.9, 0.0}}) {
      double oracle = 1e300;
      for (int bi = 0; bi < 2; ++bi) {
        const Vec c = bi == 0 ? Vec{0.0, 0.0} : Vec{3.0, 0.0};
        for (int k = 0; k < 4000; ++k) {
          const double th = 2.0 * 3.14159265358979323846 * k / 4000.0;
          const Vec b = c + Vec{std::cos(th), std::sin(th)};
          if (domain_contains(omega, b)) continue;  // covered by the other component
          oracle = std::min(oracle, distance(x, b));
        }
      }
      CHECK(std::abs(dist_to_complement(omega, x) - oracle) < 1e-6);
    }
  }

  TEST_CASE("nearest exterior point leaves the domain") {
    Domain omega = Domain::ball(Vec{0.0}, 1.0);
    omega.add_ball(Vec{1.5}, 1.0);
    for (const Vec& x : {Vec{0.0}, Vec{0.9}, Vec{1.5}, Vec{2.2}}) {
      if (!domain_contains(omega, x)) continue;
      const Vec y = nearest_exterior_point(omega, x);
      CHECK_FALSE(domain_contains(omega, y));
      CHECK(distance(x, y) < 3.0);
    }
  }

  TEST_CASE("domain grammar") {
    const Domain b = parse_domain("ball(0,1)");
    CHECK(b.dim == 1);
    CHECK(b.balls.size() == 1);
    CHECK(b.balls[0].radius == 1.0);

    const Domain bx = parse_domain("box(-1,-2,1,2)");
    CHECK(bx.dim == 2);
    CHECK(bx.boxes[0].hi[1] == 2.0);

    const Domain u = parse_domain("union(ball(0,0,0,1); ball(3,0,0,1))");
    CHECK(u.dim == 3);
    CHECK(u.balls.size() == 2);

    const Domain nested = parse_domain("union(ball(0,1); union(ball(3,1); box(5,6)))");
    CHECK(nested.balls.size() == 2);
    CHECK(nested.boxes.size() == 1);

    CHECK_THROWS_AS(parse_domain("ball(0,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain("cube(0,1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain("ball(0,-1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain("union(ball(0,1); ball(0,0,1))"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain("box(1,0)"), std::invalid_argument);
  }

  TEST_CASE("multi-index parsing and order") {
    const MultiIndex g = MultiIndex::parse("1,0,2", 3);
    CHECK(g.order() == 3);
    CHECK(g.entries[2] == 2);
    CHECK(MultiIndex::parse("2", 1).order() == 2);
    CHECK(MultiIndex::unit(2, 1).order() == 1);
    CHECK_THROWS_AS(MultiIndex::parse("1,2", 1), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex::parse("-1", 1), std::invalid_argument);
    CHECK(MultiIndex::parse("1,0,2", 3).to_string() == "1,0,2");
  }
}
