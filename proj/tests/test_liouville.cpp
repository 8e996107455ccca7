#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fraclab/builtins.hpp"
#include "fraclab/liouville.hpp"
#include "fraclab/poisson.hpp"

using namespace fraclab;

namespace {

QuadSpec default_spec() {
  QuadSpec s;
  s.rel_tol = 1e-8;
  s.abs_tol = 1e-10;
  return s;
}

}  // namespace

TEST_SUITE("liouville") {
  TEST_CASE("kernel device recovers affine slopes") {
    const FracParams p{1, 0.75};
    const ScalarField u = make_field("affine:1.3,-0.4", p);
    const QuadResult d1 =
        derivative_via_kernel(p, u, MultiIndex::unit(1, 0), Vec::zero(1), 0.25, default_spec());
    CHECK(std::abs(d1.value - 1.3) < 1e-4);

    const QuadResult d2 =
        derivative_via_kernel(p, u, MultiIndex::parse("2", 1), Vec::zero(1), 0.25, default_spec());
    CHECK(std::abs(d2.value) < 1e-4);
  }

  TEST_CASE("kernel device against a finite-difference oracle on an extension") {
    const FracParams p{1, 0.5};
    const ExteriorData g = make_exterior("bounded-noise:11", p);
    const Ball ball{Vec::zero(1), 2.0};
    const QuadSpec spec = default_spec();
    const ScalarField u = extension_field(p, ball, g, spec);

    const QuadResult via_kernel =
        derivative_via_kernel(p, u, MultiIndex::unit(1, 0), Vec::zero(1), 0.245 * 2.0, spec);

    const double h = 1e-3;
    const auto at = [&](double t) { return poisson_extend(p, ball, g, Vec{t}, spec).value; };
    const double d_h = (at(h) - at(-h)) / (2.0 * h);
    const double d_h2 = (at(0.5 * h) - at(-0.5 * h)) / h;
    const double fd = (4.0 * d_h2 - d_h) / 3.0;
    CHECK(std::abs(via_kernel.value - fd) < 1e-3 * std::max(1.0, std::abs(fd)));
  }

  TEST_CASE("estimate record: constant field has zero derivative and zero ratio") {
    const FracParams p{1, 0.5};
    const ExteriorData one = make_exterior("one", p);
    const ScalarField u = extension_field(p, Ball{Vec::zero(1), 4.0}, one, default_spec());
    const EstimateRecord rec =
        cauchy_estimate_record(p, u, MultiIndex::unit(1, 0), 2.0, default_spec());
    CHECK(rec.lhs < 1e-8);
    CHECK(rec.tail > 0.0);
    REQUIRE(rec.ratio.has_value());
    CHECK(*rec.ratio < 1e-7);
  }

  TEST_CASE("estimate record: affine ratios stabilize across radii") {
    const FracParams p{1, 0.75};
    const ScalarField u = make_field("affine:1.0,0.2", p);
    double lo = 1e300, hi = 0.0;
    for (double big_r : {1.0, 2.0, 4.0, 8.0}) {
      const EstimateRecord rec =
          cauchy_estimate_record(p, u, MultiIndex::unit(1, 0), big_r, default_spec());
      REQUIRE(rec.ratio.has_value());
      lo = std::min(lo, *rec.ratio);
      hi = std::max(hi, *rec.ratio);
    }
    CHECK(hi / lo < 2.0);
  }

  TEST_CASE("bounded sign data keep the Cauchy ratios within a common constant") {
    const FracParams p{1, 0.5};
    const ExteriorData g = make_exterior("sign", p);
    const ScalarField u = extension_field(p, Ball{Vec::zero(1), 16.0}, g, default_spec());
    double lo = 1e300, hi = 0.0;
    for (double big_r : {1.0, 4.0, 16.0}) {
      const EstimateRecord rec =
          cauchy_estimate_record(p, u, MultiIndex::unit(1, 0), big_r, default_spec());
      REQUIRE(rec.ratio.has_value());
      lo = std::min(lo, *rec.ratio);
      hi = std::max(hi, *rec.ratio);
    }
    CHECK(hi / lo <= 10.0);
  }

  TEST_CASE("localization is exact translation covariance") {
    const FracParams p{1, 0.5};
    const ExteriorData g = make_exterior("bounded-noise:3", p);
    const Vec c{0.7};
    const QuadSpec spec = default_spec();
    const ScalarField u = extension_field(p, Ball{c, 2.0}, g, spec);

    ScalarField translated;
    translated.eval = [&u, c](const Vec& y) { return u.eval(y + c); };
    translated.l1s_certified = true;
    translated.growth_hint = u.growth_hint;

    const MultiIndex d1 = MultiIndex::unit(1, 0);
    const QuadResult at_c = derivative_via_kernel(p, u, d1, c, 0.3, spec);
    const QuadResult at_0 = derivative_via_kernel(p, translated, d1, Vec::zero(1), 0.3, spec);
    CHECK(at_c.value == at_0.value);  // identical quadrature nodes, identical field values
  }

  TEST_CASE("decay experiment: offset sign data, second derivative") {
    const FracParams p{1, 0.5};
    const ExteriorData g = make_exterior("sign:1", p);
    const MultiIndex d2 = MultiIndex::parse("2", 1);
    const DecayReport rep =
        liouville_decay_experiment(p, g, d2, {1.0, 2.0, 4.0}, default_spec());
    REQUIRE(rep.derivative_values.size() == 3);
    CHECK(rep.slope_defined);
    CHECK(rep.derivative_values[0] > rep.derivative_values[1]);
    CHECK(rep.derivative_values[1] > rep.derivative_values[2]);
    CHECK(rep.fitted_slope <= 2.0 * p.s - 2.0 + 0.3);
    CHECK(rep.bound_slope == -1.0);
    CHECK(rep.composite_slope == -2.0);
  }

  TEST_CASE("decay experiment: centered sign data are antisymmetric-degenerate for even orders") {
    // u_R is odd, so D^2 u_R(0) vanishes identically; the slope is undefined
    // and the experiment reports that instead of inventing one.
    const FracParams p{1, 0.5};
    const ExteriorData g = make_exterior("sign", p);
    const DecayReport rep = liouville_decay_experiment(p, g, MultiIndex::parse("2", 1),
                                                       {1.0, 2.0}, default_spec());
    CHECK_FALSE(rep.slope_defined);
    for (double v : rep.derivative_values) CHECK(v < 1e-10);
  }

  TEST_CASE("decay experiment preconditions") {
    const FracParams p{1, 0.6};
    const ExteriorData g = make_exterior("sign", p);
    const QuadSpec spec = default_spec();
    // |gamma| = 1 is not > 2s = 1.2.
    CHECK_THROWS_AS(liouville_decay_experiment(p, g, MultiIndex::unit(1, 0), {1.0, 2.0}, spec),
                    std::invalid_argument);
    const FracParams p2{1, 0.25};
    CHECK_THROWS_AS(
        liouville_decay_experiment(p2, g, MultiIndex::unit(1, 0), {2.0, 1.0}, spec),
        std::domain_error);
    ExteriorData unbounded = g;
    unbounded.bound_hint.reset();
    CHECK_THROWS_AS(
        liouville_decay_experiment(p2, unbounded, MultiIndex::unit(1, 0), {1.0, 2.0}, spec),
        std::invalid_argument);
  }

  TEST_CASE("difference fields: algebra and degree drop") {
    ScalarField affine;
    affine.eval = [](const Vec& y) { return 1.5 * y[0] - 0.25; };
    affine.l1s_certified = true;
    affine.growth_hint = GrowthHint{1.75, 1.0};
    const ScalarField da = difference_field(affine, Vec{0.4});
    for (double y : {-3.0, 0.0, 2.5}) CHECK(da.eval(Vec{y}) == doctest::Approx(1.5 * 0.4).epsilon(1e-14));
    CHECK(da.l1s_certified);

    const ScalarField zero_shift = difference_field(affine, Vec{0.0});
    CHECK(zero_shift.eval(Vec{1.7}) == 0.0);

    ScalarField quadratic;
    quadratic.eval = [](const Vec& y) { return y[0] * y[0]; };
    quadratic.l1s_certified = false;
    const ScalarField dq = difference_field(quadratic, Vec{1.0});
    for (double y : {-2.0, 0.5, 3.0}) CHECK(dq.eval(Vec{y}) == doctest::Approx(2.0 * y + 1.0));

    // Two differences of any quadratic leave a constant field.
    const ScalarField ddq = difference_field(dq, Vec{0.7});
    const double c0 = ddq.eval(Vec{0.0});
    for (int i = 0; i < 20; ++i) {
      const double y = -5.0 + 0.5 * i;
      CHECK(ddq.eval(Vec{y}) == doctest::Approx(c0).epsilon(1e-12));
    }
  }
}
