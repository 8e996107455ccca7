#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fraclab/builtins.hpp"
#include "fraclab/fraclap.hpp"

using namespace fraclab;

namespace {

QuadSpec spec_1em6() {
  QuadSpec s;
  s.rel_tol = 1e-7;
  s.abs_tol = 1e-9;
  return s;
}

// Independent fine-grid oracle for n=1: uniform midpoint sum of the symmetric
// difference integrand on [0, reach], plus the closed 2u(x)/reach tail for
// compactly supported u (zero tail share for cosine handled by reach size).
double oracle_1d(const FracParams& p, const std::function<double(double)>& u, double x,
                 double reach, int points, bool compact_support) {
  const double ux = u(x);
  double acc = 0.0;
  for (int i = 0; i < points; ++i) {
    const double z = reach * (i + 0.5) / points;
    acc += (2.0 * ux - u(x + z) - u(x - z)) * std::pow(z, -1.0 - 2.0 * p.s);
  }
  acc *= reach / points;
  acc *= 2.0;  // both rays
  if (compact_support) {
    // Beyond the reach the difference is exactly 2 u(x).
    acc += 2.0 * ux * 2.0 * std::pow(reach, -2.0 * p.s) / (2.0 * p.s);
  }
  return 0.5 * constants_for(p).c_ns * acc;
}

}  // namespace

TEST_SUITE("fraclap") {
  TEST_CASE("affine fields are annihilated") {
    for (double s : {0.6, 0.75, 0.9}) {
      const FracParams p{1, s};
      const ScalarField u = make_field("affine:0.7,-0.3", p);
      for (int i = 0; i < 10; ++i) {
        const Vec x{-2.0 + 0.43 * i};
        const QuadResult r = frac_laplacian_point(p, u, x, spec_1em6());
        CHECK(std::abs(r.value) < 1e-6);
      }
    }
    // Same in two dimensions.
    const FracParams p2{2, 0.75};
    ScalarField u2;
    u2.eval = [](const Vec& y) { return 0.4 * y[0] - 0.9 * y[1] + 0.2; };
    u2.l1s_certified = true;
    u2.growth_hint = GrowthHint{1.5, 1.0};
    CHECK(std::abs(frac_laplacian_point(p2, u2, Vec{0.3, -0.7}, spec_1em6()).value) < 1e-6);
  }

  TEST_CASE("1d symbol check: (-Delta)^{1/2} cos at 0 is 1") {
    const FracParams p{1, 0.5};
    const ScalarField u = make_field("cosine", p);
    QuadSpec spec;
    spec.rel_tol = 1e-6;
    spec.abs_tol = 1e-7;
    const QuadResult r = frac_laplacian_point(p, u, Vec{0.0}, spec);
    CHECK(std::abs(r.value - 1.0) < 1e-4);

    // Cross-check against the independent fine-grid quadrature.
    const double oracle =
        oracle_1d(p, [](double y) { return std::cos(y); }, 0.0, 2e4, 4000000, false);
    CHECK(std::abs(r.value - oracle) < 2e-4);
  }

  TEST_CASE("bump identity: (-Delta)^{1/2} (1-x^2)_+^{1/2} = 1 on (-1,1)") {
    const FracParams p{1, 0.5};
    const ScalarField u = make_field("bump2s", p);
    QuadSpec spec;
    spec.rel_tol = 1e-6;
    spec.abs_tol = 1e-7;
    const auto u1 = [](double y) { return y * y < 1.0 ? std::sqrt(1.0 - y * y) : 0.0; };
    for (double x : {0.0, 0.5, -0.5}) {
      const QuadResult r = frac_laplacian_point(p, u, Vec{x}, spec);
      CHECK(std::abs(r.value - 1.0) < 1e-3);
      const double oracle = oracle_1d(p, u1, x, 50.0, 10000000, true);
      CHECK(std::abs(r.value - oracle) < 1e-3);
    }
  }

  TEST_CASE("missing certificate is refused") {
    const FracParams p{1, 0.5};
    ScalarField u;
    u.eval = [](const Vec& y) { return y[0] * y[0]; };
    u.l1s_certified = false;
    CHECK_THROWS_AS(frac_laplacian_point(p, u, Vec{0.0}, spec_1em6()), std::invalid_argument);
  }

  TEST_CASE("linearity") {
    const FracParams p{1, 0.5};
    const ScalarField cu = make_field("cosine", p);
    const ScalarField bu = make_field("bump2s", p);
    const double a = 1.7, b = -0.6;
    ScalarField combo;
    combo.eval = [&, a, b](const Vec& y) { return a * cu.eval(y) + b * bu.eval(y); };
    combo.l1s_certified = true;
    combo.growth_hint = GrowthHint{std::abs(a) + std::abs(b), 0.0};

    const Vec x{0.25};
    const QuadSpec spec = spec_1em6();
    const double lhs = frac_laplacian_point(p, combo, x, spec).value;
    const double rhs = a * frac_laplacian_point(p, cu, x, spec).value +
                       b * frac_laplacian_point(p, bu, x, spec).value;
    CHECK(std::abs(lhs - rhs) < 5e-5);
  }

  TEST_CASE("translation covariance") {
    const FracParams p{1, 0.6};
    const ScalarField u = make_field("cosine", p);
    const double h = 0.8;
    ScalarField shifted;
    shifted.eval = [&u, h](const Vec& y) { return u.eval(y + Vec{h}); };
    shifted.l1s_certified = true;
    shifted.growth_hint = u.growth_hint;

    const Vec x{0.3};
    const QuadSpec spec = spec_1em6();
    const double lhs = frac_laplacian_point(p, shifted, x, spec).value;
    const double rhs = frac_laplacian_point(p, u, x + Vec{h}, spec).value;
    CHECK(std::abs(lhs - rhs) < 5e-5);
  }

  TEST_CASE("scaling covariance") {
    const FracParams p{1, 0.5};
    const ScalarField u = make_field("cosine", p);
    const Vec x{0.4};
    const QuadSpec spec = spec_1em6();
    for (double lam : {0.5, 2.0}) {
      ScalarField scaled;
      scaled.eval = [&u, lam](const Vec& y) { return u.eval(lam * y); };
      scaled.l1s_certified = true;
      scaled.growth_hint = u.growth_hint;
      const double lhs = frac_laplacian_point(p, scaled, x, spec).value;
      const double rhs =
          std::pow(lam, 2.0 * p.s) * frac_laplacian_point(p, u, lam * x, spec).value;
      CHECK(std::abs(lhs - rhs) < 5e-5);
    }
  }

  TEST_CASE("s-harmonicity report") {
    const FracParams p{1, 0.5};
    ScalarField one;
    one.eval = [](const Vec&) { return 1.0; };
    one.l1s_certified = true;
    one.growth_hint = GrowthHint{1.0, 0.0};
    QuadSpec spec;
    spec.rel_tol = 1e-9;
    spec.abs_tol = 1e-11;
    const SHarmonicityReport rep =
        s_harmonicity_report(p, one, {Vec{0.0}, Vec{1.0}, Vec{-2.0}}, 1e-8, spec);
    CHECK(rep.pass);
    CHECK(rep.max_abs_value < 1e-8);

    ScalarField quad;
    quad.eval = [](const Vec& y) { return y[0] * y[0]; };
    quad.l1s_certified = false;  // grows too fast, no certificate
    CHECK_THROWS_AS(s_harmonicity_report(p, quad, {Vec{0.0}}, 1e-3, spec), std::invalid_argument);
  }
}
