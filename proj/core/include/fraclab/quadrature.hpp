#pragma once

#include <functional>

#include "fraclab/geometry.hpp"

namespace fraclab {

/// Angular resolution of the fixed sphere rules used for radial-angular
/// factorization. n=1 is always the exact two-point sum.
struct SphereRule {
  int circle_points = 64;   // n=2 uniform rule
  int polar_points = 32;    // n=3 Gauss-Legendre in cos(theta)
  int azimuth_points = 64;  // n=3 uniform azimuth
};

/// Tolerances and truncation policy governing every integral.
struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 20000;
  double tail_radius_factor = 64.0;  // quadrature reach, as a multiple of the inner radius
  SphereRule sphere{};

  /// Throws std::invalid_argument on rel_tol/abs_tol <= 0,
  /// max_subdivisions < 1 or tail_radius_factor < 2.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = true;
};

using Fn1D = std::function<double(double)>;
using FnPoint = std::function<double(const Vec&)>;

/// Adaptive Gauss-Kronrod (7,15) with bisection of the largest-error panel.
/// Deterministic: identical inputs produce bit-identical results. When the
/// subdivision budget runs out the best value is still returned with
/// converged = false.
QuadResult integrate_1d(const Fn1D& f, double a, double b, const QuadSpec& spec);

/// Integrates f_regular(t) * (b-t)^{-p} (at_b) or f_regular(t) * (t-a)^{-p}
/// over [a,b] for p in (0,1). The substitution u = (b-t)^{1-p} removes the
/// endpoint singularity exactly; the transformed integrand is
/// f_regular(t(u))/(1-p).
QuadResult integrate_endpoint_singular(const Fn1D& f_regular, double a, double b,
                                       double p, bool at_b, const QuadSpec& spec);

/// Integral of g over the unit sphere S^{n-1}, n in {1,2,3}.
/// n=1: g(+1)+g(-1); n=2: midpoint circle rule; n=3: Gauss-Legendre x azimuth
/// product rule. Throws std::invalid_argument for unsupported n.
double integrate_sphere(const FnPoint& g, int n, const SphereRule& rule = {});

/// Max of |g| over the nodes of the sphere rule (tail-bound probing).
double sphere_max_abs(const FnPoint& g, int n, const SphereRule& rule = {});

/// Handling of the mass beyond the quadrature reach in exterior integrals.
enum class TailMode {
  kBound,            // analytic bound K sigma R^{-q}/q folded into error_estimate
  kClosedFormPower,  // exact-power tail S(R) R / q added to the value
};

/// Integral of F over the exterior of the ball B(center, r), assuming
/// |F(y)| <= K |y-center|^{-n-decay_q} beyond the quadrature reach
/// tail_radius_factor * r and F regular on the shell. Radial-angular
/// factorization; the radial integrand must be smooth on [r, reach].
/// decay_q <= 0 throws std::domain_error.
QuadResult integrate_exterior_ball(const FnPoint& F, const Vec& center, double r,
                                   double decay_q, const QuadSpec& spec,
                                   TailMode tail_mode = TailMode::kBound);

}  // namespace fraclab
