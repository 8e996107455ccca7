#include "fraclab/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclab/kernels.hpp"

namespace fraclab {

namespace {

// The angular integrand of the Poisson integral has a peak of width
// ~ (rho - |x|)/rho opposite x; the fixed rules need more nodes as x
// approaches the boundary.
SphereRule boosted_rule(SphereRule base, int n, double proximity) {
  const double prox = std::max(proximity, 1e-3);
  if (n == 2) {
    base.circle_points =
        std::max(base.circle_points, std::min(4096, static_cast<int>(32.0 / prox)));
  } else if (n == 3) {
    base.azimuth_points =
        std::max(base.azimuth_points, std::min(2048, static_cast<int>(32.0 / prox)));
    base.polar_points =
        std::max(base.polar_points, std::min(1024, static_cast<int>(16.0 / prox)));
  }
  return base;
}

double growth_power(const ExteriorData& g) {
  if (g.growth_hint) return std::max(g.growth_hint->power, 0.0);
  return 0.0;  // bounded by default; bound_hint carries no power
}

}  // namespace

QuadResult poisson_extend(const FracParams& p, const Ball& ball, const ExteriorData& g,
                          const Vec& x, const QuadSpec& spec) {
  p.validate();
  spec.validate();
  if (!(ball.radius > 0.0)) throw std::invalid_argument("poisson_extend: ball radius must be positive");
  if (!g.l1s_certified)
    throw std::invalid_argument("poisson_extend: exterior datum lacks the L^1_s certificate");
  if (!g.eval) throw std::invalid_argument("poisson_extend: exterior datum has no evaluator");

  const int n = p.n;
  const double s = p.s;
  const double r = ball.radius;
  const Vec xr = x - ball.center;
  const double ax = xr.norm();
  if (!(ax < r)) throw std::domain_error("poisson_extend: x must lie strictly inside the ball");

  const double beta = constants_for(p).beta_ns;
  const double prefactor = beta * std::pow(r * r - ax * ax, s);
  const SphereRule rule = boosted_rule(spec.sphere, n, (r - ax) / r);

  long long evals = 0;
  const auto datum_kernel = [&](double rho, const Vec& th) {
    ++evals;
    const Vec y_rel = rho * th;
    return g.eval(ball.center + y_rel) * std::pow(distance(y_rel, xr), -n);
  };

  // Boundary layer (r, 2r]: (rho^2-r^2)^{-s} = (rho-r)^{-s} (rho+r)^{-s}.
  const Fn1D layer_regular = [&](double rho) {
    const FnPoint ang = [&](const Vec& th) { return datum_kernel(rho, th); };
    const double angular = integrate_sphere(ang, n, rule);
    return prefactor * std::pow(rho, n - 1) * std::pow(rho + r, -s) * angular;
  };
  const QuadResult layer =
      integrate_endpoint_singular(layer_regular, r, 2.0 * r, s, /*at_b=*/false, spec);

  // Far field beyond 2r: full kernel, closed-form power tail.
  const FnPoint far_f = [&](const Vec& y) {
    ++evals;
    const Vec y_rel = y - ball.center;
    return poisson_kernel(p, r, xr, y_rel) * g.eval(y);
  };
  QuadSpec far_spec = spec;
  far_spec.tail_radius_factor = std::max(spec.tail_radius_factor, 256.0);
  const double decay_q = 2.0 * s - growth_power(g);
  const QuadResult far = integrate_exterior_ball(far_f, ball.center, 2.0 * r, decay_q, far_spec,
                                                 TailMode::kClosedFormPower);

  QuadResult out;
  out.value = layer.value + far.value;
  out.error_estimate = layer.error_estimate + far.error_estimate;
  out.evaluations = evals;
  out.converged = layer.converged && far.converged;
  return out;
}

ScalarField extension_field(const FracParams& p, const Ball& ball, const ExteriorData& g,
                            const QuadSpec& spec) {
  ScalarField u;
  const Ball b = ball;
  const ExteriorData datum = g;
  const FracParams params = p;
  const QuadSpec quad = spec;
  u.eval = [params, b, datum, quad](const Vec& y) {
    if (distance(y, b.center) < b.radius) return poisson_extend(params, b, datum, y, quad).value;
    return datum.eval(y);
  };
  u.l1s_certified = g.l1s_certified;
  if (g.bound_hint) {
    // Maximum principle: the extension stays inside the datum bounds.
    u.growth_hint = GrowthHint{*g.bound_hint, 0.0};
  } else {
    u.growth_hint = g.growth_hint;
  }
  return u;
}

QuadResult convolve_psi(const FracParams& p, const ScalarField& u, double r0, const Vec& x,
                        const QuadSpec& spec) {
  p.validate();
  spec.validate();
  if (!(r0 > 0.0)) throw std::invalid_argument("convolve_psi: r0 must be positive");
  if (!u.l1s_certified)
    throw std::invalid_argument("convolve_psi: field lacks the L^1_s certificate");

  const int n = p.n;
  long long evals = 0;

  // Support hump [r0, 4 r0]: the radial kernel factor is pulled out of the
  // angular integral (Psi_{r0} is radial).
  const Fn1D hump = [&](double rho) {
    const double w = std::pow(r0, -n) * psi_radial(p, rho / r0);
    if (w == 0.0) return 0.0;
    const FnPoint ang = [&](const Vec& th) {
      ++evals;
      return u.eval(x - rho * th);
    };
    return std::pow(rho, n - 1) * w * integrate_sphere(ang, n, spec.sphere);
  };
  const QuadResult inner = integrate_1d(hump, r0, 4.0 * r0, spec);

  // Power-law reach beyond 4 r0.
  const FnPoint far_f = [&](const Vec& z) {
    ++evals;
    return u.eval(x - z) * psi_scaled(p, r0, z);
  };
  const double growth = u.growth_hint ? std::max(u.growth_hint->power, 0.0) : 0.0;
  const double decay_q = 2.0 * p.s - growth;
  if (!(decay_q > 0.0))
    throw std::invalid_argument("convolve_psi: growth hint not integrable against Psi");
  QuadSpec far_spec = spec;
  far_spec.tail_radius_factor = std::max(spec.tail_radius_factor, 256.0);
  const QuadResult far = integrate_exterior_ball(far_f, Vec::zero(n), 4.0 * r0, decay_q, far_spec,
                                                 TailMode::kClosedFormPower);

  QuadResult out;
  out.value = inner.value + far.value;
  out.error_estimate = inner.error_estimate + far.error_estimate;
  out.evaluations = evals;
  out.converged = inner.converged && far.converged;
  return out;
}

double mean_value_residual(const FracParams& p, const ScalarField& u, const Domain& omega,
                           double r0, const Vec& x, const QuadSpec& spec) {
  if (!(r0 > 0.0)) throw std::invalid_argument("mean_value_residual: r0 must be positive");
  if (!(dist_to_complement(omega, x) > 4.0 * r0))
    throw std::domain_error(
        "mean_value_residual: x must satisfy dist(x, complement) > 4 r0; the identity is only "
        "claimed on that margin");
  const double direct = u.eval(x);
  const double convolved = convolve_psi(p, u, r0, x, spec).value;
  return std::abs(direct - convolved);
}

}  // namespace fraclab
