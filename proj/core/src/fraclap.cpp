#include "fraclab/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclab/parallel.hpp"

namespace fraclab {

QuadResult frac_laplacian_point(const FracParams& p, const ScalarField& u, const Vec& x,
                                const QuadSpec& spec, const FracLapOptions& opt) {
  p.validate();
  spec.validate();
  if (!u.l1s_certified)
    throw std::invalid_argument("frac_laplacian_point: field lacks the L^1_s certificate");
  if (!u.eval) throw std::invalid_argument("frac_laplacian_point: field has no evaluator");

  const int n = p.n;
  const double s = p.s;
  const double scale = 1.0 + x.norm();
  const double h = opt.near_radius_scale * scale;
  const double rho_floor = std::min(opt.cancellation_floor_scale * scale, 0.25 * h);

  long long evals = 0;
  const double u_x = u.eval(x);
  ++evals;

  // Angular integral of the symmetric second difference at radius rho.
  const auto second_difference = [&](double rho) {
    const FnPoint g = [&](const Vec& th) {
      evals += 2;
      const Vec step = rho * th;
      return 2.0 * u_x - u.eval(x + step) - u.eval(x - step);
    };
    return integrate_sphere(g, n, spec.sphere);
  };

  // B(rho) = A(rho)/rho^2 is smooth and bounded; below rho_floor the second
  // difference drowns in rounding, so it is frozen at its rho_floor value.
  const Fn1D curvature = [&](double rho) {
    const double r = std::max(rho, rho_floor);
    return second_difference(r) / (r * r);
  };

  // Near field: int_0^h B(rho) rho^{1-2s} drho, singular endpoint for s > 1/2.
  QuadResult near;
  if (s > 0.5) {
    near = integrate_endpoint_singular(curvature, 0.0, h, 2.0 * s - 1.0, /*at_b=*/false, spec);
  } else {
    const Fn1D integrand = [&](double rho) {
      return curvature(rho) * std::pow(rho, 1.0 - 2.0 * s);
    };
    near = integrate_1d(integrand, 0.0, h, spec);
  }

  // Taylor-remainder bound for the frozen band [0, rho_floor]: variation of B
  // proxied by a doubled-step sample, plus the rounding noise of the frozen value.
  const double b_floor = curvature(rho_floor);
  const double b_2floor = curvature(2.0 * rho_floor);
  const double band_mass = std::pow(rho_floor, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  const double eps_noise = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(u_x) /
                           (rho_floor * rho_floor);
  near.error_estimate += (std::abs(b_2floor - b_floor) + eps_noise) * band_mass;

  // Far field: exterior integral of the full symmetric integrand. Growth of u
  // sets the decay exponent; the quadrature reach is stretched until the tail
  // bound fits inside the tolerance budget.
  const double growth = u.growth_hint ? std::max(u.growth_hint->power, 0.0) : 0.0;
  const double decay_q = 2.0 * s - growth;
  if (!(decay_q > 0.0))
    throw std::invalid_argument("frac_laplacian_point: growth hint not integrable against the kernel");

  const FnPoint far_integrand = [&](const Vec& z) {
    evals += 2;
    const double rho = z.norm();
    return (2.0 * u_x - u.eval(x + z) - u.eval(x - z)) * std::pow(rho, -n - 2.0 * s);
  };

  QuadSpec far_spec = spec;
  far_spec.max_subdivisions = std::max(spec.max_subdivisions, 60000);

  QuadResult far =
      integrate_exterior_ball(far_integrand, Vec::zero(n), h, decay_q, far_spec, TailMode::kBound);
  // One retry with a stretched reach when the tail bound dominates the budget.
  const double budget = std::max(spec.abs_tol, spec.rel_tol * std::abs(near.value + far.value));
  if (far.error_estimate > 0.5 * budget) {
    const double sigma = unit_sphere_area(n);
    const double reach0 = far_spec.tail_radius_factor * h;
    const double k_est = far.error_estimate * decay_q * std::pow(reach0, decay_q) / sigma;
    const double reach_needed = std::pow(k_est * sigma / (decay_q * 0.25 * budget), 1.0 / decay_q);
    const double factor = std::min(reach_needed / h, 1e8);
    if (factor > far_spec.tail_radius_factor) {
      far_spec.tail_radius_factor = factor;
      far = integrate_exterior_ball(far_integrand, Vec::zero(n), h, decay_q, far_spec,
                                    TailMode::kBound);
    }
  }

  const double c_half = 0.5 * constants_for(p).c_ns;
  QuadResult out;
  out.value = c_half * (near.value + far.value);
  out.error_estimate = c_half * (near.error_estimate + far.error_estimate);
  out.evaluations = evals;
  out.converged = near.converged && far.converged;
  return out;
}

SHarmonicityReport s_harmonicity_report(const FracParams& p, const ScalarField& u,
                                        const std::vector<Vec>& sample_points, double tol,
                                        const QuadSpec& spec, int threads) {
  SHarmonicityReport report;
  report.points = sample_points;
  report.tol = tol;
  report.values.resize(sample_points.size());

  parallel_for_index(static_cast<long long>(sample_points.size()), threads, [&](long long i) {
    report.values[static_cast<size_t>(i)] =
        frac_laplacian_point(p, u, sample_points[static_cast<size_t>(i)], spec);
  });

  double worst = 0.0;
  for (const QuadResult& r : report.values) worst = std::max(worst, std::abs(r.value));
  report.max_abs_value = worst;
  report.pass = worst <= tol;
  return report;
}

}  // namespace fraclab
