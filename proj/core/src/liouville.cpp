#include "fraclab/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclab/kernels.hpp"
#include "fraclab/poisson.hpp"

namespace fraclab {

QuadResult derivative_via_kernel(const FracParams& p, const ScalarField& u,
                                 const MultiIndex& gamma, const Vec& x, double r0,
                                 const QuadSpec& spec) {
  p.validate();
  spec.validate();
  if (!(r0 > 0.0)) throw std::invalid_argument("derivative_via_kernel: r0 must be positive");
  if (gamma.dim != p.n)
    throw std::invalid_argument("derivative_via_kernel: multi-index dimension mismatch");
  if (gamma.order() > 4)
    throw std::invalid_argument("derivative_via_kernel: |gamma| <= 4 supported");
  if (!u.eval) throw std::invalid_argument("derivative_via_kernel: field has no evaluator");

  const int n = p.n;
  long long evals = 0;

  // D^gamma u(x) = int_{|z| >= r0} u(x-z) D^gamma Psi_{r0}(z) dz.
  const FnPoint integrand = [&](const Vec& z) {
    ++evals;
    const double w = psi_derivative(p, gamma, r0, z).value;
    if (w == 0.0) return 0.0;
    return u.eval(x - z) * w;
  };

  // Kernel hump plus corner region, then the power-law reach.
  const Fn1D shell = [&](double rho) {
    const FnPoint ang = [&](const Vec& th) { return integrand(rho * th); };
    return std::pow(rho, n - 1) * integrate_sphere(ang, n, spec.sphere);
  };
  const QuadResult hump = integrate_1d(shell, r0, 6.0 * r0, spec);

  const double growth = u.growth_hint ? std::max(u.growth_hint->power, 0.0) : 0.0;
  const double decay_q = 2.0 * p.s + gamma.order() - growth;
  if (!(decay_q > 0.0))
    throw std::invalid_argument("derivative_via_kernel: growth hint not integrable");
  const QuadResult far = integrate_exterior_ball(integrand, Vec::zero(n), 6.0 * r0, decay_q, spec,
                                                 TailMode::kClosedFormPower);

  QuadResult out;
  out.value = hump.value + far.value;
  out.error_estimate = hump.error_estimate + far.error_estimate;
  out.evaluations = evals;
  out.converged = hump.converged && far.converged;
  return out;
}

EstimateRecord cauchy_estimate_record(const FracParams& p, const ScalarField& u,
                                      const MultiIndex& gamma, double R, const QuadSpec& spec) {
  p.validate();
  if (!(R > 0.0)) throw std::invalid_argument("cauchy_estimate_record: R must be positive");

  // The proof sends r0 -> R/4; 0.245 R keeps the strict 4 r0 margin inside B(0,R).
  const double r0 = 0.245 * R;
  const Vec origin = Vec::zero(p.n);
  const QuadResult lhs = derivative_via_kernel(p, u, gamma, origin, r0, spec);

  const double growth = u.growth_hint ? std::max(u.growth_hint->power, 0.0) : 0.0;
  const double decay_q = 2.0 * p.s - growth;
  if (!(decay_q > 0.0))
    throw std::invalid_argument("cauchy_estimate_record: growth hint not integrable");
  const FnPoint weighted = [&](const Vec& y) {
    return std::abs(u.eval(y)) * std::pow(y.norm(), -p.n - 2.0 * p.s);
  };
  const QuadResult tail = integrate_exterior_ball(weighted, origin, 0.25 * R, decay_q, spec,
                                                  TailMode::kClosedFormPower);

  EstimateRecord rec;
  rec.gamma = gamma;
  rec.radius = R;
  rec.lhs = std::abs(lhs.value);
  rec.tail = tail.value;
  rec.rhs_factor = std::pow(R, 2.0 * p.s - gamma.order()) * rec.tail;
  if (rec.rhs_factor > 0.0) {
    rec.ratio = rec.lhs / rec.rhs_factor;
  } else if (rec.lhs > 8.0 * lhs.error_estimate + 1e-300) {
    throw std::runtime_error(
        "cauchy_estimate_record: zero tail against nonzero derivative; the field cannot be "
        "s-harmonic in B(0,R)");
  }
  return rec;
}

DecayReport liouville_decay_experiment(const FracParams& p, const ExteriorData& g,
                                       const MultiIndex& gamma, const std::vector<double>& radii,
                                       const QuadSpec& spec) {
  p.validate();
  if (!g.bound_hint)
    throw std::invalid_argument("liouville_decay_experiment: datum must be bounded (bound_hint)");
  if (!(gamma.order() > 2.0 * p.s))
    throw std::invalid_argument("liouville_decay_experiment: requires |gamma| > 2s");
  if (radii.size() < 2) throw std::domain_error("liouville_decay_experiment: need at least 2 radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::domain_error("liouville_decay_experiment: radii must be strictly increasing");

  DecayReport report;
  report.gamma = gamma;
  report.radii = radii;
  report.bound_slope = 2.0 * p.s - gamma.order();
  report.composite_slope = -static_cast<double>(gamma.order());

  const Vec origin = Vec::zero(p.n);
  for (double R : radii) {
    const ScalarField u_r = extension_field(p, Ball{origin, R}, g, spec);
    const EstimateRecord rec = cauchy_estimate_record(p, u_r, gamma, R, spec);
    report.derivative_values.push_back(rec.lhs);
    report.cauchy_ratios.push_back(rec.ratio.value_or(0.0));
  }

  // Least-squares slope of log|D^gamma u_R(0)| against log R. Derivatives at
  // rounding level (antisymmetric data give exact zeros up to summation
  // noise) leave the slope undefined.
  const double noise_floor = 1e-10 * g.bound_hint.value_or(1.0);
  report.slope_defined =
      std::all_of(report.derivative_values.begin(), report.derivative_values.end(),
                  [noise_floor](double v) { return v > noise_floor; });
  if (report.slope_defined) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(radii.size());
    for (size_t i = 0; i < radii.size(); ++i) {
      const double lx = std::log(radii[i]);
      const double ly = std::log(report.derivative_values[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    report.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return report;
}

ScalarField difference_field(const ScalarField& u, const Vec& h) {
  ScalarField d;
  const auto base = u.eval;
  const Vec shift = h;
  d.eval = [base, shift](const Vec& y) { return base(y + shift) - base(y); };
  d.l1s_certified = u.l1s_certified;  // translates of L^1_s fields stay in L^1_s
  if (u.growth_hint) {
    d.growth_hint = GrowthHint{2.0 * u.growth_hint->bound *
                                   std::pow(1.0 + h.norm(), std::max(u.growth_hint->power, 0.0)),
                               u.growth_hint->power};
  }
  return d;
}

}  // namespace fraclab
