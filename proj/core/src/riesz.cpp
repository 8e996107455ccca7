#include "fraclab/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclab/fraclap.hpp"
#include "fraclab/parallel.hpp"

namespace fraclab {

QuadResult riesz_potential(const FracParams& p, const CompactDensity& f, const Vec& x,
                           double normalization, const QuadSpec& spec) {
  p.validate();
  spec.validate();
  if (!p.riesz_regime()) throw std::domain_error("riesz_potential: requires 2s < n");
  if (!f.eval) throw std::invalid_argument("riesz_potential: density has no evaluator");
  if (!(f.support_radius > 0.0))
    throw std::invalid_argument("riesz_potential: support radius must be positive");

  const int n = p.n;
  const double s = p.s;
  const double ax = x.norm();

  long long evals = 0;
  QuadResult radial;
  if (ax > 2.0 * f.support_radius) {
    // Far from the support the kernel is smooth there; factorize around the
    // origin so the angular rules see the whole support, not a thin window.
    const Fn1D integrand = [&](double rho) {
      const FnPoint g = [&](const Vec& th) {
        ++evals;
        const Vec y = rho * th;
        return f.eval(y) * std::pow(distance(x, y), 2.0 * s - n);
      };
      return std::pow(rho, n - 1) * integrate_sphere(g, n, spec.sphere);
    };
    radial = integrate_1d(integrand, 0.0, f.support_radius, spec);
  } else {
    // Centered at x the kernel contributes rho^{n-1} rho^{2s-n} = rho^{2s-1}:
    // an integrable endpoint weight where the support covers x.
    const double lo = std::max(0.0, ax - f.support_radius);
    const double hi = ax + f.support_radius;
    const auto angular = [&](double rho) {
      const FnPoint g = [&](const Vec& th) {
        ++evals;
        return f.eval(x + rho * th);
      };
      return integrate_sphere(g, n, spec.sphere);
    };
    if (lo == 0.0 && 2.0 * s < 1.0) {
      radial = integrate_endpoint_singular(angular, 0.0, hi, 1.0 - 2.0 * s, /*at_b=*/false, spec);
    } else {
      const Fn1D integrand = [&](double rho) {
        return angular(rho) * std::pow(rho, 2.0 * s - 1.0);
      };
      radial = integrate_1d(integrand, lo, hi, spec);
    }
  }

  QuadResult out;
  out.value = normalization * radial.value;
  out.error_estimate = std::abs(normalization) * radial.error_estimate;
  out.evaluations = evals;
  out.converged = radial.converged;
  return out;
}

namespace {

double sampled_density_scale(const CompactDensity& f, int n) {
  // Sup |f| probed on a radial-diagonal grid of the support.
  double m = 0.0;
  const int steps = 64;
  for (int i = 0; i <= steps; ++i) {
    const double t = f.support_radius * i / steps;
    Vec axis = Vec::zero(n);
    axis[0] = t;
    m = std::max(m, std::abs(f.eval(axis)));
    Vec diag(n);
    for (int k = 0; k < n; ++k) diag[k] = t / std::sqrt(static_cast<double>(n));
    m = std::max(m, std::abs(f.eval(diag)));
  }
  return m;
}

}  // namespace

InversionReport inversion_residual(const FracParams& p, const CompactDensity& f,
                                   double normalization, const std::vector<Vec>& test_points,
                                   const QuadSpec& spec, int threads) {
  p.validate();
  if (!p.riesz_regime()) throw std::domain_error("inversion_residual: requires 2s < n");

  // Potential evaluator used inside the fractional Laplacian. The loose
  // residual threshold tolerates a modest angular rule; the scalar tolerance
  // has to stay well below the cancellation floor of the outer operator.
  QuadSpec inner = spec;
  inner.rel_tol = std::min(spec.rel_tol, 1e-7);
  inner.abs_tol = std::min(spec.abs_tol, 1e-9);
  inner.sphere.polar_points = std::min(spec.sphere.polar_points, 12);
  inner.sphere.azimuth_points = std::min(spec.sphere.azimuth_points, 24);
  inner.sphere.circle_points = std::min(spec.sphere.circle_points, 48);

  ScalarField u;
  const FracParams params = p;
  const CompactDensity density = f;
  u.eval = [params, density, normalization, inner](const Vec& y) {
    return riesz_potential(params, density, y, normalization, inner).value;
  };
  u.l1s_certified = true;
  u.growth_hint = GrowthHint{1.0, 2.0 * p.s - p.n};  // potential decays like |y|^{2s-n}

  QuadSpec outer = inner;
  outer.rel_tol = 1e-5;
  outer.abs_tol = 1e-6;
  // A wider near field and floor keep the second differences of the
  // quadrature-valued u above its own error level.
  FracLapOptions opt;
  opt.near_radius_scale = 5e-2;
  opt.cancellation_floor_scale = 1e-2;

  InversionReport report;
  report.normalization = normalization;
  report.points = test_points;
  report.potential.resize(test_points.size());
  report.fraclap.resize(test_points.size());
  report.density.resize(test_points.size());
  report.abs_residual.resize(test_points.size());
  report.density_scale = sampled_density_scale(f, p.n);

  std::vector<bool> ok(test_points.size(), true);
  parallel_for_index(static_cast<long long>(test_points.size()), threads, [&](long long idx) {
    const size_t i = static_cast<size_t>(idx);
    const Vec& pt = test_points[i];
    report.potential[i] = u.eval(pt);
    const QuadResult lap = frac_laplacian_point(params, u, pt, outer, opt);
    report.fraclap[i] = lap.value;
    report.density[i] = f.eval(pt);
    report.abs_residual[i] = std::abs(lap.value - report.density[i]);
    ok[i] = lap.converged;
  });

  double worst = 0.0;
  for (double r : report.abs_residual) worst = std::max(worst, r);
  report.max_rel_residual = report.density_scale > 0.0 ? worst / report.density_scale : worst;
  report.converged = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
  return report;
}

std::string to_string(AlphaVerdict v) {
  switch (v) {
    case AlphaVerdict::kAlpha: return "alpha";
    case AlphaVerdict::kReciprocal: return "1/alpha";
    case AlphaVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AdjudicationReport adjudicate_alpha(const FracParams& p, const CompactDensity& f,
                                    const std::vector<Vec>& test_points, const QuadSpec& spec,
                                    double threshold, int threads) {
  p.validate();
  if (!p.riesz_regime()) throw std::domain_error("adjudicate_alpha: requires 2s < n");

  AdjudicationReport report;
  report.threshold = threshold;
  report.alpha = *constants_for(p).alpha_ns;
  report.with_alpha = inversion_residual(p, f, report.alpha, test_points, spec, threads);
  report.with_reciprocal = inversion_residual(p, f, 1.0 / report.alpha, test_points, spec, threads);

  const bool alpha_ok = report.with_alpha.max_rel_residual < threshold;
  const bool recip_ok = report.with_reciprocal.max_rel_residual < threshold;
  if (alpha_ok == recip_ok) {
    report.verdict = AlphaVerdict::kInconclusive;  // quadrature problem, not a verdict
  } else {
    report.verdict = alpha_ok ? AlphaVerdict::kAlpha : AlphaVerdict::kReciprocal;
  }
  return report;
}

}  // namespace fraclab
