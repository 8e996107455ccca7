#include "fraclab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

// Internal spec for kernel quadratures. Tight, so that finite differences on
// psi see a smooth function rather than adaptive-refinement noise.
const QuadSpec& kernel_spec() {
  static const QuadSpec spec = [] {
    QuadSpec s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-300;
    s.max_subdivisions = 4000;
    return s;
  }();
  return spec;
}

double raw_bump(double r) {
  const double a = (r - 1.0) * (4.0 - r);
  if (a <= 0.0) return 0.0;
  return std::exp(-1.0 / a);
}

double mollifier_normalizer() {
  static const double z = integrate_1d(raw_bump, 1.0, 4.0, kernel_spec()).value;
  return z;
}

}  // namespace

double poisson_kernel(const FracParams& p, double r, const Vec& x, const Vec& y) {
  p.validate();
  if (!(r > 0.0)) throw std::invalid_argument("poisson_kernel: radius must be positive");
  const double ax = x.norm();
  const double ay = y.norm();
  if (ay == r)
    throw std::domain_error(
        "poisson_kernel: |y| = r is an integrable boundary singularity, not a value");
  if (ax >= r || ay < r) return 0.0;
  const double beta = constants_for(p).beta_ns;
  const double num = r * r - ax * ax;
  const double den = ay * ay - r * r;
  return beta * std::pow(num / den, p.s) * std::pow(distance(x, y), -p.n);
}

double mollifier_phi(double r) { return raw_bump(r) / mollifier_normalizer(); }

double psi_radial(const FracParams& p, double rho) {
  p.validate();
  if (rho <= 1.0) return 0.0;
  const double s = p.s;
  const double beta = constants_for(p).beta_ns;

  QuadResult inner;
  if (rho <= 4.0) {
    // (rho^2 - r^2)^{-s} = (rho - r)^{-s} (rho + r)^{-s}: singular at the
    // upper limit r = rho (at rho = 4 the mollifier kills it, the
    // substitution just keeps the integrand bounded).
    const Fn1D regular = [s, rho](double r) {
      const double phi = mollifier_phi(r);
      if (phi == 0.0) return 0.0;
      return std::pow(r, 2.0 * s) * std::pow(rho + r, -s) * phi;
    };
    inner = integrate_endpoint_singular(regular, 1.0, rho, s, /*at_b=*/true, kernel_spec());
  } else {
    const Fn1D integrand = [s, rho](double r) {
      const double phi = mollifier_phi(r);
      if (phi == 0.0) return 0.0;
      return std::pow(r, 2.0 * s) * std::pow(rho * rho - r * r, -s) * phi;
    };
    inner = integrate_1d(integrand, 1.0, 4.0, kernel_spec());
  }
  return beta * std::pow(rho, -p.n) * inner.value;
}

double psi(const FracParams& p, const Vec& y) { return psi_radial(p, y.norm()); }

double psi_scaled(const FracParams& p, double r0, const Vec& y) {
  if (!(r0 > 0.0)) throw std::invalid_argument("psi_scaled: r0 must be positive");
  return std::pow(r0, -p.n) * psi_radial(p, y.norm() / r0);
}

double psi_tail_coefficient(const FracParams& p) {
  p.validate();
  const double s = p.s;
  const Fn1D weighted = [s](double r) { return std::pow(r, 2.0 * s) * mollifier_phi(r); };
  return constants_for(p).beta_ns * integrate_1d(weighted, 1.0, 4.0, kernel_spec()).value;
}

namespace {

// Central-difference stencils of order 2 in the step, per derivative order.
double central_difference(const std::function<double(const Vec&)>& f, const Vec& y, int axis,
                          int order, double h) {
  Vec e = Vec::unit(y.dim(), axis);
  auto at = [&](double t) { return f(y + t * e); };
  switch (order) {
    case 1: return (at(h) - at(-h)) / (2.0 * h);
    case 2: return (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
    case 3: return (at(2.0 * h) - 2.0 * at(h) + 2.0 * at(-h) - at(-2.0 * h)) / (2.0 * h * h * h);
    case 4:
      return (at(2.0 * h) - 4.0 * at(h) + 6.0 * at(0.0) - 4.0 * at(-h) + at(-2.0 * h)) /
             (h * h * h * h);
    default: throw std::invalid_argument("central_difference: order must be 1..4");
  }
}

// Nested mixed partial D^gamma via per-axis central differences, all at step h.
double mixed_difference(const FracParams& p, const MultiIndex& gamma, double r0, const Vec& y,
                        int axis, double h) {
  while (axis < gamma.dim && gamma.entries[static_cast<size_t>(axis)] == 0) ++axis;
  if (axis >= gamma.dim) return psi_scaled(p, r0, y);
  const int order = gamma.entries[static_cast<size_t>(axis)];
  const std::function<double(const Vec&)> rest = [&](const Vec& z) {
    return mixed_difference(p, gamma, r0, z, axis + 1, h);
  };
  return central_difference(rest, y, axis, order, h);
}

}  // namespace

PsiDeriv psi_derivative(const FracParams& p, const MultiIndex& gamma, double r0, const Vec& y) {
  p.validate();
  if (!(r0 > 0.0)) throw std::invalid_argument("psi_derivative: r0 must be positive");
  if (gamma.dim != p.n) throw std::invalid_argument("psi_derivative: multi-index dimension mismatch");
  const int order = gamma.order();
  if (order > 4) throw std::invalid_argument("psi_derivative: |gamma| <= 4 supported");

  const double rho = y.norm();
  if (rho < r0) return {0.0, false};  // interior of the vanishing set
  if (order == 0) return {psi_scaled(p, r0, y), false};

  // Step scale: the kernel varies on scale r0 near its support and on scale
  // rho farther out (power-law decay).
  const double scale = std::max(r0, 0.25 * rho);
  const double h0 = 0.05 * scale;

  // Richardson triangle over h0, h0/2, h0/4 (second-order stencils).
  double d[3];
  for (int k = 0; k < 3; ++k)
    d[k] = mixed_difference(p, gamma, r0, y, 0, h0 / static_cast<double>(1 << k));
  const double r1 = (4.0 * d[1] - d[0]) / 3.0;
  const double r2 = (4.0 * d[2] - d[1]) / 3.0;
  const double r3 = (16.0 * r2 - r1) / 15.0;
  const double err = std::abs(r3 - r2);

  PsiDeriv out;
  out.value = r3;
  const double natural_scale = std::pow(r0, -p.n - order);
  out.reduced_accuracy = err > std::max(1e-8 * natural_scale, 1e-4 * std::abs(r3));
  return out;
}

double riesz_kernel(const FracParams& p, const Vec& x, const Vec& y) {
  p.validate();
  if (!p.riesz_regime()) throw std::domain_error("riesz_kernel: requires 2s < n");
  const double d = distance(x, y);
  if (d == 0.0) throw std::domain_error("riesz_kernel: singular at x = y");
  return std::pow(d, 2.0 * p.s - p.n);
}

}  // namespace fraclab
