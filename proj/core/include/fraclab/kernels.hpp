#pragma once

#include "fraclab/constants.hpp"
#include "fraclab/geometry.hpp"

namespace fraclab {

/// Poisson kernel of the ball B(0,r):
///   beta_ns (r^2-|x|^2)^s (|y|^2-r^2)^{-s} |y-x|^{-n}  for |x| < r < |y|,
///   0 otherwise. Evaluation exactly on |y| = r throws std::domain_error
/// (the boundary is an integrable singularity, not a value).
double poisson_kernel(const FracParams& p, double r, const Vec& x, const Vec& y);

/// Smooth bump supported on (1,4), normalized to unit integral:
///   Z^{-1} exp(-1/((r-1)(4-r))).
double mollifier_phi(double r);

/// Radial profile of the regularized kernel: psi(y) = psi_radial(|y|).
/// Zero for rho <= 1 (exactly); the (rho - r)^{-s} endpoint singularity of
/// the radial integral is removed by substitution for rho in (1,4].
double psi_radial(const FracParams& p, double rho);

/// Regularized kernel Psi(y) = int_1^4 P_r(0,y) phi(r) dr. Radial,
/// nonnegative, vanishes on the closed unit ball, total integral 1.
double psi(const FracParams& p, const Vec& y);

/// Rescaling Psi_{r0}(y) = r0^{-n} Psi(y/r0); vanishes for |y| <= r0.
double psi_scaled(const FracParams& p, double r0, const Vec& y);

/// Limit of psi(y) |y|^{n+2s} as |y| -> infinity:
/// beta_ns * int_1^4 r^{2s} phi(r) dr.
double psi_tail_coefficient(const FracParams& p);

struct PsiDeriv {
  double value = 0.0;
  /// Set when the finite-difference error estimate near the |y| = r0
  /// transition exceeds the expected accuracy.
  bool reduced_accuracy = false;
};

/// D^gamma Psi_{r0}(y) by nested central differences with Richardson
/// extrapolation on psi_scaled; exactly zero for |y| < r0. Supports
/// |gamma| <= 4.
PsiDeriv psi_derivative(const FracParams& p, const MultiIndex& gamma, double r0,
                        const Vec& y);

/// Riesz kernel |x-y|^{2s-n}; requires 2s < n and x != y.
double riesz_kernel(const FracParams& p, const Vec& x, const Vec& y);

}  // namespace fraclab
