#pragma once

#include <optional>

namespace fraclab {

/// Dimension and fractional order shared by every formula in the toolkit.
struct FracParams {
  int n = 1;       // ambient dimension, >= 1
  double s = 0.5;  // order, strictly in (0,1)

  /// Throws std::invalid_argument unless n >= 1 and 0 < s < 1.
  void validate() const;
  /// True in the Riesz regime 2s < n.
  bool riesz_regime() const { return 2.0 * s < static_cast<double>(n); }
};

/// The three normalization constants attached to (n, s).
/// alpha_ns is only defined in the Riesz regime 2s < n.
struct ConstantsTable {
  double c_ns = 0.0;     // singular-integral normalization
  double beta_ns = 0.0;  // ball Poisson kernel normalization
  std::optional<double> alpha_ns;
};

/// ln Gamma(x) for x > 0 via a Lanczos rational approximation with
/// reflection below 1/2. Relative error below 1e-13 on [0.5, 50].
double log_gamma(double x);

/// Evaluates the closed forms
///   c_ns     = s(1-s) pi^{-n/2} 4^s Gamma(n/2+s)/Gamma(2-s)
///   beta_ns  = Gamma(n/2) pi^{-n/2-1} sin(s pi)
///   alpha_ns = pi^{n/2} 2^{2s} Gamma(s)/Gamma((n-2s)/2)   (only if 2s < n)
ConstantsTable constants_for(const FracParams& p);

/// Surface measure of the unit sphere S^{n-1}: 2, 2*pi, 4*pi for n = 1,2,3.
double unit_sphere_area(int n);

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace fraclab
