#pragma once

#include <vector>

#include "fraclab/constants.hpp"
#include "fraclab/fields.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

struct FracLapOptions {
  /// Near/far split radius h = near_radius_scale * (1 + |x|).
  double near_radius_scale = 1e-2;
  /// Below rho_floor = cancellation_floor_scale * (1 + |x|) the second
  /// difference is frozen at its rho_floor value; the Taylor-remainder
  /// bound for the frozen band goes into error_estimate.
  double cancellation_floor_scale = 1e-3;
};

/// Pointwise (-Delta)^s u(x) for u that is C^2 near x, computed as
///   (C_{n,s}/2) int (2u(x) - u(x+z) - u(x-z)) |z|^{-n-2s} dz,
/// the absolutely convergent symmetric form of the principal-value integral.
/// Sign convention: this is the positive operator (-Delta)^s.
/// Throws std::invalid_argument when u lacks the L^1_s certificate.
QuadResult frac_laplacian_point(const FracParams& p, const ScalarField& u,
                                const Vec& x, const QuadSpec& spec,
                                const FracLapOptions& opt = {});

struct SHarmonicityReport {
  std::vector<Vec> points;
  std::vector<QuadResult> values;  // (-Delta)^s u at each point
  double max_abs_value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Evaluates (-Delta)^s u at each sample point (in parallel when threads > 1)
/// and tests max |value| against tol.
SHarmonicityReport s_harmonicity_report(const FracParams& p, const ScalarField& u,
                                        const std::vector<Vec>& sample_points,
                                        double tol, const QuadSpec& spec,
                                        int threads = 0);

}  // namespace fraclab
