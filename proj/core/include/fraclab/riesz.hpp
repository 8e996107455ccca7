#pragma once

#include <string>
#include <vector>

#include "fraclab/constants.hpp"
#include "fraclab/fields.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

/// normalization * int f(y) |x-y|^{2s-n} dy in the Riesz regime 2s < n.
/// Radial quadrature centered at x turns the kernel singularity into the
/// integrable weight rho^{2s-1}. Throws std::domain_error when 2s >= n.
QuadResult riesz_potential(const FracParams& p, const CompactDensity& f, const Vec& x,
                           double normalization, const QuadSpec& spec);

struct InversionReport {
  double normalization = 0.0;
  std::vector<Vec> points;
  std::vector<double> potential;      // u(x_i)
  std::vector<double> fraclap;        // (-Delta)^s u (x_i)
  std::vector<double> density;        // f(x_i)
  std::vector<double> abs_residual;   // |fraclap - density|
  double density_scale = 0.0;         // sup |f| over the support (sampled)
  double max_rel_residual = 0.0;      // max abs_residual / density_scale
  bool converged = true;
};

/// Builds u = riesz_potential(f, normalization), applies the pointwise
/// fractional Laplacian at each test point and reports the residual
/// against f, relative to the sampled sup |f|.
InversionReport inversion_residual(const FracParams& p, const CompactDensity& f,
                                   double normalization, const std::vector<Vec>& test_points,
                                   const QuadSpec& spec, int threads = 0);

enum class AlphaVerdict { kAlpha, kReciprocal, kInconclusive };

struct AdjudicationReport {
  double alpha = 0.0;
  double threshold = 5e-2;
  InversionReport with_alpha;
  InversionReport with_reciprocal;
  AlphaVerdict verdict = AlphaVerdict::kInconclusive;
};

std::string to_string(AlphaVerdict v);

/// Runs the inversion residual with normalization alpha_ns and 1/alpha_ns
/// and reports which of the two makes (-Delta)^s u = f hold below the
/// threshold. Neither (or both) passing yields kInconclusive, which flags
/// a quadrature problem rather than deciding the constant.
AdjudicationReport adjudicate_alpha(const FracParams& p, const CompactDensity& f,
                                    const std::vector<Vec>& test_points,
                                    const QuadSpec& spec, double threshold = 5e-2,
                                    int threads = 0);

}  // namespace fraclab
