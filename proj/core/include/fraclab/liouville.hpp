#pragma once

#include <optional>
#include <vector>

#include "fraclab/constants.hpp"
#include "fraclab/fields.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

/// Both sides of the Cauchy-type derivative estimate at radius R:
///   |D^gamma u(0)| <= C R^{2s-|gamma|} int_{|y| >= R/4} |u(y)| |y|^{-n-2s} dy.
struct EstimateRecord {
  MultiIndex gamma;
  double radius = 0.0;       // R
  double lhs = 0.0;          // |D^gamma u(0)|
  double tail = 0.0;         // the weighted tail integral from R/4
  double rhs_factor = 0.0;   // R^{2s-|gamma|} * tail
  std::optional<double> ratio;  // lhs / rhs_factor when rhs_factor > 0
};

/// D^gamma u(x) extracted through the kernel derivative:
///   int_{|x-y| >= r0} u(y) D^gamma Psi_{r0}(x-y) dy.
/// Caller asserts u is s-harmonic in a ball of radius > 4 r0 around x.
QuadResult derivative_via_kernel(const FracParams& p, const ScalarField& u,
                                 const MultiIndex& gamma, const Vec& x, double r0,
                                 const QuadSpec& spec);

/// Evaluates both sides of the estimate for u s-harmonic in B(0,R), taking
/// r0 = 0.245 R (just under the R/4 limit the proof approaches). A zero tail
/// against a nonzero lhs signals a broken s-harmonicity assumption and
/// throws std::runtime_error.
EstimateRecord cauchy_estimate_record(const FracParams& p, const ScalarField& u,
                                      const MultiIndex& gamma, double R,
                                      const QuadSpec& spec);

struct DecayReport {
  MultiIndex gamma;
  std::vector<double> radii;
  std::vector<double> derivative_values;  // |D^gamma u_R(0)|
  std::vector<double> cauchy_ratios;      // lhs / (R^{2s-|gamma|} tail) per radius
  bool slope_defined = false;
  double fitted_slope = 0.0;              // least-squares log-log slope
  double bound_slope = 0.0;               // 2s - |gamma| (tail treated as R-free)
  double composite_slope = 0.0;           // -|gamma| (bounded-data tail folded in)
};

/// For each R builds the extension of g on B(0,R) and records
/// |D^gamma u_R(0)| via the kernel device; reports the measured log-log
/// slope next to the two reference slopes. Requires bounded g
/// (bound_hint set), |gamma| > 2s, and strictly increasing radii.
DecayReport liouville_decay_experiment(const FracParams& p, const ExteriorData& g,
                                       const MultiIndex& gamma,
                                       const std::vector<double>& radii,
                                       const QuadSpec& spec);

/// The difference field y -> u(y+h) - u(y); inherits the L^1_s certificate
/// and (doubled) growth hint.
ScalarField difference_field(const ScalarField& u, const Vec& h);

}  // namespace fraclab
