#pragma once

#include "fraclab/constants.hpp"
#include "fraclab/fields.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

/// s-harmonic extension of the exterior datum g into the ball:
///   u(x) = int_{|y-a| > r} P_r(x-a, y-a) g(y) dy,  x strictly inside.
/// The (|y-a| - r)^{-s} boundary layer on (r, 2r] is integrated with the
/// singularity-removing substitution; the far field by exterior-ball
/// quadrature with a closed-form power tail. Throws std::domain_error when
/// x is on or outside the closed ball.
QuadResult poisson_extend(const FracParams& p, const Ball& ball, const ExteriorData& g,
                          const Vec& x, const QuadSpec& spec);

/// The extension and the datum glued into one field on R^n:
/// Poisson integral strictly inside the ball, g outside.
ScalarField extension_field(const FracParams& p, const Ball& ball, const ExteriorData& g,
                            const QuadSpec& spec);

/// Mean-value convolution u * Psi_{r0}(x) = int u(y) Psi_{r0}(x-y) dy,
/// integrated over |x-y| >= r0 only (Psi_{r0} vanishes inside).
QuadResult convolve_psi(const FracParams& p, const ScalarField& u, double r0,
                        const Vec& x, const QuadSpec& spec);

/// |u(x) - u * Psi_{r0}(x)|. Requires dist(x, complement of omega) > 4 r0,
/// the margin on which the mean-value identity is claimed; throws
/// std::domain_error otherwise.
double mean_value_residual(const FracParams& p, const ScalarField& u, const Domain& omega,
                           double r0, const Vec& x, const QuadSpec& spec);

}  // namespace fraclab
