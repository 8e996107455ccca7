#pragma once

#include <string>

#include "fraclab/constants.hpp"
#include "fraclab/fields.hpp"

namespace fraclab {

/// Named scalar fields for experiments and the CLI:
///   affine[:a,b]   a*y1 + b (default 0.7, -0.3); L^1_s only for s > 1/2
///   cosine         cos(y1)
///   bump2s         (1 - |y|^2)_+^s
///   riesz-kernel   |y|^{2s-n} (requires 2s < n)
/// Throws std::invalid_argument for unknown names or invalid parameters.
ScalarField make_field(const std::string& name, const FracParams& p);

/// Named exterior data:
///   one                constant 1
///   affine:<a,b>       a*y1 + b
///   halfspace[:c]      indicator of y1 > c
///   sign[:c]           sign(y1 - c)
///   bounded-noise:<seed>  seeded trigonometric noise with sup-norm 1
ExteriorData make_exterior(const std::string& name, const FracParams& p);

/// Named compact densities:
///   bump   exp(-1/(1-|y|^2)) on the unit ball, C^infinity
///   ball   indicator of the unit ball
///   zero   identically 0
CompactDensity make_density(const std::string& name);

}  // namespace fraclab
