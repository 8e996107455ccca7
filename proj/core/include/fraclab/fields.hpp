#pragma once

#include <functional>
#include <optional>

#include "fraclab/geometry.hpp"

namespace fraclab {

/// Power growth certificate |u(y)| <= bound * (1 + |y|)^power.
struct GrowthHint {
  double bound = 1.0;
  double power = 0.0;
};

/// Real-valued function on R^n given as an evaluation callback plus an
/// L^1_s growth certificate (finiteness of the |y|^{-n-2s}-weighted mass).
struct ScalarField {
  std::function<double(const Vec&)> eval;
  bool l1s_certified = false;
  std::optional<GrowthHint> growth_hint;
};

/// Boundary datum living on the complement of a ball (or of a domain).
struct ExteriorData {
  std::function<double(const Vec&)> eval;
  bool l1s_certified = false;
  std::optional<double> bound_hint;  // sup |g| when bounded
  std::optional<GrowthHint> growth_hint;
};

/// Density with compact support: eval vanishes outside |y| <= support_radius.
struct CompactDensity {
  std::function<double(const Vec&)> eval;
  double support_radius = 1.0;
  bool smooth = true;
};

}  // namespace fraclab
