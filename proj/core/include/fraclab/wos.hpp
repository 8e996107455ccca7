#pragma once

#include <cstdint>
#include <vector>

#include "fraclab/constants.hpp"
#include "fraclab/fields.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

/// Counter-based RNG: the stream is a pure function of (seed, sample index),
/// so results are independent of scheduling and worker count.
class SampleRng {
 public:
  SampleRng(uint64_t seed, uint64_t sample_index);
  uint64_t next_u64();
  double next_unit();  // [0, 1)

 private:
  uint64_t state_;
};

/// Inverse-CDF table of the centered exit law of P_r(0,.): the radius ratio
/// rho = |exit|/r has density sigma_{n-1} beta_ns t^{-1} (t^2-1)^{-s} on
/// (1, inf), independent of r by scale invariance. Interpolation is
/// monotone piecewise-cubic in log rho; quantiles beyond the table use the
/// analytic power tail.
struct ExitSampler {
  FracParams params;
  std::vector<double> quantile;   // strictly increasing, starts at 0
  std::vector<double> log_ratio;  // strictly increasing, starts at 0
  std::vector<double> tangent;    // d(log ratio)/d(quantile), monotone-safe
  double table_end_quantile = 1.0;
  double tail_coefficient = 0.0;  // sigma beta / 2, for the analytic tail

  /// CDF of the radius ratio (table + analytic tail).
  double cdf(double ratio) const;
  /// Quantile function (inverse CDF).
  double ratio_for_quantile(double q) const;
};

/// Builds the table by cumulative quadrature of the radial density, with the
/// (t-1)^{-s} endpoint handled by substitution. Verifies total mass 1 within
/// 1e-8 and throws std::runtime_error otherwise. table_size >= 256.
ExitSampler build_exit_sampler(const FracParams& p, int table_size, const QuadSpec& spec);

/// One exit draw from the ball B(center, r): center + (r * rho) * theta with
/// rho from the inverse-CDF table and theta uniform on S^{n-1}.
/// The landing point is strictly outside the closed ball.
Vec sample_exit(const ExitSampler& sampler, const Vec& center, double r, SampleRng& rng);

struct WalkResult {
  double estimate = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  long long samples = 0;
  double mean_steps = 0.0;
  long long max_steps_hit = 0;
  bool flagged = false;  // max_steps_hit > 1% of samples
};

/// Walk-on-spheres solve of (-Delta)^s u = 0 in omega with exterior datum g,
/// evaluated at x0: each step jumps from the current point with the exact
/// exit law of the inscribed ball; walks score g at the landing point once
/// outside omega. Truncated walks score g at the nearest exterior point and
/// are counted in max_steps_hit. Deterministic for fixed seed regardless of
/// thread count. Throws std::domain_error when x0 is not interior.
WalkResult wos_solve(const FracParams& p, const Domain& omega, const ExteriorData& g,
                     const Vec& x0, long long n_samples, int max_steps, uint64_t seed,
                     const QuadSpec& spec, int threads = 0);

}  // namespace fraclab
