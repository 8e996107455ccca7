#include "fraclab/wos.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fraclab/parallel.hpp"

namespace fraclab {

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SampleRng::SampleRng(uint64_t seed, uint64_t sample_index) {
  // Two mixing rounds decorrelate the (seed, index) lattice.
  uint64_t s = seed;
  const uint64_t a = splitmix64(s);
  s = a ^ (sample_index * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
  state_ = splitmix64(s);
}

uint64_t SampleRng::next_u64() { return splitmix64(state_); }

double SampleRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double ExitSampler::cdf(double ratio) const {
  if (ratio <= 1.0) return 0.0;
  const double lr = std::log(ratio);
  if (lr >= log_ratio.back()) {
    // Analytic leading-order tail: 1 - F(t) ~ (sigma beta / 2) t^{-2s} / s.
    const double s = params.s;
    return 1.0 - tail_coefficient * std::pow(ratio, -2.0 * s) / s;
  }
  // Monotone cubic Hermite inverse of the stored (quantile -> log ratio) map,
  // evaluated by bisection in the forward direction.
  const auto it = std::upper_bound(log_ratio.begin(), log_ratio.end(), lr);
  size_t j = static_cast<size_t>(std::max<ptrdiff_t>(1, it - log_ratio.begin())) - 1;
  if (j + 1 >= log_ratio.size()) j = log_ratio.size() - 2;
  double qlo = quantile[j], qhi = quantile[j + 1];
  for (int i = 0; i < 60; ++i) {
    const double qm = 0.5 * (qlo + qhi);
    if (ratio_for_quantile(qm) < ratio) {
      qlo = qm;
    } else {
      qhi = qm;
    }
  }
  return 0.5 * (qlo + qhi);
}

double ExitSampler::ratio_for_quantile(double q) const {
  if (q <= 0.0) return std::exp(log_ratio.front());
  if (q >= table_end_quantile) {
    // Invert the analytic tail.
    const double s = params.s;
    const double tau = std::max(1.0 - q, 1e-300);
    return std::pow(tau * s / tail_coefficient, -0.5 / s);
  }
  const auto it = std::upper_bound(quantile.begin(), quantile.end(), q);
  size_t j = static_cast<size_t>(std::max<ptrdiff_t>(1, it - quantile.begin())) - 1;
  if (j + 1 >= quantile.size()) j = quantile.size() - 2;
  const double dq = quantile[j + 1] - quantile[j];
  const double t = (q - quantile[j]) / dq;
  const double y0 = log_ratio[j], y1 = log_ratio[j + 1];
  const double m0 = tangent[j] * dq, m1 = tangent[j + 1] * dq;
  const double t2 = t * t, t3 = t2 * t;
  const double lr = (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 +
                    (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1;
  return std::exp(lr);
}

ExitSampler build_exit_sampler(const FracParams& p, int table_size, const QuadSpec& spec) {
  p.validate();
  spec.validate();
  if (table_size < 256) throw std::invalid_argument("build_exit_sampler: table_size >= 256");

  const double s = p.s;
  const double sigma_beta = unit_sphere_area(p.n) * constants_for(p).beta_ns;

  // Radius-ratio density sigma beta t^{-1} (t^2-1)^{-s} on (1, inf).
  const Fn1D density = [s, sigma_beta](double t) {
    return sigma_beta * std::pow(t * t - 1.0, -s) / t;
  };

  // Cumulative quadrature over a grid graded like the (t-1)^{-s} endpoint
  // near 1 and geometric out to t_max; the remaining mass is analytic.
  const double t_max = 1e6;
  const int m_near = table_size / 2;
  const int m_far = table_size - m_near;
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(table_size) + 1);
  for (int i = 0; i <= m_near; ++i) {
    const double w = static_cast<double>(i) / m_near;  // uniform in (t-1)^{1-s} up to t = 2
    grid.push_back(1.0 + std::pow(w, 1.0 / (1.0 - s)));
  }
  const double log_step = std::log(t_max / 2.0) / m_far;
  for (int i = 1; i <= m_far; ++i) grid.push_back(2.0 * std::exp(log_step * i));

  QuadSpec panel_spec = spec;
  panel_spec.rel_tol = 1e-12;
  panel_spec.abs_tol = 1e-16;
  panel_spec.max_subdivisions = 50;

  ExitSampler sampler;
  sampler.params = p;
  sampler.tail_coefficient = 0.5 * sigma_beta;
  sampler.quantile.reserve(grid.size());
  sampler.log_ratio.reserve(grid.size());

  double cum = 0.0;
  sampler.quantile.push_back(0.0);
  sampler.log_ratio.push_back(0.0);  // ratio 1 at quantile 0
  for (size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i];
    double piece;
    if (i == 1) {
      // First cell touches the singular endpoint t = 1.
      const Fn1D regular = [s, sigma_beta](double t) {
        return sigma_beta * std::pow(t + 1.0, -s) / t;
      };
      piece = integrate_endpoint_singular(regular, 1.0, b, s, /*at_b=*/false, panel_spec).value;
    } else {
      piece = integrate_1d(density, a, b, panel_spec).value;
    }
    cum += piece;
    if (cum > sampler.quantile.back()) {  // keep strictly increasing
      sampler.quantile.push_back(cum);
      sampler.log_ratio.push_back(std::log(b));
    }
  }
  sampler.table_end_quantile = sampler.quantile.back();

  // Mass check: table mass plus the analytic tail beyond t_max must be 1.
  const double tail_mass = sampler.tail_coefficient * std::pow(t_max, -2.0 * s) / s;
  const double total = sampler.table_end_quantile + tail_mass;
  if (std::abs(total - 1.0) > 1e-8)
    throw std::runtime_error("build_exit_sampler: exit law mass " + std::to_string(total) +
                             " deviates from 1 beyond 1e-8");

  // Monotone tangents d(log t)/dq: harmonic mean of adjacent secants.
  const size_t m = sampler.quantile.size();
  sampler.tangent.assign(m, 0.0);
  std::vector<double> secant(m - 1);
  for (size_t i = 0; i + 1 < m; ++i)
    secant[i] = (sampler.log_ratio[i + 1] - sampler.log_ratio[i]) /
                (sampler.quantile[i + 1] - sampler.quantile[i]);
  sampler.tangent[0] = secant.front();
  sampler.tangent[m - 1] = secant.back();
  for (size_t i = 1; i + 1 < m; ++i) {
    const double a = secant[i - 1], b = secant[i];
    sampler.tangent[i] = (a > 0.0 && b > 0.0) ? 2.0 * a * b / (a + b) : 0.0;
  }
  return sampler;
}

Vec sample_exit(const ExitSampler& sampler, const Vec& center, double r, SampleRng& rng) {
  if (!(r > 0.0)) throw std::invalid_argument("sample_exit: radius must be positive");
  const int n = center.dim();
  const double ratio = sampler.ratio_for_quantile(rng.next_unit());

  Vec dir(n);
  switch (n) {
    case 1:
      dir[0] = rng.next_unit() < 0.5 ? -1.0 : 1.0;
      break;
    case 2: {
      const double th = 2.0 * kPi * rng.next_unit();
      dir[0] = std::cos(th);
      dir[1] = std::sin(th);
      break;
    }
    case 3: {
      const double z = 2.0 * rng.next_unit() - 1.0;
      const double ph = 2.0 * kPi * rng.next_unit();
      const double st = std::sqrt(std::max(0.0, 1.0 - z * z));
      dir[0] = st * std::cos(ph);
      dir[1] = st * std::sin(ph);
      dir[2] = z;
      break;
    }
    default:
      throw std::invalid_argument("sample_exit: supported dimensions are 1, 2, 3");
  }
  return center + (r * ratio) * dir;
}

WalkResult wos_solve(const FracParams& p, const Domain& omega, const ExteriorData& g,
                     const Vec& x0, long long n_samples, int max_steps, uint64_t seed,
                     const QuadSpec& spec, int threads) {
  p.validate();
  if (omega.dim != p.n) throw std::invalid_argument("wos_solve: domain dimension mismatch");
  if (!domain_contains(omega, x0))
    throw std::domain_error("wos_solve: start point must lie strictly inside the domain");
  if (n_samples < 1) throw std::invalid_argument("wos_solve: need at least one sample");
  if (max_steps < 1) throw std::invalid_argument("wos_solve: max_steps must be >= 1");
  if (!g.bound_hint)
    throw std::invalid_argument("wos_solve: bounded datum required for Monte Carlo error control");

  const ExitSampler sampler = build_exit_sampler(p, 4096, spec);

  // Fixed-size blocks accumulated in index order: the result is a pure
  // function of (seed, n_samples) whatever the worker count.
  const long long block_size = 1024;
  const long long blocks = (n_samples + block_size - 1) / block_size;
  struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    long long steps = 0;
    long long truncated = 0;
  };
  std::vector<BlockSums> partial(static_cast<size_t>(blocks));

  parallel_for_index(blocks, threads, [&](long long blk) {
    BlockSums acc;
    const long long lo = blk * block_size;
    const long long hi = std::min(n_samples, lo + block_size);
    for (long long i = lo; i < hi; ++i) {
      SampleRng rng(seed, static_cast<uint64_t>(i));
      Vec x = x0;
      double score = 0.0;
      bool done = false;
      for (int step = 0; step < max_steps; ++step) {
        const double r = dist_to_complement(omega, x);
        x = sample_exit(sampler, x, r, rng);
        ++acc.steps;
        if (!domain_contains(omega, x)) {
          score = g.eval(x);
          done = true;
          break;
        }
      }
      if (!done) {
        score = g.eval(nearest_exterior_point(omega, x));
        ++acc.truncated;
      }
      acc.sum += score;
      acc.sum_sq += score * score;
    }
    partial[static_cast<size_t>(blk)] = acc;
  });

  double sum = 0.0, sum_sq = 0.0;
  long long steps = 0, truncated = 0;
  for (const BlockSums& b : partial) {
    sum += b.sum;
    sum_sq += b.sum_sq;
    steps += b.steps;
    truncated += b.truncated;
  }

  WalkResult out;
  out.samples = n_samples;
  out.estimate = sum / static_cast<double>(n_samples);
  const double nn = static_cast<double>(n_samples);
  const double var = n_samples > 1 ? std::max(0.0, (sum_sq - sum * sum / nn) / (nn - 1.0)) : 0.0;
  out.std_error = std::sqrt(var / nn);
  out.mean_steps = static_cast<double>(steps) / nn;
  out.max_steps_hit = truncated;
  out.flagged = truncated * 100 > n_samples;
  return out;
}

}  // namespace fraclab
