#include "fraclab/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclab {

void FracParams::validate() const {
  if (n < 1) throw std::invalid_argument("FracParams: dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("FracParams: order s must lie in (0,1)");
}

namespace {

// Lanczos g = 7, 9 terms. Good to ~1e-15 relative on the real half-line.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

double lanczos_log_gamma(double x) {
  // x >= 0.5 here.
  double acc = kLanczos[0];
  for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (x - 1.0 + k);
  double t = x + kLanczosG - 0.5;
  return kHalfLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

ConstantsTable constants_for(const FracParams& p) {
  p.validate();
  const double n = static_cast<double>(p.n);
  const double s = p.s;

  ConstantsTable t;
  t.c_ns = s * (1.0 - s) * std::exp(-0.5 * n * std::log(kPi) + s * std::log(4.0) +
                                    log_gamma(0.5 * n + s) - log_gamma(2.0 - s));
  t.beta_ns = std::exp(log_gamma(0.5 * n) - (0.5 * n + 1.0) * std::log(kPi)) * std::sin(s * kPi);
  if (p.riesz_regime()) {
    t.alpha_ns = std::exp(0.5 * n * std::log(kPi) + 2.0 * s * std::log(2.0) + log_gamma(s) -
                          log_gamma(0.5 * (n - 2.0 * s)));
  }
  return t;
}

double unit_sphere_area(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: throw std::invalid_argument("unit_sphere_area: supported dimensions are 1, 2, 3");
  }
}

}  // namespace fraclab
