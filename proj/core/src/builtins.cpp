#include "fraclab/builtins.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fraclab/kernels.hpp"

namespace fraclab {

namespace {

struct NameArgs {
  std::string name;
  std::vector<double> args;
};

NameArgs split_name(const std::string& text) {
  NameArgs out;
  const size_t colon = text.find(':');
  out.name = text.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::string rest = text.substr(colon + 1);
  size_t pos = 0;
  while (pos <= rest.size()) {
    const size_t comma = rest.find(',', pos);
    const std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      size_t used = 0;
      out.args.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("builtin \"" + text + "\": bad numeric argument \"" + tok + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

double arg_or(const NameArgs& na, size_t i, double fallback) {
  return i < na.args.size() ? na.args[i] : fallback;
}

uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_from(uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Smooth bounded noise: a fixed seeded sum of cosines with sup-norm 1.
std::function<double(const Vec&)> trig_noise(uint64_t seed, int n) {
  constexpr int kTerms = 8;
  std::vector<Vec> freq;
  std::vector<double> amp, phase;
  uint64_t state = seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL;
  double amp_total = 0.0;
  for (int k = 0; k < kTerms; ++k) {
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = 0.5 + 2.5 * unit_from(mix64(state));
    freq.push_back(w);
    amp.push_back(2.0 * unit_from(mix64(state)) - 1.0);
    phase.push_back(2.0 * kPi * unit_from(mix64(state)));
    amp_total += std::abs(amp.back());
  }
  for (double& a : amp) a /= amp_total;
  return [freq, amp, phase](const Vec& y) {
    double v = 0.0;
    for (size_t k = 0; k < freq.size(); ++k) v += amp[k] * std::cos(dot(freq[k], y) + phase[k]);
    return v;
  };
}

}  // namespace

ScalarField make_field(const std::string& name, const FracParams& p) {
  p.validate();
  const NameArgs na = split_name(name);
  ScalarField u;

  if (na.name == "affine") {
    const double a = arg_or(na, 0, 0.7);
    const double b = arg_or(na, 1, -0.3);
    u.eval = [a, b](const Vec& y) { return a * y[0] + b; };
    u.l1s_certified = p.s > 0.5;  // affine functions are L^1_s only for s > 1/2
    u.growth_hint = GrowthHint{std::abs(a) + std::abs(b), 1.0};
    return u;
  }
  if (na.name == "cosine") {
    u.eval = [](const Vec& y) { return std::cos(y[0]); };
    u.l1s_certified = true;
    u.growth_hint = GrowthHint{1.0, 0.0};
    return u;
  }
  if (na.name == "bump2s") {
    const double s = p.s;
    u.eval = [s](const Vec& y) {
      const double t = 1.0 - y.norm_sq();
      return t > 0.0 ? std::pow(t, s) : 0.0;
    };
    u.l1s_certified = true;
    u.growth_hint = GrowthHint{1.0, 0.0};
    return u;
  }
  if (na.name == "riesz-kernel") {
    if (!p.riesz_regime())
      throw std::invalid_argument("builtin riesz-kernel requires the Riesz regime 2s < n");
    // Distance floor: quadrature nodes that land exactly on the pole get a
    // finite (huge) value instead of an exception; the pole is integrable.
    const double expo = 2.0 * p.s - p.n;
    u.eval = [expo](const Vec& y) { return std::pow(std::max(y.norm(), 1e-14), expo); };
    u.l1s_certified = true;
    u.growth_hint = GrowthHint{1.0, expo};
    return u;
  }
  throw std::invalid_argument("unknown field builtin \"" + name +
                              "\" (expected affine, cosine, bump2s, riesz-kernel)");
}

ExteriorData make_exterior(const std::string& name, const FracParams& p) {
  p.validate();
  const NameArgs na = split_name(name);
  ExteriorData g;
  g.l1s_certified = true;

  if (na.name == "one") {
    g.eval = [](const Vec&) { return 1.0; };
    g.bound_hint = 1.0;
    return g;
  }
  if (na.name == "affine") {
    if (na.args.size() != 2)
      throw std::invalid_argument("builtin affine:<a,b> takes exactly two arguments");
    const double a = na.args[0], b = na.args[1];
    g.eval = [a, b](const Vec& y) { return a * y[0] + b; };
    g.l1s_certified = p.s > 0.5;
    g.growth_hint = GrowthHint{std::abs(a) + std::abs(b), 1.0};
    return g;
  }
  if (na.name == "halfspace") {
    const double c = arg_or(na, 0, 0.0);
    g.eval = [c](const Vec& y) { return y[0] > c ? 1.0 : 0.0; };
    g.bound_hint = 1.0;
    return g;
  }
  if (na.name == "sign") {
    const double c = arg_or(na, 0, 0.0);
    g.eval = [c](const Vec& y) { return y[0] > c ? 1.0 : (y[0] < c ? -1.0 : 0.0); };
    g.bound_hint = 1.0;
    return g;
  }
  if (na.name == "bounded-noise") {
    const uint64_t seed = static_cast<uint64_t>(arg_or(na, 0, 1.0));
    g.eval = trig_noise(seed, p.n);
    g.bound_hint = 1.0;
    return g;
  }
  throw std::invalid_argument("unknown exterior builtin \"" + name +
                              "\" (expected one, affine:<a,b>, halfspace, sign, bounded-noise:<seed>)");
}

CompactDensity make_density(const std::string& name) {
  const NameArgs na = split_name(name);
  CompactDensity f;
  f.support_radius = 1.0;

  if (na.name == "bump") {
    f.eval = [](const Vec& y) {
      const double t = 1.0 - y.norm_sq();
      return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
    };
    f.smooth = true;
    return f;
  }
  if (na.name == "ball") {
    f.eval = [](const Vec& y) { return y.norm_sq() < 1.0 ? 1.0 : 0.0; };
    f.smooth = false;
    return f;
  }
  if (na.name == "zero") {
    f.eval = [](const Vec&) { return 0.0; };
    f.smooth = true;
    return f;
  }
  throw std::invalid_argument("unknown density builtin \"" + name +
                              "\" (expected bump, ball, zero)");
}

}  // namespace fraclab
