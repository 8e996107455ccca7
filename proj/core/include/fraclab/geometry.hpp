#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

namespace fraclab {

/// Point/vector in R^n with runtime dimension n <= 3.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<double> xs);

  static Vec zero(int dim) { return Vec(dim); }
  static Vec unit(int dim, int axis);

  int dim() const { return dim_; }
  double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return v_[static_cast<size_t>(i)]; }

  double norm_sq() const;
  double norm() const { return std::sqrt(norm_sq()); }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double c);

  friend bool operator==(const Vec& a, const Vec& b);

 private:
  int dim_ = 1;
  std::array<double, 3> v_{0.0, 0.0, 0.0};
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(double c, Vec a);
Vec operator-(Vec a);
double dot(const Vec& a, const Vec& b);
double distance(const Vec& a, const Vec& b);

/// Multi-index for partial derivatives; entries has one slot per coordinate.
struct MultiIndex {
  std::array<int, 3> entries{0, 0, 0};
  int dim = 1;

  int order() const { return entries[0] + entries[1] + entries[2]; }
  static MultiIndex zero(int dim);
  static MultiIndex unit(int dim, int axis);
  /// Parses "2" or "1,0,1".
  static MultiIndex parse(const std::string& text, int dim);
  std::string to_string() const;
};

struct Ball {
  Vec center;
  double radius = 1.0;  // > 0
};

/// Axis-aligned box, lo[i] < hi[i] componentwise.
struct Box {
  Vec lo;
  Vec hi;
};

/// Finite union of balls and axis-aligned boxes. Always a strict subset of R^n.
struct Domain {
  int dim = 1;
  std::vector<Ball> balls;
  std::vector<Box> boxes;

  static Domain ball(const Vec& center, double radius);
  static Domain box(const Vec& lo, const Vec& hi);
  Domain& add_ball(const Vec& center, double radius);
  Domain& add_box(const Vec& lo, const Vec& hi);
};

/// Distance from x to the complement of a single component (0 outside).
double dist_to_complement(const Ball& b, const Vec& x);
double dist_to_complement(const Box& b, const Vec& x);

/// Inscribed distance from x to the complement of the union: the max over
/// components containing x of the per-component distance. Exact when the
/// components realizing it do not overlap; always a valid inscribed-ball
/// radius. Returns 0 if x is outside the union.
double dist_to_complement(const Domain& omega, const Vec& x);

/// True iff x is interior to the domain (inscribed distance > 0).
bool domain_contains(const Domain& omega, const Vec& x);

/// A point of the complement close to x (used to score truncated walks).
Vec nearest_exterior_point(const Domain& omega, const Vec& x);

/// Parses the domain grammar: ball(c1,...,cn,r), box(lo1,...,lon,hi1,...,hin),
/// union(A;B;...). Throws std::invalid_argument on malformed input.
Domain parse_domain(const std::string& text);

}  // namespace fraclab
