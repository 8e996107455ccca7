#include "fraclab/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fraclab {

namespace {

int check_dim(int dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("Vec: dimension must be 1, 2 or 3");
  return dim;
}

}  // namespace

Vec::Vec(int dim) : dim_(check_dim(dim)) {}

Vec::Vec(std::initializer_list<double> xs) : dim_(check_dim(static_cast<int>(xs.size()))) {
  int i = 0;
  for (double x : xs) v_[static_cast<size_t>(i++)] = x;
}

Vec Vec::unit(int dim, int axis) {
  Vec e(dim);
  if (axis < 0 || axis >= dim) throw std::invalid_argument("Vec::unit: axis out of range");
  e[axis] = 1.0;
  return e;
}

double Vec::norm_sq() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += v_[static_cast<size_t>(i)] * v_[static_cast<size_t>(i)];
  return s;
}

Vec& Vec::operator+=(const Vec& o) {
  for (int i = 0; i < dim_; ++i) v_[static_cast<size_t>(i)] += o[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  for (int i = 0; i < dim_; ++i) v_[static_cast<size_t>(i)] -= o[i];
  return *this;
}

Vec& Vec::operator*=(double c) {
  for (int i = 0; i < dim_; ++i) v_[static_cast<size_t>(i)] *= c;
  return *this;
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.dim_ != b.dim_) return false;
  for (int i = 0; i < a.dim_; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(double c, Vec a) { return a *= c; }
Vec operator-(Vec a) { return a *= -1.0; }

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

MultiIndex MultiIndex::zero(int dim) {
  MultiIndex g;
  g.dim = check_dim(dim);
  return g;
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  MultiIndex g = zero(dim);
  if (axis < 0 || axis >= dim) throw std::invalid_argument("MultiIndex::unit: axis out of range");
  g.entries[static_cast<size_t>(axis)] = 1;
  return g;
}

MultiIndex MultiIndex::parse(const std::string& text, int dim) {
  MultiIndex g = zero(dim);
  std::stringstream ss(text);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= dim) throw std::invalid_argument("multi-index has more entries than the dimension");
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v < 0)
      throw std::invalid_argument("multi-index entries must be nonnegative integers");
    g.entries[static_cast<size_t>(i++)] = v;
  }
  if (i != dim) throw std::invalid_argument("multi-index entry count must equal the dimension");
  return g;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (int i = 0; i < dim; ++i) {
    if (i) out += ',';
    out += std::to_string(entries[static_cast<size_t>(i)]);
  }
  return out;
}

Domain Domain::ball(const Vec& center, double radius) {
  Domain d;
  d.dim = center.dim();
  d.add_ball(center, radius);
  return d;
}

Domain Domain::box(const Vec& lo, const Vec& hi) {
  Domain d;
  d.dim = lo.dim();
  d.add_box(lo, hi);
  return d;
}

Domain& Domain::add_ball(const Vec& center, double radius) {
  if (center.dim() != dim) throw std::invalid_argument("domain component dimension mismatch");
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  balls.push_back({center, radius});
  return *this;
}

Domain& Domain::add_box(const Vec& lo, const Vec& hi) {
  if (lo.dim() != dim || hi.dim() != dim)
    throw std::invalid_argument("domain component dimension mismatch");
  for (int i = 0; i < dim; ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("box must satisfy lo < hi componentwise");
  boxes.push_back({lo, hi});
  return *this;
}

double dist_to_complement(const Ball& b, const Vec& x) {
  return std::max(0.0, b.radius - distance(x, b.center));
}

double dist_to_complement(const Box& b, const Vec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.dim(); ++i) {
    d = std::min(d, x[i] - b.lo[i]);
    d = std::min(d, b.hi[i] - x[i]);
  }
  return std::max(0.0, d);
}

double dist_to_complement(const Domain& omega, const Vec& x) {
  double d = 0.0;
  for (const Ball& b : omega.balls) d = std::max(d, dist_to_complement(b, x));
  for (const Box& b : omega.boxes) d = std::max(d, dist_to_complement(b, x));
  return d;
}

bool domain_contains(const Domain& omega, const Vec& x) {
  return dist_to_complement(omega, x) > 0.0;
}

Vec nearest_exterior_point(const Domain& omega, const Vec& x) {
  if (!domain_contains(omega, x)) return x;

  // Outward direction from the component realizing the inscribed distance.
  double best = 0.0;
  Vec dir = Vec::unit(x.dim(), 0);
  for (const Ball& b : omega.balls) {
    double d = dist_to_complement(b, x);
    if (d > best) {
      best = d;
      Vec r = x - b.center;
      dir = r.norm() > 0.0 ? (1.0 / r.norm()) * r : Vec::unit(x.dim(), 0);
    }
  }
  for (const Box& b : omega.boxes) {
    double d = dist_to_complement(b, x);
    if (d > best) {
      best = d;
      int axis = 0;
      double face = std::numeric_limits<double>::infinity();
      double sign = 1.0;
      for (int i = 0; i < x.dim(); ++i) {
        if (x[i] - b.lo[i] < face) { face = x[i] - b.lo[i]; axis = i; sign = -1.0; }
        if (b.hi[i] - x[i] < face) { face = b.hi[i] - x[i]; axis = i; sign = 1.0; }
      }
      dir = sign * Vec::unit(x.dim(), axis);
    }
  }

  // Sphere-trace along the ray: advance by the inscribed distance until the
  // point falls outside, which handles overlapping components.
  double step = best;
  Vec y = x + step * dir;
  for (int iter = 0; iter < 256; ++iter) {
    const double d = dist_to_complement(omega, y);
    if (d == 0.0) break;
    step += d + 1e-12 * (1.0 + step);
    y = x + step * dir;
  }
  return y;
}

namespace {

// Recursive-descent parser for ball(...), box(...), union(A;B;...).
struct DomainParser {
  const std::string& text;
  size_t pos = 0;

  explicit DomainParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }

  void expect(char c) {
    if (!consume(c))
      throw std::invalid_argument(std::string("domain parse error: expected '") + c + "' at offset " +
                                  std::to_string(pos) + " in \"" + text + "\"");
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start)
      throw std::invalid_argument("domain parse error: expected shape name in \"" + text + "\"");
    return text.substr(start, pos - start);
  }

  double number() {
    skip_ws();
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw std::invalid_argument("domain parse error: expected number in \"" + text + "\"");
    pos += static_cast<size_t>(end - begin);
    return v;
  }

  std::vector<double> number_list() {
    std::vector<double> xs;
    xs.push_back(number());
    while (consume(',')) xs.push_back(number());
    return xs;
  }

  Domain parse_shape() {
    std::string name = ident();
    expect('(');
    if (name == "union") {
      Domain d = parse_shape();
      while (consume(';')) {
        Domain next = parse_shape();
        if (next.dim != d.dim) throw std::invalid_argument("union components have mismatched dimensions");
        for (const Ball& b : next.balls) d.balls.push_back(b);
        for (const Box& b : next.boxes) d.boxes.push_back(b);
      }
      expect(')');
      return d;
    }
    std::vector<double> xs = number_list();
    expect(')');
    if (name == "ball") {
      int dim = static_cast<int>(xs.size()) - 1;
      if (dim < 1 || dim > 3) throw std::invalid_argument("ball(...) takes center coordinates plus radius");
      Vec c(dim);
      for (int i = 0; i < dim; ++i) c[i] = xs[static_cast<size_t>(i)];
      return Domain::ball(c, xs.back());
    }
    if (name == "box") {
      if (xs.size() % 2 != 0 || xs.size() < 2 || xs.size() > 6)
        throw std::invalid_argument("box(...) takes lo coordinates then hi coordinates");
      int dim = static_cast<int>(xs.size()) / 2;
      Vec lo(dim), hi(dim);
      for (int i = 0; i < dim; ++i) {
        lo[i] = xs[static_cast<size_t>(i)];
        hi[i] = xs[static_cast<size_t>(i + dim)];
      }
      return Domain::box(lo, hi);
    }
    throw std::invalid_argument("unknown shape \"" + name + "\" (expected ball, box or union)");
  }

  Domain parse() {
    Domain d = parse_shape();
    skip_ws();
    if (pos != text.size())
      throw std::invalid_argument("domain parse error: trailing input in \"" + text + "\"");
    return d;
  }
};

}  // namespace

Domain parse_domain(const std::string& text) { return DomainParser(text).parse(); }

}  // namespace fraclab
