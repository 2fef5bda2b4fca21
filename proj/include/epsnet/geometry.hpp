#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <optional>
#include <type_traits>
#include <variant>
#include <vector>

namespace epsnet {

using Coords = std::span<const double>;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration in the rescaled configuration space [0,1]^d.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }
  Point(std::initializer_list<double> coords) : coords_(coords) { validate(); }
  explicit Point(Coords coords) : coords_(coords.begin(), coords.end()) { validate(); }

  static Point zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }
  static Point filled(std::size_t dim, double value) {
    return Point(std::vector<double>(dim, value));
  }
  /// scale * e_axis
  static Point basis(std::size_t dim, std::size_t axis, double scale = 1.0) {
    Point p = zeros(dim);
    p.coords_.at(axis) = scale;
    return p;
  }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  Coords coords() const { return coords_; }
  operator Coords() const { return coords_; }  // NOLINT(google-explicit-constructor)
  const std::vector<double>& values() const { return coords_; }

  Point& operator+=(Coords other) {
    check_same_dim(other.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other[i];
    return *this;
  }
  Point& operator-=(Coords other) {
    check_same_dim(other.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (double& c : coords_) c *= s;
    return *this;
  }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  void validate() const {
    if (coords_.empty()) throw DomainError("point dimension must be at least 1");
    for (double c : coords_) {
      if (!std::isfinite(c)) throw DomainError("point coordinates must be finite");
    }
  }
  void check_same_dim(std::size_t other) const {
    if (other != coords_.size()) throw DomainError("dimension mismatch");
  }

  std::vector<double> coords_;
};

inline Point operator+(Point a, Coords b) { return a += b; }
inline Point operator-(Point a, Coords b) { return a -= b; }
inline Point operator*(Point a, double s) { return a *= s; }
inline Point operator*(double s, Point a) { return a *= s; }

/// Flat row-major storage for many points of one dimension.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw DomainError("point cloud dimension must be at least 1");
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return data_.empty(); }
  Coords operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<double> mutable_row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  Point point(std::size_t i) const { return Point((*this)[i]); }

  void reserve(std::size_t n) { data_.reserve(n * dim_); }
  void push_back(Coords p) {
    if (p.size() != dim_) throw DomainError("dimension mismatch");
    data_.insert(data_.end(), p.begin(), p.end());
  }
  std::span<const double> raw() const { return data_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

enum class Norm { L2, Linf };

/// Squared Euclidean distance without dimension checking; callers guarantee equal sizes.
inline double squared_l2(Coords a, Coords b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

inline double distance(Coords a, Coords b, Norm norm = Norm::L2) {
  if (a.size() != b.size()) throw DomainError("dimension mismatch in distance");
  if (norm == Norm::L2) return std::sqrt(squared_l2(a, b));
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double norm_of(Coords x, Norm norm = Norm::L2) {
  std::vector<double> zero(x.size(), 0.0);
  return distance(x, zero, norm);
}

struct Ball {
  Point center;
  double radius = 0.0;
  Norm norm = Norm::L2;

  bool contains(Coords y) const { return distance(y, center, norm) <= radius; }
};

/// Straight segment, parameterised as p(beta) = beta * a + (1 - beta) * b.
struct Segment {
  Point a;
  Point b;

  Point at(double beta) const {
    Point p = a;
    for (std::size_t i = 0; i < p.dim(); ++i) p[i] = beta * a[i] + (1.0 - beta) * b[i];
    return p;
  }
  double length() const { return distance(a, b); }
};

// ---------------------------------------------------------------------------
// Obstacles

struct PointObstacle {
  Point center;
};

/// The sphere { x : |x - center| = radius }.
struct SphereShell {
  Point center;
  double radius = 0.0;
};

struct SolidBall {
  Point center;
  double radius = 0.0;
};

/// Boundary of the solid tube of radius `minor` around the circle of radius `major`
/// centred at `center` in the plane of the first two coordinates.
struct TorusSurface {
  Point center;
  double major = 0.0;
  double minor = 0.0;
};

/// Solid tube of radius `minor` around the same circle as TorusSurface.
struct RingSolid {
  Point center;
  double major = 0.0;
  double minor = 0.0;
};

struct AxisBox {
  Point lo;
  Point hi;

  static AxisBox cube(std::size_t dim, double lo, double hi) {
    return {Point::filled(dim, lo), Point::filled(dim, hi)};
  }
  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.dim(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
    return v;
  }
};

using Obstacle =
    std::variant<PointObstacle, SphereShell, SolidBall, TorusSurface, RingSolid, AxisBox>;

/// Distance from q to the circle of radius `major` around `center` in the (x1, x2) plane.
/// Membership in the tube of radius r is circle_distance <= r.
inline double circle_distance(Coords q, Coords center, double major) {
  double u2 = 0.0;
  double v2 = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double t = q[i] - center[i];
    (i < 2 ? u2 : v2) += t * t;
  }
  const double radial = std::sqrt(u2) - major;
  return std::sqrt(radial * radial + v2);
}

namespace detail {

inline double distance_to_box(Coords q, const AxisBox& box) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double t = 0.0;
    if (q[i] < box.lo[i]) t = box.lo[i] - q[i];
    if (q[i] > box.hi[i]) t = q[i] - box.hi[i];
    s += t * t;
  }
  return std::sqrt(s);
}

}  // namespace detail

/// Euclidean distance from q to the point set of the obstacle (0 inside solids).
inline double obstacle_distance(const Obstacle& obstacle, Coords q) {
  return std::visit(
      [&](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PointObstacle>) {
          return distance(q, o.center);
        } else if constexpr (std::is_same_v<T, SphereShell>) {
          return std::abs(distance(q, o.center) - o.radius);
        } else if constexpr (std::is_same_v<T, SolidBall>) {
          return std::max(0.0, distance(q, o.center) - o.radius);
        } else if constexpr (std::is_same_v<T, TorusSurface>) {
          return std::abs(circle_distance(q, o.center, o.major) - o.minor);
        } else if constexpr (std::is_same_v<T, RingSolid>) {
          return std::max(0.0, circle_distance(q, o.center, o.major) - o.minor);
        } else {
          return detail::distance_to_box(q, o);
        }
      },
      obstacle);
}

/// Free space is [0,1]^d minus the union of the obstacles.
struct Environment {
  std::size_t dim = 0;
  std::vector<Obstacle> obstacles;
  Point start;
  Point goal;
};

inline constexpr double kDefaultTolerance = 1e-9;

inline bool in_unit_cube(Coords q, double tol = 0.0) {
  return std::all_of(q.begin(), q.end(), [tol](double c) { return c >= -tol && c <= 1.0 + tol; });
}

/// Smallest distance from q to any obstacle; +inf when there are none.
inline double clearance(const Environment& env, Coords q) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : env.obstacles) best = std::min(best, obstacle_distance(o, q));
  return best;
}

inline bool point_in_free_space(const Environment& env, Coords q, double tol = kDefaultTolerance) {
  if (q.size() != env.dim) throw DomainError("dimension mismatch between point and environment");
  if (!in_unit_cube(q, tol)) return false;
  return clearance(env, q) > tol;
}

// ---------------------------------------------------------------------------
// Segment predicates

/// Number of uniform subsamples used when scanning curved obstacles along a segment.
inline constexpr int kTorusSubsamples = 256;

namespace detail {

/// Parameter in [0,1] of the point of segment a->b closest to c, under p(t) = a + t (b - a).
inline double closest_param(Coords a, Coords b, Coords c) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ab = b[i] - a[i];
    num += (c[i] - a[i]) * ab;
    den += ab * ab;
  }
  if (den == 0.0) return 0.0;
  return std::clamp(num / den, 0.0, 1.0);
}

inline double segment_point_distance(Coords a, Coords b, Coords c) {
  const double t = closest_param(a, b, c);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] + t * (b[i] - a[i]);
    s += (p - c[i]) * (p - c[i]);
  }
  return std::sqrt(s);
}

inline bool segment_hits_box(Coords a, Coords b, const AxisBox& box, double tol) {
  double t0 = 0.0;
  double t1 = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double lo = box.lo[i] - tol;
    const double hi = box.hi[i] + tol;
    const double dir = b[i] - a[i];
    if (dir == 0.0) {
      if (a[i] < lo || a[i] > hi) return false;
      continue;
    }
    double ta = (lo - a[i]) / dir;
    double tb = (hi - a[i]) / dir;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

/// Locates a zero of a continuous f on [0,1] within tol: sign changes on a uniform grid
/// are refined by bisection, near-tangent touches by golden-section search on |f|.
/// With `inside_counts`, any f < 0 also counts (solid obstacles). Returns the parameter.
template <class F>
std::optional<double> find_contact(F&& f, double tol, bool inside_counts) {
  constexpr int n = kTorusSubsamples;
  std::array<double, n + 1> values{};
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    values[k] = f(t);
    if (std::abs(values[k]) <= tol || (inside_counts && values[k] < 0.0)) return t;
  }
  for (int k = 0; k < n; ++k) {
    if ((values[k] < 0.0) == (values[k + 1] < 0.0)) continue;
    double lo = static_cast<double>(k) / n;
    double hi = static_cast<double>(k + 1) / n;
    const bool lo_negative = values[k] < 0.0;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((f(mid) < 0.0) == lo_negative) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  }
  // No sign change: look for tangential contact around local minima of |f|.
  constexpr double inv_phi = 0.6180339887498949;
  auto g = [&](double t) { return std::abs(f(t)); };
  for (int k = 0; k <= n; ++k) {
    const double here = std::abs(values[k]);
    if (k > 0 && std::abs(values[k - 1]) < here) continue;
    if (k < n && std::abs(values[k + 1]) < here) continue;
    double lo = static_cast<double>(std::max(k - 1, 0)) / n;
    double hi = static_cast<double>(std::min(k + 1, n)) / n;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double g1 = g(x1);
    double g2 = g(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
      if (g1 <= tol) return x1;
      if (g2 <= tol) return x2;
      if (g1 < g2) {
        hi = x2; x2 = x1; g2 = g1;
        x1 = hi - inv_phi * (hi - lo); g1 = g(x1);
      } else {
        lo = x1; x1 = x2; g1 = g2;
        x2 = lo + inv_phi * (hi - lo); g2 = g(x2);
      }
    }
    if (g1 <= tol) return x1;
    if (g2 <= tol) return x2;
  }
  return std::nullopt;
}

inline bool segment_hits(const Obstacle& obstacle, Coords a, Coords b, double tol) {
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PointObstacle>) {
          return segment_point_distance(a, b, o.center) <= tol;
        } else if constexpr (std::is_same_v<T, SolidBall>) {
          return segment_point_distance(a, b, o.center) <= o.radius + tol;
        } else if constexpr (std::is_same_v<T, SphereShell>) {
          // |p(t) - c| is continuous on [0,1]; its range is [min, max endpoint distance].
          const double near = segment_point_distance(a, b, o.center);
          const double far = std::max(distance(a, o.center), distance(b, o.center));
          return near <= o.radius + tol && far >= o.radius - tol;
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          return segment_hits_box(a, b, o, tol);
        } else {
          std::vector<double> p(a.size());
          auto f = [&](double t) {
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[i] + t * (b[i] - a[i]);
            return circle_distance(p, o.center, o.major) - o.minor;
          };
          return find_contact(f, tol, std::is_same_v<T, RingSolid>).has_value();
        }
      },
      obstacle);
}

}  // namespace detail

/// True iff the closed segment comes within tol of some obstacle's point set.
/// Symmetric in the endpoints: they are put in a canonical order before evaluation.
inline bool segment_collides(const Environment& env, Coords a, Coords b,
                             double tol = kDefaultTolerance) {
  if (a.size() != env.dim || b.size() != env.dim)
    throw DomainError("dimension mismatch between segment and environment");
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(a, b);
  for (const auto& o : env.obstacles) {
    if (detail::segment_hits(o, a, b, tol)) return true;
  }
  return false;
}

inline bool segment_collides(const Environment& env, const Segment& seg,
                             double tol = kDefaultTolerance) {
  return segment_collides(env, seg.a.coords(), seg.b.coords(), tol);
}

// ---------------------------------------------------------------------------
// Volumes

struct UnitBallVolume {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Volume of the Euclidean unit ball, pi^(d/2) / Gamma(d/2 + 1), with the sandwich
/// obtained from sqrt(2 pi x)(x/e)^x <= Gamma(x+1) <= e sqrt(x)(x/e)^x at x = d/2.
inline UnitBallVolume unit_ball_volume(int d) {
  if (d < 1) throw DomainError("unit ball volume needs d >= 1");
  const double x = 0.5 * d;
  const double log_pi_part = x * std::log(std::numbers::pi);
  const double log_power = x * (std::log(x) - 1.0);
  const double log_gamma_low = 0.5 * std::log(2.0 * std::numbers::pi * x) + log_power;
  const double log_gamma_high = 1.0 + 0.5 * std::log(x) + log_power;
  UnitBallVolume v;
  v.value = std::exp(log_pi_part - std::lgamma(x + 1.0));
  v.lower = std::exp(log_pi_part - log_gamma_high);
  v.upper = std::exp(log_pi_part - log_gamma_low);
  return v;
}

/// Side of the smallest axis-aligned cube containing (cube of `side`) + B_2(0, inflate).
inline double inflated_cube_side(double side, double inflate) {
  if (side <= 0.0 || inflate < 0.0) throw DomainError("inflated_cube_side needs side > 0, inflate >= 0");
  return side + 2.0 * inflate;
}

}  // namespace epsnet
