#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epsnet/bounds.hpp"
#include "epsnet/epsilon.hpp"
#include "epsnet/geometry.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/spatial_index.hpp"

namespace epsnet {

/// A finite sample set with provenance.
struct SampleSet {
  PointCloud points;
  std::string generator;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  std::size_t dim() const { return points.dim(); }
  std::size_t size() const { return points.size(); }
};

/// Default size of the random discretisation used when netting a continuous region.
inline constexpr std::size_t kDefaultDenseSamples = 1'000'000;

/// Greedy eps-net of `input`: scans in input order and keeps every point not yet within
/// eps of a kept point. Kept points are pairwise more than eps apart and every input
/// point lies within eps of one of them.
inline PointCloud build_net(const PointCloud& input, double eps) {
  if (!(eps > 0.0)) throw DomainError("net radius must be > 0");
  if (input.dim() == 0) return input;
  CellIndex index(input.dim(), eps);
  PointCloud net(input.dim());
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (!index.any_within(input[i], eps)) {
      index.insert(input[i]);
      net.push_back(input[i]);
    }
  }
  return net;
}

/// Greedy eps-net of a box, discretised by `dense_n` seeded uniform points.
inline PointCloud build_net_region(const AxisBox& box, double eps, std::size_t dense_n,
                                   std::uint64_t seed) {
  if (!(eps > 0.0)) throw DomainError("net radius must be > 0");
  auto rng = make_rng(seed);
  return build_net(uniform_points(box, dense_n, rng), eps);
}

inline SampleSet net_sample_set(PointCloud points, double eps, std::uint64_t seed,
                                std::optional<std::size_t> dense_n = std::nullopt) {
  SampleSet s{std::move(points), "build-net", {{"eps", eps}}, seed};
  if (dense_n) s.params["dense_n"] = static_cast<double>(*dense_n);
  return s;
}

// ---------------------------------------------------------------------------
// Grids

struct GridSpec {
  double spacing = 0.0;
  AxisBox domain;

  static GridSpec unit(std::size_t dim, double spacing) {
    return {spacing, AxisBox::cube(dim, 0.0, 1.0)};
  }
  std::size_t dim() const { return domain.lo.dim(); }
};

namespace detail {
inline bool is_unit_cube(const AxisBox& box) {
  for (std::size_t i = 0; i < box.lo.dim(); ++i) {
    if (box.lo[i] != 0.0 || box.hi[i] != 1.0) return false;
  }
  return true;
}
}  // namespace detail

/// Points per axis of the grid: side / w, rounded up when not integral.
inline std::vector<std::size_t> grid_shape(const GridSpec& spec) {
  if (!(spec.spacing > 0.0)) throw DomainError("grid spacing must be > 0");
  const bool unit = detail::is_unit_cube(spec.domain);
  std::vector<std::size_t> shape(spec.dim());
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    const double side = spec.domain.hi[i] - spec.domain.lo[i];
    if (!(side > 0.0)) throw DomainError("grid domain must have positive extent");
    const double ratio = side / spec.spacing;
    const double nearest = std::round(ratio);
    const bool integral = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio);
    if (unit && !integral) throw DomainError("1/w must be an integer on the unit cube");
    shape[i] = static_cast<std::size_t>(integral ? std::max(1.0, nearest) : std::ceil(ratio));
  }
  return shape;
}

/// Cell-centre lattice with spacing w, centred in the domain. On the unit cube this is
/// { x : x_i / w + 1/2 in {1, ..., 1/w} }.
inline SampleSet grid(const GridSpec& spec) {
  const auto shape = grid_shape(spec);
  const std::size_t d = spec.dim();
  std::size_t total = 1;
  for (auto m : shape) total *= m;
  PointCloud pts(d);
  pts.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(d);
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t i = 0; i < d; ++i) {
      const double mid = 0.5 * (spec.domain.lo[i] + spec.domain.hi[i]);
      p[i] = mid + (static_cast<double>(idx[i]) - 0.5 * static_cast<double>(shape[i] - 1)) * spec.spacing;
    }
    pts.push_back(p);
    // First coordinate varies slowest.
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < shape[i]) break;
      idx[i] = 0;
    }
  }
  return {std::move(pts), "grid", {{"spacing", spec.spacing}}, 0};
}

// ---------------------------------------------------------------------------
// ENS

/// delta at which the sufficient sample count equals n, by bisection to 1e-12.
inline double solve_delta_min(double n, int d, double alpha) {
  if (!(n > 0.0)) throw DomainError("sample count must be > 0");
  double lo = 0.0;                // count -> inf
  double hi = 1.0 / (2.0 - alpha);  // count -> 0
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sufficient_sample_count(d, alpha, mid) > n) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Closed-form inverse of the sufficient sample count:
/// delta = K / (alpha + (2 - alpha) K) with K = sqrt(2d / (pi e)) (sqrt(pi d) / n)^(1/d).
inline double delta_min_closed_form(double n, int d, double alpha) {
  const double k = std::sqrt(2.0 * d / (detail::kPi * detail::kE)) *
                   std::pow(std::sqrt(detail::kPi * d) / n, 1.0 / d);
  return k / (alpha + (2.0 - alpha) * k);
}

/// The same inverse with the denominator sign as typeset in the algorithm listing,
/// alpha - (2 - alpha) K. It does not invert the count; kept for comparison.
inline double delta_min_printed_form(double n, int d, double alpha) {
  const double k = std::sqrt(2.0 * d / (detail::kPi * detail::kE)) *
                   std::pow(std::sqrt(detail::kPi * d) / n, 1.0 / d);
  return k / (alpha - (2.0 - alpha) * k);
}

enum class NetRadius {
  /// alpha * delta_min: the resolution the completeness argument needs.
  Proof,
  /// delta_min, as written in the algorithm listing.
  Listing,
};

struct EnsOptions {
  NetRadius net_radius = NetRadius::Proof;
  std::size_t dense_n = kDefaultDenseSamples;
};

struct EnsResult {
  SampleSet samples;
  double radius = 0.0;
  double alpha = 1.0;
  /// min(sufficient count at delta, n); real-valued, as the formula produces it.
  double n_delta = 0.0;
  double delta_min = 0.0;
  double delta_min_closed_form = 0.0;
  double net_radius = 0.0;
};

/// Sample set and connection radius for n samples at clearance delta and stretch eps.
inline EnsResult ens(std::size_t n, int d, Epsilon eps, double delta, std::uint64_t seed,
                     const EnsOptions& options = {}) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (d < 1) throw DomainError("d must be >= 1");
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
  EnsResult r;
  r.alpha = eps.alpha();
  const double needed = sufficient_sample_count(d, r.alpha, delta);
  const auto available = static_cast<double>(n);
  if (needed <= available) {
    // The count is monotone in delta, so its inverse at n_delta = needed is delta itself.
    r.n_delta = needed;
    r.delta_min = delta;
  } else {
    r.n_delta = available;
    r.delta_min = solve_delta_min(available, d, r.alpha);
  }
  if (r.n_delta < 1.0) throw DomainError("n_delta < 1: no sample set is certified");
  if (r.delta_min >= 0.5) throw DomainError("n too small: delta_min >= 1/2 leaves no region to sample");
  r.delta_min_closed_form = delta_min_closed_form(r.n_delta, d, r.alpha);
  r.radius = 2.0 * (r.alpha + std::sqrt(1.0 - r.alpha * r.alpha)) * r.delta_min;
  r.net_radius = options.net_radius == NetRadius::Proof ? r.alpha * r.delta_min : r.delta_min;
  const auto box = AxisBox::cube(static_cast<std::size_t>(d), r.delta_min, 1.0 - r.delta_min);
  r.samples.points = build_net_region(box, r.net_radius, options.dense_n, seed);
  r.samples.generator = "ens";
  r.samples.params = {{"n", available},
                      {"d", static_cast<double>(d)},
                      {"eps", eps.value()},
                      {"delta", delta},
                      {"alpha", r.alpha},
                      {"n_delta", r.n_delta},
                      {"delta_min", r.delta_min},
                      {"radius", r.radius},
                      {"net_radius", r.net_radius},
                      {"dense_n", static_cast<double>(options.dense_n)}};
  r.samples.seed = seed;
  return r;
}

// ---------------------------------------------------------------------------
// Templates

/// A cover of [0,1]^d at radius sqrt(d)/(2k); tiled at scale 1/m it covers the cube at
/// radius sqrt(d)/(2km).
struct Template {
  std::size_t k = 1;
  PointCloud points;
  double cover_radius = 0.0;

  std::size_t dim() const { return points.dim(); }
};

inline double template_radius(std::size_t d, std::size_t k) {
  return std::sqrt(static_cast<double>(d)) / (2.0 * static_cast<double>(k));
}

/// { (p + o) / m : p in t, o in {0, ..., m-1}^d }, offsets outermost.
inline SampleSet replicate_template(const Template& t, std::size_t m) {
  if (m < 1) throw DomainError("replication factor must be >= 1");
  const std::size_t d = t.dim();
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) cells *= m;
  PointCloud out(d);
  out.reserve(cells * t.points.size());
  std::vector<std::size_t> offset(d, 0);
  std::vector<double> p(d);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t j = 0; j < t.points.size(); ++j) {
      const auto q = t.points[j];
      for (std::size_t i = 0; i < d; ++i) p[i] = (q[i] + static_cast<double>(offset[i])) * inv;
      out.push_back(p);
    }
    for (std::size_t i = d; i-- > 0;) {
      if (++offset[i] < m) break;
      offset[i] = 0;
    }
  }
  return {std::move(out),
          "replicate",
          {{"k", static_cast<double>(t.k)},
           {"m", static_cast<double>(m)},
           {"cover_radius", t.cover_radius * inv}},
          0};
}

}  // namespace epsnet
