#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "epsnet/geometry.hpp"

namespace epsnet {

struct Neighbor {
  std::size_t id = 0;
  double distance = 0.0;
};

/// Squared distance on the flat unit torus (per-coordinate wrap-around).
inline double squared_periodic(Coords a, Coords b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double t = std::abs(a[i] - b[i]);
    t = std::min(t, 1.0 - t);
    s += t * t;
  }
  return s;
}

/// Uniform-cell bucketing of points in the unit cube, keyed on the leading coordinates.
///
/// Cells have side >= the requested side, so every point within that distance of a
/// query lies in one of the 3^m neighbouring cells. When the cube holds fewer than
/// four cells per axis bucketing saves nothing and queries scan all points. Query
/// results are identical to a brute-force scan.
class CellIndex {
 public:
  CellIndex(std::size_t dim, double min_cell_side, bool periodic = false,
            std::size_t max_cells = std::size_t{1} << 18)
      : dim_(dim), periodic_(periodic), points_(dim) {
    if (!(min_cell_side > 0.0)) throw DomainError("cell side must be positive");
    const double per_axis = std::floor(1.0 / min_cell_side);
    cells_per_axis_ = per_axis >= 4.0 ? static_cast<std::size_t>(std::min(per_axis, 1e6)) : 1;
    if (cells_per_axis_ >= 4) {
      std::size_t total = 1;
      while (bucket_dims_ < std::min<std::size_t>(dim, 5) && total * cells_per_axis_ <= max_cells) {
        total *= cells_per_axis_;
        ++bucket_dims_;
      }
      cells_.resize(total);
    } else {
      cells_per_axis_ = 1;
    }
    side_ = 1.0 / static_cast<double>(cells_per_axis_);
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool periodic() const { return periodic_; }
  /// Largest radius for which the bounded queries stay local.
  double cell_side() const { return side_; }
  Coords point(std::size_t id) const { return points_[id]; }

  void insert(Coords p) {
    const auto id = static_cast<std::uint32_t>(points_.size());
    points_.push_back(p);
    if (bucket_dims_ > 0) cells_[cell_of(p)].push_back(id);
  }

  double squared_distance(Coords a, Coords b) const {
    return periodic_ ? squared_periodic(a, b) : squared_l2(a, b);
  }

  /// Calls f(id, squared distance) for every point within distance r of q.
  /// f may return false to stop early.
  template <class F>
  void for_each_within(Coords q, double r, F&& f) const {
    const double r2 = r * r;
    auto visit = [&](std::uint32_t id) {
      const double d2 = squared_distance(q, points_[id]);
      if (d2 <= r2) return f(static_cast<std::size_t>(id), d2);
      return true;
    };
    if (bucket_dims_ == 0 || r > side_) {
      for (std::uint32_t id = 0; id < points_.size(); ++id) {
        if (!visit(id)) return;
      }
      return;
    }
    std::array<long, 5> base{};
    for (std::size_t j = 0; j < bucket_dims_; ++j) base[j] = axis_cell(q[j]);
    std::array<int, 5> offset{};
    offset.fill(-1);
    while (true) {
      std::size_t key = 0;
      bool valid = true;
      for (std::size_t j = bucket_dims_; j-- > 0;) {
        long c = base[j] + offset[j];
        const auto n = static_cast<long>(cells_per_axis_);
        if (c < 0 || c >= n) {
          if (!periodic_) { valid = false; break; }
          c = (c + n) % n;
        }
        key = key * cells_per_axis_ + static_cast<std::size_t>(c);
      }
      if (valid) {
        for (std::uint32_t id : cells_[key]) {
          if (!visit(id)) return;
        }
      }
      std::size_t j = 0;
      while (j < bucket_dims_ && offset[j] == 1) offset[j++] = -1;
      if (j == bucket_dims_) break;
      ++offset[j];
    }
  }

  std::optional<std::size_t> any_within(Coords q, double r) const {
    std::optional<std::size_t> found;
    for_each_within(q, r, [&](std::size_t id, double) {
      found = id;
      return false;
    });
    return found;
  }

  /// Nearest point within r; ties resolve to the lowest id.
  std::optional<Neighbor> nearest_within(Coords q, double r) const {
    std::optional<Neighbor> best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for_each_within(q, r, [&](std::size_t id, double d2) {
      if (d2 < best_d2 || (d2 == best_d2 && id < best->id)) {
        best_d2 = d2;
        best = Neighbor{id, 0.0};
      }
      return true;
    });
    if (best) best->distance = std::sqrt(best_d2);
    return best;
  }

  /// Unbounded nearest neighbour; ties resolve to the lowest id.
  std::optional<Neighbor> nearest(Coords q) const {
    if (points_.size() == 0) return std::nullopt;
    // Everything within one cell side is enumerated exactly; beyond that, scan all.
    if (bucket_dims_ > 0) {
      if (auto hit = nearest_within(q, side_)) return hit;
    }
    Neighbor best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t id = 0; id < points_.size(); ++id) {
      const double d2 = squared_distance(q, points_[id]);
      if (d2 < best.distance) best = Neighbor{id, d2};
    }
    best.distance = std::sqrt(best.distance);
    return best;
  }

 private:
  long axis_cell(double x) const {
    const auto n = static_cast<long>(cells_per_axis_);
    const long c = static_cast<long>(std::floor(x * static_cast<double>(n)));
    return std::clamp(c, 0L, n - 1);
  }

  std::size_t cell_of(Coords p) const {
    std::size_t key = 0;
    for (std::size_t j = bucket_dims_; j-- > 0;) {
      key = key * cells_per_axis_ + static_cast<std::size_t>(axis_cell(p[j]));
    }
    return key;
  }

  std::size_t dim_;
  bool periodic_;
  std::size_t cells_per_axis_ = 1;
  std::size_t bucket_dims_ = 0;
  double side_ = 1.0;
  PointCloud points_;
  std::vector<std::vector<std::uint32_t>> cells_;
};

/// Brute-force nearest neighbour, the reference for CellIndex.
inline std::optional<Neighbor> brute_nearest(const PointCloud& points, Coords q,
                                             bool periodic = false) {
  if (points.empty()) return std::nullopt;
  Neighbor best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d2 = periodic ? squared_periodic(q, points[i]) : squared_l2(q, points[i]);
    if (d2 < best.distance) best = Neighbor{i, d2};
  }
  best.distance = std::sqrt(best.distance);
  return best;
}

}  // namespace epsnet
