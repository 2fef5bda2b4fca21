#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "epsnet/geometry.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/sampling.hpp"
#include "epsnet/spatial_index.hpp"

namespace epsnet {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Roadmap over (samples + start + goal) in free space. Vertex 0 is the start and
/// vertex 1 the goal; either is kept without edges when it is in collision.
struct PrmGraph {
  PointCloud vertices;
  std::vector<bool> free;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
  double radius = 0.0;

  static constexpr std::size_t kStart = 0;
  static constexpr std::size_t kGoal = 1;

  std::size_t degree(std::size_t v) const { return adjacency[v].size(); }
};

namespace detail {

inline PrmGraph prm_vertices(const Environment& env, const PointCloud& samples, double r,
                             double tol) {
  if (!(r > 0.0)) throw DomainError("connection radius must be > 0");
  if (samples.size() > 0 && samples.dim() != env.dim) throw DomainError("sample dimension differs from environment");
  if (env.start.dim() != env.dim || env.goal.dim() != env.dim) throw DomainError("start/goal dimension differs from environment");
  PrmGraph g;
  g.radius = r;
  g.vertices = PointCloud(env.dim);
  g.vertices.push_back(env.start);
  g.vertices.push_back(env.goal);
  g.free = {point_in_free_space(env, env.start, tol), point_in_free_space(env, env.goal, tol)};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (point_in_free_space(env, samples[i], tol)) {
      g.vertices.push_back(samples[i]);
      g.free.push_back(true);
    }
  }
  g.adjacency.resize(g.vertices.size());
  return g;
}

inline void finish_graph(PrmGraph& g) {
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (const auto& e : g.edges) {
    g.adjacency[e.u].emplace_back(e.v, e.length);
    g.adjacency[e.v].emplace_back(e.u, e.length);
  }
}

}  // namespace detail

/// G(X, r): edges join free vertices at distance <= r whose segment is collision free.
/// Candidates come from a cell index; per-chunk edge lists are merged in chunk order.
inline PrmGraph build_prm(const Environment& env, const PointCloud& samples, double r,
                          double tol = kDefaultTolerance, unsigned threads = 0) {
  auto g = detail::prm_vertices(env, samples, r, tol);
  const std::size_t n = g.vertices.size();
  CellIndex index(env.dim, r);
  for (std::size_t i = 0; i < n; ++i) index.insert(g.vertices[i]);
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<Edge>> found(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
      if (!g.free[i]) continue;
      index.for_each_within(g.vertices[i], r, [&](std::size_t j, double d2) {
        if (j > i && g.free[j] && !segment_collides(env, g.vertices[i], g.vertices[j], tol)) {
          found[c].push_back({i, j, std::sqrt(d2)});
        }
        return true;
      });
    }
  });
  for (auto& part : found) g.edges.insert(g.edges.end(), part.begin(), part.end());
  detail::finish_graph(g);
  return g;
}

/// All-pairs construction; the reference for build_prm.
inline PrmGraph build_prm_brute(const Environment& env, const PointCloud& samples, double r,
                                double tol = kDefaultTolerance) {
  auto g = detail::prm_vertices(env, samples, r, tol);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      if (!g.free[i] || !g.free[j]) continue;
      const double len = distance(g.vertices[i], g.vertices[j]);
      if (len <= r && !segment_collides(env, g.vertices[i], g.vertices[j], tol)) {
        g.edges.push_back({i, j, len});
      }
    }
  }
  detail::finish_graph(g);
  return g;
}

struct PathResult {
  bool found = false;
  double length = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> vertex_ids;
  PointCloud path;
};

/// Dijkstra from the start vertex to the goal vertex.
inline PathResult shortest_path(const PrmGraph& g) {
  PathResult out;
  out.path = PointCloud(g.vertices.dim());
  const std::size_t n = g.vertices.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, n);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[PrmGraph::kStart] = 0.0;
  heap.emplace(0.0, PrmGraph::kStart);
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    if (u == PrmGraph::kGoal) break;
    for (const auto& [v, w] : g.adjacency[u]) {
      if (du + w < dist[v]) {
        dist[v] = du + w;
        parent[v] = u;
        heap.emplace(dist[v], v);
      }
    }
  }
  if (!g.free[PrmGraph::kStart] || !g.free[PrmGraph::kGoal] || std::isinf(dist[PrmGraph::kGoal])) return out;
  out.found = true;
  out.length = dist[PrmGraph::kGoal];
  for (std::size_t v = PrmGraph::kGoal; v != n; v = parent[v]) {
    out.vertex_ids.push_back(v);
    if (v == PrmGraph::kStart) break;
  }
  std::reverse(out.vertex_ids.begin(), out.vertex_ids.end());
  for (auto v : out.vertex_ids) out.path.push_back(g.vertices[v]);
  return out;
}

/// Whether the result meets the (delta, eps) guarantee against the optimal delta-clear
/// length: found, and strictly shorter than (1 + eps) opt (found suffices at eps = inf).
inline bool completeness_check(const PathResult& result, double opt_delta, Epsilon eps) {
  if (!(opt_delta > 0.0)) throw DomainError("optimal length must be > 0");
  if (!result.found) return false;
  if (eps.is_infinite()) return true;
  return result.length < (1.0 + eps.value()) * opt_delta;
}

// ---------------------------------------------------------------------------
// Waypoint stretch oracle

class InvalidNet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StretchReport {
  /// Waypoints along the path, and the sample each one snaps to.
  PointCloud waypoints;
  PointCloud snapped;
  double gap = 0.0;
  double max_segment_length = 0.0;
  double segment_length_bound = 0.0;
  /// Largest |z_j - z_{j+1}| / |p_j - p_{j+1}| over consecutive waypoints a full gap apart.
  double max_ratio = 0.0;
  /// Sum |z_j - z_{j+1}| / sum |p_j - p_{j+1}| over the same pairs.
  double stretch = 1.0;
  /// The same ratio including the closing, possibly shorter, pair.
  double stretch_total = 1.0;
};

namespace detail {

/// First parameter t in [t0, 1] with |a + t (b - a) - c| = g, if any.
inline std::optional<double> sphere_exit(Coords a, Coords b, Coords c, double g, double t0) {
  double aa = 0.0, bb = 0.0, cc = -g * g;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dir = b[i] - a[i];
    const double off = a[i] - c[i];
    aa += dir * dir;
    bb += 2.0 * dir * off;
    cc += off * off;
  }
  if (aa == 0.0) return std::nullopt;
  const double disc = bb * bb - 4.0 * aa * cc;
  if (disc < 0.0) return std::nullopt;
  const double t = (-bb + std::sqrt(disc)) / (2.0 * aa);
  if (t < t0 - 1e-15 || t > 1.0) return std::nullopt;
  return std::max(t, t0);
}

}  // namespace detail

/// Waypoints p_0 = start, then each next point of the polyline at Euclidean distance
/// gap from the previous one, and finally the path's end point.
inline PointCloud place_waypoints(const PointCloud& path, double gap) {
  if (!(gap > 0.0)) throw DomainError("waypoint gap must be > 0");
  if (path.size() == 0) throw DomainError("path is empty");
  PointCloud out(path.dim());
  Point current(path[0]);
  out.push_back(current);
  std::size_t seg = 0;
  double t = 0.0;
  while (seg + 1 < path.size()) {
    const auto hit = detail::sphere_exit(path[seg], path[seg + 1], current, gap, t);
    if (!hit) {
      ++seg;
      t = 0.0;
      continue;
    }
    t = *hit;
    Point next(path[seg]);
    for (std::size_t i = 0; i < next.dim(); ++i) next[i] += t * (path[seg + 1][i] - path[seg][i]);
    current = next;
    out.push_back(current);
  }
  const Point end(path[path.size() - 1]);
  if (!(current == end)) out.push_back(end);
  return out;
}

/// Executable form of the stretch argument: waypoints 2 sqrt(1 - alpha^2) delta_min apart
/// are snapped to their nearest samples. With an (alpha delta_min)-net every consecutive
/// snapped pair is at most 2 (alpha + sqrt(1 - alpha^2)) delta_min apart, so each full-gap
/// ratio is at most 1 + alpha / sqrt(1 - alpha^2) = 1 + eps.
inline StretchReport waypoint_stretch_oracle(const PointCloud& path, double delta_min, double alpha,
                                             const PointCloud& samples) {
  if (!(delta_min > 0.0)) throw DomainError("delta_min must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (samples.size() == 0) throw InvalidNet("not a valid net: no samples");
  StretchReport rep;
  const double beta = std::sqrt(1.0 - alpha * alpha);
  rep.gap = 2.0 * beta * delta_min;
  rep.segment_length_bound = 2.0 * (alpha + beta) * delta_min;
  rep.waypoints = place_waypoints(path, rep.gap);
  rep.snapped = PointCloud(path.dim());
  const double cover = alpha * delta_min;
  CellIndex index(samples.dim(), cover);
  for (std::size_t i = 0; i < samples.size(); ++i) index.insert(samples[i]);
  for (std::size_t j = 0; j < rep.waypoints.size(); ++j) {
    const auto nn = index.nearest(rep.waypoints[j]);
    if (nn->distance > cover * (1.0 + 1e-12)) {
      throw InvalidNet("not a valid net: waypoint " + std::to_string(j) + " is " +
                       std::to_string(nn->distance) + " from every sample");
    }
    rep.snapped.push_back(samples[nn->id]);
  }
  double full_z = 0.0, full_p = 0.0, all_z = 0.0, all_p = 0.0;
  for (std::size_t j = 0; j + 1 < rep.waypoints.size(); ++j) {
    const double dz = distance(rep.snapped[j], rep.snapped[j + 1]);
    const double dp = distance(rep.waypoints[j], rep.waypoints[j + 1]);
    rep.max_segment_length = std::max(rep.max_segment_length, dz);
    all_z += dz;
    all_p += dp;
    if (j + 2 < rep.waypoints.size() || std::abs(dp - rep.gap) <= 1e-12 * rep.gap) {
      rep.max_ratio = std::max(rep.max_ratio, dz / dp);
      full_z += dz;
      full_p += dp;
    }
  }
  if (full_p > 0.0) rep.stretch = full_z / full_p;
  if (all_p > 0.0) rep.stretch_total = all_z / all_p;
  return rep;
}

// ---------------------------------------------------------------------------
// Adversarial instances

enum class AdversaryVariant { Shell, Ring };

/// A delta-clear problem whose roadmap over the given samples has no start-goal path.
struct AdversarialInstance {
  AdversaryVariant variant = AdversaryVariant::Shell;
  Environment env;
  Point witness_center;
  double delta = 0.0;
  /// Smallest distance from a sample to the witness region's defining curve or point.
  double witness_score = 0.0;

  /// Length of the recorded delta-clear solution, a half circle of radius delta.
  double opt_delta() const { return std::numbers::pi * delta; }

  /// The recorded solution, t in [0, 1]: centre + delta (-cos(pi t), sin(pi t), 0, ...).
  Point solution_point(double t) const {
    Point p = witness_center;
    p[0] -= delta * std::cos(std::numbers::pi * t);
    p[1] += delta * std::sin(std::numbers::pi * t);
    return p;
  }

  PointCloud solution_path(std::size_t pieces) const {
    PointCloud out(env.dim);
    for (std::size_t i = 0; i <= pieces; ++i) out.push_back(solution_point(static_cast<double>(i) / pieces));
    return out;
  }
};

namespace detail {

/// Maximises score over the box: probes the centre, then `budget` random points, then
/// refines the best by compass search. Returns the best point and its score.
template <class Score>
std::pair<Point, double> maximise_in_box(const AxisBox& box, Score&& score, std::size_t budget,
                                         std::uint64_t seed) {
  const std::size_t d = box.lo.dim();
  Point best = box.lo;
  for (std::size_t i = 0; i < d; ++i) best[i] = 0.5 * (box.lo[i] + box.hi[i]);
  double best_score = score(best);
  auto rng = make_rng(seed);
  const std::size_t probes = budget / 2;
  const auto cloud = uniform_points(box, probes, rng);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double s = score(cloud[i]);
    if (s > best_score) {
      best_score = s;
      best = cloud.point(i);
    }
  }
  double step = 0.0;
  for (std::size_t i = 0; i < d; ++i) step = std::max(step, 0.25 * (box.hi[i] - box.lo[i]));
  std::size_t spent = probes;
  while (step > 1e-12 && spent < budget) {
    bool improved = false;
    for (std::size_t i = 0; i < d && spent < budget; ++i) {
      for (double sign : {1.0, -1.0}) {
        Point trial = best;
        trial[i] = std::clamp(trial[i] + sign * step, box.lo[i], box.hi[i]);
        const double s = score(trial);
        ++spent;
        if (s > best_score) {
          best_score = s;
          best = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best, best_score};
}

inline double min_over(const PointCloud& samples, const std::function<double(Coords)>& f) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) m = std::min(m, f(samples[i]));
  return m;
}

inline void check_adversary_args(const PointCloud& samples, std::size_t dim, double delta) {
  if (!(delta > 0.0 && delta < 0.25)) throw DomainError("delta must lie in (0, 1/4)");
  if (dim < 2) throw DomainError("adversarial instances need d >= 2");
  if (samples.size() > 0 && samples.dim() != dim) throw DomainError("sample dimension mismatch");
}

}  // namespace detail

inline constexpr std::size_t kDefaultSearchBudget = 20000;

/// Point obstacle y plus the sphere of radius 2 delta around it, with start and goal at
/// y -/+ delta e1. Succeeds when some y in [2 delta, 1 - 2 delta]^d has every sample
/// strictly farther than 2 delta away.
inline std::optional<AdversarialInstance> adversarial_shell(const PointCloud& samples, std::size_t dim,
                                                            double delta,
                                                            std::size_t budget = kDefaultSearchBudget,
                                                            std::uint64_t seed = 0,
                                                            double tol = kDefaultTolerance) {
  detail::check_adversary_args(samples, dim, delta);
  const auto box = AxisBox::cube(dim, 2.0 * delta, 1.0 - 2.0 * delta);
  auto score = [&](Coords y) { return detail::min_over(samples, [&](Coords x) { return distance(x, y); }); };
  auto [y, s] = detail::maximise_in_box(box, score, budget, seed);
  if (!(s > 2.0 * delta + tol)) return std::nullopt;
  AdversarialInstance inst;
  inst.variant = AdversaryVariant::Shell;
  inst.delta = delta;
  inst.witness_center = y;
  inst.witness_score = s;
  inst.env.dim = dim;
  inst.env.obstacles = {PointObstacle{y}, SphereShell{y, 2.0 * delta}};
  inst.env.start = y - Point::basis(dim, 0, delta);
  inst.env.goal = y + Point::basis(dim, 0, delta);
  return inst;
}

/// Torus T(x*, delta, delta) with start and goal x* -/+ delta e1, for x* in
/// D = [2 delta, 1 - 2 delta]^2 x [delta, 1 - delta]^(d-2) whose ring R(x*, delta, delta)
/// holds no sample. The half circle x* + delta (-cos(pi t), sin(pi t)) runs along the
/// ring's core at clearance exactly delta.
inline std::optional<AdversarialInstance> adversarial_ring(const PointCloud& samples, std::size_t dim,
                                                           double delta,
                                                           std::size_t budget = kDefaultSearchBudget,
                                                           std::uint64_t seed = 0,
                                                           double tol = kDefaultTolerance) {
  detail::check_adversary_args(samples, dim, delta);
  AxisBox box = AxisBox::cube(dim, delta, 1.0 - delta);
  for (std::size_t i = 0; i < 2; ++i) {
    box.lo[i] = 2.0 * delta;
    box.hi[i] = 1.0 - 2.0 * delta;
  }
  // Ring membership is symmetric: x in R(c) iff c in R(x).
  auto score = [&](Coords c) {
    return detail::min_over(samples, [&](Coords x) { return circle_distance(x, c, delta); });
  };
  auto [c, s] = detail::maximise_in_box(box, score, budget, seed);
  if (!(s > delta + tol)) return std::nullopt;
  AdversarialInstance inst;
  inst.variant = AdversaryVariant::Ring;
  inst.delta = delta;
  inst.witness_center = c;
  inst.witness_score = s;
  inst.env.dim = dim;
  inst.env.obstacles = {TorusSurface{c, delta, delta}};
  inst.env.start = c - Point::basis(dim, 0, delta);
  inst.env.goal = c + Point::basis(dim, 0, delta);
  return inst;
}

/// Minimum obstacle clearance along the recorded solution at `count` + 1 evenly spaced
/// parameters.
inline double solution_clearance(const AdversarialInstance& inst, std::size_t count = 1000) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= count; ++i) {
    m = std::min(m, clearance(inst.env, inst.solution_point(static_cast<double>(i) / count)));
  }
  return m;
}

}  // namespace epsnet
