#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "epsnet/geometry.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/sampling.hpp"
#include "epsnet/spatial_index.hpp"

namespace epsnet {

inline constexpr std::size_t kDefaultMcSamples = 1'000'000;
/// Probes per parallel work unit; each unit draws from its own seeded substream.
inline constexpr std::size_t kProbeChunk = 1u << 16;

struct CoverageEstimate {
  double p_hat = 0.0;
  std::size_t uncovered = 0;
  std::size_t mc_samples = 0;
  double cover_radius = 0.0;
  std::uint64_t seed = 0;
  bool periodic = false;
};

namespace detail {

inline CellIndex index_of(const PointCloud& points, double cell_side, bool periodic) {
  CellIndex index(points.dim(), cell_side, periodic);
  for (std::size_t i = 0; i < points.size(); ++i) index.insert(points[i]);
  return index;
}

/// Runs f(probe) over `count` uniform probes of [0,1]^d, chunk c drawing from substream
/// c + 1 of `seed`, and returns the per-chunk results in chunk order.
template <class T, class F>
std::vector<T> over_probes(std::size_t dim, std::size_t count, std::uint64_t seed, unsigned threads,
                           T init, F&& f) {
  const std::size_t chunks = (count + kProbeChunk - 1) / kProbeChunk;
  std::vector<T> parts(chunks, init);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    auto rng = make_rng(seed, c + 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> q(dim);
    const std::size_t n = std::min(kProbeChunk, count - c * kProbeChunk);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& x : q) x = unit(rng);
      f(parts[c], Coords(q));
    }
  });
  return parts;
}

}  // namespace detail

/// Fraction of [0,1]^d farther than cover_radius from every point, by Monte Carlo.
/// The periodic variant measures distance on the flat torus.
inline CoverageEstimate estimate_uncovered(const PointCloud& points, double cover_radius,
                                           std::size_t mc_samples, std::uint64_t seed,
                                           bool periodic = false, unsigned threads = 0) {
  if (mc_samples < 1) throw DomainError("mc_samples must be >= 1");
  if (!(cover_radius > 0.0)) throw DomainError("cover radius must be > 0");
  const auto index = detail::index_of(points, cover_radius, periodic);
  const auto parts = detail::over_probes<std::size_t>(
      points.dim(), mc_samples, seed, threads, 0, [&](std::size_t& acc, Coords q) {
        if (!index.any_within(q, cover_radius)) ++acc;
      });
  CoverageEstimate e;
  for (auto p : parts) e.uncovered += p;
  e.mc_samples = mc_samples;
  e.p_hat = static_cast<double>(e.uncovered) / static_cast<double>(mc_samples);
  e.cover_radius = cover_radius;
  e.seed = seed;
  e.periodic = periodic;
  return e;
}

/// Largest nearest-point distance over `probes` uniform probes: a lower estimate of the
/// dispersion of the set in [0,1]^d.
inline double empirical_dispersion(const PointCloud& points, std::size_t probes, std::uint64_t seed,
                                   bool periodic = false, unsigned threads = 0) {
  if (points.size() == 0) throw DomainError("dispersion of an empty set is undefined");
  const double side = std::pow(1.0 / static_cast<double>(points.size()), 1.0 / points.dim());
  const auto index = detail::index_of(points, side, periodic);
  const auto parts = detail::over_probes<double>(points.dim(), probes, seed, threads, 0.0,
                                                 [&](double& acc, Coords q) {
                                                   acc = std::max(acc, index.nearest(q)->distance);
                                                 });
  return *std::max_element(parts.begin(), parts.end());
}

// ---------------------------------------------------------------------------
// Templates

struct TemplateReport {
  Template tmpl;
  double rho = 0.0;
  CoverageEstimate coverage;
  std::size_t dense_n = 0;
  std::uint64_t seed = 0;
};

inline double grid_benchmark(std::size_t d, std::size_t k) {
  return std::pow(static_cast<double>(k), static_cast<double>(d));
}

/// Greedy sqrt(d)/(2k)-net of dense_n seeded uniform points of [0,1]^d, with its size
/// relative to the k^d grid and its Monte Carlo uncovered fraction.
inline TemplateReport make_template(std::size_t d, std::size_t k, std::size_t dense_n, std::uint64_t seed,
                                    std::size_t mc_samples = kDefaultMcSamples, bool periodic = false,
                                    unsigned threads = 0) {
  if (d < 1 || k < 1 || dense_n < 1) throw DomainError("template needs d, k, dense_n >= 1");
  TemplateReport rep;
  rep.tmpl.k = k;
  rep.tmpl.cover_radius = template_radius(d, k);
  rep.tmpl.points = build_net_region(AxisBox::cube(d, 0.0, 1.0), rep.tmpl.cover_radius, dense_n, seed);
  rep.rho = static_cast<double>(rep.tmpl.points.size()) / grid_benchmark(d, k);
  if (mc_samples > 0) {
    rep.coverage = estimate_uncovered(rep.tmpl.points, rep.tmpl.cover_radius, mc_samples, seed, periodic, threads);
  }
  rep.dense_n = dense_n;
  rep.seed = seed;
  return rep;
}

struct ConvergenceCheck {
  std::size_t size = 0;
  std::size_t size_doubled = 0;
  double relative_change = 0.0;
  bool converged = false;
};

/// Compares template sizes at dense_n and 2 dense_n; converged when they differ by < 5%.
inline ConvergenceCheck template_convergence(std::size_t d, std::size_t k, std::size_t dense_n,
                                             std::uint64_t seed) {
  ConvergenceCheck c;
  c.size = make_template(d, k, dense_n, seed, 0).tmpl.points.size();
  c.size_doubled = make_template(d, k, 2 * dense_n, seed, 0).tmpl.points.size();
  c.relative_change = std::abs(static_cast<double>(c.size_doubled) - static_cast<double>(c.size)) /
                      static_cast<double>(c.size);
  c.converged = c.relative_change < 0.05;
  return c;
}

// ---------------------------------------------------------------------------
// Template-size table

struct Table2Reference {
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t size = 0;
  double rho = 0.0;
  double p_hat = 0.0;
};

inline const std::array<Table2Reference, 12>& table2_reference() {
  static const std::array<Table2Reference, 12> ref{{
      {4, 2, 15, 0.93, 3.7e-2},  {4, 3, 77, 0.95, 1.4e-2},   {5, 2, 27, 0.84, 3.3e-2},
      {5, 3, 189, 0.77, 5.7e-3}, {6, 2, 57, 0.89, 5.5e-3},   {6, 3, 457, 0.63, 2.4e-3},
      {7, 2, 105, 0.82, 3.1e-3}, {7, 3, 1078, 0.50, 1.4e-3}, {8, 2, 173, 0.68, 1.6e-3},
      {8, 3, 2477, 0.38, 6.4e-4}, {9, 2, 291, 0.58, 1.3e-3}, {9, 3, 5650, 0.29, 2.6e-4},
  }};
  return ref;
}

inline constexpr double kRhoTolerance = 0.15;
inline constexpr double kPHatFactor = 5.0;

struct Table2Cell {
  Table2Reference reference;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> sizes;
  std::vector<double> rhos;
  std::vector<double> p_hats;
  double mean_size = 0.0, std_size = 0.0;
  double mean_rho = 0.0, std_rho = 0.0;
  double mean_p_hat = 0.0, std_p_hat = 0.0;

  bool rho_ok() const { return std::abs(mean_rho - reference.rho) <= kRhoTolerance; }
  bool p_hat_ok() const { return mean_p_hat <= kPHatFactor * reference.p_hat; }
};

struct Table2Report {
  std::vector<Table2Cell> cells;
  std::size_t dense_n = 0;
  std::size_t mc_samples = 0;
  bool periodic = false;

  const Table2Cell* find(std::size_t d, std::size_t k) const {
    for (const auto& c : cells) {
      if (c.reference.d == d && c.reference.k == k) return &c;
    }
    return nullptr;
  }
  /// rho(d = 9, k = 3) < rho(d = 4, k = 3), when both cells are present.
  std::optional<bool> rho_improves_with_dimension() const {
    const auto* lo = find(4, 3);
    const auto* hi = find(9, 3);
    if (!lo || !hi) return std::nullopt;
    return hi->mean_rho < lo->mean_rho;
  }
};

namespace detail {
template <class T>
std::pair<double, double> mean_std(const std::vector<T>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double m = 0.0;
  for (auto x : xs) m += static_cast<double>(x);
  m /= static_cast<double>(xs.size());
  double v = 0.0;
  for (auto x : xs) v += (static_cast<double>(x) - m) * (static_cast<double>(x) - m);
  // Sample standard deviation; zero for a single seed.
  return {m, xs.size() > 1 ? std::sqrt(v / static_cast<double>(xs.size() - 1)) : 0.0};
}
}  // namespace detail

/// Builds one template per (d, k, seed) for the reference cells (all twelve by default).
inline Table2Report table2_bench(std::size_t dense_n, std::size_t mc_samples,
                                 const std::vector<std::uint64_t>& seeds, bool periodic = false,
                                 unsigned threads = 0,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& only = {}) {
  Table2Report rep{{}, dense_n, mc_samples, periodic};
  for (const auto& ref : table2_reference()) {
    if (!only.empty() && std::find(only.begin(), only.end(), std::pair{ref.d, ref.k}) == only.end()) continue;
    Table2Cell cell;
    cell.reference = ref;
    cell.seeds = seeds;
    for (auto seed : seeds) {
      const auto t = make_template(ref.d, ref.k, dense_n, seed, mc_samples, periodic, threads);
      cell.sizes.push_back(t.tmpl.points.size());
      cell.rhos.push_back(t.rho);
      cell.p_hats.push_back(t.coverage.p_hat);
    }
    std::tie(cell.mean_size, cell.std_size) = detail::mean_std(cell.sizes);
    std::tie(cell.mean_rho, cell.std_rho) = detail::mean_std(cell.rhos);
    std::tie(cell.mean_p_hat, cell.std_p_hat) = detail::mean_std(cell.p_hats);
    rep.cells.push_back(std::move(cell));
  }
  return rep;
}

}  // namespace epsnet
