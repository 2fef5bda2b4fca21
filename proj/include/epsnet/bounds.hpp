#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "epsnet/epsilon.hpp"
#include "epsnet/geometry.hpp"

namespace epsnet {

namespace detail {
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kE = std::numbers::e;

inline void require_clearance(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
}
}  // namespace detail

/// sqrt(pi d) * (sqrt(2d / (pi e)) * (1 - (2 - alpha) delta) / (alpha delta))^d, the sample
/// count at which an (alpha delta)-net of [delta, 1-delta]^d is guaranteed to exist.
inline double sufficient_sample_count(int d, double alpha, double delta) {
  using namespace detail;
  const double slack = 1.0 - (2.0 - alpha) * delta;
  if (slack <= 0.0) throw DomainError("1 - (2 - alpha) delta must be positive");
  const double base = std::sqrt(2.0 * d / (kPi * kE)) * slack / (alpha * delta);
  return std::sqrt(kPi * d) * std::pow(base, d);
}

/// Lower bounds any (delta, inf)-complete sample set and radius must satisfy.
struct NecessaryBounds {
  int d = 0;
  double delta = 0.0;
  double n_lb = 0.0;

  /// Smallest admissible connection radius for n samples.
  double radius(double n) const {
    using namespace detail;
    return (1.0 - 2.0 * delta) * std::pow(std::sqrt(kPi * d), 1.0 / d) *
           std::sqrt(d / (2.0 * kPi * kE)) * std::pow(n, -1.0 / d);
  }
};

inline NecessaryBounds necessary_bounds(int d, double delta) {
  using namespace detail;
  if (d < 2) throw DomainError("necessary bounds need d >= 2");
  require_clearance(delta);
  NecessaryBounds b{d, delta, 0.0};
  const double packing = 1.0 - 2.0 * delta / (1.0 - 2.0 * delta);
  // For delta >= 1/4 the ring-packing argument is vacuous.
  if (packing > 0.0) {
    b.n_lb = std::sqrt(kE / 2.0) * packing * packing *
             std::pow(std::sqrt((d - 1.0) / (2.0 * kPi * kE)) * (1.0 - 2.0 * delta) / delta, d);
  }
  return b;
}

/// Sample count and radii under which epsilon-net sampling is (delta, eps)-complete.
///
/// Two radius expressions are carried: the one stated alongside the sample condition,
/// with coefficient sqrt(d/(2 pi e)), and the one produced by the triangle-inequality
/// chain, with coefficient sqrt(2d/(pi e)). They differ by exactly a factor 2.
struct SufficientBounds {
  int d = 0;
  double delta = 0.0;
  Epsilon eps = Epsilon::infinity();
  double alpha = 1.0;
  double n_ub = 0.0;

  double radius_statement(double n) const {
    using namespace detail;
    return 2.0 * (1.0 + eps.inverse()) * std::pow(std::sqrt(kPi * d), 1.0 / d) *
           std::sqrt(d / (2.0 * kPi * kE)) * std::pow(n, -1.0 / d);
  }
  double radius_proof(double n) const {
    using namespace detail;
    return 2.0 * (1.0 + eps.inverse()) * std::sqrt(2.0 * d / (kPi * kE)) *
           std::pow(std::sqrt(kPi * d) / n, 1.0 / d);
  }
};

inline SufficientBounds sufficient_bounds(int d, double delta, Epsilon eps) {
  if (d < 1) throw DomainError("d must be >= 1");
  detail::require_clearance(delta);
  SufficientBounds b{d, delta, eps, eps.alpha(), 0.0};
  b.n_ub = sufficient_sample_count(d, b.alpha, delta);
  return b;
}

/// Size of the grid of [delta, 1-delta]^d with spacing 2 alpha delta / sqrt(d).
inline double grid_sufficient_size(int d, double delta, Epsilon eps) {
  if (d < 1) throw DomainError("d must be >= 1");
  detail::require_clearance(delta);
  const double per_axis = std::sqrt(static_cast<double>(d)) / 2.0 * (1.0 - 2.0 * delta) /
                          (eps.alpha() * delta);
  return std::pow(per_axis, d);
}

struct NetCardinality {
  double lower = 0.0;
  double upper = 0.0;
};

/// Volumetric bounds on epsilon-nets of a region A: every net has at least `lower`
/// points, and a greedy (separated) net has at most `upper`, where `inflated_volume`
/// is vol(A + B_2(0, eps/2)).
inline NetCardinality net_cardinality_bounds(double region_volume, double inflated_volume, int d,
                                             double eps) {
  using namespace detail;
  if (region_volume < 0.0 || inflated_volume < 0.0) throw DomainError("volumes must be >= 0");
  if (!(eps > 0.0)) throw DomainError("eps must be > 0");
  if (d < 1) throw DomainError("d must be >= 1");
  const double scale = std::sqrt(kPi * d);
  return {region_volume * scale * std::pow(std::sqrt(d / (2.0 * kPi * kE)) / eps, d),
          inflated_volume * scale * std::pow(std::sqrt(2.0 * d / (kPi * kE)) / eps, d)};
}

/// Upper bound on |greedy eps-net of [0,1]^d| / |smallest grid that is an eps-net|.
inline double net_vs_grid_ratio_bound(int d, double eps) {
  using namespace detail;
  if (!(eps > 0.0)) throw DomainError("eps must be > 0");
  if (d < 1) throw DomainError("d must be >= 1");
  const double base = std::sqrt(8.0) * (1.0 + eps) / std::sqrt(kPi * kE);
  return std::sqrt(kPi * d) * std::pow(base, d);
}

/// Every closed-form quantity for one (d, delta, eps). Radii are evaluated at `n`
/// (n_sufficient unless given). The net bounds and ratio refer to the
/// (alpha delta)-net of [delta, 1-delta]^d that the sufficient condition is built on.
struct BoundsReport {
  int d = 0;
  double delta = 0.0;
  Epsilon eps = Epsilon::infinity();
  double alpha = 1.0;
  double n = 0.0;
  double n_necessary = 0.0;
  double r_necessary = 0.0;
  double n_sufficient = 0.0;
  double r_sufficient_stmt = 0.0;
  double r_sufficient_proof = 0.0;
  double grid_size = 0.0;
  double net_lower = 0.0;
  double net_upper = 0.0;
  double ratio_bound = 0.0;
  double unit_ball_volume = 0.0;
};

inline BoundsReport bounds_report(int d, double delta, Epsilon eps,
                                  std::optional<double> n = std::nullopt) {
  const auto suff = sufficient_bounds(d, delta, eps);
  BoundsReport r;
  r.d = d;
  r.delta = delta;
  r.eps = eps;
  r.alpha = suff.alpha;
  r.n_sufficient = suff.n_ub;
  r.n = n.value_or(suff.n_ub);
  if (!(r.n > 0.0)) throw DomainError("n must be > 0");
  if (d >= 2) {
    const auto nec = necessary_bounds(d, delta);
    r.n_necessary = nec.n_lb;
    r.r_necessary = nec.radius(r.n);
  }
  r.r_sufficient_stmt = suff.radius_statement(r.n);
  r.r_sufficient_proof = suff.radius_proof(r.n);
  r.grid_size = grid_sufficient_size(d, delta, eps);
  const double net_radius = suff.alpha * delta;
  const double side = 1.0 - 2.0 * delta;
  const auto card = net_cardinality_bounds(
      std::pow(side, d), std::pow(inflated_cube_side(side, net_radius / 2.0), d), d, net_radius);
  r.net_lower = card.lower;
  r.net_upper = card.upper;
  r.ratio_bound = net_vs_grid_ratio_bound(d, net_radius);
  r.unit_ball_volume = unit_ball_volume(d).value;
  return r;
}

// ---------------------------------------------------------------------------
// Sample-complexity table

struct Table1Row {
  double delta = 0.0;
  int d = 0;
  /// necessary n; sufficient n at eps = inf, 1, 0.25
  std::array<double, 4> raw{};
};

inline const std::array<Epsilon, 3>& table1_epsilons() {
  static const std::array<Epsilon, 3> eps{Epsilon::infinity(), Epsilon(1.0), Epsilon(0.25)};
  return eps;
}

inline std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (double delta : {0.25, 0.1, 0.05}) {
    for (int d : {4, 5, 6}) {
      Table1Row row{delta, d, {}};
      row.raw[0] = necessary_bounds(d, delta).n_lb;
      for (std::size_t j = 0; j < 3; ++j) row.raw[j + 1] = sufficient_bounds(d, delta, table1_epsilons()[j]).n_ub;
      rows.push_back(row);
    }
  }
  return rows;
}

/// Published cell text for each row of table1(), same order.
inline const std::vector<std::array<const char*, 4>>& table1_reference() {
  static const std::vector<std::array<const char*, 4>> ref{
      {"0", "252", "669", "22737"},         {"0", "1430", "4837", "3.9e5"},
      {"0", "8781", "37930", "7.5e6"},      {"82", "20411", "7.15e4", "4.2e6"},
      {"570", "3.48e5", "1.66e6", "2.6e8"}, {"4313", "6.41e6", "4.19e7", "1.8e10"},
      {"2983", "4.1e5", "1.52e6", "9.9e7"}, {"46201", "1.46e7", "7.62e7", "1.4e10"},
      {"7.86e5", "5.67e8", "4.13e9", "2.2e12"}};
  return ref;
}

/// A number as printed: its value, significant figures and last-digit unit.
struct PrintedValue {
  double value = 0.0;
  int significant_figures = 0;
  double unit = 1.0;
};

inline PrintedValue parse_printed(const std::string& text) {
  PrintedValue p;
  const auto e = text.find('e');
  const std::string mantissa = text.substr(0, e);
  const int exponent = e == std::string::npos ? 0 : std::stoi(text.substr(e + 1));
  const auto dot = mantissa.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mantissa.size() - dot - 1);
  int digits = 0;
  bool leading = true;
  for (char c : mantissa) {
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  p.value = std::stod(text);
  p.significant_figures = digits;
  p.unit = std::pow(10.0, exponent - decimals);
  return p;
}

/// Agreement of a computed value with a printed cell.
struct CellCheck {
  /// The printed value is the computed one rounded up or down at the printed precision.
  bool directed_rounding = false;
  /// Relative error <= 0.5% for cells printed with 3+ significant figures; within one
  /// printed unit for shorter cells, where 0.5% is finer than the printed resolution.
  bool within_tolerance = false;
  double relative_error = 0.0;
};

inline CellCheck check_printed_cell(double raw, const std::string& printed) {
  const auto p = parse_printed(printed);
  CellCheck c;
  if (p.value == 0.0) {
    c.directed_rounding = c.within_tolerance = raw == 0.0;
    return c;
  }
  const double gap = std::abs(raw - p.value);
  c.relative_error = gap / p.value;
  c.directed_rounding = gap < p.unit;
  c.within_tolerance = p.significant_figures >= 3 ? c.relative_error <= 0.005 : gap < p.unit;
  return c;
}

/// Integers below 1e5 (lower bounds rounded down, upper bounds up), otherwise three
/// significant figures in the form "3.48e5".
inline std::string format_table_value(double raw, bool lower_bound) {
  char buf[64];
  if (raw < 1e5) {
    std::snprintf(buf, sizeof buf, "%.0f", lower_bound ? std::floor(raw) : std::ceil(raw));
    return buf;
  }
  const int exponent = static_cast<int>(std::floor(std::log10(raw)));
  double mantissa = std::round(raw / std::pow(10.0, exponent) * 100.0) / 100.0;
  int e = exponent;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    ++e;
  }
  std::snprintf(buf, sizeof buf, "%.2fe%d", mantissa, e);
  return buf;
}

}  // namespace epsnet
