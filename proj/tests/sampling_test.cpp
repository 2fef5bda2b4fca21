#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "epsnet/coverage.hpp"
#include "epsnet/sampling.hpp"

using namespace epsnet;

namespace {

// Reference greedy net: repeatedly add the first input point not within eps of the net.
PointCloud greedy_oracle(const PointCloud& in, double eps) {
  PointCloud net(in.dim());
  std::vector<bool> covered(in.size(), false);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (covered[i]) continue;
    net.push_back(in[i]);
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (distance(in[i], in[j]) <= eps) covered[j] = true;
    }
  }
  return net;
}

double min_pair_distance(const PointCloud& p) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) m = std::min(m, distance(p[i], p[j]));
  return m;
}

double max_cover_distance(const PointCloud& in, const PointCloud& net) {
  double m = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) m = std::max(m, brute_nearest(net, in[i])->distance);
  return m;
}

std::vector<std::vector<double>> sorted_rows(const PointCloud& p, double quantum = 1e-12) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<double> r(p[i].begin(), p[i].end());
    for (auto& x : r) x = std::round(x / quantum) * quantum;
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

PointCloud cloud(std::initializer_list<Point> pts) {
  PointCloud c(pts.begin()->dim());
  for (const auto& p : pts) c.push_back(p);
  return c;
}

}  // namespace

TEST(BuildNet, SinglePoint) {
  const auto in = cloud({Point{0.3, 0.7}});
  EXPECT_EQ(build_net(in, 0.01), in);
}

TEST(BuildNet, FirstUncoveredSelection) {
  const auto in = cloud({Point{0.0, 0.0}, Point{0.0, 0.5}, Point{0.0, 1.0}});
  const auto net = build_net(in, 0.6);
  EXPECT_EQ(net, cloud({Point{0.0, 0.0}, Point{0.0, 1.0}}));
  // Exhaustive check: the middle point alone is a 0.6-net, so greedy selection in input
  // order is not minimum here.
  std::size_t single_point_nets = 0;
  for (std::size_t c = 0; c < in.size(); ++c) {
    bool covers_all = true;
    for (std::size_t i = 0; i < in.size(); ++i) covers_all = covers_all && distance(in[c], in[i]) <= 0.6;
    single_point_nets += covers_all;
  }
  EXPECT_EQ(single_point_nets, 1u);
}

TEST(BuildNet, RejectsNonPositiveRadiusAndHandlesEmptyInput) {
  EXPECT_THROW(build_net(cloud({Point{0.1}}), 0.0), DomainError);
  EXPECT_EQ(build_net(PointCloud(3), 0.1).size(), 0u);
}

TEST(BuildNet, MatchesReferenceGreedy) {
  for (std::size_t d : {1u, 2u, 3u, 5u}) {
    auto rng = make_rng(d);
    const auto in = uniform_points(AxisBox::cube(d, 0.0, 1.0), 1500, rng);
    for (double eps : {0.05, 0.2, 0.6}) EXPECT_EQ(build_net(in, eps), greedy_oracle(in, eps));
  }
}

TEST(BuildNet, SeparationAndCoverageProperty) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 2 + seed % 4;
    auto rng = make_rng(seed);
    const auto in = uniform_points(AxisBox::cube(d, 0.0, 1.0), 2000, rng);
    const double eps = 0.1 + 0.05 * static_cast<double>(seed % 5);
    const auto net = build_net(in, eps);
    EXPECT_GT(min_pair_distance(net), eps);
    EXPECT_LE(max_cover_distance(in, net), eps);
  }
}

TEST(BuildNet, SizeInsideCardinalitySandwich) {
  auto rng = make_rng(1);
  const auto in = uniform_points(AxisBox::cube(2, 0.0, 1.0), 100000, rng);
  const double eps = 0.1;
  const auto net = build_net(in, eps);
  const auto b = net_cardinality_bounds(1.0, std::pow(inflated_cube_side(1.0, eps / 2), 2), 2, eps);
  EXPECT_GE(static_cast<double>(net.size()), b.lower);
  EXPECT_LE(static_cast<double>(net.size()), b.upper);
}

TEST(BuildNetRegion, DeterministicAndInsideBox) {
  const auto box = AxisBox::cube(3, 0.2, 0.8);
  const auto a = build_net_region(box, 0.1, 20000, 5);
  EXPECT_EQ(a, build_net_region(box, 0.1, 20000, 5));
  EXPECT_NE(a, build_net_region(box, 0.1, 20000, 6));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (double x : a[i]) {
      EXPECT_GE(x, 0.2);
      EXPECT_LE(x, 0.8);
    }
}

TEST(Grid, UnitCubeExamples) {
  const auto g = grid(GridSpec::unit(2, 0.5));
  EXPECT_EQ(g.points, cloud({Point{0.25, 0.25}, Point{0.25, 0.75}, Point{0.75, 0.25}, Point{0.75, 0.75}}));
  EXPECT_EQ(grid(GridSpec::unit(1, 1.0)).points, cloud({Point{0.5}}));
  EXPECT_EQ(grid(GridSpec::unit(3, 0.1)).size(), 1000u);
  EXPECT_THROW(grid(GridSpec::unit(2, 0.3)), DomainError);
}

TEST(Grid, DefinitionOracle) {
  // x_i / w + 1/2 must lie in {1, ..., 1/w}.
  const double w = 0.125;
  const auto g = grid(GridSpec::unit(3, w));
  ASSERT_EQ(g.size(), 512u);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (double x : g.points[i]) {
      const double k = x / w + 0.5;
      EXPECT_NEAR(k, std::round(k), 1e-12);
      EXPECT_GE(std::round(k), 1.0);
      EXPECT_LE(std::round(k), 8.0);
    }
}

TEST(Grid, SubBoxMatchesGridSufficientSize) {
  const double delta = 0.25, alpha = 1.0;
  const std::size_t d = 4;
  const double w = 2 * alpha * delta / std::sqrt(static_cast<double>(d));
  const auto g = grid({w, AxisBox::cube(d, delta, 1 - delta)});
  EXPECT_EQ(g.size(), 16u);
  EXPECT_NEAR(static_cast<double>(g.size()), grid_sufficient_size(4, delta, Epsilon::infinity()), 1e-9);
}

TEST(Grid, NetCriterionSmallScale) {
  for (std::size_t d : {2u, 3u}) {
    for (double w : {1.0 / 8, 1.0 / 5}) {
      const auto g = grid(GridSpec::unit(d, w));
      const double disp = empirical_dispersion(g.points, 100000, 3);
      EXPECT_LE(disp, std::sqrt(static_cast<double>(d)) * w / 2 + 1e-12);
      EXPECT_GE(disp, std::sqrt(static_cast<double>(d)) * w / 2 - 0.01);
    }
  }
}

TEST(DeltaMin, BisectionInvertsTheCount) {
  for (int d = 2; d <= 8; ++d) {
    for (double alpha : {0.2, 0.7071, 1.0}) {
      for (double n : {50.0, 1e3, 1e6}) {
        const double dm = solve_delta_min(n, d, alpha);
        EXPECT_NEAR(sufficient_sample_count(d, alpha, dm) / n, 1.0, 1e-9);
        EXPECT_NEAR(delta_min_closed_form(n, d, alpha), dm, 1e-11);
      }
    }
  }
}

TEST(DeltaMin, PrintedClosedFormDoesNotInvertTheCount) {
  const double n = 1000;
  const int d = 3;
  const double alpha = 1.0;
  const double printed = delta_min_printed_form(n, d, alpha);
  EXPECT_GT(std::abs(printed - solve_delta_min(n, d, alpha)), 0.01);
}

TEST(DeltaMin, DecreasesMonotonicallyInN) {
  double prev = 1.0;
  for (double n = 10; n < 1e12; n *= 3) {
    const double dm = solve_delta_min(n, 4, 0.8);
    EXPECT_LT(dm, prev);
    prev = dm;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Ens, FeasibilityExample) {
  const auto r = ens(252, 4, Epsilon::infinity(), 0.25, 7, {NetRadius::Proof, 20000});
  EXPECT_EQ(r.alpha, 1.0);
  EXPECT_DOUBLE_EQ(r.delta_min, 0.25);
  EXPECT_DOUBLE_EQ(r.radius, 0.5);
  EXPECT_NEAR(r.n_delta, 251.99, 0.01);
  EXPECT_NEAR(r.delta_min_closed_form, 0.25, 1e-12);
}

TEST(Ens, StretchOneExample) {
  const auto r = ens(669, 4, Epsilon(1.0), 0.25, 7, {NetRadius::Proof, 20000});
  EXPECT_NEAR(r.delta_min, 0.25, 0.0025);
  EXPECT_NEAR(r.radius, 0.7071, 1e-3);
  EXPECT_NEAR(r.radius, 2 * (r.alpha + std::sqrt(1 - r.alpha * r.alpha)) * r.delta_min, 1e-15);
  EXPECT_NEAR(r.net_radius, r.alpha * r.delta_min, 1e-15);
}

TEST(Ens, SmallBudgetRaisesDeltaMin) {
  const auto r = ens(20, 2, Epsilon::infinity(), 0.05, 1, {NetRadius::Proof, 10000});
  EXPECT_EQ(r.n_delta, 20.0);
  EXPECT_GT(r.delta_min, 0.05);
  EXPECT_NEAR(sufficient_sample_count(2, 1.0, r.delta_min), 20.0, 1e-6);
}

TEST(Ens, ListingRadiusOption) {
  const auto proof = ens(669, 4, Epsilon(1.0), 0.25, 3, {NetRadius::Proof, 20000});
  const auto listing = ens(669, 4, Epsilon(1.0), 0.25, 3, {NetRadius::Listing, 20000});
  EXPECT_DOUBLE_EQ(listing.net_radius, listing.delta_min);
  EXPECT_LT(listing.samples.size(), proof.samples.size());
}

TEST(Ens, RejectsBadArguments) {
  EXPECT_THROW(ens(100, 2, Epsilon(1.0), 0.5, 0), DomainError);
  EXPECT_THROW(ens(100, 2, Epsilon(1.0), 0.0, 0), DomainError);
  EXPECT_THROW(ens(0, 2, Epsilon(1.0), 0.1, 0), DomainError);
  EXPECT_THROW(ens(1, 2, Epsilon::infinity(), 0.1, 0, {NetRadius::Proof, 100}), DomainError);
}

TEST(Ens, DeterministicAndInsideCardinalitySandwich) {
  const EnsOptions opt{NetRadius::Proof, 50000};
  for (auto [d, eps, delta] : std::vector<std::tuple<int, double, double>>{{2, 1.0, 0.25}, {2, 0.25, 0.1}, {3, 1.0, 0.25}}) {
    const auto n = static_cast<std::size_t>(std::ceil(sufficient_sample_count(d, Epsilon(eps).alpha(), delta)));
    const auto a = ens(n, d, Epsilon(eps), delta, 11, opt);
    const auto b = ens(n, d, Epsilon(eps), delta, 11, opt);
    EXPECT_EQ(a.samples.points, b.samples.points);
    const double side = 1 - 2 * a.delta_min;
    const auto card = net_cardinality_bounds(std::pow(side, d), std::pow(inflated_cube_side(side, a.net_radius / 2), d), d,
                                             a.net_radius);
    EXPECT_GE(static_cast<double>(a.samples.size()), card.lower);
    EXPECT_LE(static_cast<double>(a.samples.size()), card.upper);
    EXPECT_LE(static_cast<double>(a.samples.size()), a.n_delta);
  }
}

TEST(ReplicateTemplate, Identity) {
  Template t{2, cloud({Point{0.2, 0.3}, Point{0.7, 0.6}}), std::sqrt(2.0) / 4};
  EXPECT_EQ(replicate_template(t, 1).points, t.points);
}

TEST(ReplicateTemplate, ThreePointsSixteenCopies) {
  Template t{2, cloud({Point{0.2, 0.2}, Point{0.8, 0.3}, Point{0.4, 0.9}}), 0.3};
  const auto s = replicate_template(t, 4);
  EXPECT_EQ(s.size(), 48u);
  EXPECT_DOUBLE_EQ(s.params.at("cover_radius"), 0.3 / 4);
}

TEST(ReplicateTemplate, GridTemplateReproducesFinerGrid) {
  Template t{2, grid(GridSpec::unit(2, 0.5)).points, template_radius(2, 2)};
  const auto tiled = replicate_template(t, 4);
  EXPECT_EQ(sorted_rows(tiled.points), sorted_rows(grid(GridSpec::unit(2, 1.0 / 8)).points));
}

TEST(ReplicateTemplate, DispersionScalesWithM) {
  for (std::size_t d : {2u, 3u}) {
    Template t{2, grid(GridSpec::unit(d, 0.5)).points, template_radius(d, 2)};
    for (std::size_t m : {2u, 4u}) {
      const auto tiled = replicate_template(t, m);
      EXPECT_LE(empirical_dispersion(tiled.points, 100000, 8), t.cover_radius / static_cast<double>(m) + 1e-12);
    }
  }
}
