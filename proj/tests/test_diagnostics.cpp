#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bot/diagnostics.hpp"
#include "bot/io.hpp"
#include "bot/sampling.hpp"
#include "bot/span.hpp"

using namespace bot;

namespace {

double boost_chi2_sf(double x, double k) {
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(k), x));
}

TEST(Gamma, MatchesBoost) {
  for (double a : {0.5, 1.0, 2.5, 7.0, 30.0, 839.5}) {
    for (double x : {0.0, 0.1, 1.0, 5.0, 25.0, 800.0, 900.0}) {
      EXPECT_NEAR(regularized_gamma_q(a, x), boost::math::gamma_q(a, x), 1e-10)
          << "a=" << a << " x=" << x;
    }
  }
  EXPECT_THROW(regularized_gamma_q(0.0, 1.0), Error);
  EXPECT_THROW(regularized_gamma_q(1.0, -1.0), Error);
}

TEST(ChiSquare, SurvivalMatchesBoostDistribution) {
  for (double k : {1.0, 2.0, 5.0, 11.0, 119.0, 1679.0}) {
    for (double q : {0.2, 0.7, 1.0, 1.1, 1.5}) {
      const double x = q * k;
      EXPECT_NEAR(chi_square_survival(x, k), boost_chi2_sf(x, k), 1e-6) << k << " " << x;
    }
  }
}

TEST(ChiSquare, SurvivalMatchesQuadrature) {
  // Integrate the density over [x, inf) directly.
  const double k = 3.0;
  const auto density = [k](double u) {
    return std::pow(u, k / 2 - 1) * std::exp(-u / 2) / (std::pow(2.0, k / 2) * std::tgamma(k / 2));
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  for (double x : {0.5, 2.0, 7.8, 16.0}) {
    const double tail = integrator.integrate([&](double s) { return density(x + s); });
    EXPECT_NEAR(chi_square_survival(x, k), tail, 1e-6);
  }
}

TEST(ChiSquare, EqualCountsPass) {
  const std::vector<std::uint64_t> counts(50, 40);
  const auto r = chi_square_uniform(counts);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.n_samples, 2000u);
  EXPECT_DOUBLE_EQ(r.details["p_value"].get<double>(), 1.0);
  EXPECT_EQ(r.details["dof"].get<double>(), 49.0);
}

TEST(ChiSquare, HandComputedTwoCells) {
  // Expected 20 each: (10^2 + 10^2) / 20 = 10 on one degree of freedom.
  const std::vector<std::uint64_t> counts{30, 10};
  const auto r = chi_square_uniform(counts);
  EXPECT_DOUBLE_EQ(r.statistic, 10.0);
  EXPECT_NEAR(r.details["p_value"].get<double>(), std::erfc(std::sqrt(5.0)), 1e-9);
  EXPECT_TRUE(r.passed());  // p ~ 1.6e-3
  const std::vector<std::uint64_t> worse{32, 8};
  EXPECT_FALSE(chi_square_uniform(worse).passed());
}

TEST(ChiSquare, PermutationInvariant) {
  std::vector<std::uint64_t> counts{25, 31, 22, 40, 28, 30};
  const double s = chi_square_uniform(counts).statistic;
  std::reverse(counts.begin(), counts.end());
  EXPECT_DOUBLE_EQ(chi_square_uniform(counts).statistic, s);
  std::rotate(counts.begin(), counts.begin() + 2, counts.end());
  EXPECT_DOUBLE_EQ(chi_square_uniform(counts).statistic, s);
}

TEST(ChiSquare, ThinCells) {
  const std::vector<std::uint64_t> thin(10, 19);
  EXPECT_THROW(chi_square_uniform(thin), Error);
  const std::vector<std::uint64_t> one{100};
  EXPECT_THROW(chi_square_uniform(one), Error);
}

double brute_ks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> points = a;
  points.insert(points.end(), b.begin(), b.end());
  double d = 0.0;
  for (double p : points) {
    const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [&](double v) { return v <= p; })) /
                      static_cast<double>(a.size());
    const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [&](double v) { return v <= p; })) /
                      static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

TEST(Ks, IdenticalSamples) {
  HeightSample a;
  for (int i = 0; i < 150; ++i) a.values.push_back(i % 13);
  const auto r = ks_two_sample(a, a);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_TRUE(r.passed());
}

TEST(Ks, DisjointSupports) {
  HeightSample a;
  HeightSample b;
  for (int i = 0; i < 120; ++i) {
    a.values.push_back(i);
    b.values.push_back(1000 + i);
  }
  const auto r = ks_two_sample(a, b);
  EXPECT_EQ(r.statistic, 1.0);
  EXPECT_FALSE(r.passed());
}

TEST(Ks, MatchesBruteForceWithTies) {
  SplitMix64 rng(Seed{50, 0});
  for (int trial = 0; trial < 20; ++trial) {
    HeightSample a;
    HeightSample b;
    const auto m = 100 + rng.below(60);
    const auto n = 100 + rng.below(60);
    for (std::uint64_t i = 0; i < m; ++i) a.values.push_back(static_cast<double>(rng.below(20)));
    for (std::uint64_t i = 0; i < n; ++i) b.values.push_back(static_cast<double>(rng.below(22)));
    const auto r = ks_two_sample(a, b);
    EXPECT_NEAR(r.statistic, brute_ks(a.values, b.values), 1e-12);
    EXPECT_DOUBLE_EQ(r.statistic, ks_two_sample(b, a).statistic);
    EXPECT_NEAR(r.threshold, 1.628 * std::sqrt(static_cast<double>(m + n) / static_cast<double>(m * n)),
                1e-12);
  }
}

TEST(Ks, TooSmall) {
  HeightSample a;
  a.values.assign(99, 1.0);
  HeightSample b;
  b.values.assign(200, 1.0);
  EXPECT_THROW(ks_two_sample(a, b), Error);
}

TEST(Ks, KolmogorovTailAtCriticalValue) {
  // With the finite-size correction negligible, the tail at c(0.01) = 1.628
  // is 0.01 to three digits.
  EXPECT_NEAR(kolmogorov_survival(1.628 / 1e4, 1e8), 0.01, 5e-5);
  EXPECT_NEAR(kolmogorov_survival(0.0, 100.0), 1.0, 1e-12);
}

TEST(Height, W) {
  const auto w = parse_tree("0:(3,(1,2))");
  EXPECT_EQ(tree_height(w), 3u);
  EXPECT_EQ(tree_diameter(w), 3u);
  EXPECT_EQ(tree_height(minimal_tree()), 1u);
  EXPECT_EQ(tree_diameter(minimal_tree()), 1u);
  EXPECT_EQ(tree_diameter(parse_tree("0:((1,2),(3,4))")), 4u);
}

TEST(Height, AfterStepsMatchesSnapshots) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto t = sample_uniform(40 + s, Seed{51, s});
    const auto chain = erasure_chain(t, true);
    for (std::size_t k = 0; k < chain.snapshots.size(); ++k) {
      ASSERT_EQ(height_after(t, chain, k), tree_height(parse_tree(chain.snapshots[k])));
    }
  }
}

TEST(Scaling, Preconditions) {
  EXPECT_THROW(scaling_proxy(1000, 0.0, 200, Seed{1, 0}), Error);
  EXPECT_THROW(scaling_proxy(1000, 1.5, 200, Seed{1, 0}), Error);
  EXPECT_THROW(scaling_proxy(100, 0.5, 200, Seed{1, 0}), Error);  // floor(nt) = 50
}

TEST(Scaling, FullTimeIsSameLaw) {
  const auto r = scaling_proxy(256, 1.0, 300, Seed{52, 0});
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_EQ(r.test_name, "scaling_proxy");
}

TEST(Scaling, SmallPassAndNegativeControl) {
  HeightSample a;
  HeightSample b;
  const auto good = scaling_proxy(1024, 0.25, 400, Seed{53, 0}, {true, &a, &b});
  EXPECT_TRUE(good.passed()) << good.to_json().dump();
  EXPECT_EQ(a.values.size(), 400u);
  EXPECT_EQ(b.values.size(), 400u);
  const auto bad = scaling_proxy(1024, 0.25, 400, Seed{53, 0}, {false});
  EXPECT_FALSE(bad.passed()) << bad.to_json().dump();
  EXPECT_EQ(bad.test_name, "scaling_proxy_unrescaled");
}

TEST(ThetaGaps, FullSpanAndSingleNode) {
  const auto t = sample_uniform(40, Seed{54, 0});
  const auto r = theta_gap_report(t, {2, 41});
  const auto gaps = r.details["max_gaps"];
  const double theta = reverse_time(t, 2).entries()[0].theta.value();
  EXPECT_DOUBLE_EQ(gaps[0].get<double>(), std::max(theta, 1.0 - theta));
  EXPECT_DOUBLE_EQ(gaps[1].get<double>(), 1.0 / 41.0);
  EXPECT_TRUE(r.passed());
}

TEST(ThetaGaps, NonIncreasingOnOneTree) {
  const auto t = sample_uniform(3000, Seed{55, 0});
  const auto r = theta_gap_report(t, {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024});
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
}

TEST(ThetaGaps, MedianDecreasesAtScale) {
  const auto r =
      theta_gap_survey(10'000, 100, {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024}, Seed{56, 0});
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_EQ(r.details["median_gaps"].size(), 10u);
}

TEST(Report, JsonShape) {
  const std::vector<std::uint64_t> counts(4, 25);
  const auto j = chi_square_uniform(counts).to_json();
  EXPECT_EQ(j["test_name"], "chi_square_uniform");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j.contains("statistic"));
  EXPECT_TRUE(j.contains("threshold"));
  EXPECT_TRUE(j.contains("n_samples"));
  EXPECT_TRUE(j.contains("details"));
}

}  // namespace
