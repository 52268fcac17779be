#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "inerton/cluster.hpp"
#include "oracles.hpp"

namespace inerton {
namespace {

using testing::golden_section_min;
using testing::relative_error;
using testing::uniform;

TEST(PairPotential, HandValues) {
  ClusterPotentiald p{1.5, 1.0, 0.0};
  EXPECT_DOUBLE_EQ(v_att(1.0, p), -1.5);
  EXPECT_DOUBLE_EQ(v_rep(1.0, p), 1.5);

  ClusterPotentiald q{1.0, 1.0, 2.0};
  EXPECT_DOUBLE_EQ(v_att(1.0, q), 0.0);
  EXPECT_GT(v_att(1e3, q), 1e5);
  EXPECT_DOUBLE_EQ(v_rep(2.0, q), 0.000244140625);

  EXPECT_THROW(v_att(0.0, q), DomainError);
  EXPECT_THROW(v_rep(0.0, q), DomainError);
}

TEST(PairPotential, MinimumFromGoldenSection) {
  const ClusterPotentiald p{1.0, 1.3, 0.0};
  const double r_star = golden_section_min(
      [&](double r) { return v_rep(r, p) + v_att(r, p); }, 0.8 * p.g, 3.0 * p.g);
  EXPECT_NEAR(r_star, std::pow(2.0, 1.0 / 6.0) * p.g, 1e-6);
  EXPECT_NEAR(lj_pair(r_star, p), v_rep(r_star, p) + v_att(r_star, p), 1e-15);
}

TEST(SizeFormula, AnchorsAndErrors) {
  EXPECT_DOUBLE_EQ(cluster_size_formula(ClusterPotentiald{1.0, 1.0, 3.0}), 1.0);
  EXPECT_THROW(cluster_size_formula(ClusterPotentiald{1.0, 1.0, 0.0}), DomainError);

  EXPECT_DOUBLE_EQ(invert_for_gamma<double>(1, 1.0, 1.0), 3.0);
  const double gamma24 = invert_for_gamma<double>(24, 1.0, 1.0);
  EXPECT_NEAR(gamma24, 0.0150234330240355, 1e-15);
  EXPECT_LT(relative_error(cluster_size_formula(ClusterPotentiald{1.0, 1.0, gamma24}), 24.0),
            1e-12);

  const ClusterPotentiald base{0.7, 1.1, 0.01};
  const ClusterPotentiald scaled{32.0 * 0.7, 1.1, 0.01};
  EXPECT_LT(relative_error(cluster_size_formula(scaled), 8.0 * cluster_size_formula(base)), 1e-12);
  EXPECT_THROW(invert_for_gamma<double>(0, 1.0, 1.0), DomainError);
}

TEST(SizeFormula, InversionRoundTripProperty) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::int64_t>(1 + rng() % 500);
    const double eps = uniform(rng, 0.01, 100.0);
    const double g = uniform(rng, 0.1, 10.0);
    const double gamma = invert_for_gamma(n, eps, g);
    ASSERT_LT(relative_error(cluster_size_formula(ClusterPotentiald{eps, g, gamma}),
                             static_cast<double>(n)),
              1e-12);
    const double k = uniform(rng, 0.01, 100.0);
    ASSERT_LT(relative_error(cluster_size_formula(ClusterPotentiald{k * eps, g, gamma}),
                             std::pow(k, 0.6) * static_cast<double>(n)),
              1e-12);
  }
}

TEST(ClusterEnergy, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (ElasticMode mode : {ElasticMode::centroid, ElasticMode::pairwise}) {
    const ClusterPotentiald p{1.2, 0.9, 0.3};
    Eigen::MatrixXd x(3, 6);
    for (int i = 0; i < 6; ++i) {
      x.col(i) = Eigen::Vector3d(1.1 * i, uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3));
    }
    Eigen::MatrixXd grad;
    cluster_energy_gradient(x, p, mode, grad);
    const double h = 1e-6;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      Eigen::MatrixXd xp = x, xm = x, unused;
      xp.data()[k] += h;
      xm.data()[k] -= h;
      const double fd = (cluster_energy_gradient(xp, p, mode, unused) -
                         cluster_energy_gradient(xm, p, mode, unused)) / (2.0 * h);
      ASSERT_NEAR(grad.data()[k], fd, 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(ClusterEnergy, ElasticModesAndTranslation) {
  Eigen::MatrixXd x(3, 4);
  x << 0.0, 1.1, 0.0, 0.5,
       0.0, 0.0, 1.2, 0.5,
       0.0, 0.0, 0.0, 0.9;
  const ClusterConfiguration config{x};
  const ClusterPotentiald free{1.0, 1.0, 0.0};
  const ClusterPotentiald confined{1.0, 1.0, 0.4};

  double pairwise_elastic = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) pairwise_elastic += 0.2 * (x.col(i) - x.col(j)).squaredNorm();
  }
  const double lj = cluster_energy(config, free);
  EXPECT_NEAR(cluster_energy(config, confined, ElasticMode::pairwise) - lj, pairwise_elastic,
              1e-12);
  EXPECT_NEAR(cluster_energy(config, confined, ElasticMode::pairwise) - lj,
              4.0 * (cluster_energy(config, confined, ElasticMode::centroid) - lj), 1e-12);

  ClusterConfiguration shifted{x.colwise() + Eigen::Vector3d(3.0, -7.0, 0.25)};
  EXPECT_NEAR(cluster_energy(shifted, free), lj, 1e-12);
  EXPECT_NEAR(cluster_energy(shifted, confined), cluster_energy(config, confined), 1e-12);
}

TEST(Minimizer, DimerSeparationAndEnergy) {
  const ClusterPotentiald p{1.0, 1.0, 0.0};
  const double r_oracle =
      golden_section_min([&](double r) { return lj_pair(r, p); }, 0.8, 3.0);
  const auto result = minimize_cluster_energy(2, p, 1, 42);
  const double r = std::abs(result.configuration.positions(0, 1) -
                            result.configuration.positions(0, 0));
  EXPECT_NEAR(r, r_oracle, 1e-6);
  EXPECT_NEAR(result.energy, lj_pair(r_oracle, p), 1e-9);
  EXPECT_NEAR(result.energy, -0.25, 1e-9);
}

TEST(Minimizer, SingleAtom) {
  const auto r = minimize_cluster_energy(1, ClusterPotentiald{1.0, 1.0, 0.5}, 3, 1);
  EXPECT_EQ(r.energy, 0.0);
  EXPECT_TRUE(r.converged);
}

TEST(Minimizer, ThirteenAtomsBeatTwelvePlusOne) {
  const ClusterPotentiald p{1.0, 1.0, 0.0};
  const auto e12 = minimize_cluster_energy(12, p, 3, 5).energy;
  const auto e13 = minimize_cluster_energy(13, p, 3, 5).energy;
  EXPECT_LT(e13, e12 + 0.0);
}

TEST(Minimizer, NeverWorseThanStartsAndDeterministic) {
  const ClusterPotentiald p{1.0, 1.0, 0.2};
  MinimizerSettings settings;
  settings.restarts = 8;
  const auto a = minimize_cluster_energy(9, p, 3, 1234, settings);
  const auto b = minimize_cluster_energy(9, p, 3, 1234, settings);
  ASSERT_EQ(a.start_energies.size(), 8u);
  for (double e : a.start_energies) EXPECT_LE(a.energy, e);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_TRUE(a.configuration.positions.cwiseEqual(b.configuration.positions).all());

  const auto other = minimize_cluster_energy(9, p, 3, 4321, settings);
  EXPECT_FALSE(other.configuration.positions.cwiseEqual(a.configuration.positions).all());
}

TEST(Minimizer, BudgetExhaustionCarriesBestSoFar) {
  MinimizerSettings settings;
  settings.restarts = 2;
  settings.max_iterations = 1;
  try {
    minimize_cluster_energy(10, ClusterPotentiald{1.0, 1.0, 0.0}, 3, 9, settings);
    FAIL() << "expected ClusterConvergenceError";
  } catch (const ClusterConvergenceError& e) {
    EXPECT_FALSE(e.best().converged);
    EXPECT_EQ(e.best().configuration.size(), 10);
    EXPECT_TRUE(std::isfinite(e.best().energy));
  }
}

TEST(Minimizer, RejectsOutOfRangeRequests) {
  const ClusterPotentiald p{1.0, 1.0, 0.0};
  EXPECT_THROW(minimize_cluster_energy(0, p, 3, 1), DomainError);
  EXPECT_THROW(minimize_cluster_energy(65, p, 3, 1), DomainError);
  EXPECT_THROW(minimize_cluster_energy(4, p, 2, 1), DomainError);
  EXPECT_THROW(minimize_cluster_energy(4, ClusterPotentiald{-1.0, 1.0, 0.0}, 3, 1), DomainError);
}

TEST(OptimalSize, StrongConfinementKeepsAtomsApart) {
  const ClusterPotentiald p{1.0, 1.0, 4.0};
  ASSERT_LT(3.0 * p.epsilon / (p.gamma * p.g * p.g), 1.0);
  for (int dim : {1, 3}) {
    const auto sweep = optimal_cluster_size(p, 8, dim, 3);
    EXPECT_EQ(sweep.n_numeric, 1) << dim;
  }
}

TEST(OptimalSize, NoConfinementPrefersLargest) {
  const ClusterPotentiald p{1.0, 1.0, 0.0};
  EXPECT_EQ(optimal_cluster_size(p, 14, 3, 3).n_numeric, 14);
  EXPECT_EQ(optimal_cluster_size(p, 10, 1, 3).n_numeric, 10);
}

TEST(OptimalSize, IntermediateConfinementHasInteriorOptimum) {
  const auto sweep = optimal_cluster_size(ClusterPotentiald{1.0, 1.0, 1.6}, 16, 3, 7);
  EXPECT_GT(sweep.n_numeric, 1);
  EXPECT_LT(sweep.n_numeric, 16);
  std::ostringstream out;
  write_cluster_csv(out, sweep);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "N,E_total,E_per_atom");
}

}  // namespace
}  // namespace inerton
