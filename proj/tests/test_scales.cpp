#include <gtest/gtest.h>

#include <random>

#include "inerton/config.hpp"
#include "inerton/scales.hpp"
#include "oracles.hpp"

namespace inerton {
namespace {

using testing::relative_error;
using testing::ulp_distance;
using testing::uniform;

TEST(RelativisticMass, HandValues) {
  EXPECT_DOUBLE_EQ(relativistic_mass(1.0, 0.0, 1.0), 1.0);
  EXPECT_NEAR(relativistic_mass(1.0, 0.6, 1.0), 1.25, 1e-15);
  EXPECT_NEAR(relativistic_mass(2.0, 0.8, 1.0), 10.0 / 3.0, 1e-14);
}

TEST(RelativisticMass, RejectsSpeedAtOrAboveC) {
  EXPECT_THROW(relativistic_mass(1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(relativistic_mass(1.0, 1.5, 1.0), DomainError);
  EXPECT_THROW(relativistic_mass(0.0, 0.5, 1.0), DomainError);
}

TEST(DeBroglie, HandValues) {
  EXPECT_DOUBLE_EQ(de_broglie_wavelength(1.0, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(de_broglie_wavelength(2.0, 0.5, 1.0), 1.0);
  // Electron at 1e6 m/s; reference evaluated independently: 7.274084e-10 m.
  const double M = relativistic_mass(9.109e-31, 1e6, 2.998e8);
  EXPECT_LT(relative_error(de_broglie_wavelength(M, 1e6, 6.626e-34), 7.274084026e-10), 1e-9);
  EXPECT_THROW(de_broglie_wavelength(1.0, 0.0, 1.0), DomainError);
}

TEST(CloudAmplitude, HandValues) {
  EXPECT_DOUBLE_EQ(cloud_amplitude(1.0, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(cloud_amplitude(2.0, 0.5, 1.0), 4.0);
  EXPECT_THROW(cloud_amplitude(1.0, 0.0, 1.0), DomainError);
}

TEST(Compton, HandValues) {
  EXPECT_DOUBLE_EQ(compton_wavelength(1.0, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(compton_wavelength(4.0, 0.5, 1.0), 0.5);
  EXPECT_LT(relative_error(compton_wavelength(9.109e-31, 2.998e8, 6.626e-34), 2.4263257146e-12),
            1e-9);
}

TEST(ScaleReport, NaturalUnitChain) {
  const auto r = scale_report(KinematicStated{1.0, 0.5}, Constantsd::natural());
  EXPECT_NEAR(r.lambda, 1.7320508075688772, 1e-14);
  EXPECT_NEAR(r.Lambda, 3.4641016151377544, 1e-14);
  EXPECT_NEAR(r.T, 3.4641016151377544, 1e-14);
  EXPECT_NEAR(r.lambda_com, 0.8660254037844386, 1e-14);
  // E = h nu with E = M v0^2 / 2: one speed cycle lasts 1/nu = 2T.
  EXPECT_NEAR(1.0 / r.nu, 2.0 * r.T, 1e-12);
}

TEST(ScaleReport, RejectsRestAndLuminal) {
  EXPECT_THROW(scale_report(KinematicStated{1.0, 0.0}, Constantsd::natural()), DomainError);
  EXPECT_THROW(scale_report(KinematicStated{1.0, 1.0}, Constantsd::natural()), DomainError);
}

TEST(ScaleReport, ApproachesComptonNearC) {
  const auto r = scale_report(KinematicStated{1.0, 0.999}, Constantsd::natural());
  EXPECT_LT(std::abs(r.Lambda / r.lambda_com - 1.0), 3e-3);
  EXPECT_GE(r.Lambda, r.lambda_com);
}

TEST(ScaleReport, AmplitudeComptonIdentityProperty) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 2000; ++i) {
    const double c = uniform(rng, 0.5, 3.0);
    const double h = uniform(rng, 0.1, 10.0);
    const double M0 = uniform(rng, 0.01, 100.0);
    const double v0 = c * uniform(rng, 0.01, 0.999);
    const double M = relativistic_mass(M0, v0, c);
    const double via_wavelength = cloud_amplitude(de_broglie_wavelength(M, v0, h), v0, c);
    const double via_compton = compton_wavelength(M, c, h) * c * c / (v0 * v0);
    ASSERT_LE(ulp_distance(via_wavelength, via_compton), 4)
        << "M0=" << M0 << " v0=" << v0 << " c=" << c << " h=" << h;
  }
}

TEST(ScaleReport, MonotoneInSpeed) {
  double prev_lambda = INFINITY, prev_Lambda = INFINITY;
  for (int i = 1; i < 1000; ++i) {
    const double v0 = i / 1000.0;
    const auto r = scale_report(KinematicStated{1.0, v0}, Constantsd::natural());
    EXPECT_LT(r.lambda, prev_lambda);
    EXPECT_LT(r.Lambda, prev_Lambda);
    prev_lambda = r.lambda;
    prev_Lambda = r.Lambda;
  }
}

TEST(ScaleReport, UnitSystemsAgreeOnRatios) {
  const Constantsd si = Constantsd::si();
  const double M0_si = 9.1093837015e-31;
  const double beta = 0.3;
  const auto rs = scale_report(KinematicStated{M0_si, beta * si.c}, si);
  const auto rn = scale_report(KinematicStated{1.0, beta}, Constantsd::natural());
  EXPECT_LT(relative_error(rs.Lambda / rs.lambda, rn.Lambda / rn.lambda), 1e-12);
  EXPECT_LT(relative_error(rs.lambda / rs.lambda_com, rn.lambda / rn.lambda_com), 1e-12);
}

TEST(ScaleReport, JsonFieldNames) {
  const auto r = scale_report(KinematicStated{1.0, 0.5}, Constantsd::natural());
  const std::string j = to_json(r);
  for (const char* key : {"\"lambda\"", "\"Lambda\"", "\"lambda_com\"", "\"T\"", "\"nu\""}) {
    EXPECT_NE(j.find(key), std::string::npos) << key;
  }
}

TEST(Constants, FromConfig) {
  auto cfg = KeyValueConfig::parse("unit_system = si\n");
  const auto si = constants_from_config(cfg);
  EXPECT_DOUBLE_EQ(si.h, 6.62607015e-34);
  EXPECT_DOUBLE_EQ(si.c, 299792458.0);

  auto natural = KeyValueConfig::parse("unit_system = natural\nc = 2\n");
  const auto n = constants_from_config(natural);
  EXPECT_EQ(n.h, 1.0);
  EXPECT_EQ(n.c, 2.0);

  auto bad = KeyValueConfig::parse("unit_system = cgs\n");
  EXPECT_THROW(constants_from_config(bad), ConfigError);
  auto negative = KeyValueConfig::parse("h = -1\n");
  EXPECT_THROW(constants_from_config(negative), DomainError);
}

}  // namespace
}  // namespace inerton
