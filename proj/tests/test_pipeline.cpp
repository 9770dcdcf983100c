#include <gtest/gtest.h>

#include <array>

#include "sdw/checks.hpp"
#include "sdw/expr_json.hpp"
#include "sdw/pipeline.hpp"
#include "sdw/render.hpp"
#include "curvature_oracle.hpp"
#include "test_util.hpp"

namespace sdw {
namespace {

const PipelineRun& run1() {
  static const PipelineRun r = run_pipeline(1);
  return r;
}

const testing::CurvatureOracle& curvature() {
  static const testing::CurvatureOracle c;
  return c;
}

TEST(Pipeline, AlphaShape) {
  const Expr& alpha = run1().result.alpha;
  EXPECT_EQ(alpha.size(), 15u);
  EXPECT_TRUE(is_trig_free(alpha));
  EXPECT_TRUE(is_real(alpha));
  EXPECT_FALSE(contains(alpha, VarId::pi()));
  EXPECT_FALSE(contains_kind(alpha, VarKind::Zeta));
  EXPECT_TRUE(run1().result.stats.even_u);
  for (int i = 1; i <= 3; ++i) EXPECT_FALSE(contains(alpha, VarId::omega(i, 3)));
}

// Round S^3 with w = 1: the frozen value, confirmed by Monte Carlo below.
TEST(Pipeline, IsotropicValue) {
  EXPECT_DOUBLE_EQ(eval(run1().result.alpha, Assignment::anisotropy({1, 1, 1})), -0.5);
}

TEST(Pipeline, IsotropicValueMonteCarlo) {
  const VerifyReport r = verify(run1(), Assignment::anisotropy({1, 1, 1}), 200000, 21);
  EXPECT_TRUE(r.pass) << r.to_json().dump();
  EXPECT_NEAR(r.sdw.mean, -0.5, 4 * r.sdw.stderr_);
}

TEST(CurvatureOracle, MetricInverse) { EXPECT_TRUE(curvature().inverse_ok()); }

TEST(CurvatureOracle, RoundSphere) {
  // S^3 of radius 2 (w = 1) times a line: R = 6 / 4.
  const auto inv = curvature().at(testing::with_angles(Assignment::anisotropy({1, 1, 1})));
  EXPECT_NEAR(inv.r, 1.5, 1e-12);
  EXPECT_NEAR(inv.ric2, 3 * 0.25, 1e-12);
  EXPECT_NEAR(inv.riem2, 12 / 16.0, 1e-12);
  EXPECT_NEAR(inv.box_r, 0, 1e-12);
}

// alpha_2 = -(1/3) sqrt(g) R with sqrt(g) = w1 w2 w3 per unit coordinate
// volume of SU(2), including the time-derivative terms.
TEST(Pipeline, ProportionalToScalarCurvature) {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> pos(0.6, 2.5), any(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Assignment a = Assignment::anisotropy({pos(rng), pos(rng), pos(rng)});
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 2; ++j) a.set_w_derivative(i, j, trial < 3 ? 0.0 : any(rng));
    const double r = curvature().at(testing::with_angles(a)).r;
    const double expected = -r * a.w(1) * a.w(2) * a.w(3) / 3;
    EXPECT_NEAR(eval(run1().result.alpha, a), expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Pipeline, S3Symmetry) { EXPECT_TRUE(check_s3_symmetry(run1().result.alpha).pass); }

TEST(Pipeline, GammaRepresentationIndependence) {
  const CheckResult r = check_rep_independence(1, run1().result.alpha);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Pipeline, VerifyPassesAndCorruptionFails) {
  const Assignment a = default_verification_assignment();
  const VerifyReport ok = verify(run1(), a, 300000, 1);
  EXPECT_TRUE(ok.pass) << ok.to_json().dump();
  EXPECT_LE(ok.z_sdw, kAgreementSigmas);
  EXPECT_LE(ok.z_period, kAgreementSigmas);
  EXPECT_LE(ok.singular_max_z, ok.singular_threshold);
  EXPECT_FALSE(ok.singular.empty());
  const VerifyReport bad = verify(run1(), a, 300000, 1, true);
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.exact, ok.exact + 1, 1e-12);
}

TEST(Pipeline, UnsupportedN) {
  EXPECT_THROW(run_pipeline(0), std::out_of_range);
  EXPECT_THROW(run_pipeline(3), std::out_of_range);
}

TEST(Pipeline, JsonAndRendering) {
  const auto j = to_json(run1().result);
  EXPECT_EQ(j["n"], 1);
  EXPECT_EQ(expr_from_json(j["alpha"]), run1().result.alpha);
  const std::string text = render_human(run1().result.alpha);
  EXPECT_NE(text.find("w1''"), std::string::npos);
  EXPECT_NE(text.find("w1^(-2)"), std::string::npos);
}

TEST(Selftest, AllGatingChecksPass) {
  const auto results = run_selftest(1, 100000, 3, {}, nullptr);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) {
    if (!r.gating) continue;
    EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
  }
}

}  // namespace
}  // namespace sdw
