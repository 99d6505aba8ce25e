#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spdsphere/error.hpp"
#include "spdsphere/gram.hpp"

using namespace spdsphere;
using oracle::one;
using oracle::prog;

namespace {

KernelSpec product(SupportSet2D support, Truncation trunc = {20, 20}, int m = 2) {
  return KernelSpec(SpaceDescriptor::circle_sphere(m), std::move(support), {}, trunc);
}

Eigen::VectorXd unit_z(int m) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m + 1);
  z(m) = 1.0;
  return z;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::NumericalError;
}

const SupportSet2D kFull{{{prog(0, 1), prog(0, 1)}}};

}  // namespace

TEST(Gram, SinglePoint) {
  const KernelSpec spec = product(kFull);
  const auto points = sample_product_points(2, 1, 0);
  const SymMatrix a = gram_matrix(spec, points);
  ASSERT_EQ(a.rows(), 1);
  EXPECT_EQ(a(0, 0), spec.value_at_identity());
}

TEST(Gram, ConstantKernelIsRankOne) {
  const KernelSpec spec = product({{{one(0), one(0)}}});
  const SymMatrix a = gram_matrix(spec, sample_product_points(2, 6, 1));
  EXPECT_LE((a - SymMatrix::Constant(6, 6, a(0, 0))).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(check_pd(a, 1e-10).lambda_min, 0.0, 1e-12);
}

TEST(Gram, EvenDegreesGiveEqualRows) {
  const KernelSpec spec = product({{{prog(0, 1), prog(0, 2)}}});
  const Eigen::VectorXd z = sample_config(2, 1, 1, 9).zs[0];
  std::vector<ProductPoint> points = {{0.7, z}, {0.7, -z}};
  for (const auto& extra : sample_product_points(2, 4, 10)) points.push_back(extra);
  const SymMatrix a = gram_matrix(spec, points);
  EXPECT_LE((a.row(0) - a.row(1)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gram, SymmetricWithExactDiagonal) {
  const KernelSpec spec = product(kFull);
  const SymMatrix a = gram_matrix(spec, sample_product_points(3, 12, 4));
  EXPECT_EQ(a, a.transpose());
  for (int i = 0; i < a.rows(); ++i) EXPECT_EQ(a(i, i), spec.value_at_identity());
}

TEST(Gram, Errors) {
  const KernelSpec spec = product(kFull);
  auto points = sample_product_points(2, 3, 0);
  points.push_back(points[1]);
  EXPECT_EQ(code_of([&] { gram_matrix(spec, points); }), ErrorCode::InvalidConfiguration);
  const KernelSpec tph(SpaceDescriptor::circle_tph(TphFamily::ComplexProj, 4), kFull);
  EXPECT_EQ(code_of([&] { gram_matrix(tph, sample_product_points(4, 2, 0)); }), ErrorCode::Unsupported);
}

TEST(Gram, CircleAxisMatchesCircleKernel) {
  const KernelSpec circle(SpaceDescriptor::circle(), SupportSet1D{{prog(1, 2)}}, {}, {20, 0});
  const std::vector<double> thetas = {0.0, 1.0, 2.5};
  const SymMatrix a = circle_axis_gram(circle, thetas);
  EXPECT_NEAR(a(0, 1), eval_kernel(circle, std::cos(1.0)), 1e-15);
  std::vector<ProductPoint> points;
  for (double th : thetas) points.push_back({th, Eigen::VectorXd()});
  EXPECT_LE((gram_matrix(circle, points) - a).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CheckPd, Examples) {
  const PdCheck ones = check_pd(SymMatrix::Ones(3, 3), 1e-10);
  EXPECT_FALSE(ones.positive_definite);
  EXPECT_NEAR(ones.lambda_min, 0.0, 1e-14);

  const PdCheck id = check_pd(SymMatrix::Identity(5, 5), 1e-10);
  EXPECT_TRUE(id.positive_definite);
  EXPECT_NEAR(id.lambda_min, 1.0, 1e-15);

  const KernelSpec rich(SpaceDescriptor::circle_sphere(2), kFull);
  const PdCheck pd = check_pd(gram_matrix(rich, sample_product_points(2, 20, 7)), 1e-10);
  EXPECT_TRUE(pd.positive_definite);
  EXPECT_GT(pd.lambda_min, 0.0);
  RecordProperty("lambda_min_rich_20", std::to_string(pd.lambda_min));
}

TEST(CheckPd, RelativeTolerance) {
  SymMatrix big = 1e6 * SymMatrix::Identity(2, 2);
  EXPECT_TRUE(check_pd(big, 1e-10).positive_definite);
  big(1, 1) = 1e-5;
  EXPECT_FALSE(check_pd(big, 1e-10).positive_definite);
  EXPECT_FALSE(check_pd(SymMatrix::Identity(2, 2) * 1e-12, 1e-10).positive_definite);
}

TEST(LambdaMinCurve, Monotone) {
  const KernelSpec spec = product(kFull);
  const auto curve = lambda_min_curve(gram_matrix(spec, sample_product_points(2, 15, 3)));
  ASSERT_EQ(curve.size(), 15u);
  EXPECT_EQ(curve.front().first, 1);
  EXPECT_EQ(curve.front().second, spec.value_at_identity());
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_LE(curve[i].second, curve[i - 1].second + 1e-12);
}

TEST(PerDegreeForms, DecompositionIdentity) {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const SupportSet2D support = oracle::random_support_2d(rng);
    const KernelSpec spec(SpaceDescriptor::circle_sphere(2 + trial % 4), support,
                          CoefficientScheme::geometric(0.8, 0.85, 1.0 + trial), {25, 25});
    if (spec.degenerate()) continue;
    const int n = 1 + trial % 20;
    const auto points = sample_product_points(spec.space().m(), n, trial);
    Eigen::VectorXd c(n);
    for (auto& x : c) x = g(rng);
    const DegreeForms forms = per_degree_forms(spec, points, c);
    const double scale = spec.value_at_identity() * c.squaredNorm();
    EXPECT_NEAR(forms.total, forms.layers.sum(), 1e-13 * scale);
    EXPECT_NEAR(forms.total, forms.gram_form, 1e-11 * scale);
    EXPECT_NEAR(forms.gram_form, c.dot(gram_matrix(spec, points) * c), 1e-12 * scale);
    for (double layer : forms.layers) EXPECT_GE(layer, -1e-12 * scale);
  }
}

TEST(PerDegreeForms, SingleEntry) {
  const KernelSpec spec = product(kFull);
  const auto points = sample_product_points(2, 5, 1);
  const DegreeForms forms = per_degree_forms(spec, points, Eigen::VectorXd::Unit(5, 2));
  EXPECT_NEAR(forms.total, spec.value_at_identity(), 1e-12 * spec.value_at_identity());
  EXPECT_THROW(per_degree_forms(spec, points, Eigen::VectorXd::Ones(4)), Error);
}

TEST(PerDegreeForms, ZeroTotalMeansZeroLayers) {
  const KernelSpec spec = product({{{prog(0, 1), prog(0, 2)}}});
  const WitnessReport w = witness_parity_sphere(spec);
  const DegreeForms forms = per_degree_forms(spec, w.points, w.c);
  EXPECT_LE(std::abs(forms.total), 1e-10 * w.scale);
  for (Eigen::Index l = 0; l < forms.layers.size(); ++l) {
    EXPECT_LE(forms.layers(l), 1e-10 * w.scale);
    if (l % 2 == 1) EXPECT_EQ(forms.layers(l), 0.0);
  }
}

TEST(Blocks, IdentitiesOnRandomEnhancedSets) {
  const KernelSpec spec = product(kFull, {40, 40}, 3);
  for (int p = 1; p <= 4; ++p) {
    for (int q = 1; q <= 4; ++q) {
      const SampledConfig cfg = sample_config(3, p, q, 10 * p + q);
      const EnhancedSet set = build_enhanced(cfg.thetas, cfg.zs);
      for (int l = 0; l <= 40; ++l) {
        const BlockReport r = enhanced_block_check(spec, set, l);
        EXPECT_TRUE(r.holds) << p << " " << q << " " << l;
        EXPECT_LE(r.diagonal_gap, 1e-12 * r.scale);
        EXPECT_LE(r.off_diagonal_gap, 1e-12 * r.scale);
      }
    }
  }
}

TEST(Blocks, ParitySigns) {
  const KernelSpec spec = product(kFull, {10, 10});
  const SampledConfig cfg = sample_config(2, 3, 2, 5);
  const EnhancedSet set = build_enhanced(cfg.thetas, cfg.zs);
  const int half = set.p() * set.q();
  for (int l : {2, 3}) {
    const SymMatrix layer = layer_matrix(spec, set.points(), l);
    const SymMatrix m11 = layer.topLeftCorner(half, half);
    const SymMatrix m12 = layer.topRightCorner(half, half);
    const double sign = l % 2 == 0 ? 1.0 : -1.0;
    EXPECT_LE((m12 - sign * m11).cwiseAbs().maxCoeff(), 1e-12 * spec.value_at_identity());
  }
}

TEST(Blocks, SingleHarmonicClosedForm) {
  const KernelSpec spec(SpaceDescriptor::circle_sphere(2), SupportSet2D{{{one(1), one(1)}}},
                        CoefficientScheme::constant(1.0), {3, 3});
  const Eigen::VectorXd z = unit_z(2);
  const EnhancedSet set = build_enhanced({0.4}, {z});
  const SymMatrix layer = layer_matrix(spec, set.points(), 1);
  // Both points share x, so t = 1; s = ±1.
  SymMatrix expected(2, 2);
  expected << 2.0, -2.0, -2.0, 2.0;
  EXPECT_LE((layer - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(enhanced_block_check(spec, set, 1).holds);
}

TEST(ParityWitness, EvenAndOdd) {
  const WitnessReport even = witness_parity_sphere(product({{{prog(0, 1), prog(0, 2)}}}));
  EXPECT_EQ(even.kind, WitnessKind::Parity);
  EXPECT_EQ(even.c, Eigen::Vector2d(1, -1));
  EXPECT_LE(std::abs(even.residual), 1e-12 * even.scale);

  const WitnessReport odd = witness_parity_sphere(product({{{prog(0, 1), prog(1, 2)}}}));
  EXPECT_EQ(odd.c, Eigen::Vector2d(1, 1));
  EXPECT_LE(std::abs(odd.residual), 1e-12 * odd.scale);

  const KernelSpec sphere(SpaceDescriptor::sphere(4), SupportSet1D{{prog(1, 4)}}, {}, {30, 0});
  const WitnessReport s = witness_parity_sphere(sphere);
  EXPECT_LE(std::abs(s.residual), 1e-12 * s.scale);
  EXPECT_GE(s.c.norm(), 1.0);
}

TEST(ParityWitness, MixedParityRefused) {
  EXPECT_EQ(code_of([] { witness_parity_sphere(product(kFull)); }), ErrorCode::NotApplicable);
}

TEST(ProgressionWitness, Examples) {
  const KernelSpec evens(SpaceDescriptor::circle(), SupportSet1D{{one(0), prog(0, 2)}}, {}, {40, 0});
  const WitnessReport w = witness_progression_circle(evens, {2, 1});
  EXPECT_EQ(w.kind, WitnessKind::Progression);
  ASSERT_EQ(w.c.size(), 2);
  EXPECT_NEAR(w.c(0), 1.0, 1e-15);
  EXPECT_NEAR(w.c(1), -1.0, 1e-15);
  EXPECT_NEAR(w.points[1].theta, 3.141592653589793, 1e-15);
  EXPECT_LE(std::abs(w.residual), 1e-12 * w.scale);

  const KernelSpec no_zero(SpaceDescriptor::circle(), SupportSet1D{{prog(1, 3), prog(2, 3)}}, {}, {40, 0});
  const WitnessReport t = witness_progression_circle(no_zero, {3, 0});
  EXPECT_LE((t.c - Eigen::Vector3d::Ones()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(std::abs(t.residual), 1e-12 * t.scale);

  const KernelSpec full(SpaceDescriptor::circle(), SupportSet1D{{prog(0, 1)}}, {}, {40, 0});
  EXPECT_EQ(code_of([&] { witness_progression_circle(full, {2, 1}); }), ErrorCode::NotApplicable);
}

// c_mu = cos(j theta_mu) against the character sum over roots of unity.
TEST(ProgressionWitness, CharacterSumOracle) {
  for (int n = 1; n <= 9; ++n) {
    for (int j = 0; j < n; ++j) {
      SupportSet1D miss;
      for (int r = 0; r < n; ++r)
        if ((r - j) % n != 0 && (r + j) % n != 0) miss.terms.push_back(prog(r, n));
      const KernelSpec circle(SpaceDescriptor::circle(), miss, {}, {50, 0});
      if (circle.degenerate()) continue;
      const WitnessReport w = witness_progression_circle(circle, {n, j});
      for (int k = 0; k <= 50; ++k) {
        double re = 0.0;
        for (int mu = 0; mu < n; ++mu) re += w.c(mu) * std::cos(k * w.points[mu].theta);
        const double expected = 0.5 * n * (((k - j) % n == 0) + ((k + j) % n == 0));
        EXPECT_NEAR(re, expected, 1e-12) << n << " " << j << " " << k;
      }
      EXPECT_LE(std::abs(w.residual), 1e-12 * w.scale);
      EXPECT_GE(w.c.norm(), 1.0);
    }
  }
}

TEST(ProductWitness, ComposedParity) {
  const KernelSpec spec = product({{{prog(0, 1), prog(0, 2)}}});
  const Certificate cert = certify(spec);
  ASSERT_EQ(cert.verdict, Verdict::NotSPD);
  const WitnessReport w = witness_product(spec, cert);
  EXPECT_EQ(w.kind, WitnessKind::Composed);
  ASSERT_EQ(w.c.size(), 2);
  EXPECT_EQ(w.c(0), -w.c(1));
  EXPECT_LE(std::abs(w.residual), 1e-12 * w.scale);
}

TEST(ProductWitness, ComposedProgression) {
  const KernelSpec spec = product({{{prog(0, 2), prog(0, 1)}}});
  const Certificate cert = certify(spec);
  ASSERT_EQ(cert.verdict, Verdict::NotSPD);
  const WitnessReport w = witness_product(spec, cert);
  EXPECT_EQ(w.kind, WitnessKind::Composed);
  EXPECT_EQ(w.points.size(), 4u);
  EXPECT_LE(std::abs(w.residual), 1e-12 * w.scale);
  EXPECT_GE(w.c.norm(), 1.0);
}

TEST(ProductWitness, BatteryGammaZeroFailures) {
  int composed = 0;
  for (const auto& s2 : oracle::battery_2d(200, 31)) {
    const KernelSpec spec = product(s2, {30, 30}, 3);
    const Certificate cert = certify(spec);
    if (cert.verdict != Verdict::NotSPD || *cert.counterexample->gamma != 0) continue;
    const WitnessReport w = witness_product(spec, cert);
    ++composed;
    EXPECT_EQ(w.kind, WitnessKind::Composed);
    EXPECT_LE(std::abs(w.residual), 1e-10 * w.scale) << to_string(s2);
    EXPECT_GE(w.c.norm(), 1.0);
  }
  EXPECT_GT(composed, 10);
}

TEST(ProductWitness, SearchedAfterGammaZero) {
  const SupportSet2D late{{{prog(0, 1), one(0)}, {prog(0, 1), one(1)}, {prog(0, 2), prog(2, 2)}, {prog(0, 2), prog(3, 2)}}};
  const KernelSpec spec = product(late, {10, 10});
  const Certificate cert = certify(spec);
  ASSERT_EQ(cert.verdict, Verdict::NotSPD);
  ASSERT_GT(*cert.counterexample->gamma, 0);
  const WitnessReport w = witness_product(spec, cert, {10000, 3, 4});
  EXPECT_EQ(w.kind, WitnessKind::Searched);
  EXPECT_EQ(w.evaluations, 10000);
  ASSERT_TRUE(w.lambda_min);
  EXPECT_TRUE(std::isfinite(*w.lambda_min));
  EXPECT_NEAR(w.residual, *w.lambda_min, 1e-10 * spec.value_at_identity());
  EXPECT_NEAR(w.c.norm(), 1.0, 1e-12);
  RecordProperty("searched_lambda_min", std::to_string(*w.lambda_min));

  const WitnessReport again = witness_product(spec, cert, {10000, 3, 4});
  EXPECT_EQ(*again.lambda_min, *w.lambda_min);
}

TEST(ProductWitness, RefusesOtherCertificates) {
  const KernelSpec spec = product(kFull);
  EXPECT_EQ(code_of([&] { witness_product(spec, certify(spec)); }), ErrorCode::NotApplicable);
  const KernelSpec circle(SpaceDescriptor::circle(), SupportSet1D{{prog(0, 2)}});
  EXPECT_EQ(code_of([&] { witness_product(circle, certify(circle)); }), ErrorCode::NotApplicable);
}
