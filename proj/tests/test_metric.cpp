#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace nilwb;
using namespace nilwb::testing;

namespace {

std::vector<HermitianMetric> metrics_for(const LieComplexModel& m) {
  std::vector<HermitianMetric> out{HermitianMetric::identity(m.n)};
  if (m.metric) out.emplace_back(*m.metric);
  std::mt19937_64 rng(31);
  out.emplace_back(random_positive_gram(rng, m.n));
  return out;
}

bool in_list(IdentityName id, std::initializer_list<IdentityName> list) {
  return std::find(list.begin(), list.end(), id) != list.end();
}

}  // namespace

TEST(Positivity, LeadingMinors) {
  EXPECT_FALSE(first_failing_minor(Matrix::identity(3)).has_value());
  Matrix m = Matrix::identity(2);
  m(1, 1) = -1;
  EXPECT_EQ(first_failing_minor(m), std::optional<std::size_t>(2));
  Matrix z(2, 2);
  EXPECT_EQ(first_failing_minor(z), std::optional<std::size_t>(1));
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10; ++trial) EXPECT_TRUE(is_positive_definite(random_positive_gram(rng, 3)));
}

TEST(Metric, InducedInnerProductIsHermitianAndAdjointsAreFormal) {
  for (const std::string name : {"iwasawa-skew-metric", "kodaira-thurston"}) {
    LieComplexModel m = load_model(name);
    auto alg = std::make_shared<const DifferentialAlgebra>(m);
    std::mt19937_64 rng(33);
    for (const auto& metric : metrics_for(m)) {
      OperatorBundle ops(alg, metric);
      GradedOp dstar = ops.adjoint(alg->d());
      for (int trial = 0; trial < 5; ++trial) {
        int k = 1 + trial % (2 * m.n - 1);
        Form x = random_form(rng, m.n, k), y = random_form(rng, m.n, k + 1);
        EXPECT_EQ(metric.inner(alg->d(x), y), metric.inner(x, dstar.apply(y)));
        EXPECT_EQ(metric.inner(x, x).im(), 0);
      }
    }
  }
}

TEST(Metric, InnerProductConjugateSymmetry) {
  std::mt19937_64 rng(34);
  HermitianMetric metric(random_positive_gram(rng, 3));
  for (int trial = 0; trial < 10; ++trial) {
    int k = trial % 7;
    Form x = random_form(rng, 3, k), y = random_form(rng, 3, k);
    EXPECT_EQ(metric.inner(x, y), metric.inner(y, x).conj());
    if (!x.is_zero()) EXPECT_GT(metric.inner(x, x).re(), 0);
  }
}

TEST(Metric, KahlerDetection) {
  EXPECT_TRUE(OperatorBundle(load_algebra("torus3"), HermitianMetric::identity(3)).is_kahler());
  EXPECT_FALSE(OperatorBundle(load_algebra("iwasawa"), HermitianMetric::identity(3)).is_kahler());
}

TEST(Identities, ElementaryAndHCommutationAndBknAreExact) {
  using I = IdentityName;
  for (const auto& name : model_names()) {
    LieComplexModel m = load_model(name);
    auto alg = std::make_shared<const DifferentialAlgebra>(m);
    for (const auto& metric : metrics_for(m))
      for (const auto& h : {Rational(1), Rational(-2), Rational(1, 3)})
        for (IdentityName id : all_identities()) {
          if (!in_list(id, {I::OBV1, I::OBV2, I::OBV3, I::OBV4, I::OBVBIS, I::HCOMM_A, I::HCOMM_B, I::HCOMM_C,
                            I::HCOMM_D, I::ROUGH_BKN, I::PRELIM_I, I::PRELIM_II, I::PRELIM_III, I::PRELIM_IV,
                            I::REFINED_BKN, I::RESCALE_ADJ, I::RESCALE_LAP}))
            continue;
          IdentityReport r = verify_identity(id, alg, metric, h, Rational(3));
          EXPECT_TRUE(r.residual_zero) << name << " " << identity_name(id) << " h=" << rational_to_string(h);
          EXPECT_EQ(r.status(), "pass");
        }
  }
}

TEST(Identities, KahlerOnlyIdentitiesOnTori) {
  for (const std::string name : {"torus2", "torus3"}) {
    auto alg = load_algebra(name);
    for (IdentityName id : {IdentityName::KAHLER_ANTICOMM, IdentityName::LAPLACE_SUM, IdentityName::PROPORTION})
      for (const auto& h : sampled_h()) {
        IdentityReport r = verify_identity(id, alg, HermitianMetric::identity(alg->n()), h);
        EXPECT_EQ(r.status(), "pass") << name << " " << identity_name(id);
        EXPECT_TRUE(r.residual_zero);
      }
  }
}

TEST(Identities, ProportionFailsOffKahler) {
  auto alg = load_algebra("iwasawa");
  IdentityReport r = verify_identity(IdentityName::PROPORTION, alg, HermitianMetric::identity(3), Rational(2));
  EXPECT_FALSE(r.residual_zero);
  EXPECT_GT(r.residual_norm, 0);
  EXPECT_EQ(r.status(), "hypothesis-absent");
  IdentityReport expected =
      verify_identity(IdentityName::PROPORTION, alg, HermitianMetric::identity(3), Rational(2), std::nullopt, true);
  EXPECT_FALSE(expected.falsified());
}

TEST(Identities, NameRegistryRoundTrip) {
  for (IdentityName id : all_identities()) EXPECT_EQ(identity_from_name(identity_name(id)), id);
  EXPECT_FALSE(identity_from_name("NOT-AN-IDENTITY").has_value());
}

TEST(Potentials, StronglyGauduchonPotentialSolvesTheEquation) {
  for (const std::string name : {"iwasawa", "nil6-fam1-rho1", "torus3"}) {
    auto alg = load_algebra(name);
    int n = alg->n();
    OperatorBundle ops(alg, HermitianMetric::identity(n));
    auto gamma = sg_potential(ops);
    ASSERT_TRUE(gamma.has_value()) << name;
    Form pow = wedge_power(ops.omega(), n - 1);
    EXPECT_EQ(alg->partial(*gamma), alg->partial_bar(pow).scaled(-1));
    // Minimal norm: orthogonal to ker del in bidegree (n-2,n).
    Bidegree b{n - 2, n};
    Subspace ker = Subspace::kernel(alg->partial().bidegree_block(b, {n - 1, n}));
    auto space = alg->space();
    Matrix g = ops.metric().gram_on(b);
    Matrix x = space->to_vector(*gamma, b);
    EXPECT_TRUE((ker.basis().adjoint() * g * x).is_zero());
    auto closed = gamma_form(ops);
    ASSERT_TRUE(closed.has_value());
    EXPECT_TRUE(alg->d(*closed).is_zero());
    EXPECT_TRUE(closed->is_real());
  }
}

TEST(Potentials, GreenSolutionMatchesMinimalNorm) {
  auto alg = load_algebra("iwasawa");
  HermitianMetric metric = HermitianMetric::identity(3);
  OperatorBundle ops(alg, metric);
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 5; ++trial) {
    Form src = random_bidegree_form(rng, 3, {1, 1});
    Form b = alg->partial_bar(src);
    auto mn = minimal_norm_solution(alg->partial_bar(), {1, 1}, b, metric);
    ASSERT_TRUE(mn.has_value());
    EXPECT_EQ(alg->partial_bar(*mn), b);
    EXPECT_EQ(neumann_solution_delbar(ops, b), *mn);
  }
}

TEST(Spectrum, KernelOfTwistedLaplacianHasBettiDimension) {
  for (const std::string name : {"iwasawa", "kodaira-thurston", "torus2"}) {
    auto alg = load_algebra(name);
    CohomologyEngine eng(alg);
    OperatorBundle ops(alg, HermitianMetric::identity(alg->n()));
    for (const auto& h : {Rational(1), Rational(2)})
      for (int k = 0; k <= 2 * alg->n(); ++k) {
        Spectrum s = laplacian_spectrum(ops, h, k);
        EXPECT_EQ(s.zero_cluster, eng.cohomology(Theory::DeRham, k).dimension()) << name << " k=" << k;
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) EXPECT_GT(s.eigenvalues[i], -1e-9);
        if (s.smallest_positive) EXPECT_GT(*s.smallest_positive, 1e-9);
      }
  }
}

TEST(Spectrum, PseudoHarmonicDimensionMatchesE2) {
  auto alg = load_algebra("iwasawa");
  CohomologyEngine eng(alg);
  OperatorBundle ops(alg, HermitianMetric::identity(3));
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q)
      EXPECT_EQ(pseudo_harmonic_space(ops, {p, q}).dim(), eng.e(2, {p, q})) << p << "," << q;
}
