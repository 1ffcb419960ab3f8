#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace nilwb;
using namespace nilwb::testing;

namespace {

Form standard_omega(int n) { return one_one_form(Matrix::identity(n)); }

double max_coefficient_gap(const Form& a, const Form& b) {
  double m = 0;
  Form diff = a - b;
  for (const auto& [mono, c] : diff.terms()) m = std::max(m, std::abs(c.to_complex()));
  return m;
}

}  // namespace

TEST(Positivity, OneOneRoundTrip) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g = random_positive_gram(rng, 3);
    Form w = one_one_form(g);
    EXPECT_EQ(one_one_coefficients(w), g);
    EXPECT_TRUE(w.is_real());
    EXPECT_EQ(w, HermitianMetric(g).kahler_form());
    EXPECT_TRUE(positivity(w, PositivityKind::OneOne).positive);
    PositivityCertificate neg = positivity(w.scaled(-1), PositivityKind::OneOne);
    EXPECT_FALSE(neg.positive);
    EXPECT_EQ(neg.failing_minor, std::optional<std::size_t>(1));
  }
}

TEST(Positivity, TestMatrixOfStandardPower) {
  // For the standard metric, Q = (n-1)! I.
  for (int n = 2; n <= 4; ++n) {
    Rational fact = 1;
    for (int j = 2; j < n; ++j) fact *= j;
    Matrix q = n_minus_one_test_matrix(wedge_power(standard_omega(n), n - 1));
    EXPECT_EQ(q, Matrix::identity(n).scaled(GaussianRational(fact))) << n;
  }
}

TEST(Positivity, RejectsWrongBidegree) {
  EXPECT_THROW(positivity(Form::generator(3, 0), PositivityKind::OneOne), WorkbenchError);
}

TEST(Root, RecoversRandomMetrics) {
  std::mt19937_64 rng(42);
  for (int n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      Matrix g = random_positive_gram(rng, n);
      Form pow = wedge_power(one_one_form(g), n - 1);
      RootResult r = root_n_minus_1(pow);
      EXPECT_LE(r.float_residual, 1e-10);
      EXPECT_LE(r.rational_residual, 1e-10);
      EXPECT_TRUE(r.positive);
      EXPECT_EQ(r.gram, g);
      // Homogeneity: root(l^{n-1} Omega) = l root(Omega).
      for (int l : {2, 3}) {
        GaussianRational s = 1;
        for (int j = 1; j < n; ++j) s *= GaussianRational(l);
        RootResult rl = root_n_minus_1(pow.scaled(s));
        EXPECT_EQ(rl.gram, g.scaled(GaussianRational(l)));
      }
    }
}

TEST(Root, ResidualOfIrrationalRoot) {
  // Omega = 2 w^2 / 2 is the square of sqrt(2) w, which is irrational; the float root still fits.
  Form pow = wedge_power(standard_omega(3), 2).scaled(GaussianRational(2));
  RootResult r = root_n_minus_1(pow);
  EXPECT_LE(r.float_residual, 1e-10);
  EXPECT_LE(max_coefficient_gap(wedge_power(r.omega, 2), pow), 1e-10);
}

TEST(Feasibility, GauduchonEverywhereWithExactCertificate) {
  for (const auto& name : model_names()) {
    auto alg = load_algebra(name);
    if (alg->n() < 2) continue;
    FeasibilityResult r = metric_feasibility(*alg, MetricKind::Gauduchon);
    ASSERT_TRUE(r.feasible()) << name;
    ASSERT_TRUE(r.witness && r.certificate);
    EXPECT_TRUE(r.certificate->positive);
    EXPECT_TRUE(r.residual_zero);
    // Independent check of the linear condition.
    EXPECT_TRUE(alg->partial(alg->partial_bar(*r.witness)).is_zero()) << name;
    EXPECT_TRUE(r.witness->is_real());
  }
}

TEST(Feasibility, KahlerOnToriOnly) {
  for (const std::string name : {"torus2", "torus3"}) {
    FeasibilityResult r = metric_feasibility(*load_algebra(name), MetricKind::Kahler);
    EXPECT_TRUE(r.feasible()) << name;
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(load_algebra(name)->d(*r.witness).is_zero());
  }
  FeasibilityResult iw = metric_feasibility(*load_algebra("iwasawa"), MetricKind::Kahler);
  EXPECT_EQ(iw.verdict, "undecided");
  EXPECT_FALSE(iw.witness.has_value());
}

TEST(Feasibility, StronglyGauduchonWitnessOnIwasawa) {
  auto alg = load_algebra("iwasawa");
  FeasibilityResult r = metric_feasibility(*alg, MetricKind::StronglyGauduchon);
  ASSERT_TRUE(r.feasible());
  Form del = alg->partial(*r.witness);
  Matrix v = alg->space()->to_vector(del, Bidegree{3, 2});
  EXPECT_TRUE(Subspace::image(alg->partial_bar().bidegree_block({3, 1}, {3, 2})).contains(v));
}

TEST(Feasibility, DeterministicForAFixedSeed) {
  auto alg = load_algebra("nil6-fam2");
  SolverOptions opt;
  opt.seed = 7;
  FeasibilityResult a = metric_feasibility(*alg, MetricKind::Gauduchon, opt);
  FeasibilityResult b = metric_feasibility(*alg, MetricKind::Gauduchon, opt);
  EXPECT_EQ(serialize_report(a), serialize_report(b));
}

TEST(E2sG, TorusElementIsTrivialPotential) {
  for (const std::string name : {"torus2", "torus3"}) {
    CohomologyEngine eng(load_algebra(name));
    E2sGElement e = e2sg_element(eng, HermitianMetric::identity(eng.n()));
    EXPECT_TRUE(e.gamma.is_zero());
    EXPECT_TRUE(e.closed);
    EXPECT_TRUE(e.real);
    EXPECT_EQ(e.gamma_omega, wedge_power(standard_omega(eng.n()), eng.n() - 1));
  }
}

TEST(E2sG, RescalingLaw) {
  for (const std::string name : {"iwasawa", "iwasawa-skew-metric", "nil6-fam1-rho1"}) {
    LieComplexModel m = load_model(name);
    CohomologyEngine eng(std::make_shared<const DifferentialAlgebra>(m));
    HermitianMetric metric = m.metric ? HermitianMetric(*m.metric) : HermitianMetric::identity(m.n);
    E2sGElement base = e2sg_element(eng, metric);
    EXPECT_TRUE(base.closed && base.real && base.t_consistent) << name;
    for (int l : {2, 3}) {
      E2sGElement scaled = e2sg_element(eng, metric.scaled(l));
      GaussianRational factor = 1;
      for (int j = 1; j < m.n; ++j) factor *= GaussianRational(l);
      EXPECT_EQ(scaled.gamma, base.gamma.scaled(factor));
      EXPECT_EQ(scaled.gamma_omega, base.gamma_omega.scaled(factor));
    }
  }
}

TEST(E2sG, ThrowsForNonStronglyGauduchonMetric) {
  CohomologyEngine eng(load_algebra("nil6-fam2"));
  EXPECT_FALSE(is_strongly_gauduchon(eng.algebra(), HermitianMetric::identity(3)));
  EXPECT_THROW(e2sg_element(eng, HermitianMetric::identity(3)), WorkbenchError);
}

TEST(JOmega, ChainOnSixDimensionalModels) {
  for (const auto& name : model_names()) {
    LieComplexModel m = load_model(name);
    if (m.n != 3) continue;
    auto alg = std::make_shared<const DifferentialAlgebra>(m);
    CohomologyEngine eng(alg);
    OperatorBundle ops(alg, HermitianMetric::identity(3));
    JOmegaReport r = check_j_omega(eng, ops);
    EXPECT_EQ(r.rank_T, r.ker_d2_dim) << name;
    EXPECT_TRUE(r.t_of_j_identity) << name;
    EXPECT_TRUE(r.j_injective) << name;
    EXPECT_EQ(r.harmonic_dim, r.e2_dim) << name;
    if (check_property(eng, PropertyName::SGG).holds()) {
      EXPECT_EQ(r.ker_d2_dim, r.e2_dim) << name;
      EXPECT_TRUE(r.t_surjective) << name;
    }
  }
}

TEST(Cones, UnionIdentityOnRealSamples) {
  for (const std::string name : {"iwasawa", "nil6-fam1-rho1", "torus3"}) {
    CohomologyEngine eng(load_algebra(name));
    HermitianMetric gamma = HermitianMetric::identity(3);
    std::vector<Form> er = e_real_basis(eng);
    for (const Form& s : er) {
      MembershipResult in_er = cone_membership(eng, gamma, ConeSet::E_R, s);
      EXPECT_EQ(in_er.verdict, "member") << name;
      MembershipResult u = cone_membership(eng, gamma, ConeSet::U_gamma, s);
      MembershipResult v = cone_membership(eng, gamma, ConeSet::V, s);
      if (u.verdict == "member") EXPECT_NE(v.verdict, "not-member") << name;
      if (v.verdict == "member") EXPECT_NE(u.verdict, "not-member") << name;
      MembershipResult c = cone_membership(eng, gamma, ConeSet::Creal_gamma, s);
      EXPECT_NE(c.verdict, "not-member") << name;
    }
  }
}

TEST(Cones, PairingIsRealForThetaWithRealDelbarPotential) {
  for (const std::string name : {"iwasawa", "nil6-fam1-rho1"}) {
    CohomologyEngine eng(load_algebra(name));
    std::vector<Form> er = e_real_basis(eng);
    for (int g = 0; g < 3; ++g) {
      Form xi = Form::generator(3, g);
      PairingProbe p = pairing_probe(eng, eng.algebra().partial(xi), er, xi);
      if (p.real_potential_shape) {
        EXPECT_TRUE(p.all_real) << name;
        EXPECT_EQ(p.non_real, 0u);
      }
      EXPECT_EQ(p.samples, er.size());
    }
  }
}

TEST(Cones, NameRegistry) {
  for (ConeSet s : {ConeSet::V, ConeSet::E, ConeSet::E_R, ConeSet::U_gamma, ConeSet::Creal_gamma})
    EXPECT_EQ(cone_set_from_name(cone_set_name(s)), s);
  for (MetricKind k : {MetricKind::Gauduchon, MetricKind::StronglyGauduchon, MetricKind::SKT, MetricKind::Kahler})
    EXPECT_EQ(metric_kind_from_name(metric_kind_name(k)), k);
}
