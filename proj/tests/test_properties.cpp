#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace nilwb;
using namespace nilwb::testing;

namespace {

class CorpusProperties : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override { engine_ = std::make_unique<CohomologyEngine>(load_algebra(GetParam())); }
  std::unique_ptr<CohomologyEngine> engine_;
};

bool holds(const CohomologyEngine& eng, PropertyName p, std::optional<int> k = std::nullopt,
           std::optional<Rational> h = std::nullopt) {
  return check_property(eng, p, k, h).holds();
}

}  // namespace

TEST_P(CorpusProperties, EquivalenceChainIsConsistent) {
  const auto& eng = *engine_;
  for (const auto& h : {Rational(1), Rational(-2), Rational(1, 3)})
    for (int k = 1; k <= 2 * eng.n(); ++k) {
      ChainReport c = verify_equivalence_chain(eng, k, h);
      EXPECT_TRUE(c.consistent) << "k=" << k << " h=" << rational_to_string(h);
      ASSERT_EQ(c.verdicts.size(), 5u);
      bool first = c.verdicts.begin()->second;
      for (const auto& [name, v] : c.verdicts) EXPECT_EQ(v, first) << name;
    }
}

TEST_P(CorpusProperties, Implications) {
  const auto& eng = *engine_;
  if (holds(eng, PropertyName::SGG)) EXPECT_TRUE(holds(eng, PropertyName::PARTIAL_E2));
  if (holds(eng, PropertyName::E1_DEGEN)) EXPECT_TRUE(holds(eng, PropertyName::E2_DEGEN));
  EXPECT_EQ(holds(eng, PropertyName::E1_DEGEN), eng.e1_degenerate());
  for (const auto& h : {Rational(1), Rational(-2)})
    if (holds(eng, PropertyName::HDDBAR, std::nullopt, h)) {
      EXPECT_TRUE(eng.e1_degenerate());
      for (int k = 0; k <= 2 * eng.n(); ++k)
        EXPECT_EQ(2 * eng.cohomology(Theory::DeRham, k).dimension(),
                  eng.cohomology(Theory::HBC, k, h).dimension() + eng.cohomology(Theory::HA, k, h).dimension());
    }
}

TEST_P(CorpusProperties, CanonicalMapsComposeAndMatchVerdicts) {
  const auto& eng = *engine_;
  for (const auto& h : {Rational(1), Rational(1, 3)})
    for (int k = 0; k <= 2 * eng.n(); ++k) {
      CanonicalMaps m = canonical_map_ranks(eng, k, h);
      EXPECT_EQ(m.bc_to_a, m.dh_to_a * m.bc_to_dh);
      EXPECT_EQ(m.bc_to_a_injective, rank(m.bc_to_a) == m.dim_bc);
      EXPECT_EQ(m.bc_to_a_surjective, rank(m.bc_to_a) == m.dim_a);
      EXPECT_EQ(m.bc_to_a_injective, holds(eng, PropertyName::A, k, h));
      EXPECT_EQ(m.bc_to_a_surjective, holds(eng, PropertyName::B, k, h));
    }
}

TEST_P(CorpusProperties, FalseVerdictsCarryAWitnessAndClause) {
  const auto& eng = *engine_;
  for (PropertyName p : all_properties()) {
    PropertyReport r = check_property(eng, p);
    if (r.verdict == "false") EXPECT_FALSE(r.clause.empty()) << r.property;
    EXPECT_TRUE(r.verdict == "true" || r.verdict == "false" || r.verdict == "vacuous");
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, CorpusProperties, ::testing::ValuesIn(model_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Properties, ToriSatisfyEverything) {
  for (const std::string name : {"torus2", "torus3"}) {
    CohomologyEngine eng(load_algebra(name));
    for (PropertyName p : all_properties())
      for (const auto& h : sampled_h()) EXPECT_TRUE(holds(eng, p, std::nullopt, h)) << name << " " << property_name(p);
  }
}

TEST(Properties, IwasawaVerdicts) {
  auto alg = load_algebra("iwasawa");
  CohomologyEngine eng(alg);
  EXPECT_TRUE(holds(eng, PropertyName::SGG));
  EXPECT_FALSE(holds(eng, PropertyName::E1_DEGEN));
  EXPECT_TRUE(holds(eng, PropertyName::E2_DEGEN));
  EXPECT_FALSE(holds(eng, PropertyName::HDDBAR));
  PropertyReport r = check_property(eng, PropertyName::DDBAR_B);
  ASSERT_EQ(r.verdict, "false");
  ASSERT_TRUE(r.witness.has_value());
  // Witness oracle: d-exact but not del-delbar-exact.
  const Form& w = *r.witness;
  int k = w.degree();
  auto space = alg->space();
  Matrix v = space->to_vector(w, k);
  ASSERT_GE(k, 1);
  EXPECT_TRUE(Subspace::image(alg->d().block(k - 1)).contains(v));
  ASSERT_GE(k, 2);
  EXPECT_FALSE(Subspace::image(alg->ddbar().block(k - 2)).contains(v));
}

TEST(Properties, KodairaThurstonIsNotSGG) {
  CohomologyEngine eng(load_algebra("kodaira-thurston"));
  PropertyReport r = check_property(eng, PropertyName::SGG);
  EXPECT_EQ(r.verdict, "false");
  EXPECT_TRUE(r.witness.has_value());
}

TEST(Properties, OutOfRangeDegreeIsVacuous) {
  CohomologyEngine eng(load_algebra("iwasawa"));
  EXPECT_EQ(check_property(eng, PropertyName::A, 9).verdict, "vacuous");
  EXPECT_EQ(check_property(eng, PropertyName::L, -1).verdict, "vacuous");
}

TEST(Properties, NameRegistryRoundTrip) {
  for (PropertyName p : all_properties()) EXPECT_EQ(property_from_name(property_name(p)), p);
  EXPECT_EQ(property_from_name("C'(i)"), PropertyName::C_PRIME_I);
  EXPECT_FALSE(property_from_name("nope").has_value());
}
