#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace nilwb;
using namespace nilwb::testing;

namespace {

ParseErrorCode code_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseErrorCode::Lexical;
}

}  // namespace

TEST(Parser, CorpusRoundTrip) {
  for (const auto& name : model_names()) {
    LieComplexModel m = load_model(name);
    EXPECT_EQ(m.name, name);
    EXPECT_TRUE(parse_model(format_model(m)) == m) << name;
  }
}

TEST(Parser, ConjugateGeneratorsAndCoefficients) {
  LieComplexModel m = parse_model("model x\nn 2\nd f1 = 0\nd f2 = (1/2 + 1/3 i)*f1^g1\n");
  Form expected = wedge(Form::generator(2, 0), Form::conj_generator(2, 0)).scaled(GaussianRational(Rational(1, 2), Rational(1, 3)));
  EXPECT_EQ(m.structure[1], expected);
}

TEST(Parser, MetricBlock) {
  LieComplexModel m = load_model("iwasawa-skew-metric");
  ASSERT_TRUE(m.metric.has_value());
  EXPECT_EQ((*m.metric)(0, 0), GaussianRational(2));
  EXPECT_EQ((*m.metric)(0, 1), GaussianRational(Rational(1, 2), Rational(1, 3)));
  EXPECT_EQ((*m.metric)(1, 0), GaussianRational(Rational(1, 2), Rational(-1, 3)));
  EXPECT_EQ(m.metric->adjoint(), *m.metric);
}

TEST(Parser, ErrorCodes) {
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\nd f2 = f1 $ g1\n"), ParseErrorCode::Lexical);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\nd f2 = f1 ^\n"), ParseErrorCode::Syntax);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\nd f1 = 0\nd f2 = 0\n"), ParseErrorCode::DuplicateGenerator);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\nd f2 = f1^f3\n"), ParseErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\nd f2 = g1^g2\n"), ParseErrorCode::ZeroTwoComponent);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\n"), ParseErrorCode::MissingGenerator);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\nd f2 = s*f1^g1\n"), ParseErrorCode::UndeclaredParameter);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = f2^g2\nd f2 = f1^g1\n"), ParseErrorCode::Validation);
  EXPECT_EQ(code_of("model x\nn 2\nd f1 = 0\nd f2 = 0\nmetric g11 = -1\n"), ParseErrorCode::Metric);
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    parse_model("model x\nn 2\nd f1 = 0\nd f2 = f1 $ g1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.column(), 11);
  }
}

TEST(Parser, FamilyRoundTripAndBase) {
  DeformationFamily fam = load_family(corpus_path("families/iwasawa-family.family"));
  EXPECT_EQ(fam.n, 3);
  DeformationFamily again = parse_family(format_family(fam));
  EXPECT_EQ(again.structure, fam.structure);
  EXPECT_EQ(fam.base().structure, load_model("iwasawa").structure);
  EXPECT_EQ(fam.frame_matrix(0), Matrix::identity(6));
}

TEST(Parser, FamilyRejectsUndeclaredParameter) {
  EXPECT_THROW(parse_family("family x\nn 2\nd f1 = 0\nd f2 = s*f1^g1\n"), ParseError);
}

TEST(Report, JsonIsSortedAndDeterministic) {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = {{"b", 2}, {"a", 1}};
  std::string s = serialize_json(j);
  EXPECT_LT(s.find("alpha"), s.find("zeta"));
  EXPECT_LT(s.find("\"a\""), s.find("\"b\""));
  EXPECT_EQ(s.back(), '\n');
  EXPECT_EQ(s, serialize_json(Json::parse(s)));
}

TEST(Report, ExactScalarsRoundTrip) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    GaussianRational c = random_scalar(rng);
    EXPECT_EQ(gaussian_from_json(to_json(c)), c);
  }
  Matrix m = random_matrix(rng, 3, 2);
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
}

TEST(Report, FormKeysUseGeneratorNames) {
  Form f = wedge(Form::generator(3, 0), Form::conj_generator(3, 1)).scaled(GaussianRational(Rational(1, 2)));
  Json j = to_json(f);
  ASSERT_TRUE(j.contains("f1^g2"));
  EXPECT_EQ(gaussian_from_json(j["f1^g2"]), GaussianRational(Rational(1, 2)));
}
