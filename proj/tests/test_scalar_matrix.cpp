#include <gtest/gtest.h>

#include <numeric>

#include "nilwb/matrix.hpp"
#include "nilwb/subspace.hpp"
#include "test_support.hpp"

using namespace nilwb;
using namespace nilwb::testing;

namespace {

// Leibniz expansion over all permutations.
GaussianRational leibniz_determinant(const Matrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  GaussianRational total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    GaussianRational term = inversions % 2 ? GaussianRational(-1) : GaussianRational(1);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(GaussianRational, FieldLaws) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    GaussianRational a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ((a * a.conj()).im(), 0);
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
  EXPECT_EQ(GaussianRational::imaginary_unit() * GaussianRational::imaginary_unit(), GaussianRational(-1));
}

TEST(GaussianRational, TextRoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    GaussianRational a = random_scalar(rng);
    EXPECT_EQ(GaussianRational::parse(a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ(GaussianRational::parse("i"), GaussianRational(0, 1));
  EXPECT_EQ(GaussianRational::parse("-i"), GaussianRational(0, -1));
  EXPECT_EQ(GaussianRational(Rational(1, 2), Rational(-3, 4)).to_string(), "1/2-3/4 i");
}

TEST(Rationalize, ContinuedFractionConvergents) {
  EXPECT_EQ(rationalize(1.0 / 3.0, 1000), Rational(1, 3));
  EXPECT_EQ(rationalize(3.14159265358979, 1000), Rational(355, 113));
  EXPECT_EQ(rationalize(-0.75, 10), Rational(-3, 4));
  EXPECT_EQ(rationalize(0.0, 10), Rational(0));
}

TEST(Matrix, DeterminantMatchesLeibniz) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, 4, 4);
    EXPECT_EQ(determinant(m), leibniz_determinant(m));
  }
}

TEST(Matrix, RankNullityAndKernel) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    // Product of thin factors has rank at most the inner width.
    std::size_t inner = 1 + trial % 3;
    Matrix m = random_matrix(rng, 5, inner) * random_matrix(rng, inner, 6);
    Matrix k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.cols(), m.cols());
    EXPECT_LE(rank(m), inner);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(rank(k), k.cols());
    EXPECT_EQ(rank(m), rank(m.adjoint()));
  }
}

TEST(Matrix, InverseAndSolve) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = random_matrix(rng, 4, 4);
    if (determinant(a).is_zero()) continue;
    EXPECT_EQ(a * inverse(a), Matrix::identity(4));
    Matrix b = random_matrix(rng, 4, 1);
    auto x = solve(a, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x, b);
  }
  Matrix singular(2, 2);
  singular(0, 0) = 1;
  Matrix rhs(2, 1);
  rhs(1, 0) = 1;
  EXPECT_FALSE(solve(singular, rhs).has_value());
}

TEST(Matrix, MinNormSolutionIsOrthogonalToKernel) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = random_matrix(rng, 3, 2) * random_matrix(rng, 2, 5);
    Matrix b = a * random_matrix(rng, 5, 1);
    auto x = min_norm_solve(a, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x, b);
    EXPECT_TRUE((kernel_basis(a).adjoint() * *x).is_zero());
  }
}

TEST(Subspace, CanonicalBasisIsInvariantUnderChangeOfSpanningSet) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix cols = random_matrix(rng, 6, 3);
    Matrix change = random_matrix(rng, 3, 3);
    if (determinant(change).is_zero()) continue;
    EXPECT_EQ(Subspace::span(cols), Subspace::span(cols * change));
  }
}

TEST(Subspace, DimensionFormula) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Subspace u = Subspace::span(random_matrix(rng, 6, 1 + trial % 4));
    Subspace w = Subspace::span(random_matrix(rng, 6, 1 + (trial / 4) % 4));
    EXPECT_EQ((u + w).dim() + u.intersect(w).dim(), u.dim() + w.dim());
    EXPECT_TRUE((u + w).contains(u));
    EXPECT_TRUE(u.contains(u.intersect(w)));
    auto out = u.first_outside(w);
    EXPECT_EQ(out.has_value(), !w.contains(u));
    if (out) EXPECT_FALSE(w.contains(*out));
  }
}

TEST(Subspace, KernelAndImage) {
  std::mt19937_64 rng(9);
  Matrix a = random_matrix(rng, 4, 2) * random_matrix(rng, 2, 5);
  EXPECT_EQ(Subspace::kernel(a).dim(), 3u);
  EXPECT_EQ(Subspace::image(a).dim(), 2u);
  EXPECT_EQ(Subspace::whole(5).mapped(a), Subspace::image(a));
}
