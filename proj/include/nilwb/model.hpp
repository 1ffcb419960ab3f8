#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilwb/forms.hpp"

namespace nilwb {

// Left-invariant complex structure: d w^k for the (1,0)-coframe.
struct LieComplexModel {
  std::string name;
  int n = 0;
  std::vector<Form> structure;    // structure[k] = d w^{k+1}
  std::optional<Matrix> metric;   // Hermitian Gram G, w = i sum G_jk w^j ^ wbar^k

  // A^k_ij (i<j) on w^i ^ w^j and B^k_ij on w^i ^ wbar^j, 0-based.
  GaussianRational a(int k, int i, int j) const;
  GaussianRational b(int k, int i, int j) const;
};

struct Violation {
  int generator = 0;  // 1-based
  std::string constraint;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks integrability (no (0,2) part) and d^2 = 0 on every generator.
ValidationReport validate_model(const LieComplexModel& model);
std::vector<Monomial> bidegree_basis(const LieComplexModel& model, Bidegree b);

// Linear operator on the exterior algebra with a fixed total-degree shift,
// held as one dense block per source degree.
class GradedOp {
 public:
  GradedOp() = default;
  GradedOp(FormSpacePtr space, int shift);
  static GradedOp identity(FormSpacePtr space);
  // Block-diagonal operator from per-degree square matrices.
  static GradedOp from_blocks(FormSpacePtr space, int shift, std::vector<Matrix> blocks);

  const FormSpacePtr& space() const { return space_; }
  int shift() const { return shift_; }
  const Matrix& block(int k) const { return blocks_.at(k); }
  Matrix& block(int k) { return blocks_.at(k); }

  GradedOp operator*(const GradedOp& o) const;
  GradedOp operator+(const GradedOp& o) const;
  GradedOp operator-(const GradedOp& o) const;
  GradedOp scaled(const GaussianRational& s) const;
  friend GradedOp operator*(const GaussianRational& s, const GradedOp& a) { return a.scaled(s); }
  // conj(A)(u) = conj(A(conj u))
  GradedOp conj() const;

  bool is_zero() const;
  double norm() const;
  bool operator==(const GradedOp& o) const;

  // Block between the (p,q) and (p',q') coordinate blocks.
  Matrix bidegree_block(Bidegree src, Bidegree tgt) const;
  Form apply(const Form& f) const;

 private:
  FormSpacePtr space_;
  int shift_ = 0;
  std::vector<Matrix> blocks_;
};

// [A,B] = AB - (-1)^{|A||B|} BA
GradedOp graded_commutator(const GradedOp& a, const GradedOp& b);
// u -> psi ^ u for homogeneous psi
GradedOp left_multiplication(FormSpacePtr space, const Form& psi);
// Same with an explicit degree, so a zero psi still has the right shift.
GradedOp left_multiplication(FormSpacePtr space, const Form& psi, int degree);

enum class DiffKind { Partial, PartialBar, D, DH, DMinusInvH, DDBar };

// Holds the model together with its assembled del and delbar.
class DifferentialAlgebra {
 public:
  explicit DifferentialAlgebra(LieComplexModel model);

  const LieComplexModel& model() const { return model_; }
  const FormSpacePtr& space() const { return space_; }
  int n() const { return model_.n; }

  const GradedOp& partial() const { return partial_; }
  const GradedOp& partial_bar() const { return partial_bar_; }
  GradedOp d() const { return partial_ + partial_bar_; }
  GradedOp d_h(const Rational& h) const;              // h del + delbar
  GradedOp d_minus_inv_h(const Rational& h) const;    // d_{-1/h}
  GradedOp ddbar() const { return partial_ * partial_bar_; }
  GradedOp theta(const Rational& h) const;

  Form partial(const Form& f) const { return partial_.apply(f); }
  Form partial_bar(const Form& f) const { return partial_bar_.apply(f); }
  Form d(const Form& f) const { return partial(f) + partial_bar(f); }

  // d vanishes on degree 2n-1, so invariant Stokes and formal adjoints hold.
  bool unimodular() const;

 private:
  LieComplexModel model_;
  FormSpacePtr space_;
  GradedOp partial_;
  GradedOp partial_bar_;
};

GradedOp assemble_differential(const DifferentialAlgebra& alg, DiffKind kind,
                               const std::optional<Rational>& h = std::nullopt);

// Anti-derivation extension of generator images (2n one-to-two-form images).
Form apply_derivation(const Form& f, const std::vector<Form>& generator_images);

}  // namespace nilwb
