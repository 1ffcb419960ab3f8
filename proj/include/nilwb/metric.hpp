#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilwb/cohomology.hpp"

namespace nilwb {

// Index (1-based) of the first leading principal minor that is not a positive real, or nullopt.
std::optional<std::size_t> first_failing_minor(const Matrix& hermitian);
bool is_positive_definite(const Matrix& hermitian);

// Positive-definite Hermitian Gram G on the (1,0)-coframe; w = i sum G_jk w^j ^ wbar^k.
class HermitianMetric {
 public:
  explicit HermitianMetric(Matrix gram);
  static HermitianMetric identity(int n);

  int n() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  Form kahler_form() const;
  HermitianMetric scaled(const Rational& lambda) const;

  // <x,y> = y^H M_k x on degree-k coordinates; block diagonal by bidegree.
  const Matrix& gram_on(int k) const { return grams_.at(k); }
  const Matrix& gram_inverse_on(int k) const { return gram_invs_.at(k); }
  Matrix gram_on(Bidegree b) const;
  GaussianRational inner(const Form& a, const Form& b) const;

 private:
  Matrix gram_;
  std::vector<Matrix> grams_;
  std::vector<Matrix> gram_invs_;
};

// Every metric-dependent operator for one (model, metric). Immutable after construction.
class OperatorBundle {
 public:
  OperatorBundle(std::shared_ptr<const DifferentialAlgebra> alg, HermitianMetric metric);

  const DifferentialAlgebra& algebra() const { return *alg_; }
  const HermitianMetric& metric() const { return metric_; }
  const FormSpacePtr& space() const { return alg_->space(); }
  const Form& omega() const { return omega_; }

  GradedOp adjoint(const GradedOp& a) const;
  // Orthogonal projector onto a subspace per degree (columns of `basis` at degree k).
  GradedOp orthogonal_projector(const std::vector<Subspace>& per_degree) const;

  const GradedOp& L() const { return L_; }
  const GradedOp& Lambda() const { return Lambda_; }
  GradedOp d_h(const Rational& h) const { return alg_->d_h(h); }
  GradedOp conj_d_h(const Rational& h) const { return alg_->d_h(h).conj(); }
  GradedOp mult(const Form& psi, int degree) const { return left_multiplication(space(), psi, degree); }
  GradedOp tau_h(const Rational& h) const;  // [Lambda, d_h w ^ .]
  GradedOp tau() const { return tau_h(1); }
  GradedOp laplacian_h(const Rational& h) const;  // [d_h, d_h*]
  GradedOp laplacian() const { return laplacian_h(1); }
  GradedOp laplacian_del() const;
  GradedOp laplacian_delbar() const;
  GradedOp harmonic_projector_delbar() const;  // p'' onto ker Delta''
  GradedOp green_delbar() const;               // (Delta'' + p'')^{-1}(1 - p'')
  GradedOp pseudo_laplacian() const;           // del p'' del* + del* p'' del + Delta''

  bool is_kahler() const;  // d w = 0

 private:
  std::shared_ptr<const DifferentialAlgebra> alg_;
  HermitianMetric metric_;
  Form omega_;
  GradedOp L_;
  GradedOp Lambda_;
};

enum class IdentityName {
  OBV1, OBV2, OBV3, OBV4, OBVBIS,
  RESCALE_ADJ, RESCALE_LAP, RESCALE_GAMMA,
  HCOMM_A, HCOMM_B, HCOMM_C, HCOMM_D,
  ROUGH_BKN, KAHLER_ANTICOMM,
  PRELIM_I, PRELIM_II, PRELIM_III, PRELIM_IV,
  REFINED_BKN, LAPLACE_SUM, PROPORTION,
};

std::string identity_name(IdentityName id);
std::optional<IdentityName> identity_from_name(const std::string& name);
std::vector<IdentityName> all_identities();
bool identity_needs_kahler(IdentityName id);
bool identity_is_metric_general(IdentityName id);

struct IdentityReport {
  std::string model;
  std::string identity;
  Rational h;
  std::optional<Rational> lambda;
  bool kahler_required = false;
  bool kahler = false;
  std::string hypothesis = "none";  // "none", "kahler" or "strongly-gauduchon"
  bool hypothesis_met = true;
  bool expect_violation = false;  // caller asserts a nonzero residual (negative control)
  bool residual_zero = false;
  double residual_norm = 0;
  std::vector<int> nonzero_degrees;
  std::vector<std::string> violations;
  // "pass", "fail", or "hypothesis-absent" (hypothesis not met, residual only reported)
  std::string status() const;
  bool falsified() const { return status() == "fail"; }
};
Json to_json(const IdentityReport& r);

IdentityReport verify_identity(IdentityName id, const std::shared_ptr<const DifferentialAlgebra>& alg,
                               const HermitianMetric& metric, const Rational& h,
                               const std::optional<Rational>& lambda = std::nullopt,
                               bool expect_violation = false);

// Minimal-norm solution of A x = b for the block A: src -> tgt of op; nullopt if b is not in the image.
std::optional<Form> minimal_norm_solution(const GradedOp& op, Bidegree src, const Form& b,
                                          const HermitianMetric& metric);
// Same solution via the Green operator: G'' delbar* b (delbar) or the del analogue.
Form neumann_solution_delbar(const OperatorBundle& ops, const Form& b);

// Minimal-norm solution Gamma of del Gamma = -delbar w^{n-1} in bidegree (n-2,n); nullopt if w is not sG.
std::optional<Form> sg_potential(const OperatorBundle& ops);
bool is_strongly_gauduchon(const DifferentialAlgebra& alg, const HermitianMetric& metric);
// conj(Gamma) + w^{n-1} + Gamma, a real d-closed (2n-2)-form; nullopt if w is not sG.
std::optional<Form> gamma_form(const OperatorBundle& ops);

// The Delta~-harmonic form whose E_2 class has the given coordinates.
Form harmonic_e2_representative(const CohomologyEngine& engine, const OperatorBundle& ops, Bidegree b,
                                 const Matrix& e2_coordinates);
Subspace pseudo_harmonic_space(const OperatorBundle& ops, Bidegree b);

struct Spectrum {
  std::vector<double> eigenvalues;     // ascending
  std::size_t zero_cluster = 0;        // exact dim ker
  std::optional<double> smallest_positive;
};
Spectrum laplacian_spectrum(const OperatorBundle& ops, const Rational& h, int k);

}  // namespace nilwb
