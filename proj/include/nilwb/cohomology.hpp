#pragma once

#include <map>
#include <memory>
#include <optional>

#include "nilwb/model.hpp"
#include "nilwb/report.hpp"
#include "nilwb/subspace.hpp"

namespace nilwb {

enum class Theory { DeRham, DolbeaultBar, DolbeaultPartial, BottChern, Aeppli, DH, HBC, HA };

std::string theory_name(Theory t);
bool theory_is_bigraded(Theory t);
bool theory_needs_h(Theory t);

// numerator / (denominator ∩ numerator) with canonical representatives.
class CohomologyGroup {
 public:
  CohomologyGroup() = default;
  CohomologyGroup(Subspace numerator, Subspace denominator);

  std::size_t dimension() const { return reps_.cols(); }
  std::size_t ambient() const { return numerator_.ambient(); }
  const Matrix& representatives() const { return reps_; }
  const Subspace& numerator() const { return numerator_; }
  const Subspace& denominator() const { return denominator_; }

  bool contains_class_of(const Matrix& vec) const { return numerator_.contains(vec); }
  bool is_zero_class(const Matrix& vec) const { return denominator_.contains(vec); }
  // Coordinates of the class of vec (must lie in the numerator).
  Matrix coordinates(const Matrix& vec) const;
  // Coordinates for several columns at once.
  Matrix coordinates_of_columns(const Matrix& cols) const;

 private:
  Subspace numerator_;
  Subspace denominator_;  // already intersected with the numerator
  Matrix reps_;
  Matrix joint_inverse_;  // left inverse of [reps | denominator basis]
};

CohomologyGroup subquotient(const Subspace& numerator, const Subspace& denominator);

struct SpectralPage {
  int r = 0;
  std::map<Bidegree, CohomologyGroup> groups;   // E_r^{p,q}
  std::map<Bidegree, Matrix> differential;      // d_r: E_r^{p,q} -> E_r^{p+r,q-r+1}, in class coordinates
  std::map<Bidegree, Subspace> cycles;           // Z_r^{p,q}
  std::map<Bidegree, Subspace> boundaries;       // B_r^{p,q}
  std::size_t dim(Bidegree b) const;
};

struct E2Vanishing {
  bool zero = false;
  Form u;  // alpha = del u + delbar v with delbar u = 0
  Form v;
};

struct DimensionReport {
  std::string model;
  std::string theory;
  std::optional<Rational> h;
  std::map<std::string, std::size_t> dimension;  // "b2", "h1,0", ...
};
Json to_json(const DimensionReport& r);

class CohomologyEngine {
 public:
  explicit CohomologyEngine(std::shared_ptr<const DifferentialAlgebra> alg);

  const DifferentialAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const DifferentialAlgebra>& algebra_ptr() const { return alg_; }
  int n() const { return alg_->n(); }

  CohomologyGroup cohomology(Theory theory, int k, const std::optional<Rational>& h = std::nullopt) const;
  CohomologyGroup cohomology(Theory theory, Bidegree b) const;
  DimensionReport dimension_report(Theory theory, const std::optional<Rational>& h = std::nullopt) const;

  // Pages E_1..E_{r_max}; E_{n+1} is already E_infinity.
  const std::vector<SpectralPage>& frolicher_pages() const;
  const SpectralPage& page(int r) const;
  std::size_t e(int r, Bidegree b) const { return page(r).dim(b); }
  bool e1_degenerate() const;
  bool e2_degenerate() const;
  int degeneration_page() const;

  // E_2 representative conditions: delbar a = 0, del a in Im delbar.
  bool is_e2_representative(const Form& alpha, Bidegree b) const;
  // d_2[alpha] = [del u1] with del alpha = delbar u1, u1 minimal-norm.
  Matrix d2_of(const Form& alpha, Bidegree b) const;
  E2Vanishing e2_class_is_zero(const Form& alpha, Bidegree b) const;

  // T: H^{2n-2}_dR -> E_2^{n-2,n}, as a matrix in class coordinates.
  Matrix map_T() const;
  std::size_t rank_T() const;
  // E_2-coordinates of the (n-2,n)-component of a d-closed (2n-2)-form.
  Matrix T_of(const Form& closed_form) const;
  // Real subspace of E_2^{n-2,n} (in R^{2e} = real and imaginary parts of class coordinates).
  Subspace real_e2_space() const;
  // Image of real de Rham classes under T, in the same real coordinates.
  Subspace real_T_image() const;
  // Pairing matrix between E_2^{p,q} and E_2^{n-p,n-q} representatives.
  Matrix duality_pairing(Bidegree b) const;

  // Integral with the real volume form i^n (-1)^{n(n-1)/2} top normalized to 1.
  GaussianRational integrate(const Form& top_form) const;

 private:
  Matrix block(const GradedOp& op, Bidegree src, Bidegree tgt) const { return op.bidegree_block(src, tgt); }
  Subspace zigzag_heads(Bidegree b, int length) const;
  Subspace zigzag_tails(Bidegree b, int length) const;
  std::optional<std::vector<Matrix>> zigzag_from(const Matrix& x0, Bidegree b, int length) const;
  void compute_pages() const;

  std::shared_ptr<const DifferentialAlgebra> alg_;
  mutable std::vector<SpectralPage> pages_;
};

// Real-linear helpers on Q(i)^N viewed as Q^{2N}.
Matrix realify(const Matrix& complex_map);          // 2M x 2N real matrix of a complex map
Matrix realify_vector(const Matrix& v);              // (Re v; Im v)
Matrix complexify_vector(const Matrix& v);           // inverse of realify_vector
// Real basis (over Q) of the conjugation-fixed forms in one bidegree (p,p) or degree k, as complex columns.
Matrix real_form_basis(const FormSpace& space, int k);
Matrix real_form_basis(const FormSpace& space, Bidegree b);

}  // namespace nilwb
