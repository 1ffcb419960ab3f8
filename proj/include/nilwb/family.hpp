#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilwb/model.hpp"

namespace nilwb {

// Polynomial in one parameter with Q(i) coefficients; coeffs[j] multiplies t^j.
class Poly {
 public:
  Poly() = default;
  Poly(GaussianRational c) { if (!c.is_zero()) coeffs_.push_back(std::move(c)); }
  static Poly parameter() { Poly p; p.coeffs_ = {0, 1}; return p; }

  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  GaussianRational evaluate(const Rational& t) const;
  Poly conj() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

using PolyForm = std::map<Monomial, Poly, MonomialOrder>;

// Holomorphic family over a one-parameter disc, given by t-polynomial structure
// equations in the fibre coframe phi_t and an optional smooth frame
// eta^k = sum_j P_kj(t) phi^j + Q_kj(t) phibar^j (identity when omitted).
struct DeformationFamily {
  std::string name;
  std::string parameter = "t";
  int n = 0;
  std::vector<PolyForm> structure;            // d phi^k
  std::vector<std::map<int, Poly>> frame;     // generator index 0..2n-1 -> coefficient
  std::vector<bool> frame_declared;
  std::optional<Matrix> metric;

  // Fibre model at t; throws "invalid fibre at t=..." on validation failure.
  LieComplexModel evaluate(const Rational& t) const;
  LieComplexModel base() const { return evaluate(0); }
  // 2n x 2n matrix expressing (eta, etabar) in (phi, phibar) at t.
  Matrix frame_matrix(const Rational& t) const;
};

}  // namespace nilwb
