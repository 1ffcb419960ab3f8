#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "nilwb/matrix.hpp"

namespace nilwb {

struct Bidegree {
  int p = 0;
  int q = 0;
  int degree() const { return p + q; }
  friend bool operator==(const Bidegree& a, const Bidegree& b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(const Bidegree& a, const Bidegree& b) { return a.p != b.p ? a.p < b.p : a.q < b.q; }
};

// w^I ^ wbar^J, I and J as bitmasks over generator indices 0..n-1.
struct Monomial {
  std::uint32_t hol = 0;
  std::uint32_t anti = 0;
  int p() const { return __builtin_popcount(hol); }
  int q() const { return __builtin_popcount(anti); }
  int degree() const { return p() + q(); }
  Bidegree bidegree() const { return {p(), q()}; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.hol == b.hol && a.anti == b.anti; }
};

// Global order: degree, then p, then I lexicographically, then J.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Lexicographic order of equal-size index sets given as bitmasks.
bool lex_less(std::uint32_t a, std::uint32_t b);

// Sign of w^I1 wbar^J1 ^ w^I2 wbar^J2 reordered to ascending form; 0 if it vanishes.
int wedge_sign(const Monomial& a, const Monomial& b);

class Form {
 public:
  using Terms = std::map<Monomial, GaussianRational, MonomialOrder>;

  Form() = default;
  explicit Form(int n) : n_(n) {}
  static Form monomial(int n, Monomial m, GaussianRational c = 1);
  static Form generator(int n, int k);       // w^k, 0-based
  static Form conj_generator(int n, int k);  // wbar^k

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  GaussianRational coefficient(const Monomial& m) const;
  void add(const Monomial& m, const GaussianRational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  // Degree of a homogeneous form; -1 for zero, throws if mixed.
  int degree() const;

  Form component(Bidegree b) const;
  Form degree_component(int k) const;
  Form conjugate() const;
  Form scaled(const GaussianRational& s) const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const GaussianRational& s, const Form& f) { return f.scaled(s); }
  friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  int n_ = 0;
  Terms terms_;
};

Form wedge(const Form& a, const Form& b);
Form wedge_power(const Form& f, int m);
// Multiplies each (p,q)-component by h^p.
Form theta_h(const Form& f, const Rational& h);
// Replaces every generator by the given 1-form (images[0..n-1] for w, images[n..2n-1] for wbar).
Form substitute(const Form& f, const std::vector<Form>& images);

// Basis bookkeeping for the exterior algebra on w^1..w^n, wbar^1..wbar^n.
class FormSpace {
 public:
  explicit FormSpace(int n);

  int n() const { return n_; }
  int top_degree() const { return 2 * n_; }
  std::size_t dim(int k) const;
  std::size_t dim(Bidegree b) const;
  const std::vector<Monomial>& basis(int k) const { return basis_.at(k); }
  std::vector<Monomial> bidegree_basis(Bidegree b) const;
  // Start of the (p,q) block inside the degree-(p+q) block.
  std::size_t offset(Bidegree b) const;
  std::size_t index(const Monomial& m) const;
  // Signed permutation of complex conjugation on degree k.
  const Matrix& conjugation(int k) const { return conj_.at(k); }
  Monomial top() const;

  Matrix to_vector(const Form& f, int k) const;
  Form from_vector(const Matrix& v, int k) const;
  // Coordinates restricted to one bidegree block.
  Matrix to_vector(const Form& f, Bidegree b) const;
  Form from_vector(const Matrix& v, Bidegree b) const;

 private:
  int n_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::vector<std::size_t>> offsets_;  // [k][p]
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<Matrix> conj_;
};

using FormSpacePtr = std::shared_ptr<const FormSpace>;
FormSpacePtr form_space(int n);

}  // namespace nilwb
