#include "nilwb/scalar.hpp"

#include <cmath>

namespace nilwb {

std::string rational_to_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw WorkbenchError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw WorkbenchError("malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw WorkbenchError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw WorkbenchError("division by zero in Q(i)");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  Rational den = o.norm2();
  Rational re = (re_ * o.re_ + im_ * o.im_) / den;
  Rational im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
  if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
    re_ += a.re_ * b.re_;
    return;
  }
  re_ += a.re_ * b.re_ - a.im_ * b.im_;
  im_ += a.re_ * b.im_ + a.im_ * b.re_;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  Rational mag = abs(im_);
  std::string im_part = (mag == 1 ? std::string() : mag.get_str() + " ") + "i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + im_part;
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_part;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw WorkbenchError("empty Gaussian rational literal");
  if (s.back() != 'i') return GaussianRational(rational_from_string(s));
  s.pop_back();
  // split real and imaginary parts at the last sign that is not leading
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  Rational re = 0;
  std::string im_text = s;
  if (split != std::string::npos) {
    re = rational_from_string(s.substr(0, split));
    im_text = s.substr(split);
  }
  Rational im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = rational_from_string(im_text);
  }
  return GaussianRational(re, im);
}

Rational rationalize(double x, long bound) {
  if (!std::isfinite(x)) throw WorkbenchError("cannot rationalize a non-finite value");
  bool negative = x < 0;
  double y = std::fabs(x);
  // convergents h/k
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(y));
  mpz_class k_prev = 0, k = 1;
  double frac = y - std::floor(y);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    double inv = 1.0 / frac;
    double a_d = std::floor(inv);
    if (a_d > 1e15) break;
    mpz_class a = static_cast<long>(a_d);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > bound) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - a_d;
  }
  Rational r(h, k);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace nilwb
