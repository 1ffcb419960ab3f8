#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "nilwb/parser.hpp"
#include "nilwb/report.hpp"
#include "nilwb/workbench.hpp"

namespace nilwb::testing {

inline std::string corpus_path(const std::string& rel) { return std::string(NILWB_CORPUS_DIR) + "/" + rel; }
inline std::string test_path(const std::string& rel) { return std::string(NILWB_TEST_DIR) + "/" + rel; }

inline std::vector<std::string> model_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_path("models")))
    if (e.path().extension() == ".model") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string model_file(const std::string& name) { return corpus_path("models/" + name + ".model"); }

inline LieComplexModel load_model(const std::string& name) { return parse_model(read_text_file(model_file(name))); }

inline std::shared_ptr<const DifferentialAlgebra> load_algebra(const std::string& name) {
  return std::make_shared<const DifferentialAlgebra>(load_model(name));
}

inline DeformationFamily load_family(const std::string& path) { return parse_family(read_text_file(path)); }

inline Json golden(const std::string& name) {
  std::ifstream in(test_path("golden/" + name + ".json"));
  return Json::parse(in);
}

inline std::vector<Rational> sampled_h() {
  return {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 3), Rational(-1, 3)};
}

inline std::string pq(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Random Gaussian rational with small numerator and denominator.
inline GaussianRational random_scalar(std::mt19937_64& rng, bool real = false) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Rational re(num(rng), den(rng));
  re.canonicalize();
  if (real) return GaussianRational(re);
  Rational im(num(rng), den(rng));
  im.canonicalize();
  return GaussianRational(re, im);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, bool real = false) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(rng, real);
  return m;
}

// Random homogeneous form of degree k.
inline Form random_form(std::mt19937_64& rng, int n, int k) {
  auto space = form_space(n);
  Form f(n);
  std::bernoulli_distribution keep(0.5);
  for (const auto& m : space->basis(k))
    if (keep(rng)) f.add(m, random_scalar(rng));
  return f;
}

inline Form random_bidegree_form(std::mt19937_64& rng, int n, Bidegree b) {
  return random_form(rng, n, b.degree()).component(b);
}

// Positive definite Hermitian Gram: diagonally dominant with rational entries.
inline Matrix random_positive_gram(std::mt19937_64& rng, int n) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      g(i, j) = random_scalar(rng);
      g(j, i) = g(i, j).conj();
    }
  for (int i = 0; i < n; ++i) {
    Rational s = 1;
    for (int j = 0; j < n; ++j)
      if (j != i) s += abs(g(i, j).re()) + abs(g(i, j).im());
    g(i, i) = GaussianRational(s);
  }
  return g;
}

}  // namespace nilwb::testing
