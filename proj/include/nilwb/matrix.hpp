#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nilwb/scalar.hpp"

namespace nilwb {

// Dense row-major matrix over Q(i). Zero-sized shapes are valid.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix column_vector(const std::vector<GaussianRational>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussianRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GaussianRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix scaled(const GaussianRational& s) const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix adjoint() const;  // conjugate transpose
  Matrix transpose() const;
  Matrix conjugated() const;

  bool is_zero() const;
  bool is_real() const;
  double frobenius_norm() const;
  double max_abs() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
  Matrix columns(const std::vector<std::size_t>& idx) const;

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);
// Columns spanning the null space; one per free variable, free entry set to 1.
Matrix kernel_basis(const Matrix& m);
// Pivot columns of m, in order.
Matrix column_space_basis(const Matrix& m);
// Some x with A x = b (free variables zero), or nullopt when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
// Minimal-norm solution for the inner product <x,y> = y^H M x on the source
// and N on the target: x = M^{-1} A^H N y with (A M^{-1} A^H N) y = b.
std::optional<Matrix> min_norm_solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> min_norm_solve(const Matrix& a, const Matrix& b, const Matrix& gram_src,
                                     const Matrix& gram_tgt);
Matrix inverse(const Matrix& m);
GaussianRational determinant(const Matrix& m);

}  // namespace nilwb
