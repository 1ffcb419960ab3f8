#include "nilwb/subspace.hpp"

namespace nilwb {

Subspace Subspace::span(const Matrix& columns) {
  Subspace s(columns.rows());
  RowEchelon e = rref(columns.transpose());
  std::size_t r = e.pivots.size();
  s.basis_ = e.reduced.block(0, 0, r, columns.rows()).transpose();
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::kernel(const Matrix& op) { return span(kernel_basis(op)); }

Subspace Subspace::image(const Matrix& op) { return span(op); }

Subspace Subspace::whole(std::size_t ambient) { return span(Matrix::identity(ambient)); }

Subspace Subspace::coordinate(std::size_t ambient, std::size_t offset, std::size_t count) {
  Matrix m(ambient, count);
  for (std::size_t j = 0; j < count; ++j) m(offset + j, j) = 1;
  return span(m);
}

bool Subspace::contains(const Matrix& vec) const {
  if (vec.rows() != ambient_ || vec.cols() != 1) throw WorkbenchError("subspace membership shape mismatch");
  Matrix r = vec;
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    GaussianRational c = r(pivots_[j], 0);
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < ambient_; ++i)
      if (!basis_(i, j).is_zero()) r(i, 0) -= c * basis_(i, j);
  }
  return r.is_zero();
}

bool Subspace::contains(const Subspace& other) const { return !other.first_outside(*this).has_value(); }

std::optional<Matrix> Subspace::first_outside(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw WorkbenchError("subspace ambient mismatch");
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    Matrix v = basis_.column(j);
    if (!other.contains(v)) return v;
  }
  return std::nullopt;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw WorkbenchError("subspace ambient mismatch");
  return span(Matrix::hstack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw WorkbenchError("subspace ambient mismatch");
  if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
  Matrix joint = Matrix::hstack(basis_, other.basis_.scaled(-1));
  Matrix k = kernel_basis(joint);
  return span(basis_ * k.block(0, 0, dim(), k.cols()));
}

Subspace Subspace::mapped(const Matrix& op) const {
  if (op.cols() != ambient_) throw WorkbenchError("subspace map shape mismatch");
  return span(op * basis_);
}

}  // namespace nilwb
