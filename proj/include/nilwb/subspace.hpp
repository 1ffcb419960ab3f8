#pragma once

#include <optional>

#include "nilwb/matrix.hpp"

namespace nilwb {

// Linear subspace of Q(i)^N held in canonical reduced column-echelon form, so
// equal subspaces have identical bases.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient), basis_(ambient, 0) {}

  static Subspace span(const Matrix& columns);
  static Subspace kernel(const Matrix& op);
  static Subspace image(const Matrix& op);
  static Subspace whole(std::size_t ambient);
  // Coordinate subspace spanned by unit vectors offset..offset+count-1.
  static Subspace coordinate(std::size_t ambient, std::size_t offset, std::size_t count);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Matrix& vec) const;
  bool contains(const Subspace& other) const;
  // First canonical basis vector of *this that is not in `other`.
  std::optional<Matrix> first_outside(const Subspace& other) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  Subspace mapped(const Matrix& op) const;  // op(*this)

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;  // pivot row of each basis column
};

}  // namespace nilwb
