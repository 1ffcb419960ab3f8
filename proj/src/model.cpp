#include "nilwb/model.hpp"

#include <cmath>

namespace nilwb {

GaussianRational LieComplexModel::a(int k, int i, int j) const {
  if (i == j) return 0;
  GaussianRational c = structure.at(k).coefficient(Monomial{(1u << i) | (1u << j), 0});
  return i < j ? c : -c;
}

GaussianRational LieComplexModel::b(int k, int i, int j) const {
  return structure.at(k).coefficient(Monomial{1u << i, 1u << j});
}

Form apply_derivation(const Form& f, const std::vector<Form>& images) {
  int n = f.n();
  Form out(n);
  for (const auto& [m, c] : f.terms()) {
    std::vector<int> gens;  // 0..n-1 holomorphic, n..2n-1 antiholomorphic
    for (int j = 0; j < n; ++j)
      if (m.hol & (1u << j)) gens.push_back(j);
    for (int j = 0; j < n; ++j)
      if (m.anti & (1u << j)) gens.push_back(n + j);
    for (std::size_t pos = 0; pos < gens.size(); ++pos) {
      const Form& img = images.at(gens[pos]);
      if (img.is_zero()) continue;
      Monomial pre{}, post{};
      for (std::size_t t = 0; t < gens.size(); ++t) {
        if (t == pos) continue;
        Monomial& target = t < pos ? pre : post;
        int g = gens[t];
        if (g < n) target.hol |= 1u << g;
        else target.anti |= 1u << (g - n);
      }
      GaussianRational coef = (pos & 1) ? -c : c;
      Form term = wedge(wedge(Form::monomial(n, pre, coef), img), Form::monomial(n, post));
      out += term;
    }
  }
  return out;
}

namespace {

std::vector<Form> generator_images(const LieComplexModel& model, bool holo_part) {
  // holo_part selects del (true) or delbar (false).
  int n = model.n;
  std::vector<Form> images(2 * n, Form(n));
  for (int k = 0; k < n; ++k) {
    Form two_zero = model.structure[k].component({2, 0});
    Form one_one = model.structure[k].component({1, 1});
    if (holo_part) {
      images[k] = two_zero;
      images[n + k] = one_one.conjugate();
    } else {
      images[k] = one_one;
      images[n + k] = two_zero.conjugate();
    }
  }
  return images;
}

GradedOp assemble(FormSpacePtr space, const std::vector<Form>& images) {
  GradedOp op(space, 1);
  int n = space->n();
  for (int k = 0; k < 2 * n; ++k) {
    Matrix& blk = op.block(k);
    const auto& basis = space->basis(k);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      Form img = apply_derivation(Form::monomial(n, basis[a]), images);
      for (const auto& [m, c] : img.terms()) blk(space->index(m), a) = c;
    }
  }
  return op;
}

}  // namespace

ValidationReport validate_model(const LieComplexModel& model) {
  ValidationReport report;
  int n = model.n;
  if (static_cast<int>(model.structure.size()) != n) {
    report.violations.push_back({0, "shape", "expected " + std::to_string(n) + " structure equations"});
    return report;
  }
  for (int k = 0; k < n; ++k) {
    for (const auto& [m, c] : model.structure[k].terms()) {
      if (m.degree() != 2) {
        report.violations.push_back({k + 1, "degree", "d w" + std::to_string(k + 1) + " is not a 2-form"});
        break;
      }
    }
    if (!model.structure[k].component({0, 2}).is_zero())
      report.violations.push_back({k + 1, "integrability",
                                   "d w" + std::to_string(k + 1) + " has a nonzero (0,2)-component"});
  }
  if (!report.ok()) return report;
  std::vector<Form> d_images(2 * n, Form(n));
  for (int k = 0; k < n; ++k) {
    d_images[k] = model.structure[k];
    d_images[n + k] = model.structure[k].conjugate();
  }
  for (int k = 0; k < n; ++k) {
    Form dd = apply_derivation(model.structure[k], d_images);
    if (!dd.is_zero())
      report.violations.push_back({k + 1, "d-squared", "d(d w" + std::to_string(k + 1) + ") = " + dd.to_string()});
  }
  if (model.metric) {
    const Matrix& g = *model.metric;
    if (g.rows() != static_cast<std::size_t>(n) || g.cols() != static_cast<std::size_t>(n) || !(g.adjoint() == g))
      report.violations.push_back({0, "metric", "metric Gram matrix is not an n x n Hermitian matrix"});
  }
  return report;
}

std::vector<Monomial> bidegree_basis(const LieComplexModel& model, Bidegree b) {
  return form_space(model.n)->bidegree_basis(b);
}

GradedOp::GradedOp(FormSpacePtr space, int shift) : space_(std::move(space)), shift_(shift) {
  int top = space_->top_degree();
  for (int k = 0; k <= top; ++k) blocks_.emplace_back(space_->dim(k + shift_), space_->dim(k));
}

GradedOp GradedOp::identity(FormSpacePtr space) {
  GradedOp op(space, 0);
  for (int k = 0; k <= space->top_degree(); ++k) op.blocks_[k] = Matrix::identity(space->dim(k));
  return op;
}

GradedOp GradedOp::from_blocks(FormSpacePtr space, int shift, std::vector<Matrix> blocks) {
  GradedOp op(space, shift);
  if (blocks.size() != op.blocks_.size()) throw WorkbenchError("graded operator block count mismatch");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].rows() != op.blocks_[k].rows() || blocks[k].cols() != op.blocks_[k].cols())
      throw WorkbenchError("graded operator block shape mismatch");
    op.blocks_[k] = std::move(blocks[k]);
  }
  return op;
}

GradedOp GradedOp::operator*(const GradedOp& o) const {
  GradedOp out(space_, shift_ + o.shift_);
  int top = space_->top_degree();
  for (int k = 0; k <= top; ++k) {
    int mid = k + o.shift_;
    if (mid < 0 || mid > top) continue;
    if (out.blocks_[k].rows() == 0 || out.blocks_[k].cols() == 0) continue;
    out.blocks_[k] = blocks_[mid] * o.blocks_[k];
  }
  return out;
}

GradedOp GradedOp::operator+(const GradedOp& o) const {
  if (shift_ != o.shift_) throw WorkbenchError("sum of operators with different degree shifts");
  GradedOp out = *this;
  for (std::size_t k = 0; k < blocks_.size(); ++k) out.blocks_[k] += o.blocks_[k];
  return out;
}

GradedOp GradedOp::operator-(const GradedOp& o) const {
  if (shift_ != o.shift_) throw WorkbenchError("difference of operators with different degree shifts");
  GradedOp out = *this;
  for (std::size_t k = 0; k < blocks_.size(); ++k) out.blocks_[k] -= o.blocks_[k];
  return out;
}

GradedOp GradedOp::scaled(const GaussianRational& s) const {
  GradedOp out = *this;
  for (auto& b : out.blocks_) b = b.scaled(s);
  return out;
}

GradedOp GradedOp::conj() const {
  GradedOp out(space_, shift_);
  int top = space_->top_degree();
  for (int k = 0; k <= top; ++k) {
    int t = k + shift_;
    if (t < 0 || t > top) continue;
    out.blocks_[k] = space_->conjugation(t) * blocks_[k].conjugated() * space_->conjugation(k);
  }
  return out;
}

bool GradedOp::is_zero() const {
  for (const auto& b : blocks_)
    if (!b.is_zero()) return false;
  return true;
}

double GradedOp::norm() const {
  double s = 0;
  for (const auto& b : blocks_) {
    double f = b.frobenius_norm();
    s += f * f;
  }
  return std::sqrt(s);
}

bool GradedOp::operator==(const GradedOp& o) const {
  return shift_ == o.shift_ && blocks_ == o.blocks_;
}

Matrix GradedOp::bidegree_block(Bidegree src, Bidegree tgt) const {
  if (tgt.degree() != src.degree() + shift_) throw WorkbenchError("bidegree block does not match the degree shift");
  std::size_t rs = space_->dim(tgt), cs = space_->dim(src);
  if (rs == 0 || cs == 0) return Matrix(rs, cs);
  return blocks_.at(src.degree()).block(space_->offset(tgt), space_->offset(src), rs, cs);
}

Form GradedOp::apply(const Form& f) const {
  Form out(space_->n());
  int top = space_->top_degree();
  for (int k = 0; k <= top; ++k) {
    int t = k + shift_;
    if (t < 0 || t > top) continue;
    Form part = f.degree_component(k);
    if (part.is_zero()) continue;
    out += space_->from_vector(blocks_[k] * space_->to_vector(part, k), t);
  }
  return out;
}

GradedOp graded_commutator(const GradedOp& a, const GradedOp& b) {
  bool odd = (a.shift() & 1) && (b.shift() & 1);
  GradedOp ab = a * b;
  GradedOp ba = b * a;
  return odd ? ab + ba : ab - ba;
}

GradedOp left_multiplication(FormSpacePtr space, const Form& psi) {
  int d = psi.degree();
  if (d < 0) return GradedOp(space, 0);
  return left_multiplication(space, psi, d);
}

GradedOp left_multiplication(FormSpacePtr space, const Form& psi, int d) {
  if (!psi.is_zero() && psi.degree() != d) throw WorkbenchError("form degree does not match the multiplication degree");
  GradedOp op(space, d);
  int n = space->n();
  for (int k = 0; k + d <= space->top_degree(); ++k) {
    const auto& basis = space->basis(k);
    Matrix& blk = op.block(k);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      Form img = wedge(psi, Form::monomial(n, basis[a]));
      for (const auto& [m, c] : img.terms()) blk(space->index(m), a) = c;
    }
  }
  return op;
}

DifferentialAlgebra::DifferentialAlgebra(LieComplexModel model) : model_(std::move(model)) {
  ValidationReport report = validate_model(model_);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    throw WorkbenchError("invalid model '" + model_.name + "': generator " + std::to_string(v.generator) + " (" +
                         v.constraint + "): " + v.message);
  }
  space_ = form_space(model_.n);
  partial_ = assemble(space_, generator_images(model_, true));
  partial_bar_ = assemble(space_, generator_images(model_, false));
}

GradedOp DifferentialAlgebra::d_h(const Rational& h) const { return partial_.scaled(h) + partial_bar_; }

GradedOp DifferentialAlgebra::d_minus_inv_h(const Rational& h) const {
  if (sgn(h) == 0) throw WorkbenchError("d_{-1/h} needs h != 0");
  return partial_.scaled(Rational(-1 / h)) + partial_bar_;
}

GradedOp DifferentialAlgebra::theta(const Rational& h) const {
  std::vector<Matrix> blocks;
  for (int k = 0; k <= space_->top_degree(); ++k) {
    Matrix m(space_->dim(k), space_->dim(k));
    const auto& basis = space_->basis(k);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      Rational s = 1;
      for (int j = 0; j < basis[a].p(); ++j) s *= h;
      m(a, a) = s;
    }
    blocks.push_back(std::move(m));
  }
  return GradedOp::from_blocks(space_, 0, std::move(blocks));
}

bool DifferentialAlgebra::unimodular() const {
  int top = space_->top_degree();
  return (partial_.block(top - 1) + partial_bar_.block(top - 1)).is_zero();
}

GradedOp assemble_differential(const DifferentialAlgebra& alg, DiffKind kind, const std::optional<Rational>& h) {
  auto need_h = [&]() -> const Rational& {
    if (!h) throw WorkbenchError("this differential needs a value of h");
    return *h;
  };
  switch (kind) {
    case DiffKind::Partial: return alg.partial();
    case DiffKind::PartialBar: return alg.partial_bar();
    case DiffKind::D: return alg.d();
    case DiffKind::DH: return alg.d_h(need_h());
    case DiffKind::DMinusInvH: return alg.d_minus_inv_h(need_h());
    case DiffKind::DDBar: return alg.ddbar();
  }
  throw WorkbenchError("unknown differential kind");
}

}  // namespace nilwb
