#include "nilwb/cohomology.hpp"

namespace nilwb {

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::DeRham: return "deRham";
    case Theory::DolbeaultBar: return "Dolbeault-delbar";
    case Theory::DolbeaultPartial: return "Dolbeault-del";
    case Theory::BottChern: return "BottChern";
    case Theory::Aeppli: return "Aeppli";
    case Theory::DH: return "d_h";
    case Theory::HBC: return "hBC";
    case Theory::HA: return "hA";
  }
  return "unknown";
}

bool theory_is_bigraded(Theory t) {
  return t == Theory::DolbeaultBar || t == Theory::DolbeaultPartial || t == Theory::BottChern || t == Theory::Aeppli;
}

bool theory_needs_h(Theory t) { return t == Theory::DH || t == Theory::HBC || t == Theory::HA; }

CohomologyGroup::CohomologyGroup(Subspace numerator, Subspace denominator)
    : numerator_(std::move(numerator)), denominator_(denominator.intersect(numerator_)) {
  std::size_t amb = numerator_.ambient();
  Matrix chosen(amb, 0);
  Subspace acc = denominator_;
  const Matrix& nb = numerator_.basis();
  for (std::size_t j = 0; j < nb.cols(); ++j) {
    Matrix v = nb.column(j);
    if (acc.contains(v)) continue;
    chosen = Matrix::hstack(chosen, v);
    acc = acc + Subspace::span(v);
  }
  reps_ = chosen;
  Matrix joint = Matrix::hstack(reps_, denominator_.basis());
  if (joint.cols() > 0) {
    Matrix jh = joint.adjoint();
    joint_inverse_ = inverse(jh * joint) * jh;
  } else {
    joint_inverse_ = Matrix(0, amb);
  }
}

Matrix CohomologyGroup::coordinates(const Matrix& vec) const {
  if (!numerator_.contains(vec)) throw WorkbenchError("vector does not represent a class");
  Matrix full = joint_inverse_ * vec;
  return full.block(0, 0, dimension(), 1);
}

Matrix CohomologyGroup::coordinates_of_columns(const Matrix& cols) const {
  Matrix out(dimension(), cols.cols());
  for (std::size_t j = 0; j < cols.cols(); ++j) out.set_block(0, j, coordinates(cols.column(j)));
  return out;
}

CohomologyGroup subquotient(const Subspace& numerator, const Subspace& denominator) {
  return CohomologyGroup(numerator, denominator);
}

std::size_t SpectralPage::dim(Bidegree b) const {
  auto it = groups.find(b);
  return it == groups.end() ? 0 : it->second.dimension();
}

Json to_json(const DimensionReport& r) {
  Json j;
  j["model"] = r.model;
  j["theory"] = r.theory;
  if (r.h) j["h"] = r.h->get_str();
  Json dims = Json::object();
  for (const auto& [k, v] : r.dimension) dims[k] = std::to_string(v);
  j["dimension"] = dims;
  for (const auto& [k, v] : r.dimension) j[k] = std::to_string(v);
  j["violations"] = Json::array();
  return j;
}

Matrix realify(const Matrix& a) {
  Matrix out(2 * a.rows(), 2 * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& c = a(i, j);
      if (c.is_zero()) continue;
      out(i, j) = c.re();
      out(i, a.cols() + j) = GaussianRational(-c.im());
      out(a.rows() + i, j) = c.im();
      out(a.rows() + i, a.cols() + j) = c.re();
    }
  return out;
}

Matrix realify_vector(const Matrix& v) {
  Matrix out(2 * v.rows(), 1);
  for (std::size_t i = 0; i < v.rows(); ++i) {
    out(i, 0) = v(i, 0).re();
    out(v.rows() + i, 0) = v(i, 0).im();
  }
  return out;
}

Matrix complexify_vector(const Matrix& v) {
  std::size_t n = v.rows() / 2;
  Matrix out(n, 1);
  for (std::size_t i = 0; i < n; ++i) out(i, 0) = GaussianRational(v(i, 0).re(), v(n + i, 0).re());
  return out;
}

namespace {

Matrix real_basis_of(const FormSpace& space, int k, std::size_t begin, std::size_t count) {
  const auto& basis = space.basis(k);
  const Matrix& conj = space.conjugation(k);
  std::vector<Matrix> cols;
  for (std::size_t a = begin; a < begin + count; ++a) {
    const Monomial& m = basis[a];
    std::size_t b = space.index(Monomial{m.anti, m.hol});
    GaussianRational s = conj(b, a);
    if (b == a) {
      Matrix v(basis.size(), 1);
      v(a, 0) = s == GaussianRational(1) ? GaussianRational(1) : GaussianRational::imaginary_unit();
      cols.push_back(v);
    } else if (b > a) {
      Matrix v(basis.size(), 1), w(basis.size(), 1);
      v(a, 0) = 1;
      v(b, 0) = s;
      w(a, 0) = GaussianRational::imaginary_unit();
      w(b, 0) = -(s * GaussianRational::imaginary_unit());
      cols.push_back(v);
      cols.push_back(w);
    } else if (b < begin || b >= begin + count) {
      throw WorkbenchError("real basis requested on a range that is not conjugation-stable");
    }
  }
  Matrix out(basis.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out.set_block(0, j, cols[j]);
  return out;
}

}  // namespace

Matrix real_form_basis(const FormSpace& space, int k) { return real_basis_of(space, k, 0, space.dim(k)); }

Matrix real_form_basis(const FormSpace& space, Bidegree b) {
  if (b.p != b.q) throw WorkbenchError("real forms of pure type need p = q");
  Matrix full = real_basis_of(space, b.degree(), space.offset(b), space.dim(b));
  return full.block(space.offset(b), 0, space.dim(b), full.cols());
}

CohomologyEngine::CohomologyEngine(std::shared_ptr<const DifferentialAlgebra> alg) : alg_(std::move(alg)) {}

CohomologyGroup CohomologyEngine::cohomology(Theory theory, int k, const std::optional<Rational>& h) const {
  const FormSpace& sp = *alg_->space();
  if (theory_is_bigraded(theory)) throw WorkbenchError("bigraded theory needs a bidegree");
  if (k < 0 || k > sp.top_degree()) return CohomologyGroup(Subspace(0), Subspace(0));
  std::size_t dim = sp.dim(k);
  auto image_into = [&](const GradedOp& op) {
    if (k == 0) return Subspace(dim);
    return Subspace::image(op.block(k - 1));
  };
  if (theory == Theory::DeRham) {
    GradedOp d = alg_->d();
    return subquotient(Subspace::kernel(d.block(k)), image_into(d));
  }
  if (!h || sgn(*h) == 0) throw WorkbenchError("h must be a nonzero rational");
  GradedOp dh = alg_->d_h(*h);
  if (theory == Theory::DH) return subquotient(Subspace::kernel(dh.block(k)), image_into(dh));
  GradedOp dm = alg_->d_minus_inv_h(*h);
  GradedOp prod = dh * dm;
  if (theory == Theory::HBC) {
    Subspace num = Subspace::kernel(dh.block(k)).intersect(Subspace::kernel(dm.block(k)));
    Subspace den = k >= 2 ? Subspace::image(prod.block(k - 2)) : Subspace(dim);
    return subquotient(num, den);
  }
  if (theory == Theory::HA) {
    Subspace num = Subspace::kernel(prod.block(k));
    return subquotient(num, image_into(dh) + image_into(dm));
  }
  throw WorkbenchError("unsupported theory for total degree");
}

CohomologyGroup CohomologyEngine::cohomology(Theory theory, Bidegree b) const {
  if (!theory_is_bigraded(theory)) throw WorkbenchError("theory is graded by total degree");
  const FormSpace& sp = *alg_->space();
  std::size_t dim = sp.dim(b);
  const GradedOp& del = alg_->partial();
  const GradedOp& dbar = alg_->partial_bar();
  auto image = [&](const GradedOp& op, Bidegree src) {
    if (sp.dim(src) == 0) return Subspace(dim);
    return Subspace::image(op.bidegree_block(src, b));
  };
  auto kernel = [&](const GradedOp& op, Bidegree tgt) {
    return Subspace::kernel(op.bidegree_block(b, tgt));
  };
  Bidegree p_up{b.p + 1, b.q}, q_up{b.p, b.q + 1}, p_dn{b.p - 1, b.q}, q_dn{b.p, b.q - 1};
  switch (theory) {
    case Theory::DolbeaultBar: return subquotient(kernel(dbar, q_up), image(dbar, q_dn));
    case Theory::DolbeaultPartial: return subquotient(kernel(del, p_up), image(del, p_dn));
    case Theory::BottChern: {
      Bidegree src{b.p - 1, b.q - 1};
      Subspace den = sp.dim(src) ? Subspace::image(alg_->ddbar().bidegree_block(src, b)) : Subspace(dim);
      return subquotient(kernel(del, p_up).intersect(kernel(dbar, q_up)), den);
    }
    case Theory::Aeppli: {
      Bidegree tgt{b.p + 1, b.q + 1};
      Subspace num = Subspace::kernel(alg_->ddbar().bidegree_block(b, tgt));
      return subquotient(num, image(del, p_dn) + image(dbar, q_dn));
    }
    default: break;
  }
  throw WorkbenchError("unsupported bigraded theory");
}

DimensionReport CohomologyEngine::dimension_report(Theory theory, const std::optional<Rational>& h) const {
  DimensionReport r;
  r.model = alg_->model().name;
  r.theory = theory_name(theory);
  r.h = h;
  int n = alg_->n();
  if (theory_is_bigraded(theory)) {
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q)
        r.dimension["h" + std::to_string(p) + "," + std::to_string(q)] = cohomology(theory, Bidegree{p, q}).dimension();
  } else {
    std::string prefix = theory == Theory::DeRham ? "b" : "h";
    for (int k = 0; k <= 2 * n; ++k) r.dimension[prefix + std::to_string(k)] = cohomology(theory, k, h).dimension();
  }
  return r;
}

namespace {

struct ZigzagSystem {
  Matrix equations;
  std::vector<Bidegree> slots;
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
};

// Variables x_0..x_{len-1}, x_i in A^{start.p+i, start.q-i};
// delbar x_0 = 0 and del x_{i-1} = delbar x_i.
ZigzagSystem zigzag_system(const DifferentialAlgebra& alg, Bidegree start, int len) {
  const FormSpace& sp = *alg.space();
  ZigzagSystem z;
  for (int i = 0; i < len; ++i) {
    Bidegree s{start.p + i, start.q - i};
    z.slots.push_back(s);
    z.offsets.push_back(z.total);
    z.total += sp.dim(s);
  }
  std::vector<Matrix> rows;
  for (int i = 0; i < len; ++i) {
    Bidegree tgt{start.p + i, start.q - i + 1};
    std::size_t td = sp.dim(tgt);
    if (td == 0) continue;
    Matrix row(td, z.total);
    if (sp.dim(z.slots[i]))
      row.set_block(0, z.offsets[i], alg.partial_bar().bidegree_block(z.slots[i], tgt).scaled(-1));
    if (i > 0 && sp.dim(z.slots[i - 1]))
      row.set_block(0, z.offsets[i - 1], alg.partial().bidegree_block(z.slots[i - 1], tgt));
    rows.push_back(row);
  }
  Matrix eq(0, z.total);
  for (const auto& r : rows) eq = Matrix::vstack(eq, r);
  z.equations = eq;
  return z;
}

}  // namespace

Subspace CohomologyEngine::zigzag_heads(Bidegree b, int length) const {
  const FormSpace& sp = *alg_->space();
  ZigzagSystem z = zigzag_system(*alg_, b, length);
  Matrix k = kernel_basis(z.equations);
  return Subspace::span(k.block(0, 0, sp.dim(b), k.cols()));
}

Subspace CohomologyEngine::zigzag_tails(Bidegree b, int length) const {
  const FormSpace& sp = *alg_->space();
  Bidegree start{b.p - length + 1, b.q + length - 1};
  ZigzagSystem z = zigzag_system(*alg_, start, length);
  Matrix k = kernel_basis(z.equations);
  return Subspace::span(k.block(z.offsets.back(), 0, sp.dim(b), k.cols()));
}

std::optional<std::vector<Matrix>> CohomologyEngine::zigzag_from(const Matrix& x0, Bidegree b, int length) const {
  const FormSpace& sp = *alg_->space();
  ZigzagSystem z = zigzag_system(*alg_, b, length);
  std::size_t d0 = sp.dim(b);
  Matrix a = z.equations.block(0, d0, z.equations.rows(), z.total - d0);
  Matrix rhs = (z.equations.block(0, 0, z.equations.rows(), d0) * x0).scaled(-1);
  std::vector<Matrix> out{x0};
  if (length == 1) {
    if (!rhs.is_zero()) return std::nullopt;
    return out;
  }
  auto y = min_norm_solve(a, rhs);
  if (!y) return std::nullopt;
  for (int i = 1; i < length; ++i)
    out.push_back(y->block(z.offsets[i] - d0, 0, sp.dim(z.slots[i]), 1));
  return out;
}

void CohomologyEngine::compute_pages() const {
  if (!pages_.empty()) return;
  const FormSpace& sp = *alg_->space();
  int n = alg_->n();
  int r_max = n + 1;
  for (int r = 1; r <= r_max; ++r) {
    SpectralPage page;
    page.r = r;
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        Bidegree b{p, q};
        Subspace z = zigzag_heads(b, r);
        Bidegree src{p, q - 1};
        Subspace bd = sp.dim(src) ? Subspace::image(alg_->partial_bar().bidegree_block(src, b)) : Subspace(sp.dim(b));
        if (r >= 2 && sp.dim(Bidegree{p - 1, q})) {
          Subspace tails = zigzag_tails(Bidegree{p - 1, q}, r - 1);
          bd = bd + tails.mapped(alg_->partial().bidegree_block(Bidegree{p - 1, q}, b));
        }
        page.cycles.emplace(b, z);
        page.boundaries.emplace(b, bd);
        page.groups.emplace(b, subquotient(z, bd));
      }
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        Bidegree b{p, q};
        Bidegree tgt{p + r, q - r + 1};
        const CohomologyGroup& src_group = page.groups.at(b);
        bool tgt_valid = tgt.p <= n && tgt.q >= 0;
        std::size_t rows = tgt_valid ? page.groups.at(tgt).dimension() : 0;
        Matrix dr(rows, src_group.dimension());
        if (rows) {
          Bidegree last{p + r - 1, q - r + 1};
          for (std::size_t j = 0; j < src_group.dimension(); ++j) {
            auto zz = zigzag_from(src_group.representatives().column(j), b, r);
            if (!zz) throw WorkbenchError("internal: representative does not extend to a zigzag");
            Matrix image = alg_->partial().bidegree_block(last, tgt) * zz->back();
            dr.set_block(0, j, page.groups.at(tgt).coordinates(image));
          }
        }
        page.differential.emplace(b, dr);
      }
    pages_.push_back(std::move(page));
  }
}

const std::vector<SpectralPage>& CohomologyEngine::frolicher_pages() const {
  compute_pages();
  return pages_;
}

const SpectralPage& CohomologyEngine::page(int r) const {
  compute_pages();
  if (r < 1) throw WorkbenchError("pages start at r = 1");
  if (r > static_cast<int>(pages_.size())) return pages_.back();
  return pages_[r - 1];
}

int CohomologyEngine::degeneration_page() const {
  compute_pages();
  const SpectralPage& last = pages_.back();
  for (const auto& pg : pages_) {
    bool same = true;
    for (const auto& [b, g] : pg.groups)
      if (g.dimension() != last.dim(b)) same = false;
    if (same) return pg.r;
  }
  return last.r;
}

bool CohomologyEngine::e1_degenerate() const { return degeneration_page() <= 1; }
bool CohomologyEngine::e2_degenerate() const { return degeneration_page() <= 2; }

bool CohomologyEngine::is_e2_representative(const Form& alpha, Bidegree b) const {
  return page(2).cycles.at(b).contains(alg_->space()->to_vector(alpha, b));
}

Matrix CohomologyEngine::d2_of(const Form& alpha, Bidegree b) const {
  const FormSpace& sp = *alg_->space();
  Matrix x0 = sp.to_vector(alpha, b);
  if (!is_e2_representative(alpha, b)) throw WorkbenchError("form is not an E_2 representative");
  Bidegree tgt{b.p + 2, b.q - 1};
  if (tgt.p > n() || tgt.q < 0) return Matrix(0, 1);
  auto zz = zigzag_from(x0, b, 2);
  Matrix img = alg_->partial().bidegree_block(Bidegree{b.p + 1, b.q - 1}, tgt) * zz->back();
  return page(2).groups.at(tgt).coordinates(img);
}

E2Vanishing CohomologyEngine::e2_class_is_zero(const Form& alpha, Bidegree b) const {
  const FormSpace& sp = *alg_->space();
  if (!is_e2_representative(alpha, b)) throw WorkbenchError("form is not E_2-closed");
  E2Vanishing out;
  out.u = Form(n());
  out.v = Form(n());
  Matrix x = sp.to_vector(alpha, b);
  Bidegree ub{b.p - 1, b.q}, vb{b.p, b.q - 1};
  Matrix ker_u = sp.dim(ub) ? kernel_basis(alg_->partial_bar().bidegree_block(ub, Bidegree{b.p - 1, b.q + 1}))
                            : Matrix(0, 0);
  Matrix du = sp.dim(ub) ? alg_->partial().bidegree_block(ub, b) * ker_u : Matrix(sp.dim(b), 0);
  Matrix dv = sp.dim(vb) ? alg_->partial_bar().bidegree_block(vb, b) : Matrix(sp.dim(b), 0);
  auto sol = min_norm_solve(Matrix::hstack(du, dv), x);
  if (!sol || !((Matrix::hstack(du, dv) * *sol) == x)) return out;
  out.zero = true;
  if (du.cols()) out.u = sp.from_vector(ker_u * sol->block(0, 0, du.cols(), 1), ub);
  if (dv.cols()) out.v = sp.from_vector(sol->block(du.cols(), 0, dv.cols(), 1), vb);
  return out;
}

Matrix CohomologyEngine::T_of(const Form& closed) const {
  const FormSpace& sp = *alg_->space();
  int n = this->n();
  if (n < 2) throw WorkbenchError("the map T needs n >= 2");
  int k = 2 * n - 2;
  if (!alg_->d(closed.degree_component(k)).is_zero()) throw WorkbenchError("T needs a d-closed form");
  Bidegree b{n - 2, n};
  Matrix x = sp.to_vector(closed, b);
  return page(2).groups.at(b).coordinates(x);
}

Matrix CohomologyEngine::map_T() const {
  const FormSpace& sp = *alg_->space();
  int k = 2 * n() - 2;
  CohomologyGroup dr = cohomology(Theory::DeRham, k);
  Bidegree b{n() - 2, n()};
  Matrix out(page(2).dim(b), dr.dimension());
  for (std::size_t j = 0; j < dr.dimension(); ++j)
    out.set_block(0, j, T_of(sp.from_vector(dr.representatives().column(j), k)));
  return out;
}

std::size_t CohomologyEngine::rank_T() const { return rank(map_T()); }

Subspace CohomologyEngine::real_e2_space() const {
  const FormSpace& sp = *alg_->space();
  int n = this->n();
  Bidegree a{n - 2, n}, w{n - 1, n - 1}, t{n - 1, n};
  Matrix rb = real_form_basis(sp, w);
  Matrix del = alg_->partial().bidegree_block(a, t);
  Matrix dbar_r = alg_->partial_bar().bidegree_block(w, t) * rb;
  Matrix rd = realify(del);
  Matrix rr = realify(dbar_r).block(0, 0, 2 * sp.dim(t), rb.cols());
  Matrix k = kernel_basis(Matrix::hstack(rd, rr));
  const CohomologyGroup& e2 = page(2).groups.at(a);
  Matrix cols(2 * e2.dimension(), k.cols());
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Matrix alpha = complexify_vector(k.block(0, j, 2 * sp.dim(a), 1));
    cols.set_block(0, j, realify_vector(e2.coordinates(alpha)));
  }
  return Subspace::span(cols);
}

Subspace CohomologyEngine::real_T_image() const {
  const FormSpace& sp = *alg_->space();
  int k = 2 * n() - 2;
  Matrix rb = real_form_basis(sp, k);
  Matrix dr = realify(alg_->d().block(k) * rb).block(0, 0, 2 * sp.dim(k + 1), rb.cols());
  Matrix ker = kernel_basis(dr);
  Bidegree a{n() - 2, n()};
  Matrix cols(2 * page(2).dim(a), ker.cols());
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    Matrix form = rb * ker.column(j);
    cols.set_block(0, j, realify_vector(T_of(sp.from_vector(form, k))));
  }
  return Subspace::span(cols);
}

GaussianRational CohomologyEngine::integrate(const Form& top_form) const {
  int n = this->n();
  GaussianRational c = top_form.coefficient(alg_->space()->top());
  // volume sign i^n (-1)^{n(n-1)/2}
  GaussianRational vol = 1;
  for (int j = 0; j < n; ++j) vol *= GaussianRational::imaginary_unit();
  if ((n * (n - 1) / 2) & 1) vol = -vol;
  return c / vol;
}

Matrix CohomologyEngine::duality_pairing(Bidegree b) const {
  const FormSpace& sp = *alg_->space();
  Bidegree dual{n() - b.p, n() - b.q};
  const CohomologyGroup& g1 = page(2).groups.at(b);
  const CohomologyGroup& g2 = page(2).groups.at(dual);
  Matrix out(g1.dimension(), g2.dimension());
  for (std::size_t i = 0; i < g1.dimension(); ++i) {
    Form a = sp.from_vector(g1.representatives().column(i), b);
    for (std::size_t j = 0; j < g2.dimension(); ++j) {
      Form c = sp.from_vector(g2.representatives().column(j), dual);
      out(i, j) = integrate(wedge(a, c));
    }
  }
  return out;
}

}  // namespace nilwb
