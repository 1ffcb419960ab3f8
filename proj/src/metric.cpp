#include "nilwb/metric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace nilwb {

namespace {

std::vector<int> bits(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(__builtin_ctz(mask));
    mask &= mask - 1;
  }
  return out;
}

GaussianRational minor_det(const Matrix& h, std::uint32_t rows, std::uint32_t cols) {
  std::vector<int> r = bits(rows), c = bits(cols);
  Matrix sub(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) sub(i, j) = h(r[i], c[j]);
  return determinant(sub);
}

void require_nonzero(const Rational& h) {
  if (sgn(h) == 0) throw WorkbenchError("h must be nonzero");
}

Rational power(const Rational& x, int e) {
  Rational r = 1;
  for (int j = 0; j < e; ++j) r *= x;
  return r;
}

}  // namespace

std::optional<std::size_t> first_failing_minor(const Matrix& m) {
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    GaussianRational d = determinant(m.block(0, 0, k, k));
    if (!d.is_real() || sgn(d.re()) <= 0) return k;
  }
  return std::nullopt;
}

bool is_positive_definite(const Matrix& m) {
  if (m.rows() != m.cols() || !(m.adjoint() == m)) return false;
  return !first_failing_minor(m).has_value();
}

HermitianMetric::HermitianMetric(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0) throw WorkbenchError("metric Gram must be square and nonempty");
  if (!(gram_.adjoint() == gram_)) throw WorkbenchError("metric Gram is not Hermitian");
  if (auto k = first_failing_minor(gram_))
    throw WorkbenchError("metric is not positive definite: leading principal minor " + std::to_string(*k) +
                         " is not positive");
  int n = this->n();
  FormSpacePtr sp = form_space(n);
  // <w^j, w^k> = conj(G)^{-1}
  Matrix h = inverse(gram_.conjugated());
  Matrix hbar = h.conjugated();
  for (int k = 0; k <= 2 * n; ++k) {
    const auto& basis = sp->basis(k);
    Matrix m(basis.size(), basis.size());
    for (int p = 0; p <= n; ++p) {
      Bidegree b{p, k - p};
      std::size_t d = sp->dim(b);
      if (!d) continue;
      std::size_t o = sp->offset(b);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) {
          const Monomial& ea = basis[o + a];
          const Monomial& eb = basis[o + c];
          m(o + c, o + a) = minor_det(h, ea.hol, eb.hol) * minor_det(hbar, ea.anti, eb.anti);
        }
    }
    grams_.push_back(m);
    gram_invs_.push_back(inverse(m));
  }
}

HermitianMetric HermitianMetric::identity(int n) { return HermitianMetric(Matrix::identity(n)); }

Form HermitianMetric::kahler_form() const {
  int n = this->n();
  Form w(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (gram_(j, k).is_zero()) continue;
      w += wedge(Form::generator(n, j), Form::conj_generator(n, k)).scaled(gram_(j, k) * GaussianRational::imaginary_unit());
    }
  return w;
}

HermitianMetric HermitianMetric::scaled(const Rational& lambda) const {
  if (sgn(lambda) <= 0) throw WorkbenchError("metric scale must be positive");
  return HermitianMetric(gram_.scaled(lambda));
}

Matrix HermitianMetric::gram_on(Bidegree b) const {
  FormSpacePtr sp = form_space(n());
  std::size_t d = sp->dim(b);
  if (!d) return Matrix(0, 0);
  std::size_t o = sp->offset(b);
  return grams_.at(b.degree()).block(o, o, d, d);
}

GaussianRational HermitianMetric::inner(const Form& a, const Form& b) const {
  FormSpacePtr sp = form_space(n());
  GaussianRational s;
  for (int k = 0; k <= 2 * n(); ++k) {
    Matrix x = sp->to_vector(a, k), y = sp->to_vector(b, k);
    if (x.is_zero() || y.is_zero()) continue;
    s += (y.adjoint() * grams_[k] * x)(0, 0);
  }
  return s;
}

OperatorBundle::OperatorBundle(std::shared_ptr<const DifferentialAlgebra> alg, HermitianMetric metric)
    : alg_(std::move(alg)), metric_(std::move(metric)) {
  if (metric_.n() != alg_->n()) throw WorkbenchError("metric dimension does not match the model");
  omega_ = metric_.kahler_form();
  L_ = left_multiplication(space(), omega_, 2);
  Lambda_ = adjoint(L_);
}

GradedOp OperatorBundle::adjoint(const GradedOp& a) const {
  int s = a.shift();
  GradedOp out(space(), -s);
  int top = space()->top_degree();
  for (int k = 0; k <= top; ++k) {
    int src = k + s;
    if (src < 0 || src > top) continue;
    // block of A* at source degree src: M_k^{-1} A_k^H M_src
    const Matrix& blk = a.block(k);
    if (blk.rows() == 0 || blk.cols() == 0) continue;
    out.block(src) = metric_.gram_inverse_on(k) * blk.adjoint() * metric_.gram_on(src);
  }
  return out;
}

GradedOp OperatorBundle::orthogonal_projector(const std::vector<Subspace>& per_degree) const {
  int top = space()->top_degree();
  if (static_cast<int>(per_degree.size()) != top + 1) throw WorkbenchError("projector needs one subspace per degree");
  std::vector<Matrix> blocks;
  for (int k = 0; k <= top; ++k) {
    const Matrix& b = per_degree[k].basis();
    std::size_t d = space()->dim(k);
    if (b.cols() == 0) {
      blocks.emplace_back(d, d);
      continue;
    }
    const Matrix& m = metric_.gram_on(k);
    Matrix bh = b.adjoint();
    blocks.push_back(b * inverse(bh * m * b) * bh * m);
  }
  return GradedOp::from_blocks(space(), 0, blocks);
}

GradedOp OperatorBundle::tau_h(const Rational& h) const {
  Form dw = alg_->d_h(h).apply(omega_);
  return graded_commutator(Lambda_, mult(dw, 3));
}

GradedOp OperatorBundle::laplacian_h(const Rational& h) const {
  GradedOp d = alg_->d_h(h);
  return graded_commutator(d, adjoint(d));
}

GradedOp OperatorBundle::laplacian_del() const {
  const GradedOp& d = alg_->partial();
  return graded_commutator(d, adjoint(d));
}

GradedOp OperatorBundle::laplacian_delbar() const {
  const GradedOp& d = alg_->partial_bar();
  return graded_commutator(d, adjoint(d));
}

GradedOp OperatorBundle::harmonic_projector_delbar() const {
  GradedOp lap = laplacian_delbar();
  std::vector<Subspace> kers;
  for (int k = 0; k <= space()->top_degree(); ++k) kers.push_back(Subspace::kernel(lap.block(k)));
  return orthogonal_projector(kers);
}

GradedOp OperatorBundle::green_delbar() const {
  GradedOp lap = laplacian_delbar();
  GradedOp p = harmonic_projector_delbar();
  GradedOp id = GradedOp::identity(space());
  GradedOp sum = lap + p;
  std::vector<Matrix> blocks;
  for (int k = 0; k <= space()->top_degree(); ++k) blocks.push_back(inverse(sum.block(k)));
  return GradedOp::from_blocks(space(), 0, blocks) * (id - p);
}

GradedOp OperatorBundle::pseudo_laplacian() const {
  const GradedOp& del = alg_->partial();
  GradedOp dels = adjoint(del);
  GradedOp p = harmonic_projector_delbar();
  return del * p * dels + dels * p * del + laplacian_delbar();
}

bool OperatorBundle::is_kahler() const { return alg_->d(omega_).is_zero(); }

std::string identity_name(IdentityName id) {
  switch (id) {
    case IdentityName::OBV1: return "OBV1";
    case IdentityName::OBV2: return "OBV2";
    case IdentityName::OBV3: return "OBV3";
    case IdentityName::OBV4: return "OBV4";
    case IdentityName::OBVBIS: return "OBVBIS";
    case IdentityName::RESCALE_ADJ: return "RESCALE-ADJ";
    case IdentityName::RESCALE_LAP: return "RESCALE-LAP";
    case IdentityName::RESCALE_GAMMA: return "RESCALE-GAMMA";
    case IdentityName::HCOMM_A: return "HCOMM-A";
    case IdentityName::HCOMM_B: return "HCOMM-B";
    case IdentityName::HCOMM_C: return "HCOMM-C";
    case IdentityName::HCOMM_D: return "HCOMM-D";
    case IdentityName::ROUGH_BKN: return "ROUGH-BKN";
    case IdentityName::KAHLER_ANTICOMM: return "KAHLER-ANTICOMM";
    case IdentityName::PRELIM_I: return "PRELIM-I";
    case IdentityName::PRELIM_II: return "PRELIM-II";
    case IdentityName::PRELIM_III: return "PRELIM-III";
    case IdentityName::PRELIM_IV: return "PRELIM-IV";
    case IdentityName::REFINED_BKN: return "REFINED-BKN";
    case IdentityName::LAPLACE_SUM: return "LAPLACE-SUM";
    case IdentityName::PROPORTION: return "PROPORTION";
  }
  return "unknown";
}

std::vector<IdentityName> all_identities() {
  return {IdentityName::OBV1,        IdentityName::OBV2,        IdentityName::OBV3,
          IdentityName::OBV4,        IdentityName::OBVBIS,      IdentityName::RESCALE_ADJ,
          IdentityName::RESCALE_LAP, IdentityName::RESCALE_GAMMA, IdentityName::HCOMM_A,
          IdentityName::HCOMM_B,     IdentityName::HCOMM_C,     IdentityName::HCOMM_D,
          IdentityName::ROUGH_BKN,   IdentityName::KAHLER_ANTICOMM, IdentityName::PRELIM_I,
          IdentityName::PRELIM_II,   IdentityName::PRELIM_III,  IdentityName::PRELIM_IV,
          IdentityName::REFINED_BKN, IdentityName::LAPLACE_SUM, IdentityName::PROPORTION};
}

std::optional<IdentityName> identity_from_name(const std::string& name) {
  std::string up = name;
  for (auto& c : up) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c == '_') c = '-';
  }
  for (auto id : all_identities())
    if (identity_name(id) == up) return id;
  return std::nullopt;
}

bool identity_needs_kahler(IdentityName id) {
  return id == IdentityName::KAHLER_ANTICOMM || id == IdentityName::LAPLACE_SUM || id == IdentityName::PROPORTION;
}

bool identity_is_metric_general(IdentityName id) {
  switch (id) {
    case IdentityName::HCOMM_A:
    case IdentityName::HCOMM_B:
    case IdentityName::HCOMM_C:
    case IdentityName::HCOMM_D:
    case IdentityName::ROUGH_BKN:
    case IdentityName::PRELIM_I:
    case IdentityName::PRELIM_II:
    case IdentityName::PRELIM_III:
    case IdentityName::PRELIM_IV:
    case IdentityName::REFINED_BKN: return true;
    default: return false;
  }
}

std::string IdentityReport::status() const {
  if (expect_violation) return residual_zero ? "fail" : "pass";
  if (!hypothesis_met) return "hypothesis-absent";
  return residual_zero ? "pass" : "fail";
}

Json to_json(const IdentityReport& r) {
  Json j;
  j["model"] = r.model;
  j["identity"] = r.identity;
  j["h"] = r.h.get_str();
  if (r.lambda) j["lambda"] = r.lambda->get_str();
  j["kahler_required"] = r.kahler_required;
  j["kahler"] = r.kahler;
  j["hypothesis"] = r.hypothesis;
  j["hypothesis_met"] = r.hypothesis_met;
  j["expect_violation"] = r.expect_violation;
  j["residual_zero"] = r.residual_zero;
  j["residual_norm"] = r.residual_norm;
  j["nonzero_degrees"] = r.nonzero_degrees;
  j["status"] = r.status();
  j["violations"] = r.violations;
  return j;
}

namespace {

struct Residual {
  std::vector<GradedOp> ops;
  std::vector<std::pair<Form, Form>> forms;  // compared pairs
};

void add_residual(IdentityReport& rep, const Residual& res, const FormSpacePtr& sp) {
  double sq = 0;
  std::vector<int> degrees;
  bool zero = true;
  for (const auto& op : res.ops) {
    double nn = op.norm();
    sq += nn * nn;
    for (int k = 0; k <= sp->top_degree(); ++k)
      if (!op.block(k).is_zero()) {
        zero = false;
        degrees.push_back(k);
      }
  }
  for (const auto& [a, b] : res.forms) {
    Form diff = a - b;
    if (!diff.is_zero()) {
      zero = false;
      int d = diff.degree();
      degrees.push_back(d);
      for (const auto& [m, c] : diff.terms()) {
        double v = std::abs(c.to_complex());
        sq += v * v;
      }
    }
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  rep.residual_zero = zero;
  rep.residual_norm = std::sqrt(sq);
  rep.nonzero_degrees = degrees;
}

GaussianRational I() { return GaussianRational::imaginary_unit(); }

}  // namespace

IdentityReport verify_identity(IdentityName id, const std::shared_ptr<const DifferentialAlgebra>& alg,
                               const HermitianMetric& metric, const Rational& h,
                               const std::optional<Rational>& lambda_in, bool expect_violation) {
  require_nonzero(h);
  IdentityReport rep;
  rep.model = alg->model().name;
  rep.identity = identity_name(id);
  rep.h = h;
  rep.expect_violation = expect_violation;
  OperatorBundle ops(alg, metric);
  const FormSpacePtr& sp = ops.space();
  int n = alg->n();
  rep.kahler = ops.is_kahler();
  rep.kahler_required = identity_needs_kahler(id);
  if (rep.kahler_required) {
    rep.hypothesis = "kahler";
    rep.hypothesis_met = rep.kahler;
    if (!rep.kahler) rep.violations.push_back("metric is not Kahler: identity checked for its residual only");
  }

  const Rational inv_h = 1 / h;
  const Rational h2 = h * h;
  auto adj = [&](const GradedOp& a) { return ops.adjoint(a); };
  auto comm = [](const GradedOp& a, const GradedOp& b) { return graded_commutator(a, b); };
  const GradedOp& L = ops.L();
  const GradedOp& Lam = ops.Lambda();
  Residual res;

  switch (id) {
    case IdentityName::OBV1:
      res.ops.push_back(ops.conj_d_h(h) - alg->d_h(inv_h).scaled(h));
      break;
    case IdentityName::OBV2:
      res.ops.push_back(ops.conj_d_h(-h) + alg->d_h(-inv_h).scaled(h));
      break;
    case IdentityName::OBV3:
      res.ops.push_back(alg->d_h(h) * alg->d_h(-inv_h) - alg->ddbar().scaled(Rational(h + inv_h)));
      break;
    case IdentityName::OBV4: {
      Rational c1 = (h + 1) / (h2 + 1), c2 = h * (h - 1) / (h2 + 1);
      res.ops.push_back(alg->d_h(h).scaled(c1) + alg->d_h(-inv_h).scaled(c2) - alg->d());
      break;
    }
    case IdentityName::OBVBIS:
      res.ops.push_back(ops.laplacian_h(-h).conj() - ops.laplacian_h(-inv_h).scaled(h2));
      break;
    case IdentityName::RESCALE_ADJ:
    case IdentityName::RESCALE_LAP:
    case IdentityName::RESCALE_GAMMA: {
      Rational lambda = lambda_in.value_or(Rational(2));
      if (sgn(lambda) <= 0) throw WorkbenchError("lambda must be positive");
      rep.lambda = lambda;
      OperatorBundle scaled(alg, metric.scaled(lambda));
      Rational inv_l = 1 / lambda;
      if (id == IdentityName::RESCALE_ADJ) {
        res.ops.push_back(scaled.adjoint(alg->partial_bar()) - ops.adjoint(alg->partial_bar()).scaled(inv_l));
      } else if (id == IdentityName::RESCALE_LAP) {
        res.ops.push_back(scaled.laplacian_delbar() - ops.laplacian_delbar().scaled(inv_l));
      } else {
        rep.hypothesis = "strongly-gauduchon";
        auto g1 = gamma_form(ops);
        auto g2 = gamma_form(scaled);
        rep.hypothesis_met = g1.has_value();
        if (!g1 || !g2) {
          rep.violations.push_back("metric is not strongly Gauduchon: no potential to compare");
          if (g1.has_value() != g2.has_value()) res.forms.push_back({Form(n), Form::monomial(n, Monomial{}, 1)});
        } else {
          res.forms.push_back({*g2, g1->scaled(power(lambda, n - 1))});
        }
      }
      break;
    }
    case IdentityName::HCOMM_A:
      res.ops.push_back(adj(alg->d_h(h) + ops.tau_h(h)) + comm(Lam, ops.conj_d_h(-h)).scaled(I()));
      break;
    case IdentityName::HCOMM_B:
      res.ops.push_back(adj(ops.conj_d_h(h) + ops.tau_h(h).conj()) - comm(Lam, alg->d_h(-h)).scaled(I()));
      break;
    case IdentityName::HCOMM_C:
      res.ops.push_back(alg->d_h(h) + ops.tau_h(h) - comm(adj(ops.conj_d_h(-h)), L).scaled(I()));
      break;
    case IdentityName::HCOMM_D:
      res.ops.push_back(ops.conj_d_h(h) + ops.tau_h(h).conj() + comm(adj(alg->d_h(-h)), L).scaled(I()));
      break;
    case IdentityName::ROUGH_BKN: {
      GradedOp dh = alg->d_h(h), cdm = ops.conj_d_h(-h);
      GradedOp ctm = ops.tau_h(-h).conj();
      res.ops.push_back(ops.laplacian_h(h) - ops.laplacian_h(-h).conj() - comm(cdm, adj(ctm)) +
                        comm(dh, adj(ops.tau_h(h))));
      break;
    }
    case IdentityName::KAHLER_ANTICOMM: {
      GradedOp dh = alg->d_h(h), dm = alg->d_h(-inv_h);
      res.ops.push_back(comm(dh, adj(dm)));
      res.ops.push_back(comm(dm, adj(dh)));
      break;
    }
    case IdentityName::PRELIM_I: {
      Form dw = alg->d_h(h).apply(ops.omega());
      res.ops.push_back(comm(L, ops.tau_h(h)) - ops.mult(dw, 3).scaled(3));
      break;
    }
    case IdentityName::PRELIM_II:
      res.ops.push_back(comm(Lam, ops.tau_h(h)) - adj(ops.tau_h(-h).conj()).scaled(GaussianRational(0, 2)));
      break;
    case IdentityName::PRELIM_III: {
      GradedOp dh = alg->d_h(h);
      res.ops.push_back(comm(dh, adj(ops.conj_d_h(-h))) + comm(dh, adj(ops.tau_h(-h).conj())));
      break;
    }
    case IdentityName::PRELIM_IV: {
      GradedOp dh = alg->d_h(h), dhs = adj(dh);
      GradedOp th = ops.tau_h(h), ths = adj(th);
      GradedOp cdm = ops.conj_d_h(-h), ctm = ops.tau_h(-h).conj();
      Form dw = dh.apply(ops.omega());
      GradedOp mdw = ops.mult(dw, 3);
      Form four = cdm.apply(dw);
      GradedOp s = comm(Lam, comm(Lam, ops.mult(four, 4))).scaled(GaussianRational(0, Rational(1, 2))) -
                   comm(mdw, adj(mdw));
      res.ops.push_back(comm(dh, dhs) + comm(dh, ths) - comm(cdm, adj(ctm)) - comm(dh + th, dhs + ths) - s);
      break;
    }
    case IdentityName::REFINED_BKN: {
      GradedOp dh = alg->d_h(h);
      GradedOp cdm = ops.conj_d_h(-h), ctm = ops.tau_h(-h).conj();
      Form cw = cdm.apply(ops.omega());
      GradedOp mcw = ops.mult(cw, 3);
      Form four = dh.apply(cw);
      GradedOp t = comm(Lam, comm(Lam, ops.mult(four, 4))).scaled(GaussianRational(0, Rational(-1, 2))) -
                   comm(mcw, adj(mcw));
      res.ops.push_back(ops.laplacian_h(h) - comm(cdm + ctm, adj(cdm) + adj(ctm)) - t);
      break;
    }
    case IdentityName::LAPLACE_SUM: {
      Rational den = (h2 + 1) * (h2 + 1);
      Rational c1 = (h + 1) * (h + 1) / den, c2 = (h - 1) * (h - 1) / den * h2;
      res.ops.push_back(ops.laplacian() - ops.laplacian_h(h).scaled(c1) - ops.laplacian_h(-inv_h).scaled(c2));
      break;
    }
    case IdentityName::PROPORTION: {
      GradedOp lap = ops.laplacian();
      Rational c = 2 / (h2 + 1);
      res.ops.push_back(lap - ops.laplacian_h(h).scaled(c));
      res.ops.push_back(lap - ops.laplacian_h(-inv_h).scaled(Rational(c * h2)));
      res.ops.push_back(lap - ops.laplacian_h(-h).conj().scaled(c));
      break;
    }
  }
  add_residual(rep, res, sp);
  if (rep.falsified())
    rep.violations.push_back(expect_violation ? "expected a nonzero residual but the identity holds exactly"
                                              : "nonzero residual");
  return rep;
}

std::optional<Form> minimal_norm_solution(const GradedOp& op, Bidegree src, const Form& b,
                                          const HermitianMetric& metric) {
  FormSpacePtr sp = op.space();
  int k = src.degree();
  int t = k + op.shift();
  std::size_t ds = sp->dim(src);
  if (t < 0 || t > sp->top_degree()) throw WorkbenchError("target degree out of range");
  Matrix rhs = sp->to_vector(b, t);
  if (!(sp->from_vector(rhs, t) == b)) throw WorkbenchError("right-hand side has the wrong degree");
  if (ds == 0) {
    if (rhs.is_zero()) return Form(sp->n());
    return std::nullopt;
  }
  Matrix a = op.block(k).block(0, sp->offset(src), sp->dim(t), ds);
  auto x = min_norm_solve(a, rhs, metric.gram_on(src), metric.gram_on(t));
  if (!x) return std::nullopt;
  return sp->from_vector(*x, src);
}

Form neumann_solution_delbar(const OperatorBundle& ops, const Form& b) {
  return ops.green_delbar().apply(ops.adjoint(ops.algebra().partial_bar()).apply(b));
}

std::optional<Form> sg_potential(const OperatorBundle& ops) {
  const DifferentialAlgebra& alg = ops.algebra();
  int n = alg.n();
  if (n < 2) throw WorkbenchError("strongly Gauduchon potentials need n >= 2");
  Form wn1 = wedge_power(ops.omega(), n - 1);
  Form rhs = alg.partial_bar(wn1).scaled(-1);
  return minimal_norm_solution(alg.partial(), Bidegree{n - 2, n}, rhs, ops.metric());
}

bool is_strongly_gauduchon(const DifferentialAlgebra& alg, const HermitianMetric& metric) {
  int n = alg.n();
  if (n < 2) return true;
  Form wn1 = wedge_power(metric.kahler_form(), n - 1);
  Form rhs = alg.partial_bar(wn1);
  return minimal_norm_solution(alg.partial(), Bidegree{n - 2, n}, rhs, metric).has_value();
}

std::optional<Form> gamma_form(const OperatorBundle& ops) {
  auto g = sg_potential(ops);
  if (!g) return std::nullopt;
  return g->conjugate() + wedge_power(ops.omega(), ops.algebra().n() - 1) + *g;
}

Subspace pseudo_harmonic_space(const OperatorBundle& ops, Bidegree b) {
  GradedOp pl = ops.pseudo_laplacian();
  std::size_t d = ops.space()->dim(b);
  if (!d) return Subspace(0);
  return Subspace::kernel(pl.bidegree_block(b, b));
}

Form harmonic_e2_representative(const CohomologyEngine& engine, const OperatorBundle& ops, Bidegree b,
                                 const Matrix& coords) {
  const FormSpace& sp = *ops.space();
  const CohomologyGroup& g = engine.page(2).groups.at(b);
  if (coords.rows() != g.dimension() || coords.cols() != 1)
    throw WorkbenchError("E_2 class coordinates have the wrong size");
  Subspace harm = pseudo_harmonic_space(ops, b);
  if (harm.dim() != g.dimension())
    throw WorkbenchError("falsified: dim ker of the pseudo-Laplacian (" + std::to_string(harm.dim()) +
                         ") differs from e_2 (" + std::to_string(g.dimension()) + ")");
  Matrix x = g.representatives() * coords;
  if (harm.dim() == 0) return Form(sp.n());
  Matrix sys = Matrix::hstack(harm.basis(), g.denominator().basis().scaled(-1));
  auto sol = solve(sys, x);
  if (!sol) throw WorkbenchError("falsified: class has no pseudo-harmonic representative");
  Matrix rep = harm.basis() * sol->block(0, 0, harm.dim(), 1);
  return sp.from_vector(rep, b);
}

Spectrum laplacian_spectrum(const OperatorBundle& ops, const Rational& h, int k) {
  require_nonzero(h);
  const FormSpace& sp = *ops.space();
  if (k < 0 || k > sp.top_degree()) throw WorkbenchError("degree out of range");
  Spectrum out;
  std::size_t d = sp.dim(k);
  Matrix lap = ops.laplacian_h(h).block(k);
  out.zero_cluster = d - rank(lap);
  const Matrix& m = ops.metric().gram_on(k);
  Matrix herm = m * lap;
  Eigen::MatrixXcd a(d, d), b(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      a(i, j) = herm(i, j).to_complex();
      b(i, j) = m(i, j).to_complex();
    }
  a = (a + a.adjoint()) / 2.0;
  b = (b + b.adjoint()) / 2.0;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, b, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.eigenvalues.push_back(es.eigenvalues()(i));
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  if (out.zero_cluster < out.eigenvalues.size()) out.smallest_positive = out.eigenvalues[out.zero_cluster];
  return out;
}

}  // namespace nilwb
