#include "nilwb/cones.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <cmath>
#include <random>

namespace nilwb {

namespace {

using CMat = Eigen::MatrixXcd;

GaussianRational I() { return GaussianRational::imaginary_unit(); }

GaussianRational volume_sign(int n) {
  GaussianRational v = 1;
  for (int j = 0; j < n; ++j) v *= I();
  if ((n * (n - 1) / 2) & 1) v = -v;
  return v;
}

CMat to_eigen(const Matrix& m) {
  CMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

Form restrict_check(const Form& f, Bidegree b, const std::string& what) {
  if (!(f.component(b) == f)) throw WorkbenchError(what + " must have bidegree (" + std::to_string(b.p) + "," +
                                                   std::to_string(b.q) + ")");
  return f;
}

// Columns rb * c over all rational c with realify(a * rb) c = 0.
Matrix real_kernel_forms(const Matrix& a, const Matrix& rb) {
  std::size_t r = rb.cols();
  if (r == 0) return rb;
  if (a.rows() == 0) return rb;
  Matrix ra = realify(a * rb).block(0, 0, 2 * a.rows(), r);
  return rb * kernel_basis(ra);
}

Matrix test_matrix(const Form& f, PositivityKind kind) {
  return kind == PositivityKind::OneOne ? one_one_coefficients(f) : n_minus_one_test_matrix(f);
}

struct Ascent {
  std::vector<double> x;
  double min_eig = -1e300;
  int restarts_used = 0;
};

// Maximizes the least eigenvalue of sum x_i Q_i over the unit sphere (x_0 >= 0 when anchored).
// `accept` gets each restart's best point and returns true to stop.
template <class Accept>
Ascent ascend(const std::vector<CMat>& q, bool anchored, const std::vector<double>& start, const SolverOptions& opt,
              Accept accept) {
  std::size_t d = q.size();
  Ascent best;
  if (d == 0) return best;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto project = [&](std::vector<double>& x) {
    if (anchored && x[0] < 0) x[0] = 0;
    double s = 0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    if (s == 0) {
      x.assign(d, 0);
      x[0] = 1;
      return;
    }
    for (double& v : x) v /= s;
  };
  auto evaluate = [&](const std::vector<double>& x, Eigen::VectorXcd* vec) {
    CMat a = CMat::Zero(q[0].rows(), q[0].cols());
    for (std::size_t i = 0; i < d; ++i) a += x[i] * q[i];
    Eigen::SelfAdjointEigenSolver<CMat> es(a);
    if (vec) *vec = es.eigenvectors().col(0);
    return es.eigenvalues()(0);
  };
  for (int rs = 0; rs < opt.restarts; ++rs) {
    std::vector<double> x(d);
    if (rs == 0 && start.size() == d) {
      x = start;
    } else {
      for (double& v : x) v = normal(rng);
    }
    project(x);
    Eigen::VectorXcd v;
    double lam = evaluate(x, &v);
    double step = 1.0;
    for (int it = 0; it < opt.iterations && step > 1e-14; ++it) {
      std::vector<double> g(d);
      double gx = 0;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = (v.adjoint() * q[i] * v)(0, 0).real();
        gx += g[i] * x[i];
      }
      double gn = 0;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] -= gx * x[i];
        gn += g[i] * g[i];
      }
      gn = std::sqrt(gn);
      if (gn < 1e-15) break;
      while (step > 1e-14) {
        std::vector<double> y(d);
        for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + step * g[i] / gn;
        project(y);
        Eigen::VectorXcd w;
        double ly = evaluate(y, &w);
        if (ly > lam) {
          x = y;
          lam = ly;
          v = w;
          step *= 1.5;
          break;
        }
        step /= 2;
      }
    }
    best.restarts_used = rs + 1;
    if (lam > best.min_eig) {
      best.min_eig = lam;
      best.x = x;
    }
    if (lam > 0 && accept(x)) {
      best.x = x;
      best.min_eig = lam;
      return best;
    }
  }
  return best;
}

double max_abs_coefficient(const Form& f) {
  double m = 0;
  for (const auto& [mono, c] : f.terms()) m = std::max(m, std::abs(c.to_complex()));
  return m;
}

// Least-squares real coordinates of `target` in the span of the real-coefficient columns.
std::vector<double> real_coordinates(const Matrix& cols, const Matrix& target) {
  std::size_t r = cols.cols();
  Eigen::MatrixXd a(2 * cols.rows(), r);
  Eigen::VectorXd b(2 * cols.rows());
  for (std::size_t i = 0; i < cols.rows(); ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      auto c = cols(i, j).to_complex();
      a(i, j) = c.real();
      a(cols.rows() + i, j) = c.imag();
    }
    auto t = target(i, 0).to_complex();
    b(i) = t.real();
    b(cols.rows() + i) = t.imag();
  }
  Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  return std::vector<double>(x.data(), x.data() + r);
}

// Projection onto Im delbar in bidegree (n-1,n) orthogonal for the metric gamma.
Matrix project_im_delbar(const DifferentialAlgebra& alg, const HermitianMetric& gamma, const Matrix& v) {
  int n = alg.n();
  Bidegree src{n - 1, n - 1}, tgt{n - 1, n};
  Matrix b = column_space_basis(alg.partial_bar().bidegree_block(src, tgt));
  if (b.cols() == 0) return Matrix(v.rows(), 1);
  Matrix m = gamma.gram_on(tgt);
  Matrix bh = b.adjoint();
  return b * (inverse(bh * m * b) * (bh * m * v));
}

}  // namespace

Matrix one_one_coefficients(const Form& psi) {
  int n = psi.n();
  restrict_check(psi, {1, 1}, "form");
  Matrix c(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      c(j, k) = psi.coefficient(Monomial{1u << j, 1u << k}) / I();
  return c;
}

Form one_one_form(const Matrix& c) {
  int n = static_cast<int>(c.rows());
  Form f(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (!c(j, k).is_zero()) f.add(Monomial{1u << j, 1u << k}, c(j, k) * I());
  return f;
}

Matrix n_minus_one_test_matrix(const Form& omega_power) {
  int n = omega_power.n();
  restrict_check(omega_power, {n - 1, n - 1}, "form");
  Monomial top{(1u << n) - 1, (1u << n) - 1};
  GaussianRational vol = volume_sign(n);
  Matrix q(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Form beta = wedge(Form::generator(n, a), Form::conj_generator(n, b)).scaled(I());
      q(a, b) = wedge(omega_power, beta).coefficient(top) / vol;
    }
  return q;
}

PositivityCertificate positivity(const Form& form, PositivityKind kind) {
  if (!form.is_real()) throw WorkbenchError("positivity needs a real form");
  PositivityCertificate c;
  c.form = form;
  c.kind = kind == PositivityKind::OneOne ? "(1,1)" : "(n-1,n-1)";
  c.test_matrix = test_matrix(form, kind);
  for (std::size_t k = 1; k <= c.test_matrix.rows(); ++k) c.minors.push_back(determinant(c.test_matrix.block(0, 0, k, k)));
  c.failing_minor = first_failing_minor(c.test_matrix);
  c.positive = !c.failing_minor.has_value();
  return c;
}

Json to_json(const PositivityCertificate& c) {
  Json j;
  j["form"] = to_json(c.form);
  j["kind"] = c.kind;
  j["test_matrix"] = to_json(c.test_matrix);
  j["minors"] = Json::array();
  for (const auto& m : c.minors) j["minors"].push_back(to_json(m));
  j["failing_minor"] = c.failing_minor ? Json(*c.failing_minor) : Json(nullptr);
  j["positive"] = c.positive;
  return j;
}

std::string metric_kind_name(MetricKind k) {
  switch (k) {
    case MetricKind::Gauduchon: return "gauduchon";
    case MetricKind::StronglyGauduchon: return "sg";
    case MetricKind::SKT: return "skt";
    case MetricKind::Kahler: return "kahler";
  }
  return "?";
}

std::optional<MetricKind> metric_kind_from_name(const std::string& name) {
  for (MetricKind k : {MetricKind::Gauduchon, MetricKind::StronglyGauduchon, MetricKind::SKT, MetricKind::Kahler})
    if (metric_kind_name(k) == name) return k;
  return std::nullopt;
}

Matrix metric_constraint_basis(const DifferentialAlgebra& alg, MetricKind kind) {
  const FormSpace& sp = *alg.space();
  int n = alg.n();
  if ((kind == MetricKind::Gauduchon || kind == MetricKind::StronglyGauduchon) && n < 2)
    throw WorkbenchError("Gauduchon-type conditions need n >= 2");
  switch (kind) {
    case MetricKind::Gauduchon: {
      Bidegree b{n - 1, n - 1};
      return real_kernel_forms(alg.ddbar().bidegree_block(b, {n, n}), real_form_basis(sp, b));
    }
    case MetricKind::StronglyGauduchon: {
      Bidegree b{n - 1, n - 1}, t{n, n - 1};
      Matrix rb = real_form_basis(sp, b);
      Matrix del = alg.partial().bidegree_block(b, t) * rb;
      Matrix dbar = alg.partial_bar().bidegree_block({n, n - 2}, t);
      std::size_t r = rb.cols();
      Matrix joint = Matrix::hstack(realify(del).block(0, 0, 2 * del.rows(), r), realify(dbar));
      Matrix k = kernel_basis(joint);
      Matrix head = k.block(0, 0, r, k.cols());
      return rb * column_space_basis(head);
    }
    case MetricKind::SKT:
      return real_kernel_forms(alg.ddbar().bidegree_block({1, 1}, {2, 2}), real_form_basis(sp, Bidegree{1, 1}));
    case MetricKind::Kahler: {
      Matrix d = alg.d().block(2);
      Matrix cols = d.block(0, sp.offset({1, 1}), d.rows(), sp.dim(Bidegree{1, 1}));
      return real_kernel_forms(cols, real_form_basis(sp, Bidegree{1, 1}));
    }
  }
  return Matrix();
}

FeasibilityResult metric_feasibility(const DifferentialAlgebra& alg, MetricKind kind, const SolverOptions& opt) {
  const FormSpace& sp = *alg.space();
  int n = alg.n();
  bool top_kind = kind == MetricKind::Gauduchon || kind == MetricKind::StronglyGauduchon;
  Bidegree b = top_kind ? Bidegree{n - 1, n - 1} : Bidegree{1, 1};
  PositivityKind pk = top_kind ? PositivityKind::NMinusOne : PositivityKind::OneOne;
  FeasibilityResult res;
  res.model = alg.model().name;
  res.kind = metric_kind_name(kind);
  res.verdict = "undecided";
  Matrix w = metric_constraint_basis(alg, kind);
  res.constraint_dim = w.cols();
  std::vector<Form> basis;
  std::vector<CMat> q;
  for (std::size_t j = 0; j < w.cols(); ++j) {
    basis.push_back(sp.from_vector(w.column(j), b));
    q.push_back(to_eigen(test_matrix(basis.back(), pk)));
  }
  Form standard = HermitianMetric::identity(n).kahler_form();
  if (top_kind) standard = wedge_power(standard, n - 1);
  std::vector<double> start = w.cols() ? real_coordinates(w, sp.to_vector(standard, b)) : std::vector<double>{};

  auto linear_ok = [&](const Form& f) {
    switch (kind) {
      case MetricKind::Gauduchon: return alg.ddbar().apply(f).is_zero();
      case MetricKind::StronglyGauduchon: {
        Bidegree t{n, n - 1};
        Matrix rhs = sp.to_vector(alg.partial(f), t);
        return solve(alg.partial_bar().bidegree_block({n, n - 2}, t), rhs).has_value();
      }
      case MetricKind::SKT: return alg.ddbar().apply(f).is_zero();
      case MetricKind::Kahler: return alg.d(f).is_zero();
    }
    return false;
  };
  auto certify = [&](const std::vector<double>& x) {
    double m = 0;
    for (double v : x) m = std::max(m, std::abs(v));
    if (m == 0) return false;
    Form f(n);
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rational r = rationalize(x[i] / m, opt.rationalize_bound);
      if (r != 0) f += basis[i].scaled(r);
    }
    if (!f.is_real()) return false;
    PositivityCertificate c = positivity(f, pk);
    if (!c.positive) return false;
    res.witness = f;
    res.certificate = c;
    res.residual_zero = linear_ok(f);
    return res.residual_zero;
  };
  Ascent a = ascend(q, false, start, opt, certify);
  res.restarts_used = a.restarts_used;
  res.best_min_eig = q.empty() ? 0 : a.min_eig;
  if (res.certificate && res.certificate->positive && res.residual_zero) res.verdict = "feasible";
  return res;
}

namespace {
std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x == 0 ? 0.0 : x);
  return buf;
}
}  // namespace

Json to_json(const FeasibilityResult& r) {
  Json j;
  j["model"] = r.model;
  j["kind"] = r.kind;
  j["verdict"] = r.feasible() ? "feasible" : "undecided (best min-eig = " + format_double(r.best_min_eig) + ")";
  j["constraint_dim"] = r.constraint_dim;
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  j["residual_zero"] = r.residual_zero;
  j["restarts_used"] = r.restarts_used;
  j["best_min_eig"] = r.best_min_eig;
  return j;
}

RootResult root_n_minus_1(const Form& omega_power, long bound) {
  int n = omega_power.n();
  if (n < 2) throw WorkbenchError("roots need n >= 2");
  int m = n - 1;
  PositivityCertificate cert = positivity(omega_power, PositivityKind::NMinusOne);
  if (!cert.positive) throw WorkbenchError("root needs a positive (n-1,n-1)-form");
  RootResult res;
  if (n == 2) {
    res.gram = one_one_coefficients(omega_power);
    res.omega = omega_power;
    res.positive = is_positive_definite(res.gram);
    return res;
  }
  unsigned all = (1u << n) - 1;
  // omega^m = m! i^m (-1)^{m(m-1)/2} sum det G[I,J] w^I ^ wbar^J, so the coefficient at the complements
  // of a and b is kappa times the (a,b) minor of G.
  GaussianRational kappa = 1;
  for (int j = 1; j <= m; ++j) kappa *= GaussianRational(j);
  for (int j = 0; j < m; ++j) kappa *= I();
  if ((m * (m - 1) / 2) & 1) kappa = -kappa;
  Eigen::MatrixXcd target(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      target(a, b) = (omega_power.coefficient(Monomial{all ^ (1u << a), all ^ (1u << b)}) / kappa).to_complex();
  auto minors = [&](const Eigen::MatrixXcd& g) {
    Eigen::MatrixXcd out(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Eigen::MatrixXcd s(m, m);
        for (int i = 0, r = 0; i < n; ++i) {
          if (i == a) continue;
          for (int j = 0, c = 0; j < n; ++j) {
            if (j == b) continue;
            s(r, c++) = g(i, j);
          }
          ++r;
        }
        out(a, b) = s.determinant();
      }
    return out;
  };
  Eigen::MatrixXcd cof(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cof(a, b) = ((a + b) % 2 ? -1.0 : 1.0) * target(a, b);
  double det_c = cof.determinant().real();
  if (det_c <= 0) throw WorkbenchError("root: cofactor determinant is not positive");
  double det_g = std::pow(det_c, 1.0 / m);
  Eigen::MatrixXcd g = det_g * cof.transpose().inverse();
  g = (g + g.adjoint()) / 2.0;
  // Gauss-Newton polish over the n^2 real parameters of a Hermitian matrix.
  auto pack = [&](const Eigen::MatrixXcd& h) {
    Eigen::VectorXd p(n * n);
    int idx = 0;
    for (int i = 0; i < n; ++i) p(idx++) = h(i, i).real();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        p(idx++) = h(i, j).real();
        p(idx++) = h(i, j).imag();
      }
    return p;
  };
  auto unpack = [&](const Eigen::VectorXd& p) {
    Eigen::MatrixXcd h(n, n);
    int idx = 0;
    for (int i = 0; i < n; ++i) h(i, i) = p(idx++);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        h(i, j) = std::complex<double>(p(idx), p(idx + 1));
        h(j, i) = std::conj(h(i, j));
        idx += 2;
      }
    return h;
  };
  auto residual = [&](const Eigen::VectorXd& p) {
    Eigen::MatrixXcd diff = minors(unpack(p)) - target;
    Eigen::VectorXd r(2 * n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        r(2 * (a * n + b)) = diff(a, b).real();
        r(2 * (a * n + b) + 1) = diff(a, b).imag();
      }
    return r;
  };
  Eigen::VectorXd p = pack(g);
  for (int it = 0; it < 30; ++it) {
    Eigen::VectorXd r = residual(p);
    if (r.cwiseAbs().maxCoeff() < 1e-15) break;
    Eigen::MatrixXd jac(r.size(), p.size());
    for (int k = 0; k < p.size(); ++k) {
      double h = 1e-7 * std::max(1.0, std::abs(p(k)));
      Eigen::VectorXd pp = p, pm = p;
      pp(k) += h;
      pm(k) -= h;
      jac.col(k) = (residual(pp) - residual(pm)) / (2 * h);
    }
    Eigen::VectorXd step = jac.colPivHouseholderQr().solve(r);
    Eigen::VectorXd next = p - step;
    if (residual(next).cwiseAbs().maxCoeff() >= r.cwiseAbs().maxCoeff()) break;
    p = next;
  }
  g = unpack(p);
  res.float_residual = residual(p).cwiseAbs().maxCoeff() * std::abs(kappa.to_complex());
  if (res.float_residual > 1e-8) throw WorkbenchError("root: Newton iteration did not converge");
  Matrix gram(n, n);
  for (int i = 0; i < n; ++i) {
    gram(i, i) = rationalize(g(i, i).real(), bound);
    for (int j = i + 1; j < n; ++j) {
      gram(i, j) = GaussianRational(rationalize(g(i, j).real(), bound), rationalize(g(i, j).imag(), bound));
      gram(j, i) = gram(i, j).conj();
    }
  }
  res.gram = gram;
  res.omega = one_one_form(gram);
  res.rational_residual = max_abs_coefficient(wedge_power(res.omega, m) - omega_power);
  res.positive = is_positive_definite(gram);
  return res;
}

Json to_json(const RootResult& r) {
  Json j;
  j["gram"] = to_json(r.gram);
  j["omega"] = to_json(r.omega);
  j["float_residual"] = r.float_residual;
  j["rational_residual"] = r.rational_residual;
  j["positive"] = r.positive;
  return j;
}

E2sGElement e2sg_element(const CohomologyEngine& engine, const HermitianMetric& metric) {
  const DifferentialAlgebra& alg = engine.algebra();
  const FormSpace& sp = *alg.space();
  int n = alg.n();
  if (n < 2) throw WorkbenchError("E2sG elements need n >= 2");
  OperatorBundle ops(engine.algebra_ptr(), metric);
  auto gamma = sg_potential(ops);
  if (!gamma) throw WorkbenchError("metric is not strongly Gauduchon");
  E2sGElement e;
  e.model = alg.model().name;
  e.omega = ops.omega();
  e.gamma = *gamma;
  e.gamma_omega = gamma->conjugate() + wedge_power(e.omega, n - 1) + *gamma;
  e.closed = alg.d(e.gamma_omega).is_zero();
  e.real = e.gamma_omega.is_real();
  int k = 2 * n - 2;
  Bidegree b{n - 2, n};
  if (e.closed) {
    e.de_rham_coordinates = engine.cohomology(Theory::DeRham, k).coordinates(sp.to_vector(e.gamma_omega, k));
    e.e2_coordinates = engine.page(2).groups.at(b).coordinates(sp.to_vector(e.gamma, b));
    e.t_consistent = engine.T_of(e.gamma_omega) == e.e2_coordinates;
  }
  return e;
}

Json to_json(const E2sGElement& e) {
  Json j;
  j["model"] = e.model;
  j["omega"] = to_json(e.omega);
  j["gamma"] = to_json(e.gamma);
  j["gamma_omega"] = to_json(e.gamma_omega);
  j["de_rham_coordinates"] = to_json(e.de_rham_coordinates);
  j["e2_coordinates"] = to_json(e.e2_coordinates);
  j["closed"] = e.closed;
  j["real"] = e.real;
  j["t_consistent"] = e.t_consistent;
  return j;
}

Form j_omega(const CohomologyEngine& engine, const OperatorBundle& ops, const Matrix& coords) {
  const DifferentialAlgebra& alg = engine.algebra();
  const FormSpace& sp = *alg.space();
  int n = alg.n();
  Bidegree b{n - 2, n}, mid{n - 1, n - 1}, top{n, n - 2};
  Form alpha = harmonic_e2_representative(engine, ops, b, coords);
  auto omega = minimal_norm_solution(alg.partial_bar(), mid, alg.partial(alpha).scaled(-1), ops.metric());
  if (!omega) throw WorkbenchError("class is not E_2-closed");
  Form x(n);
  auto direct = minimal_norm_solution(alg.partial_bar(), top, alg.partial(*omega).scaled(-1), ops.metric());
  if (direct) {
    x = *direct;
  } else {
    // Adjust Omega inside ker delbar so that del Omega becomes delbar-exact.
    Bidegree t{n, n - 1};
    Matrix ker = Subspace::kernel(alg.partial_bar().bidegree_block(mid, {n - 1, n})).basis();
    Matrix sys = Matrix::hstack(alg.partial().bidegree_block(mid, t) * ker,
                                alg.partial_bar().bidegree_block(top, t).scaled(-1));
    auto sol = solve(sys, sp.to_vector(alg.partial(*omega), t).scaled(-1));
    if (!sol) throw WorkbenchError("d_2 of the class is nonzero");
    Matrix y = sol->block(0, 0, ker.cols(), 1);
    Matrix z = sol->block(ker.cols(), 0, sol->rows() - ker.cols(), 1);
    *omega += sp.from_vector(ker * y, mid);
    x = sp.from_vector(z, top);
  }
  Form a = x + *omega + alpha;
  if (!alg.d(a).is_zero()) throw WorkbenchError("falsified: lifted form is not closed");
  return a;
}

JOmegaReport check_j_omega(const CohomologyEngine& engine, const OperatorBundle& ops) {
  const FormSpace& sp = *engine.algebra().space();
  int n = engine.n();
  Bidegree b{n - 2, n};
  JOmegaReport r;
  r.e2_dim = engine.e(2, b);
  const SpectralPage& pg = engine.page(2);
  Matrix ker;
  auto it = pg.differential.find(b);
  if (it == pg.differential.end() || it->second.rows() == 0)
    ker = Matrix::identity(r.e2_dim);
  else
    ker = kernel_basis(it->second);
  r.ker_d2_dim = ker.cols();
  r.rank_T = engine.rank_T();
  r.t_surjective = r.rank_T == r.e2_dim;
  r.harmonic_dim = pseudo_harmonic_space(ops, b).dim();
  r.t_of_j_identity = true;
  int k = 2 * n - 2;
  CohomologyGroup dr = engine.cohomology(Theory::DeRham, k);
  Matrix images(dr.dimension(), ker.cols());
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    Form a = j_omega(engine, ops, ker.column(j));
    if (!(engine.T_of(a) == ker.column(j))) r.t_of_j_identity = false;
    images.set_block(0, j, dr.coordinates(sp.to_vector(a, k)));
  }
  r.j_injective = ker.cols() == 0 || rank(images) == ker.cols();
  return r;
}

Json to_json(const JOmegaReport& r) {
  Json j;
  j["e2_dim"] = r.e2_dim;
  j["ker_d2_dim"] = r.ker_d2_dim;
  j["rank_T"] = r.rank_T;
  j["harmonic_dim"] = r.harmonic_dim;
  j["t_surjective"] = r.t_surjective;
  j["t_of_j_identity"] = r.t_of_j_identity;
  j["j_injective"] = r.j_injective;
  return j;
}

std::string cone_set_name(ConeSet s) {
  switch (s) {
    case ConeSet::V: return "V";
    case ConeSet::E: return "E";
    case ConeSet::E_R: return "E_R";
    case ConeSet::U_gamma: return "U_gamma";
    case ConeSet::Creal_gamma: return "Creal_gamma";
  }
  return "?";
}

std::optional<ConeSet> cone_set_from_name(const std::string& name) {
  for (ConeSet s : {ConeSet::V, ConeSet::E, ConeSet::E_R, ConeSet::U_gamma, ConeSet::Creal_gamma})
    if (cone_set_name(s) == name) return s;
  return std::nullopt;
}

MembershipResult cone_membership(const CohomologyEngine& engine, const HermitianMetric& gamma, ConeSet set,
                                 const Form& candidate, const SolverOptions& opt) {
  const DifferentialAlgebra& alg = engine.algebra();
  const FormSpace& sp = *alg.space();
  int n = alg.n();
  if (n < 2) throw WorkbenchError("cone sets need n >= 2");
  Bidegree b{n - 2, n}, mid{n - 1, n - 1}, t{n - 1, n};
  restrict_check(candidate, b, "candidate");
  MembershipResult res;
  res.set = cone_set_name(set);
  Matrix v = sp.to_vector(alg.partial(candidate), t);
  bool projected = set == ConeSet::U_gamma || set == ConeSet::Creal_gamma;
  if (projected) v = project_im_delbar(alg, gamma, v);
  Matrix dbar = alg.partial_bar().bidegree_block(mid, t);
  Form rhs = sp.from_vector(v.scaled(-1), t);
  std::string lhs = projected ? "p(del Gamma)" : "del Gamma";
  if (set == ConeSet::E) {
    auto omega = minimal_norm_solution(alg.partial_bar(), mid, rhs, gamma);
    res.verdict = omega ? "member" : "not-member";
    res.clause = omega ? "" : "del Gamma is not delbar-exact";
    res.potential = omega;
    return res;
  }
  Matrix rb = real_form_basis(sp, mid);
  std::size_t r = rb.cols();
  Matrix ra = realify(dbar * rb).block(0, 0, 2 * dbar.rows(), r);
  auto c = solve(ra, realify_vector(v.scaled(-1)));
  if (!c) {
    res.verdict = "not-member";
    res.clause = lhs + " = -delbar Omega has no real solution";
    return res;
  }
  Form particular = sp.from_vector(rb * *c, mid);
  res.potential = particular;
  if (set == ConeSet::E_R || set == ConeSet::Creal_gamma) {
    res.verdict = "member";
    return res;
  }
  // Positive potentials: particular + real kernel of delbar.
  PositivityCertificate pc = positivity(particular, PositivityKind::NMinusOne);
  if (pc.positive) {
    res.verdict = "member";
    res.certificate = pc;
    return res;
  }
  Matrix kern = rb * kernel_basis(ra);
  std::vector<Form> forms{particular};
  for (std::size_t j = 0; j < kern.cols(); ++j) forms.push_back(sp.from_vector(kern.column(j), mid));
  std::vector<CMat> q;
  for (const auto& f : forms) q.push_back(to_eigen(n_minus_one_test_matrix(f)));
  std::vector<double> start;
  {
    Form standard = wedge_power(gamma.kahler_form(), n - 1);
    std::vector<double> s = real_coordinates(kern, sp.to_vector(standard, mid));
    start.push_back(1.0);
    for (double x : s) start.push_back(x);
  }
  auto certify = [&](const std::vector<double>& x) {
    if (x[0] <= 0) return false;
    Form f = particular;
    for (std::size_t i = 1; i < x.size(); ++i) {
      Rational q = rationalize(x[i] / x[0], opt.rationalize_bound);
      if (q != 0) f += forms[i].scaled(q);
    }
    PositivityCertificate cc = positivity(f, PositivityKind::NMinusOne);
    if (!cc.positive) return false;
    res.potential = f;
    res.certificate = cc;
    return true;
  };
  Ascent a = ascend(q, true, start, opt, certify);
  res.best_min_eig = a.min_eig;
  if (res.certificate) {
    res.verdict = "member";
  } else {
    res.verdict = "undecided";
    res.clause = "no positive potential found";
  }
  return res;
}

Json to_json(const MembershipResult& r) {
  Json j;
  j["set"] = r.set;
  j["verdict"] = r.verdict;
  j["clause"] = r.clause;
  j["potential"] = r.potential ? to_json(*r.potential) : Json(nullptr);
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  j["best_min_eig"] = r.best_min_eig;
  return j;
}

std::vector<Form> e_real_basis(const CohomologyEngine& engine) {
  const DifferentialAlgebra& alg = engine.algebra();
  const FormSpace& sp = *alg.space();
  int n = alg.n();
  Bidegree b{n - 2, n}, mid{n - 1, n - 1}, t{n - 1, n};
  Matrix rb = real_form_basis(sp, mid);
  Matrix del = alg.partial().bidegree_block(b, t);
  Matrix dbar = alg.partial_bar().bidegree_block(mid, t) * rb;
  std::size_t nb = sp.dim(b);
  Matrix joint = Matrix::hstack(realify(del), realify(dbar).block(0, 0, 2 * dbar.rows(), rb.cols()));
  Matrix k = kernel_basis(joint);
  Matrix head = column_space_basis(k.block(0, 0, 2 * nb, k.cols()));
  std::vector<Form> out;
  for (std::size_t j = 0; j < head.cols(); ++j) out.push_back(sp.from_vector(complexify_vector(head.column(j)), b));
  return out;
}

PairingProbe pairing_probe(const CohomologyEngine& engine, const Form& theta, const std::vector<Form>& samples,
                           const std::optional<Form>& xi) {
  const DifferentialAlgebra& alg = engine.algebra();
  restrict_check(theta, {2, 0}, "theta");
  PairingProbe p;
  p.samples = samples.size();
  if (xi) p.real_potential_shape = alg.partial(*xi) == theta && alg.partial_bar(*xi).is_real();
  for (const auto& g : samples) {
    GaussianRational v = engine.integrate(wedge(theta, g));
    p.values.push_back(v);
    if (!v.is_real()) {
      ++p.non_real;
      p.all_real = false;
    } else if (sgn(v.re()) > 0) {
      ++p.positive;
    } else if (sgn(v.re()) < 0) {
      ++p.negative;
    } else {
      ++p.zero;
    }
  }
  return p;
}

Json to_json(const PairingProbe& p) {
  Json j;
  j["samples"] = p.samples;
  j["values"] = Json::array();
  for (const auto& v : p.values) j["values"].push_back(to_json(v));
  j["positive"] = p.positive;
  j["negative"] = p.negative;
  j["zero"] = p.zero;
  j["non_real"] = p.non_real;
  j["real_potential_shape"] = p.real_potential_shape;
  j["all_real"] = p.all_real;
  return j;
}

}  // namespace nilwb
