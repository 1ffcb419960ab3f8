#include "nilwb/forms.hpp"

#include <mutex>

namespace nilwb {

namespace {

// Parity of inversions when merging sorted sets a then b.
int merge_parity(std::uint32_t a, std::uint32_t b) {
  int count = 0;
  while (b) {
    int j = __builtin_ctz(b);
    b &= b - 1;
    std::uint32_t above = (j >= 31) ? 0u : (a & ~((2u << j) - 1u));
    count += __builtin_popcount(above);
  }
  return count & 1;
}

std::uint64_t key(const Monomial& m) { return (static_cast<std::uint64_t>(m.hol) << 32) | m.anti; }

void combinations(int n, int k, std::vector<std::uint32_t>& out) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    std::uint32_t mask = 0;
    for (int v : idx) mask |= 1u << v;
    out.push_back(mask);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  auto emit = [&](std::uint32_t mask, char c) {
    while (mask) {
      int j = __builtin_ctz(mask);
      mask &= mask - 1;
      if (!s.empty()) s += "^";
      s += c + std::to_string(j + 1);
    }
  };
  emit(m.hol, 'f');
  emit(m.anti, 'g');
  return s.empty() ? "1" : s;
}

}  // namespace

bool lex_less(std::uint32_t a, std::uint32_t b) {
  std::uint32_t diff = a ^ b;
  if (!diff) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  int pa = a.p(), pb = b.p();
  if (pa != pb) return pa < pb;
  if (a.hol != b.hol) return lex_less(a.hol, b.hol);
  return lex_less(a.anti, b.anti);
}

int wedge_sign(const Monomial& a, const Monomial& b) {
  if ((a.hol & b.hol) || (a.anti & b.anti)) return 0;
  int parity = (a.q() * b.p()) & 1;
  parity ^= merge_parity(a.hol, b.hol);
  parity ^= merge_parity(a.anti, b.anti);
  return parity ? -1 : 1;
}

Form Form::monomial(int n, Monomial m, GaussianRational c) {
  Form f(n);
  f.add(m, c);
  return f;
}

Form Form::generator(int n, int k) { return monomial(n, Monomial{1u << k, 0}); }

Form Form::conj_generator(int n, int k) { return monomial(n, Monomial{0, 1u << k}); }

GaussianRational Form::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void Form::add(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Form::is_real() const { return conjugate() == *this; }

int Form::degree() const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) throw WorkbenchError("form is not homogeneous");
  return d;
}

Form Form::component(Bidegree b) const {
  Form out(n_);
  for (const auto& [m, c] : terms_)
    if (m.p() == b.p && m.q() == b.q) out.terms_.emplace(m, c);
  return out;
}

Form Form::degree_component(int k) const {
  Form out(n_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == k) out.terms_.emplace(m, c);
  return out;
}

Form Form::conjugate() const {
  Form out(n_);
  for (const auto& [m, c] : terms_) {
    GaussianRational v = c.conj();
    if ((m.p() * m.q()) & 1) v = -v;
    out.add(Monomial{m.anti, m.hol}, v);
  }
  return out;
}

Form Form::scaled(const GaussianRational& s) const {
  Form out(n_);
  if (s.is_zero()) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
  return out;
}

Form& Form::operator+=(const Form& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    if (c == GaussianRational(1)) {
      s += monomial_text(m);
    } else {
      s += "(" + c.to_string() + ")*" + monomial_text(m);
    }
  }
  return s;
}

Form wedge(const Form& a, const Form& b) {
  Form out(a.n() ? a.n() : b.n());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (!s) continue;
      GaussianRational c = ca * cb;
      if (s < 0) c = -c;
      out.add(Monomial{ma.hol | mb.hol, ma.anti | mb.anti}, c);
    }
  }
  return out;
}

Form wedge_power(const Form& f, int m) {
  Form out = Form::monomial(f.n(), Monomial{});
  for (int j = 0; j < m; ++j) out = wedge(out, f);
  return out;
}

Form theta_h(const Form& f, const Rational& h) {
  Form out(f.n());
  for (const auto& [m, c] : f.terms()) {
    Rational s = 1;
    for (int j = 0; j < m.p(); ++j) s *= h;
    out.add(m, c * GaussianRational(s));
  }
  return out;
}

Form substitute(const Form& f, const std::vector<Form>& images) {
  int n = f.n();
  if (static_cast<int>(images.size()) != 2 * n) throw WorkbenchError("substitution needs 2n generator images");
  Form out(n);
  for (const auto& [m, c] : f.terms()) {
    Form prod = Form::monomial(n, Monomial{}, c);
    for (int j = 0; j < n; ++j)
      if (m.hol & (1u << j)) prod = wedge(prod, images[j]);
    for (int j = 0; j < n; ++j)
      if (m.anti & (1u << j)) prod = wedge(prod, images[n + j]);
    out += prod;
  }
  return out;
}

FormSpace::FormSpace(int n) : n_(n) {
  if (n < 1 || n > 8) throw WorkbenchError("complex dimension must be between 1 and 8");
  basis_.resize(2 * n + 1);
  offsets_.resize(2 * n + 1);
  std::vector<std::vector<std::uint32_t>> subsets(n + 1);
  for (int k = 0; k <= n; ++k) combinations(n, k, subsets[k]);
  for (int k = 0; k <= 2 * n; ++k) {
    for (int p = 0; p <= n; ++p) {
      int q = k - p;
      offsets_[k].push_back(basis_[k].size());
      if (q < 0 || q > n) continue;
      for (auto i : subsets[p])
        for (auto j : subsets[q]) {
          Monomial m{i, j};
          index_[key(m)] = basis_[k].size();
          basis_[k].push_back(m);
        }
    }
  }
  for (int k = 0; k <= 2 * n; ++k) {
    Matrix c(basis_[k].size(), basis_[k].size());
    for (std::size_t a = 0; a < basis_[k].size(); ++a) {
      const Monomial& m = basis_[k][a];
      Monomial cm{m.anti, m.hol};
      c(index(cm), a) = ((m.p() * m.q()) & 1) ? -1 : 1;
    }
    conj_.push_back(std::move(c));
  }
}

std::size_t FormSpace::dim(int k) const {
  if (k < 0 || k > 2 * n_) return 0;
  return basis_[k].size();
}

std::size_t FormSpace::dim(Bidegree b) const {
  if (b.p < 0 || b.q < 0 || b.p > n_ || b.q > n_) return 0;
  int k = b.degree();
  std::size_t end = (b.p + 1 <= n_) ? offsets_[k][b.p + 1] : basis_[k].size();
  return end - offsets_[k][b.p];
}

std::vector<Monomial> FormSpace::bidegree_basis(Bidegree b) const {
  std::size_t d = dim(b);
  if (!d) return {};
  std::size_t o = offset(b);
  const auto& all = basis_[b.degree()];
  return std::vector<Monomial>(all.begin() + o, all.begin() + o + d);
}

std::size_t FormSpace::offset(Bidegree b) const {
  if (b.p < 0 || b.q < 0 || b.p > n_ || b.q > n_) return 0;
  return offsets_[b.degree()][b.p];
}

std::size_t FormSpace::index(const Monomial& m) const {
  auto it = index_.find(key(m));
  if (it == index_.end()) throw WorkbenchError("monomial outside the form space");
  return it->second;
}

Monomial FormSpace::top() const {
  std::uint32_t all = (n_ >= 32) ? ~0u : ((1u << n_) - 1u);
  return Monomial{all, all};
}

Matrix FormSpace::to_vector(const Form& f, int k) const {
  Matrix v(dim(k), 1);
  for (const auto& [m, c] : f.terms())
    if (m.degree() == k) v(index(m), 0) = c;
  return v;
}

Form FormSpace::from_vector(const Matrix& v, int k) const {
  if (v.rows() != dim(k) || v.cols() != 1) throw WorkbenchError("form vector shape mismatch");
  Form f(n_);
  for (std::size_t a = 0; a < v.rows(); ++a) f.add(basis_[k][a], v(a, 0));
  return f;
}

Matrix FormSpace::to_vector(const Form& f, Bidegree b) const {
  Matrix v(dim(b), 1);
  std::size_t o = offset(b);
  for (const auto& [m, c] : f.terms())
    if (m.p() == b.p && m.q() == b.q) v(index(m) - o, 0) = c;
  return v;
}

Form FormSpace::from_vector(const Matrix& v, Bidegree b) const {
  if (v.rows() != dim(b) || v.cols() != 1) throw WorkbenchError("form vector shape mismatch");
  Form f(n_);
  std::size_t o = offset(b);
  for (std::size_t a = 0; a < v.rows(); ++a) f.add(basis_[b.degree()][o + a], v(a, 0));
  return f;
}

FormSpacePtr form_space(int n) {
  static std::mutex mu;
  static std::map<int, FormSpacePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto sp = std::make_shared<const FormSpace>(n);
  cache[n] = sp;
  return sp;
}

}  // namespace nilwb
