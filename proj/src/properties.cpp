#include "nilwb/properties.hpp"

#include <functional>

namespace nilwb {

namespace {

const std::vector<std::pair<PropertyName, const char*>>& name_table() {
  static const std::vector<std::pair<PropertyName, const char*>> table = {
      {PropertyName::SGG, "sGG"},
      {PropertyName::DDBAR_A, "ddbar-A"},
      {PropertyName::DDBAR_B, "ddbar-B"},
      {PropertyName::HDDBAR, "h-ddbar"},
      {PropertyName::A, "A"},
      {PropertyName::A_PRIME, "A'"},
      {PropertyName::B, "B"},
      {PropertyName::B_PRIME, "B'"},
      {PropertyName::C, "C"},
      {PropertyName::C_PRIME_I, "C'(i)"},
      {PropertyName::C_PRIME_II, "C'(ii)"},
      {PropertyName::D_PRIME_I, "D'(i)"},
      {PropertyName::D_PRIME_II, "D'(ii)"},
      {PropertyName::D_PRIME, "D'"},
      {PropertyName::L, "L"},
      {PropertyName::E1_DEGEN, "E1-degeneration"},
      {PropertyName::E2_DEGEN, "E2-degeneration"},
      {PropertyName::PARTIAL_E2, "partial-E2"},
  };
  return table;
}

// Subspaces of one total degree k.
struct DegreeData {
  const FormSpace& sp;
  int k;
  std::size_t ambient() const { return sp.dim(k); }
};

Subspace kernel_at(const GradedOp& op, int k) {
  const Matrix& b = op.block(k);
  if (b.rows() == 0) return Subspace::whole(b.cols());
  return Subspace::kernel(b);
}

// Image of op landing in degree k.
Subspace image_into(const GradedOp& op, int k, const FormSpace& sp) {
  int src = k - op.shift();
  if (src < 0 || src > sp.top_degree()) return Subspace(sp.dim(k));
  return Subspace::image(op.block(src));
}

class Checker {
 public:
  Checker(PropertyReport& r, const FormSpace& sp) : r_(r), sp_(sp) {}

  // Records the first failing inclusion lhs ⊆ rhs; returns whether it holds.
  bool include(const Subspace& lhs, const Subspace& rhs, const std::string& clause, int k) {
    if (!ok_) return false;
    if (rhs.contains(lhs)) return true;
    auto w = lhs.first_outside(rhs);
    fail(clause, sp_.from_vector(*w, k));
    return false;
  }
  bool include_bidegree(const Subspace& lhs, const Subspace& rhs, const std::string& clause, Bidegree b) {
    if (!ok_) return false;
    if (rhs.contains(lhs)) return true;
    auto w = lhs.first_outside(rhs);
    fail(clause, sp_.from_vector(*w, b));
    return false;
  }
  bool equal(const Subspace& a, const Subspace& b, const std::string& a_name, const std::string& b_name, int k) {
    return include(a, b, a_name + " ⊆ " + b_name, k) && include(b, a, b_name + " ⊆ " + a_name, k);
  }
  void fail(const std::string& clause, Form witness) {
    if (!ok_) return;
    ok_ = false;
    r_.clause = clause;
    r_.witness = std::move(witness);
  }
  bool ok() const { return ok_; }

 private:
  PropertyReport& r_;
  const FormSpace& sp_;
  bool ok_ = true;
};

std::string kstr(int k) { return std::to_string(k); }

// Columns of `m` (class coordinates) combined with the group representatives.
Form combine(const FormSpace& sp, const Matrix& reps, const Matrix& coeffs, int k) {
  return sp.from_vector(reps * coeffs, k);
}

struct MapData {
  Matrix matrix;  // target coordinates of each source representative
  std::size_t rank = 0;
};

MapData class_map(const CohomologyGroup& src, const CohomologyGroup& tgt) {
  MapData d;
  d.matrix = Matrix(tgt.dimension(), src.dimension());
  if (src.dimension() > 0) d.matrix = tgt.coordinates_of_columns(src.representatives());
  d.rank = (d.matrix.rows() == 0 || d.matrix.cols() == 0) ? 0 : rank(d.matrix);
  return d;
}

void check_degree(const CohomologyEngine& eng, PropertyName prop, int k, const Rational& h, Checker& c,
                  PropertyReport& r) {
  const DifferentialAlgebra& alg = eng.algebra();
  const FormSpace& sp = *alg.space();
  GradedOp dh = alg.d_h(h);
  GradedOp dm = alg.d_minus_inv_h(h);
  GradedOp dd = dh * dm;
  std::size_t amb = sp.dim(k);
  auto K = [&] { return kernel_at(dh, k).intersect(kernel_at(dm, k)); };
  auto im_dh = [&] { return image_into(dh, k, sp); };
  auto im_dm = [&] { return image_into(dm, k, sp); };
  auto im_dd = [&] { return image_into(dd, k, sp); };
  auto ker_dd = [&] { return kernel_at(dd, k); };
  std::string s = "^" + kstr(k);

  auto injective = [&](const CohomologyGroup& src, const CohomologyGroup& tgt, const std::string& clause) {
    MapData m = class_map(src, tgt);
    if (m.rank == src.dimension()) return;
    Matrix ker = kernel_basis(m.matrix);
    c.fail(clause, combine(sp, src.representatives(), ker.column(0), k));
  };

  switch (prop) {
    case PropertyName::A_PRIME: {
      Subspace lhs = K().intersect(im_dh() + im_dm());
      r.dimensions["K" + s + "∩(Im d_h+Im d_-1/h)"] = lhs.dim();
      r.dimensions["Im d_h d_-1/h" + s] = im_dd().dim();
      c.equal(lhs, im_dd(), "ker d_h ∩ ker d_-1/h ∩ (Im d_h + Im d_-1/h)" + s, "Im d_h d_-1/h" + s, k);
      break;
    }
    case PropertyName::B_PRIME: {
      Subspace lhs = im_dh() + im_dm() + K();
      r.dimensions["Im d_h+Im d_-1/h+K" + s] = lhs.dim();
      r.dimensions["ker d_h d_-1/h" + s] = ker_dd().dim();
      c.equal(ker_dd(), lhs, "ker d_h d_-1/h" + s, "Im d_h + Im d_-1/h + ker d_h ∩ ker d_-1/h" + s, k);
      break;
    }
    case PropertyName::C_PRIME_I:
    case PropertyName::C_PRIME_II: {
      bool first = prop == PropertyName::C_PRIME_I;
      Subspace lhs = first ? im_dm().intersect(kernel_at(dh, k)) : im_dh().intersect(kernel_at(dm, k));
      r.dimensions[std::string(first ? "Im d_-1/h ∩ ker d_h" : "Im d_h ∩ ker d_-1/h") + s] = lhs.dim();
      c.equal(lhs, im_dd(), first ? "Im d_-1/h ∩ ker d_h" + s : "Im d_h ∩ ker d_-1/h" + s, "Im d_h d_-1/h" + s, k);
      break;
    }
    case PropertyName::D_PRIME_I:
    case PropertyName::D_PRIME_II:
    case PropertyName::D_PRIME: {
      if (prop != PropertyName::D_PRIME_II) {
        Subspace lhs = im_dh() + kernel_at(dm, k);
        r.dimensions["Im d_h + ker d_-1/h" + s] = lhs.dim();
        c.equal(lhs, ker_dd(), "Im d_h + ker d_-1/h" + s, "ker d_h d_-1/h" + s, k);
      }
      if (prop != PropertyName::D_PRIME_I) {
        Subspace lhs = im_dm() + kernel_at(dh, k);
        r.dimensions["Im d_-1/h + ker d_h" + s] = lhs.dim();
        c.equal(lhs, ker_dd(), "Im d_-1/h + ker d_h" + s, "ker d_h d_-1/h" + s, k);
      }
      break;
    }
    case PropertyName::L:
    case PropertyName::HDDBAR: {
      Subspace kk = K();
      r.dimensions["ker d_h ∩ ker d_-1/h" + s] = kk.dim();
      c.include(kk.intersect(im_dh()), im_dd(), "ker d_-1/h ∩ Im d_h" + s + " ⊆ Im d_h d_-1/h", k);
      c.include(kk.intersect(im_dm()), im_dd(), "ker d_h ∩ Im d_-1/h" + s + " ⊆ Im d_h d_-1/h", k);
      if (prop == PropertyName::HDDBAR)
        c.include(kk.intersect(image_into(alg.d(), k, sp)), im_dd(),
                  "ker d_h ∩ ker d_-1/h ∩ Im d" + s + " ⊆ Im d_h d_-1/h", k);
      break;
    }
    case PropertyName::A:
    case PropertyName::B: {
      CohomologyGroup bc = eng.cohomology(Theory::HBC, k, h);
      CohomologyGroup ha = eng.cohomology(Theory::HA, k, h);
      r.dimensions["hBC" + s] = bc.dimension();
      r.dimensions["hA" + s] = ha.dimension();
      if (prop == PropertyName::A) {
        injective(bc, ha, "H_hBC" + s + " -> H_hA" + s + " injective");
      } else {
        MapData m = class_map(bc, ha);
        if (m.rank < ha.dimension()) {
          Subspace img = m.matrix.cols() ? Subspace::image(m.matrix) : Subspace(ha.dimension());
          auto w = Subspace::whole(ha.dimension()).first_outside(img);
          c.fail("H_hBC" + s + " -> H_hA" + s + " surjective", combine(sp, ha.representatives(), *w, k));
        }
      }
      break;
    }
    case PropertyName::C: {
      CohomologyGroup bc = eng.cohomology(Theory::HBC, k, h);
      CohomologyGroup hm = eng.cohomology(Theory::DH, k, Rational(-1 / h));
      CohomologyGroup hp = eng.cohomology(Theory::DH, k, h);
      r.dimensions["hBC" + s] = bc.dimension();
      injective(bc, hm, "H_hBC" + s + " -> H_d_-1/h" + s + " injective");
      injective(bc, hp, "H_hBC" + s + " -> H_d_h" + s + " injective");
      break;
    }
    case PropertyName::DDBAR_A: {
      Subspace lhs =
          kernel_at(alg.partial(), k).intersect(kernel_at(alg.partial_bar(), k)).intersect(image_into(alg.d(), k, sp));
      r.dimensions["ker del ∩ ker delbar ∩ Im d" + s] = lhs.dim();
      c.include(lhs, image_into(alg.ddbar(), k, sp), "ker del ∩ ker delbar ∩ Im d" + s + " ⊆ Im del delbar", k);
      break;
    }
    case PropertyName::DDBAR_B: {
      int n = alg.n();
      for (int p = std::max(0, k - n); p <= std::min(k, n) && c.ok(); ++p) {
        Bidegree b{p, k - p};
        std::string bs = "^{" + kstr(b.p) + "," + kstr(b.q) + "}";
        auto bl = [&](const GradedOp& op, Bidegree src) {
          if (src.p < 0 || src.q < 0) return Matrix(sp.dim(b), 0);
          return op.bidegree_block(src, b);
        };
        auto kern = [&](const GradedOp& op, Bidegree tgt) {
          if (tgt.p > n || tgt.q > n) return Subspace::whole(sp.dim(b));
          Matrix m = op.bidegree_block(b, tgt);
          return m.rows() ? Subspace::kernel(m) : Subspace::whole(sp.dim(b));
        };
        Subspace kk = kern(alg.partial(), {b.p + 1, b.q}).intersect(kern(alg.partial_bar(), {b.p, b.q + 1}));
        Subspace im_ddb = Subspace::image(bl(alg.ddbar(), {b.p - 1, b.q - 1}));
        Subspace im_del = Subspace::image(bl(alg.partial(), {b.p - 1, b.q}));
        Subspace im_delb = Subspace::image(bl(alg.partial_bar(), {b.p, b.q - 1}));
        // Im d intersected with pure (p,q)-forms, then restricted to the block.
        Subspace im_d = image_into(alg.d(), k, sp).intersect(Subspace::coordinate(amb, sp.offset(b), sp.dim(b)));
        Matrix pure = im_d.basis().block(sp.offset(b), 0, sp.dim(b), im_d.dim());
        Subspace im_d_pure = Subspace::span(pure);
        r.dimensions["ker del ∩ ker delbar" + bs] = kk.dim();
        c.include_bidegree(kk.intersect(im_d_pure), im_ddb, "ker del ∩ ker delbar ∩ Im d" + bs + " ⊆ Im del delbar", b);
        c.include_bidegree(kk.intersect(im_del), im_ddb, "ker delbar ∩ Im del" + bs + " ⊆ Im del delbar", b);
        c.include_bidegree(kk.intersect(im_delb), im_ddb, "ker del ∩ Im delbar" + bs + " ⊆ Im del delbar", b);
      }
      break;
    }
    default:
      break;
  }
}

void check_page_property(const CohomologyEngine& eng, PropertyName prop, Checker& c, PropertyReport& r) {
  const FormSpace& sp = *eng.algebra().space();
  int n = eng.n();
  int degen = eng.degeneration_page();
  r.dimensions["degeneration page"] = static_cast<std::size_t>(degen);
  auto nonzero_differential = [&](int page_r, std::optional<Bidegree> only) {
    const SpectralPage& pg = eng.page(page_r);
    for (const auto& [b, m] : pg.differential) {
      if (only && !(b == *only)) continue;
      if (m.is_zero()) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.column(j).is_zero()) continue;
        Form w = sp.from_vector(pg.groups.at(b).representatives().column(j), b);
        c.fail("d_" + kstr(page_r) + " = 0 on E_" + kstr(page_r) + "^{" + kstr(b.p) + "," + kstr(b.q) + "}", w);
        return;
      }
    }
  };
  switch (prop) {
    case PropertyName::E1_DEGEN:
      for (int pr = 1; pr < degen && c.ok(); ++pr) nonzero_differential(pr, std::nullopt);
      if (degen > 1 && c.ok()) c.fail("E_1 = E_infinity", Form(n));
      break;
    case PropertyName::E2_DEGEN:
      for (int pr = 2; pr < degen && c.ok(); ++pr) nonzero_differential(pr, std::nullopt);
      if (degen > 2 && c.ok()) c.fail("E_2 = E_infinity", Form(n));
      break;
    case PropertyName::PARTIAL_E2: {
      Bidegree b{n - 2, n};
      if (b.p < 0) break;
      r.dimensions["e2^{n-2,n}"] = eng.e(2, b);
      nonzero_differential(2, b);
      break;
    }
    default:
      break;
  }
}

void check_sgg(const CohomologyEngine& eng, Checker& c, PropertyReport& r) {
  const DifferentialAlgebra& alg = eng.algebra();
  const FormSpace& sp = *alg.space();
  int n = alg.n();
  Bidegree b{n, n - 1};
  Subspace im_del = Subspace::image(alg.partial().bidegree_block({n - 1, n - 1}, b));
  Matrix kb = alg.partial_bar().bidegree_block(b, {n, n});
  Subspace ker_db = Subspace::kernel(kb);
  Subspace im_db = n >= 2 ? Subspace::image(alg.partial_bar().bidegree_block({n, n - 2}, b)) : Subspace(sp.dim(b));
  Subspace lhs = im_del.intersect(ker_db);
  r.dimensions["Im del ∩ ker delbar^{n,n-1}"] = lhs.dim();
  r.dimensions["Im delbar^{n,n-1}"] = im_db.dim();
  c.include_bidegree(lhs, im_db, "Im del ∩ ker delbar^{n,n-1} ⊆ Im delbar", b);
}

bool degree_indexed(PropertyName p) {
  switch (p) {
    case PropertyName::SGG:
    case PropertyName::E1_DEGEN:
    case PropertyName::E2_DEGEN:
    case PropertyName::PARTIAL_E2:
      return false;
    default:
      return true;
  }
}

}  // namespace

std::string property_name(PropertyName p) {
  for (const auto& [v, s] : name_table())
    if (v == p) return s;
  return "?";
}

std::optional<PropertyName> property_from_name(const std::string& name) {
  for (const auto& [v, s] : name_table())
    if (name == s) return v;
  return std::nullopt;
}

std::vector<PropertyName> all_properties() {
  std::vector<PropertyName> out;
  for (const auto& [v, s] : name_table()) out.push_back(v);
  return out;
}

bool property_uses_k(PropertyName p) { return degree_indexed(p); }

bool property_uses_h(PropertyName p) {
  switch (p) {
    case PropertyName::SGG:
    case PropertyName::DDBAR_A:
    case PropertyName::DDBAR_B:
    case PropertyName::E1_DEGEN:
    case PropertyName::E2_DEGEN:
    case PropertyName::PARTIAL_E2:
      return false;
    default:
      return true;
  }
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["model"] = r.model;
  j["property"] = r.property;
  j["k"] = r.k ? Json(*r.k) : Json(nullptr);
  j["h"] = r.h ? Json(rational_to_string(*r.h)) : Json(nullptr);
  j["verdict"] = r.verdict;
  j["clause"] = r.clause;
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["dimensions"] = Json::object();
  for (const auto& [key, v] : r.dimensions) j["dimensions"][key] = v;
  return j;
}

PropertyReport check_property(const CohomologyEngine& engine, PropertyName prop, std::optional<int> k,
                              std::optional<Rational> h) {
  const FormSpace& sp = *engine.algebra().space();
  PropertyReport r;
  r.model = engine.algebra().model().name;
  r.property = property_name(prop);
  if (property_uses_h(prop)) {
    if (!h) h = Rational(1);
    if (*h == 0) throw WorkbenchError("h must be nonzero");
    r.h = h;
  }
  Checker c(r, sp);
  if (!degree_indexed(prop)) {
    if (prop == PropertyName::SGG)
      check_sgg(engine, c, r);
    else
      check_page_property(engine, prop, c, r);
    r.verdict = c.ok() ? "true" : "false";
    return r;
  }
  r.k = k;
  std::vector<int> degrees;
  if (k) {
    if (*k < 0 || *k > sp.top_degree() || sp.dim(*k) == 0) {
      r.verdict = "vacuous";
      return r;
    }
    degrees.push_back(*k);
  } else {
    for (int d = 0; d <= sp.top_degree(); ++d) degrees.push_back(d);
  }
  Rational hv = h ? *h : Rational(1);
  for (int d : degrees) {
    if (!c.ok()) break;
    check_degree(engine, prop, d, hv, c, r);
  }
  r.verdict = c.ok() ? "true" : "false";
  return r;
}

Json to_json(const ChainReport& r) {
  Json j;
  j["k"] = r.k;
  j["h"] = rational_to_string(r.h);
  j["consistent"] = r.consistent;
  j["verdicts"] = Json::object();
  for (const auto& [key, v] : r.verdicts) j["verdicts"][key] = v;
  return j;
}

ChainReport verify_equivalence_chain(const CohomologyEngine& engine, int k, const Rational& h) {
  if (k < 1) throw WorkbenchError("equivalence chain needs k >= 1");
  ChainReport r;
  r.k = k;
  r.h = h;
  r.verdicts["L_k"] = check_property(engine, PropertyName::L, k, h).holds();
  r.verdicts["A_k"] = check_property(engine, PropertyName::A, k, h).holds();
  r.verdicts["C_k"] = check_property(engine, PropertyName::C, k, h).holds();
  r.verdicts["D'_{k-1}"] = check_property(engine, PropertyName::D_PRIME, k - 1, h).holds();
  r.verdicts["B_{k-1}"] = check_property(engine, PropertyName::B, k - 1, h).holds();
  bool first = r.verdicts.begin()->second;
  for (const auto& [key, v] : r.verdicts)
    if (v != first) r.consistent = false;
  return r;
}

Json to_json(const CanonicalMaps& m) {
  Json j;
  j["k"] = m.k;
  j["h"] = rational_to_string(m.h);
  j["dim_bc"] = m.dim_bc;
  j["dim_dh"] = m.dim_dh;
  j["dim_a"] = m.dim_a;
  j["bc_to_dh"] = to_json(m.bc_to_dh);
  j["dh_to_a"] = to_json(m.dh_to_a);
  j["bc_to_a"] = to_json(m.bc_to_a);
  j["bc_to_a_injective"] = m.bc_to_a_injective;
  j["bc_to_a_surjective"] = m.bc_to_a_surjective;
  return j;
}

CanonicalMaps canonical_map_ranks(const CohomologyEngine& engine, int k, const Rational& h) {
  CanonicalMaps m;
  m.k = k;
  m.h = h;
  CohomologyGroup bc = engine.cohomology(Theory::HBC, k, h);
  CohomologyGroup dh = engine.cohomology(Theory::DH, k, h);
  CohomologyGroup a = engine.cohomology(Theory::HA, k, h);
  m.dim_bc = bc.dimension();
  m.dim_dh = dh.dimension();
  m.dim_a = a.dimension();
  MapData f = class_map(bc, dh);
  MapData g = class_map(dh, a);
  MapData fg = class_map(bc, a);
  m.bc_to_dh = f.matrix;
  m.dh_to_a = g.matrix;
  m.bc_to_a = fg.matrix;
  m.bc_to_a_injective = fg.rank == m.dim_bc;
  m.bc_to_a_surjective = fg.rank == m.dim_a;
  return m;
}

}  // namespace nilwb
