#include "nilwb/deformation.hpp"

#include <algorithm>
#include <cmath>

namespace nilwb {

namespace {

Form generator_form(int n, int j) { return j < n ? Form::generator(n, j) : Form::conj_generator(n, j - n); }

// Forms sum_j m(l, j) gen_j for every row l.
std::vector<Form> row_forms(const Matrix& m, int n) {
  std::vector<Form> out;
  for (int l = 0; l < 2 * n; ++l) {
    Form f(n);
    for (int j = 0; j < 2 * n; ++j)
      if (!m(l, j).is_zero()) f += generator_form(n, j).scaled(m(l, j));
    out.push_back(std::move(f));
  }
  return out;
}

Matrix checked_frame(const DeformationFamily& family, const Rational& t) {
  Matrix f = family.frame_matrix(t);
  if (determinant(f).is_zero())
    throw WorkbenchError("frame is degenerate at " + family.parameter + "=" + rational_to_string(t));
  return f;
}

// Expresses a fibre-coframe form in eta.
Form to_eta(const Form& f, const Matrix& frame, int n) { return substitute(f, row_forms(inverse(frame), n)); }
// Expresses an eta form in the fibre coframe.
Form from_eta(const Form& f, const Matrix& frame, int n) { return substitute(f, row_forms(frame, n)); }

std::string pq(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }
std::string hkey(const Rational& h) { return "@h=" + rational_to_string(h); }

double max_abs_entry(const Matrix& m) {
  double out = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out = std::max(out, std::abs(m(i, j).to_complex()));
  return out;
}

bool is_semicontinuous_key(const std::string& key) {
  // Dolbeault "h<p>,<q>", Bott-Chern "bc<p>,<q>" and Aeppli "a<p>,<q>" numbers.
  auto digits_after = [&](std::size_t pos) { return pos < key.size() && std::isdigit(static_cast<unsigned char>(key[pos])); };
  if (key.rfind("bc", 0) == 0) return digits_after(2);
  if (key.rfind("a", 0) == 0) return digits_after(1);
  if (key.rfind("h", 0) == 0) return digits_after(1);
  return false;
}

FibreRow analyze_fibre(const LieComplexModel& model, const Rational& t, const std::vector<Rational>& hs,
                       const SweepOptions& opt) {
  auto alg = std::make_shared<const DifferentialAlgebra>(model);
  CohomologyEngine eng(alg);
  int n = model.n;
  FibreRow row;
  row.t = t;
  for (int k = 0; k <= 2 * n; ++k)
    row.dimensions["b" + std::to_string(k)] = eng.cohomology(Theory::DeRham, k).dimension();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      Bidegree b{p, q};
      row.dimensions["h" + pq(p, q)] = eng.cohomology(Theory::DolbeaultBar, b).dimension();
      row.dimensions["bc" + pq(p, q)] = eng.cohomology(Theory::BottChern, b).dimension();
      row.dimensions["a" + pq(p, q)] = eng.cohomology(Theory::Aeppli, b).dimension();
      row.dimensions["e2_" + pq(p, q)] = eng.e(2, b);
    }
  for (const auto& h : hs) {
    for (int k = 0; k <= 2 * n; ++k) {
      row.dimensions["hbc" + std::to_string(k) + hkey(h)] = eng.cohomology(Theory::HBC, k, h).dimension();
      row.dimensions["ha" + std::to_string(k) + hkey(h)] = eng.cohomology(Theory::HA, k, h).dimension();
    }
    row.verdicts["h-ddbar" + hkey(h)] = check_property(eng, PropertyName::HDDBAR, std::nullopt, h).verdict;
  }
  row.verdicts["sGG"] = check_property(eng, PropertyName::SGG).verdict;
  row.verdicts["partial-E2"] = check_property(eng, PropertyName::PARTIAL_E2).verdict;
  row.verdicts["E1-degeneration"] = check_property(eng, PropertyName::E1_DEGEN).verdict;
  row.verdicts["E2-degeneration"] = check_property(eng, PropertyName::E2_DEGEN).verdict;
  if (opt.feasibility && n >= 2) {
    row.verdicts["feasible-sg"] = metric_feasibility(*alg, MetricKind::StronglyGauduchon, opt.solver).verdict;
    row.verdicts["feasible-kahler"] = metric_feasibility(*alg, MetricKind::Kahler, opt.solver).verdict;
  }
  return row;
}

void finish_claim(ClaimCheck& c, bool applicable) {
  if (!applicable)
    c.verdict = "not-applicable";
  else
    c.verdict = c.violations.empty() ? "consistent" : "violated";
}

std::vector<SectionSample> section_samples(const DeformationFamily& family, const E2sGElement& el,
                                           const CohomologyGroup& base_dr, const std::vector<Rational>& grid,
                                           bool check_pin) {
  int n = family.n;
  Bidegree b{n - 2, n}, mid{n - 1, n - 1};
  std::vector<SectionSample> out;
  for (const auto& t : grid) {
    SectionSample s;
    s.t = t;
    Matrix frame = checked_frame(family, t);
    auto alg = std::make_shared<const DifferentialAlgebra>(evaluate_family(family, t, check_pin));
    s.omega_power = from_eta(el.gamma_omega, frame, n).component(mid);
    if (!positivity(s.omega_power, PositivityKind::NMinusOne).positive)
      throw WorkbenchError("positivity lost at " + family.parameter + "=" + rational_to_string(t) +
                           "; shrink the grid step");
    RootResult root = root_n_minus_1(s.omega_power);
    s.gram = root.gram;
    s.root_residual = root.rational_residual;
    HermitianMetric metric(root.gram);
    auto gamma = minimal_norm_solution(alg->partial(), b, alg->partial_bar(s.omega_power).scaled(-1), metric);
    if (!gamma) throw WorkbenchError("falsified: no (n-2,n) potential on the fibre");
    s.gamma = *gamma;
    s.gamma_omega = gamma->conjugate() + s.omega_power + *gamma;
    s.closed = alg->d(s.gamma_omega).is_zero();
    if (s.closed) s.tau = base_dr.coordinates(alg->space()->to_vector(to_eta(s.gamma_omega, frame, n), 2 * n - 2));
    out.push_back(std::move(s));
  }
  return out;
}

double max_jump(const std::vector<SectionSample>& s) {
  double out = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!s[i].closed || !s[i - 1].closed) continue;
    out = std::max(out, max_abs_entry(s[i].tau - s[i - 1].tau));
  }
  return out;
}

}  // namespace

std::vector<Form> frame_structure(const DeformationFamily& family, const Rational& t) {
  int n = family.n;
  LieComplexModel m = family.evaluate(t);
  Matrix frame = checked_frame(family, t);
  std::vector<Form> dgen;
  for (int j = 0; j < n; ++j) dgen.push_back(m.structure[j]);
  for (int j = 0; j < n; ++j) dgen.push_back(m.structure[j].conjugate());
  std::vector<Form> out;
  std::vector<Form> images = row_forms(inverse(frame), n);
  for (int k = 0; k < n; ++k) {
    Form d(n);
    for (int j = 0; j < 2 * n; ++j)
      if (!frame(k, j).is_zero()) d += dgen[j].scaled(frame(k, j));
    out.push_back(substitute(d, images));
  }
  return out;
}

LieComplexModel evaluate_family(const DeformationFamily& family, const Rational& t, bool check_pin) {
  LieComplexModel m = family.evaluate(t);
  if (check_pin && t != 0) {
    std::vector<Form> now = frame_structure(family, t);
    std::vector<Form> base = family.evaluate(0).structure;
    for (int k = 0; k < family.n; ++k)
      if (!(now[k] == base[k]))
        throw WorkbenchError("smooth-structure drift at " + family.parameter + "=" + rational_to_string(t) +
                             ": d eta^" + std::to_string(k + 1) + " = " + now[k].to_string() + " differs from " +
                             base[k].to_string());
  }
  return m;
}

GridSpec parse_grid(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw WorkbenchError("grid must be step:count");
  GridSpec g;
  g.step = rational_from_string(text.substr(0, colon));
  std::string count = text.substr(colon + 1);
  if (count.empty() || !std::all_of(count.begin(), count.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw WorkbenchError("grid count must be a non-negative integer");
  g.count = std::stoi(count);
  if (sgn(g.step) <= 0) throw WorkbenchError("grid step must be positive");
  return g;
}

std::vector<Rational> grid_points(const GridSpec& g) {
  std::vector<Rational> out;
  for (int j = -g.count; j <= g.count; ++j) out.push_back(Rational(g.step * j));
  return out;
}

bool SweepReport::falsified() const {
  return std::any_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.verdict == "violated"; });
}

const FibreRow& SweepReport::center() const {
  for (const auto& r : rows)
    if (r.t == 0) return r;
  throw WorkbenchError("sweep has no t=0 row");
}

SweepReport sweep(const DeformationFamily& family, const std::vector<Rational>& grid, const std::vector<Rational>& hs,
                  const SweepOptions& opt) {
  if (std::find(grid.begin(), grid.end(), Rational(0)) == grid.end()) throw WorkbenchError("grid must contain 0");
  SweepReport rep;
  rep.family = family.name;
  rep.grid = grid;
  std::sort(rep.grid.begin(), rep.grid.end());
  rep.h_values = hs;
  for (const auto& t : rep.grid) rep.rows.push_back(analyze_fibre(evaluate_family(family, t, opt.check_pin), t, hs, opt));
  const FibreRow& c = rep.center();
  std::string par = family.parameter + "=";

  ClaimCheck semi{"upper-semicontinuity", "", {}};
  for (const auto& r : rep.rows)
    for (const auto& [key, v] : r.dimensions)
      if (is_semicontinuous_key(key) && v > c.dimensions.at(key))
        semi.violations.push_back(par + rational_to_string(r.t) + ": " + key + " = " + std::to_string(v) + " > " +
                                  std::to_string(c.dimensions.at(key)));
  finish_claim(semi, true);
  rep.claims.push_back(semi);

  for (const auto& h : hs) {
    bool central = c.verdicts.at("h-ddbar" + hkey(h)) == "true";
    ClaimCheck jump{"non-jumping" + hkey(h), "", {}};
    ClaimCheck open{"h-ddbar-openness" + hkey(h), "", {}};
    if (central) {
      for (const auto& r : rep.rows) {
        for (const auto& [key, v] : r.dimensions) {
          bool hkeyed = (key.rfind("hbc", 0) == 0 || key.rfind("ha", 0) == 0) && key.size() > hkey(h).size() &&
                        key.compare(key.size() - hkey(h).size(), hkey(h).size(), hkey(h)) == 0;
          if (hkeyed && v != c.dimensions.at(key))
            jump.violations.push_back(par + rational_to_string(r.t) + ": " + key + " = " + std::to_string(v) +
                                      " differs from " + std::to_string(c.dimensions.at(key)));
        }
        if (r.verdicts.at("h-ddbar" + hkey(h)) != "true")
          open.violations.push_back(par + rational_to_string(r.t) + ": not an h-ddbar fibre");
      }
    }
    finish_claim(jump, central);
    finish_claim(open, central);
    rep.claims.push_back(jump);
    rep.claims.push_back(open);
  }

  ClaimCheck sgg{"sGG-openness", "", {}};
  bool central_sgg = c.verdicts.at("sGG") == "true";
  if (central_sgg)
    for (const auto& r : rep.rows)
      if (r.verdicts.at("sGG") != "true") sgg.violations.push_back(par + rational_to_string(r.t) + ": not sGG");
  finish_claim(sgg, central_sgg);
  rep.claims.push_back(sgg);

  ClaimCheck impl{"fibre-implications", "", {}};
  for (const auto& r : rep.rows) {
    if (r.verdicts.at("sGG") == "true" && r.verdicts.at("partial-E2") != "true")
      impl.violations.push_back(par + rational_to_string(r.t) + ": sGG without d_2^{n-2,n} = 0");
    for (const auto& h : hs)
      if (r.verdicts.at("h-ddbar" + hkey(h)) == "true" && r.verdicts.at("E1-degeneration") != "true")
        impl.violations.push_back(par + rational_to_string(r.t) + ": h-ddbar" + hkey(h) + " without E_1 degeneration");
  }
  finish_claim(impl, true);
  rep.claims.push_back(impl);

  rep.all_rows_identical = std::all_of(rep.rows.begin(), rep.rows.end(), [&](const FibreRow& r) {
    return r.dimensions == c.dimensions && r.verdicts == c.verdicts;
  });
  return rep;
}

Json to_json(const SweepReport& r) {
  Json j;
  j["family"] = r.family;
  j["grid"] = Json::array();
  for (const auto& t : r.grid) j["grid"].push_back(rational_to_string(t));
  j["h"] = Json::array();
  for (const auto& h : r.h_values) j["h"].push_back(rational_to_string(h));
  j["rows"] = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["t"] = rational_to_string(row.t);
    x["dimensions"] = Json::object();
    for (const auto& [k, v] : row.dimensions) x["dimensions"][k] = v;
    x["verdicts"] = Json::object();
    for (const auto& [k, v] : row.verdicts) x["verdicts"][k] = v;
    j["rows"].push_back(x);
  }
  j["claims"] = Json::array();
  for (const auto& c : r.claims) j["claims"].push_back({{"claim", c.claim}, {"verdict", c.verdict}, {"violations", c.violations}});
  j["all_rows_identical"] = r.all_rows_identical;
  j["falsified"] = r.falsified();
  return j;
}

SectionReport tau_section(const DeformationFamily& family, const HermitianMetric& omega, const GridSpec& grid,
                          bool check_pin) {
  int n = family.n;
  if (n < 2) throw WorkbenchError("the section needs n >= 2");
  auto alg0 = std::make_shared<const DifferentialAlgebra>(evaluate_family(family, 0, check_pin));
  CohomologyEngine eng0(alg0);
  E2sGElement el = e2sg_element(eng0, omega);
  CohomologyGroup dr = eng0.cohomology(Theory::DeRham, 2 * n - 2);
  SectionReport rep;
  rep.family = family.name;
  rep.samples = section_samples(family, el, dr, grid_points(grid), check_pin);
  GridSpec fine{Rational(grid.step / 2), 2 * grid.count};
  std::vector<SectionSample> fine_samples = section_samples(family, el, dr, grid_points(fine), check_pin);
  rep.jump_coarse = max_jump(rep.samples);
  rep.jump_fine = max_jump(fine_samples);
  rep.all_closed = true;
  for (const auto& s : rep.samples) {
    rep.all_closed = rep.all_closed && s.closed;
    rep.max_root_residual = std::max(rep.max_root_residual, s.root_residual);
    if (s.t == 0) rep.center_matches = s.gamma_omega == el.gamma_omega && s.gram == omega.gram() && s.tau == el.de_rham_coordinates;
  }
  for (const auto& s : fine_samples) rep.all_closed = rep.all_closed && s.closed;
  return rep;
}

Json to_json(const SectionReport& r) {
  Json j;
  j["family"] = r.family;
  j["samples"] = Json::array();
  for (const auto& s : r.samples) {
    Json x;
    x["t"] = rational_to_string(s.t);
    x["gram"] = to_json(s.gram);
    x["omega_power"] = to_json(s.omega_power);
    x["gamma"] = to_json(s.gamma);
    x["gamma_omega"] = to_json(s.gamma_omega);
    x["tau"] = to_json(s.tau);
    x["closed"] = s.closed;
    x["root_residual"] = s.root_residual;
    j["samples"].push_back(x);
  }
  j["jump_coarse"] = r.jump_coarse;
  j["jump_fine"] = r.jump_fine;
  j["max_root_residual"] = r.max_root_residual;
  j["all_closed"] = r.all_closed;
  j["center_matches"] = r.center_matches;
  return j;
}

}  // namespace nilwb
