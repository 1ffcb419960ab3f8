#include "nilwb/workbench.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilwb/parser.hpp"

namespace nilwb {

namespace {

class UsageError : public WorkbenchError {
 public:
  using WorkbenchError::WorkbenchError;
};

std::vector<Rational> h_set(const RunConfig& cfg) {
  std::vector<Rational> hs = cfg.h_values.empty() ? std::vector<Rational>{Rational(1)} : cfg.h_values;
  for (const auto& h : hs)
    if (h == 0) throw UsageError("h must be nonzero");
  return hs;
}

std::vector<int> k_set(const RunConfig& cfg, int n) {
  if (cfg.k_values.empty()) {
    std::vector<int> ks;
    for (int k = 0; k <= 2 * n; ++k) ks.push_back(k);
    return ks;
  }
  for (int k : cfg.k_values)
    if (k < 0 || k > 2 * n) throw UsageError("k out of range 0.." + std::to_string(2 * n));
  return cfg.k_values;
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  o.restarts = cfg.restarts;
  o.seed = cfg.seed;
  o.rationalize_bound = cfg.rationalize_bound;
  return o;
}

LieComplexModel load_model(const std::string& path) { return parse_model(read_text_file(path)); }

HermitianMetric resolve_metric(const RunConfig& cfg, int n, const std::optional<Matrix>& own) {
  if (cfg.metric.empty() || cfg.metric == "file") {
    if (own) return HermitianMetric(*own);
    if (cfg.metric == "file") throw UsageError("model has no metric block");
    return HermitianMetric::identity(n);
  }
  if (cfg.metric == "identity") return HermitianMetric::identity(n);
  LieComplexModel other = load_model(cfg.metric);
  if (!other.metric) throw UsageError("metric file " + cfg.metric + " has no metric block");
  if (other.n != n) throw UsageError("metric file has a different dimension");
  return HermitianMetric(*other.metric);
}

std::string pq(Bidegree b) { return std::to_string(b.p) + "," + std::to_string(b.q); }

struct Checks {
  Json list = Json::array();
  std::vector<std::string> falsified;
  void add(const std::string& name, bool ok, const std::string& detail = "") {
    list.push_back({{"check", name}, {"holds", ok}, {"detail", detail}});
    if (!ok) falsified.push_back(name + (detail.empty() ? "" : ": " + detail));
  }
};

Json bigraded_dims(const CohomologyEngine& eng, Theory th) {
  Json j = Json::object();
  int n = eng.n();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) j[pq({p, q})] = eng.cohomology(th, Bidegree{p, q}).dimension();
  return j;
}

std::size_t bigraded_sum(const CohomologyEngine& eng, Theory th, int k) {
  std::size_t s = 0;
  int n = eng.n();
  for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) s += eng.cohomology(th, Bidegree{p, k - p}).dimension();
  return s;
}

std::string witness_text(const PropertyReport& r) {
  return r.witness ? r.clause + " (witness " + r.witness->to_string() + ")" : r.clause;
}

}  // namespace

CommandResult cmd_analyze(const RunConfig& cfg) {
  LieComplexModel model = load_model(cfg.path);
  auto alg = std::make_shared<const DifferentialAlgebra>(model);
  CohomologyEngine eng(alg);
  int n = model.n;
  std::vector<Rational> hs = h_set(cfg);
  std::vector<int> ks = k_set(cfg, n);
  CommandResult res;
  Checks checks;
  Json& j = res.report;
  j["model"] = model.name;
  j["n"] = n;
  j["seed"] = cfg.seed;

  std::vector<std::size_t> betti;
  Json b = Json::object();
  for (int k = 0; k <= 2 * n; ++k) {
    betti.push_back(eng.cohomology(Theory::DeRham, k).dimension());
    b["b" + std::to_string(k)] = betti.back();
  }
  j["dimensions"]["deRham"] = b;
  j["dimensions"]["Dolbeault"] = bigraded_dims(eng, Theory::DolbeaultBar);
  j["dimensions"]["BottChern"] = bigraded_dims(eng, Theory::BottChern);
  j["dimensions"]["Aeppli"] = bigraded_dims(eng, Theory::Aeppli);

  Json pages = Json::array();
  for (const auto& pg : eng.frolicher_pages()) {
    Json e = Json::object();
    for (const auto& [bd, g] : pg.groups) e[pq(bd)] = g.dimension();
    pages.push_back({{"r", pg.r}, {"e", e}});
  }
  j["frolicher"]["pages"] = pages;
  j["frolicher"]["degeneration_page"] = eng.degeneration_page();
  j["E1_degenerate"] = eng.e1_degenerate();
  j["E2_degenerate"] = eng.e2_degenerate();
  const SpectralPage& last = eng.frolicher_pages().back();
  for (int k = 0; k <= 2 * n; ++k) {
    std::size_t s = 0;
    for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) s += last.dim({p, k - p});
    checks.add("sum of e_inf over degree " + std::to_string(k) + " equals b_" + std::to_string(k), s == betti[k],
               std::to_string(s) + " vs " + std::to_string(betti[k]));
  }

  Json props = Json::array();
  std::map<PropertyName, PropertyReport> plain;
  for (PropertyName p : all_properties()) {
    if (property_uses_h(p)) continue;
    plain[p] = check_property(eng, p);
    props.push_back(to_json(plain[p]));
  }
  j["properties"] = props;
  if (plain[PropertyName::SGG].holds())
    checks.add("sGG implies d_2 = 0 on E_2^{n-2,n}", plain[PropertyName::PARTIAL_E2].holds(),
               witness_text(plain[PropertyName::PARTIAL_E2]));

  Json hsec = Json::object();
  for (const auto& h : hs) {
    Json sec;
    std::string hs_txt = rational_to_string(h);
    Json dh = Json::object(), bc = Json::object(), ha = Json::object();
    std::vector<std::size_t> dbc, dha;
    for (int k = 0; k <= 2 * n; ++k) {
      std::size_t x = eng.cohomology(Theory::DH, k, h).dimension();
      dbc.push_back(eng.cohomology(Theory::HBC, k, h).dimension());
      dha.push_back(eng.cohomology(Theory::HA, k, h).dimension());
      dh["h" + std::to_string(k)] = x;
      bc["h" + std::to_string(k)] = dbc.back();
      ha["h" + std::to_string(k)] = dha.back();
      std::string tag = " (k=" + std::to_string(k) + ", h=" + hs_txt + ")";
      checks.add("dim H_{d_h} = b_k" + tag, x == betti[k]);
      checks.add("2 b_k <= hBC_k + hA_k" + tag, 2 * betti[k] <= dbc.back() + dha.back());
      checks.add("hBC_k splits into Bott-Chern numbers" + tag, dbc.back() == bigraded_sum(eng, Theory::BottChern, k));
      checks.add("hA_k splits into Aeppli numbers" + tag, dha.back() == bigraded_sum(eng, Theory::Aeppli, k));
    }
    sec["d_h"] = dh;
    sec["hBC"] = bc;
    sec["hA"] = ha;
    Json hp = Json::array();
    for (PropertyName p : all_properties()) {
      if (!property_uses_h(p)) continue;
      if (property_uses_k(p) && !cfg.k_values.empty()) {
        for (int k : ks) hp.push_back(to_json(check_property(eng, p, k, h)));
      } else {
        hp.push_back(to_json(check_property(eng, p, std::nullopt, h)));
      }
    }
    sec["properties"] = hp;
    PropertyReport hdd = check_property(eng, PropertyName::HDDBAR, std::nullopt, h);
    if (hdd.holds()) {
      checks.add("h-ddbar implies E_1 degeneration (h=" + hs_txt + ")", eng.e1_degenerate());
      for (int k = 0; k <= 2 * n; ++k)
        checks.add("h-ddbar implies 2 b_k = hBC_k + hA_k (k=" + std::to_string(k) + ", h=" + hs_txt + ")",
                   2 * betti[k] == dbc[k] + dha[k]);
    }
    Json chains = Json::array(), maps = Json::array();
    for (int k : ks) {
      if (k >= 1) {
        ChainReport c = verify_equivalence_chain(eng, k, h);
        chains.push_back(to_json(c));
        checks.add("equivalence chain L_k, A_k, C_k, D'_{k-1}, B_{k-1} (k=" + std::to_string(k) + ", h=" + hs_txt + ")",
                   c.consistent);
      }
      CanonicalMaps m = canonical_map_ranks(eng, k, h);
      maps.push_back(to_json(m));
      bool a = check_property(eng, PropertyName::A, k, h).holds();
      bool bb = check_property(eng, PropertyName::B, k, h).holds();
      checks.add("canonical map flags match A_k and B_k (k=" + std::to_string(k) + ", h=" + hs_txt + ")",
                 a == m.bc_to_a_injective && bb == m.bc_to_a_surjective);
    }
    sec["chains"] = chains;
    sec["canonical_maps"] = maps;
    hsec[hs_txt] = sec;
  }
  j["h_sections"] = hsec;

  Json feas = Json::array();
  bool skt = false;
  for (MetricKind kind : {MetricKind::Gauduchon, MetricKind::StronglyGauduchon, MetricKind::SKT, MetricKind::Kahler}) {
    if (n < 2 && (kind == MetricKind::Gauduchon || kind == MetricKind::StronglyGauduchon)) continue;
    FeasibilityResult f = metric_feasibility(*alg, kind, solver_options(cfg));
    feas.push_back(to_json(f));
    if (kind == MetricKind::SKT) skt = f.feasible();
  }
  j["feasibility"] = feas;
  j["skt_e2_probe"] = {{"skt_feasible", skt},
                       {"E2_degenerate", eng.e2_degenerate()},
                       {"counterexample", skt && !eng.e2_degenerate()}};
  j["invariant_checks"] = checks.list;
  j["falsified"] = checks.falsified;
  res.falsified = checks.falsified;
  res.exit_code = res.falsified.empty() ? ExitOk : ExitFalsified;
  return res;
}

CommandResult cmd_identities(const RunConfig& cfg) {
  LieComplexModel model = load_model(cfg.path);
  auto alg = std::make_shared<const DifferentialAlgebra>(model);
  HermitianMetric metric = resolve_metric(cfg, model.n, model.metric);
  std::vector<IdentityName> ids;
  if (cfg.identities.empty()) {
    ids = all_identities();
  } else {
    for (const auto& s : cfg.identities) {
      auto id = identity_from_name(s);
      if (!id) throw UsageError("unknown identity '" + s + "'");
      ids.push_back(*id);
    }
  }
  for (const auto& s : cfg.expect_violation)
    if (!identity_from_name(s)) throw UsageError("unknown identity '" + s + "'");
  // At h = 1 several identities collapse to tautologies, so the default sample is h = 2.
  std::vector<Rational> hs = cfg.h_values.empty() ? std::vector<Rational>{Rational(2)} : h_set(cfg);
  CommandResult res;
  Json rows = Json::array();
  for (IdentityName id : ids) {
    bool expect = std::find(cfg.expect_violation.begin(), cfg.expect_violation.end(), identity_name(id)) !=
                  cfg.expect_violation.end();
    for (const auto& h : hs) {
      IdentityReport r = verify_identity(id, alg, metric, h, cfg.lambda, expect);
      Json row = to_json(r);
      std::string st = r.status();
      if (st == "hypothesis-absent") {
        row["display"] = "skipped (" + r.hypothesis + " hypothesis absent)";
      } else if (expect) {
        row["display"] = st == "pass" ? "violated (expected)" : "not violated (violation expected)";
      } else {
        row["display"] = st;
      }
      if (r.falsified())
        res.falsified.push_back(identity_name(id) + " at h=" + rational_to_string(h) + ": " +
                                (r.violations.empty() ? "nonzero residual" : r.violations.front()));
      rows.push_back(row);
    }
  }
  res.report["model"] = model.name;
  res.report["metric"] = to_json(metric.gram());
  res.report["kahler"] = OperatorBundle(alg, metric).is_kahler();
  res.report["rows"] = rows;
  res.report["falsified"] = res.falsified;
  res.exit_code = res.falsified.empty() ? ExitOk : ExitFalsified;
  return res;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  DeformationFamily fam = parse_family(read_text_file(cfg.path));
  SweepOptions opt;
  opt.check_pin = !cfg.skip_pin_check;
  opt.solver = solver_options(cfg);
  SweepReport rep = sweep(fam, grid_points(cfg.grid), h_set(cfg), opt);
  CommandResult res;
  res.report = to_json(rep);
  for (const auto& c : rep.claims)
    for (const auto& v : c.violations) res.falsified.push_back(c.claim + ": " + v);
  if (cfg.section) {
    HermitianMetric metric = resolve_metric(cfg, fam.n, fam.metric);
    SectionReport sec = tau_section(fam, metric, cfg.grid, opt.check_pin);
    res.report["section"] = to_json(sec);
    if (!sec.all_closed) res.falsified.push_back("section: a sampled Gamma_omega(t) is not d-closed");
    if (!sec.center_matches) res.falsified.push_back("section: the t=0 sample differs from the E2sG element");
  }
  res.report["falsified"] = res.falsified;
  res.exit_code = res.falsified.empty() ? ExitOk : ExitFalsified;
  return res;
}

CommandResult cmd_cones(const RunConfig& cfg) {
  LieComplexModel model = load_model(cfg.path);
  auto alg = std::make_shared<const DifferentialAlgebra>(model);
  CohomologyEngine eng(alg);
  int n = model.n;
  HermitianMetric gamma = resolve_metric(cfg, n, model.metric);
  SolverOptions so = solver_options(cfg);
  CommandResult res;
  Checks checks;
  Json& j = res.report;
  j["model"] = model.name;
  j["metric"] = to_json(gamma.gram());
  j["seed"] = cfg.seed;
  Json feas = Json::array();
  for (MetricKind kind : {MetricKind::Gauduchon, MetricKind::StronglyGauduchon, MetricKind::SKT, MetricKind::Kahler}) {
    if (n < 2 && (kind == MetricKind::Gauduchon || kind == MetricKind::StronglyGauduchon)) continue;
    FeasibilityResult f = metric_feasibility(*alg, kind, so);
    if (f.feasible() && (kind == MetricKind::Gauduchon || kind == MetricKind::StronglyGauduchon)) {
      RootResult root = root_n_minus_1(*f.witness);
      Json fj = to_json(f);
      fj["root"] = to_json(root);
      feas.push_back(fj);
    } else {
      feas.push_back(to_json(f));
    }
  }
  j["feasibility"] = feas;
  if (n < 2) {
    res.report["falsified"] = Json::array();
    return res;
  }
  OperatorBundle ops(alg, gamma);
  if (is_strongly_gauduchon(*alg, gamma)) {
    E2sGElement el = e2sg_element(eng, gamma);
    j["e2sg"] = to_json(el);
    checks.add("Gamma_omega is d-closed", el.closed);
    checks.add("Gamma_omega is real", el.real);
    checks.add("T maps the class of Gamma_omega to the E_2 class of Gamma", el.t_consistent);
  } else {
    j["e2sg"] = "metric is not strongly Gauduchon";
  }
  JOmegaReport jr = check_j_omega(eng, ops);
  j["j_omega"] = to_json(jr);
  checks.add("T o j_omega is the identity on ker d_2", jr.t_of_j_identity);
  checks.add("j_omega is injective", jr.j_injective);
  checks.add("dim ker of the pseudo-Laplacian equals e_2", jr.harmonic_dim == jr.e2_dim);
  checks.add("rank T equals dim ker d_2", jr.rank_T == jr.ker_d2_dim);

  std::vector<Form> er = e_real_basis(eng);
  std::vector<Form> samples = er;
  samples.insert(samples.begin(), Form(n));
  Json memb = Json::array();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    std::map<ConeSet, std::string> v;
    Json row;
    row["candidate"] = to_json(samples[s]);
    for (ConeSet set : {ConeSet::V, ConeSet::E, ConeSet::E_R, ConeSet::U_gamma, ConeSet::Creal_gamma}) {
      MembershipResult m = cone_membership(eng, gamma, set, samples[s], so);
      v[set] = m.verdict;
      row[cone_set_name(set)] = to_json(m);
    }
    memb.push_back(row);
    std::string tag = " (sample " + std::to_string(s) + ")";
    checks.add("V is contained in U_gamma" + tag, !(v[ConeSet::V] == "member" && v[ConeSet::U_gamma] == "not-member"));
    checks.add("E_R is contained in Creal_gamma" + tag,
               !(v[ConeSet::E_R] == "member" && v[ConeSet::Creal_gamma] == "not-member"));
    checks.add("U_gamma and E_R meet in V" + tag,
               !(v[ConeSet::U_gamma] == "member" && v[ConeSet::E_R] == "member" && v[ConeSet::V] == "not-member"));
  }
  j["membership"] = memb;

  Json probes = Json::array();
  for (int g = 0; g < n; ++g) {
    Form xi = Form::generator(n, g);
    Form theta = alg->partial(xi);
    PairingProbe p = pairing_probe(eng, theta, er, xi);
    Json pj = to_json(p);
    pj["xi"] = to_json(xi);
    probes.push_back(pj);
    if (p.real_potential_shape) checks.add("pairing with del xi is real on E_R (xi = w^" + std::to_string(g + 1) + ")", p.all_real);
  }
  j["pairing_probes"] = probes;
  j["invariant_checks"] = checks.list;
  j["falsified"] = checks.falsified;
  res.falsified = checks.falsified;
  res.exit_code = res.falsified.empty() ? ExitOk : ExitFalsified;
  return res;
}

CommandResult cmd_report(const RunConfig& cfg) {
  std::vector<std::string> files;
  namespace fs = std::filesystem;
  if (fs::is_directory(cfg.path)) {
    for (const auto& e : fs::directory_iterator(cfg.path))
      if (e.path().extension() == ".model") files.push_back(e.path().string());
    std::sort(files.begin(), files.end(), [](const std::string& a, const std::string& b) {
      return fs::path(a).stem().string() < fs::path(b).stem().string();
    });
  } else {
    files.push_back(cfg.path);
  }
  CommandResult res;
  Json models = Json::array();
  for (const auto& f : files) {
    RunConfig sub = cfg;
    sub.path = f;
    sub.k_values.clear();
    CommandResult a = cmd_analyze(sub);
    Json s;
    s["model"] = a.report["model"];
    s["betti"] = a.report["dimensions"]["deRham"];
    s["E1_degenerate"] = a.report["E1_degenerate"];
    s["E2_degenerate"] = a.report["E2_degenerate"];
    Json verdicts = Json::object();
    for (const auto& p : a.report["properties"]) verdicts[p["property"].get<std::string>()] = p["verdict"];
    for (auto it = a.report["h_sections"].begin(); it != a.report["h_sections"].end(); ++it)
      for (const auto& p : it.value()["properties"])
        if (p["property"] == "h-ddbar") verdicts["h-ddbar@h=" + it.key()] = p["verdict"];
    s["properties"] = verdicts;
    Json fe = Json::object();
    for (const auto& x : a.report["feasibility"]) fe[x["kind"].get<std::string>()] = x["verdict"];
    s["feasibility"] = fe;
    s["falsified"] = a.report["falsified"];
    for (const auto& v : a.falsified) res.falsified.push_back(a.report["model"].get<std::string>() + ": " + v);
    models.push_back(s);
  }
  res.report["models"] = models;
  res.report["falsified"] = res.falsified;
  res.exit_code = res.falsified.empty() ? ExitOk : ExitFalsified;
  return res;
}

namespace {

void render(const Json& j, int indent, std::ostringstream& out) {
  std::string pad(indent, ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (v.is_object() && !v.empty()) {
        out << pad << it.key() << ":\n";
        render(v, indent + 2, out);
      } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); })) {
        out << pad << it.key() << ":\n";
        render(v, indent + 2, out);
      } else if (v.is_array()) {
        out << pad << it.key() << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
        out << "]\n";
      } else {
        out << pad << it.key() << ": " << (v.is_object() ? "{}" : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_array() && std::none_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); })) {
        out << pad << "- [";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
        out << "]\n";
      } else if (v.is_structured()) {
        out << pad << "-\n";
        render(v, indent + 2, out);
      } else {
        out << pad << "- " << scalar(v) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream out;
  if (j.contains("falsified") && !j["falsified"].empty()) {
    out << "FALSIFIED:\n";
    for (const auto& f : j["falsified"]) out << "  " << f.get<std::string>() << "\n";
  }
  if (j.contains("claims")) {
    out << "claims:\n";
    render(j["claims"], 2, out);
  }
  Json rest = j;
  rest.erase("claims");
  render(rest, 0, out);
  return out.str();
}

int run_command(const RunConfig& cfg, std::string& stdout_text, std::string& error_text) {
  CommandResult res;
  try {
    if (cfg.format != "json" && cfg.format != "text") throw UsageError("format must be json or text");
    if (cfg.command == "analyze")
      res = cmd_analyze(cfg);
    else if (cfg.command == "identities")
      res = cmd_identities(cfg);
    else if (cfg.command == "sweep")
      res = cmd_sweep(cfg);
    else if (cfg.command == "cones")
      res = cmd_cones(cfg);
    else if (cfg.command == "report")
      res = cmd_report(cfg);
    else
      throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const ParseError& e) {
    error_text = "error: " + cfg.path + ": " + e.what() + "\n";
    return ExitUsage;
  } catch (const std::exception& e) {
    error_text = std::string("error: ") + e.what() + "\n";
    return ExitUsage;
  }
  std::string text = cfg.format == "json" ? serialize_json(res.report) : render_text(res.report);
  for (const auto& f : res.falsified) error_text += "falsified: " + f + "\n";
  if (cfg.out.empty()) {
    stdout_text = text;
  } else {
    std::ofstream o(cfg.out, std::ios::binary);
    if (!o) {
      error_text += "error: cannot write " + cfg.out + "\n";
      return ExitUsage;
    }
    o << text;
  }
  return res.exit_code;
}

}  // namespace nilwb
