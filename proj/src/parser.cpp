#include "nilwb/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace nilwb {

std::string error_code_name(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::Lexical: return "E001-lexical";
    case ParseErrorCode::Syntax: return "E002-syntax";
    case ParseErrorCode::DuplicateGenerator: return "E003-duplicate-generator";
    case ParseErrorCode::IndexOutOfRange: return "E004-index-out-of-range";
    case ParseErrorCode::ZeroTwoComponent: return "E005-zero-two-component";
    case ParseErrorCode::MissingGenerator: return "E006-missing-generator";
    case ParseErrorCode::UndeclaredParameter: return "E007-undeclared-parameter";
    case ParseErrorCode::Validation: return "E008-validation";
    case ParseErrorCode::Metric: return "E009-metric";
  }
  return "E000";
}

ParseError::ParseError(ParseErrorCode code, int line, int column, const std::string& message)
    : WorkbenchError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": [" +
                     error_code_name(code) + "] " + message),
      code_(code),
      line_(line),
      column_(column) {}

// ---- Poly ----

GaussianRational Poly::evaluate(const Rational& t) const {
  GaussianRational acc;
  for (std::size_t j = coeffs_.size(); j-- > 0;) {
    acc *= GaussianRational(t);
    acc += coeffs_[j];
  }
  return acc;
}

Poly Poly::conj() const {
  Poly p;
  for (const auto& c : coeffs_) p.coeffs_.push_back(c.conj());
  return p;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.coeffs_.resize(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out.coeffs_[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
  out.trim();
  return out;
}

Poly Poly::operator-() const {
  Poly p;
  for (const auto& c : coeffs_) p.coeffs_.push_back(-c);
  return p;
}

std::string Poly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string c = "(" + coeffs_[j].to_string() + ")";
    if (j == 0) s += c;
    else if (j == 1) s += c + "*" + var;
    else s += c + "*" + var + "^" + std::to_string(j);
  }
  return s;
}

// ---- DeformationFamily ----

LieComplexModel DeformationFamily::evaluate(const Rational& t) const {
  LieComplexModel m;
  m.name = name;
  m.n = n;
  m.metric = metric;
  for (const auto& pf : structure) {
    Form f(n);
    for (const auto& [mono, poly] : pf) f.add(mono, poly.evaluate(t));
    m.structure.push_back(std::move(f));
  }
  ValidationReport r = validate_model(m);
  if (!r.ok())
    throw WorkbenchError("invalid fibre at t=" + t.get_str() + ": generator " + std::to_string(r.violations[0].generator) +
                         " (" + r.violations[0].constraint + ")");
  return m;
}

Matrix DeformationFamily::frame_matrix(const Rational& t) const {
  Matrix f(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    if (k < static_cast<int>(frame_declared.size()) && frame_declared[k]) {
      for (const auto& [g, poly] : frame[k]) {
        GaussianRational c = poly.evaluate(t);
        f(k, g) = c;
        int cg = g < n ? g + n : g - n;
        f(n + k, cg) = c.conj();
      }
    } else {
      f(k, k) = 1;
      f(n + k, n + k) = 1;
    }
  }
  return f;
}

namespace {

enum class Tok { Ident, Number, Slash, Caret, Star, Plus, Minus, LParen, RParen, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, line.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::Number, line.substr(i, j - i), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '*': k = Tok::Star; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '=': k = Tok::Equals; break;
      default:
        throw ParseError(ParseErrorCode::Lexical, line_no, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

struct Generator {
  bool conj;
  int index;  // 0-based
};

struct Term {
  Poly coef;
  std::vector<Generator> gens;
  int column;
};

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int line_no, int n, const std::optional<std::string>& param)
      : toks_(std::move(toks)), line_(line_no), n_(n), param_(param) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool at_end() const { return toks_[pos_].kind == Tok::End; }

  [[noreturn]] void fail(ParseErrorCode code, int col, const std::string& msg) const {
    throw ParseError(code, line_, col, msg);
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(ParseErrorCode::Syntax, peek().column, "expected " + what);
    return next();
  }

  void expect_end() {
    if (!at_end()) fail(ParseErrorCode::Syntax, peek().column, "unexpected trailing input '" + peek().text + "'");
  }

  static std::optional<Generator> as_generator(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'f' && s[0] != 'g')) return std::nullopt;
    for (std::size_t j = 1; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
    return Generator{s[0] == 'g', std::stoi(s.substr(1)) - 1};
  }

  Generator generator(const Token& t) {
    auto g = as_generator(t.text);
    if (!g) fail(ParseErrorCode::Syntax, t.column, "expected a generator f<k> or g<k>");
    if (g->index < 0 || g->index >= n_)
      fail(ParseErrorCode::IndexOutOfRange, t.column, "generator '" + t.text + "' outside 1.." + std::to_string(n_));
    return *g;
  }

  bool starts_factor() const {
    Tok k = peek().kind;
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen;
  }

  Poly rational_factor() {
    Token num = next();
    Rational r(num.text);
    if (peek().kind == Tok::Slash) {
      next();
      Token den = expect(Tok::Number, "a denominator");
      if (Rational(den.text) == 0) fail(ParseErrorCode::Syntax, den.column, "zero denominator");
      r /= Rational(den.text);
    }
    return Poly(GaussianRational(r));
  }

  // factor or generator product; generators are appended to gens.
  Term term(bool allow_generators) {
    Term out{Poly(GaussianRational(1)), {}, peek().column};
    bool first = true;
    while (true) {
      if (!first) {
        if (peek().kind == Tok::Star) {
          next();
          if (!starts_factor()) fail(ParseErrorCode::Syntax, peek().column, "expected a factor after '*'");
        } else if (!starts_factor()) {
          break;
        }
      }
      first = false;
      const Token& t = peek();
      if (t.kind == Tok::Number) {
        out.coef = out.coef * rational_factor();
      } else if (t.kind == Tok::LParen) {
        next();
        Poly inner = scalar_sum();
        expect(Tok::RParen, "')'");
        out.coef = out.coef * inner;
      } else if (t.text == "i") {
        next();
        out.coef = out.coef * Poly(GaussianRational::imaginary_unit());
      } else if (as_generator(t.text)) {
        if (!allow_generators) fail(ParseErrorCode::Syntax, t.column, "generator not allowed here");
        Token gt = next();
        out.gens.push_back(generator(gt));
        while (peek().kind == Tok::Caret) {
          next();
          Token g2 = expect(Tok::Ident, "a generator after '^'");
          out.gens.push_back(generator(g2));
        }
      } else if (param_ && t.text == *param_) {
        next();
        Poly p = Poly::parameter();
        if (peek().kind == Tok::Caret) {
          next();
          Token e = expect(Tok::Number, "an exponent");
          int k = std::stoi(e.text);
          Poly acc(GaussianRational(1));
          for (int j = 0; j < k; ++j) acc = acc * p;
          p = acc;
        }
        out.coef = out.coef * p;
      } else {
        fail(ParseErrorCode::UndeclaredParameter, t.column, "undeclared parameter or symbol '" + t.text + "'");
      }
    }
    return out;
  }

  std::vector<std::pair<int, Term>> signed_terms(bool allow_generators) {
    std::vector<std::pair<int, Term>> out;
    int sign = 1;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) sign = next().kind == Tok::Minus ? -1 : 1;
    if (!starts_factor()) fail(ParseErrorCode::Syntax, peek().column, "expected a term");
    out.emplace_back(sign, term(allow_generators));
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      sign = next().kind == Tok::Minus ? -1 : 1;
      if (!starts_factor()) fail(ParseErrorCode::Syntax, peek().column, "expected a term");
      out.emplace_back(sign, term(allow_generators));
    }
    return out;
  }

  Poly scalar_sum() {
    Poly acc;
    for (auto& [sign, t] : signed_terms(false)) acc += sign < 0 ? -t.coef : t.coef;
    return acc;
  }

  PolyForm two_form_sum(int gen_for_message) {
    PolyForm out;
    for (auto& [sign, t] : signed_terms(true)) {
      Poly c = sign < 0 ? -t.coef : t.coef;
      if (t.gens.empty()) {
        if (!c.is_zero()) fail(ParseErrorCode::Syntax, t.column, "constant term in a structure equation");
        continue;
      }
      if (t.gens.size() != 2) fail(ParseErrorCode::Syntax, t.column, "a term must be coeff * x^y");
      const Generator& x = t.gens[0];
      const Generator& y = t.gens[1];
      if (x.conj && y.conj)
        fail(ParseErrorCode::ZeroTwoComponent, t.column,
             "(0,2) component in d f" + std::to_string(gen_for_message) + " is not allowed");
      Form fx = x.conj ? Form::conj_generator(n_, x.index) : Form::generator(n_, x.index);
      Form fy = y.conj ? Form::conj_generator(n_, y.index) : Form::generator(n_, y.index);
      Form w = wedge(fx, fy);
      for (const auto& [m, s] : w.terms()) {
        Poly term = s == GaussianRational(1) ? c : -c;
        auto it = out.find(m);
        if (it == out.end()) {
          if (!term.is_zero()) out.emplace(m, term);
        } else {
          it->second += term;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
    return out;
  }

  std::map<int, Poly> one_form_sum() {
    std::map<int, Poly> out;
    for (auto& [sign, t] : signed_terms(true)) {
      Poly c = sign < 0 ? -t.coef : t.coef;
      if (t.gens.empty()) {
        if (!c.is_zero()) fail(ParseErrorCode::Syntax, t.column, "constant term in a frame equation");
        continue;
      }
      if (t.gens.size() != 1) fail(ParseErrorCode::Syntax, t.column, "a frame term must be coeff * generator");
      int g = t.gens[0].conj ? n_ + t.gens[0].index : t.gens[0].index;
      out[g] += c;
      if (out[g].is_zero()) out.erase(g);
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  int n_;
  std::optional<std::string> param_;
};

struct Document {
  std::string name;
  int n = 0;
  std::optional<std::string> param;
  std::vector<PolyForm> structure;
  std::vector<int> structure_line;
  std::vector<std::map<int, Poly>> frame;
  std::vector<bool> frame_declared;
  std::optional<Matrix> metric;
};

bool is_real_definite(const Matrix& g) {
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    GaussianRational m = determinant(g.block(0, 0, k, k));
    if (!m.is_real() || sgn(m.re()) <= 0) return false;
  }
  return true;
}

Document parse_document(std::string_view text, bool family) {
  Document doc;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_name = false;
  std::map<std::pair<int, int>, std::pair<GaussianRational, int>> metric_entries;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line, line_no);
    if (toks.front().kind == Tok::End) continue;
    if (toks.front().kind == Tok::Ident && (toks.front().text == "model" || toks.front().text == "family")) {
      // names may contain '-' and '.', so they are read verbatim
      int col = toks.front().column;
      if (toks.front().text == "family" && !family)
        throw ParseError(ParseErrorCode::Syntax, line_no, col, "family header in a model document");
      if (have_name) throw ParseError(ParseErrorCode::Syntax, line_no, col, "duplicate header");
      std::string rest = line.substr(col - 1 + toks.front().text.size());
      auto hash = rest.find('#');
      if (hash != std::string::npos) rest = rest.substr(0, hash);
      std::istringstream words(rest);
      std::string name, extra;
      words >> name;
      if (name.empty()) throw ParseError(ParseErrorCode::Syntax, line_no, col, "expected a name");
      if (words >> extra) throw ParseError(ParseErrorCode::Syntax, line_no, col, "unexpected text after the name");
      for (char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
          throw ParseError(ParseErrorCode::Lexical, line_no, col, "invalid character in name");
      doc.name = name;
      have_name = true;
      continue;
    }
    LineParser lp(toks, line_no, doc.n, doc.param);
    Token head = lp.next();
    if (head.kind != Tok::Ident) lp.fail(ParseErrorCode::Syntax, head.column, "expected a keyword");
    const std::string& kw = head.text;
    if (kw == "n") {
      if (!have_name) lp.fail(ParseErrorCode::Syntax, head.column, "'n' before the header line");
      if (doc.n) lp.fail(ParseErrorCode::Syntax, head.column, "duplicate 'n' line");
      Token num = lp.expect(Tok::Number, "the complex dimension");
      lp.expect_end();
      int n = std::stoi(num.text);
      if (n < 1 || n > 8) lp.fail(ParseErrorCode::IndexOutOfRange, num.column, "dimension must be in 1..8");
      doc.n = n;
      doc.structure.assign(n, PolyForm{});
      doc.structure_line.assign(n, 0);
      doc.frame.assign(n, {});
      doc.frame_declared.assign(n, false);
    } else if (kw == "param") {
      if (!family) lp.fail(ParseErrorCode::Syntax, head.column, "parameter declaration in a model document");
      if (doc.param) lp.fail(ParseErrorCode::Syntax, head.column, "duplicate parameter declaration");
      Token p = lp.expect(Tok::Ident, "a parameter name");
      lp.expect_end();
      if (p.text == "i" || LineParser::as_generator(p.text))
        lp.fail(ParseErrorCode::Syntax, p.column, "reserved parameter name");
      doc.param = p.text;
    } else if (kw == "d" || kw == "frame") {
      if (!doc.n) lp.fail(ParseErrorCode::Syntax, head.column, "structure line before 'n'");
      if (kw == "frame" && !family) lp.fail(ParseErrorCode::Syntax, head.column, "frame line in a model document");
      Token gt = lp.expect(Tok::Ident, "a generator f<k>");
      Generator g = lp.generator(gt);
      if (g.conj) lp.fail(ParseErrorCode::Syntax, gt.column, "left-hand side must be a holomorphic generator f<k>");
      lp.expect(Tok::Equals, "'='");
      if (kw == "d") {
        if (doc.structure_line[g.index])
          lp.fail(ParseErrorCode::DuplicateGenerator, gt.column, "duplicate structure line for " + gt.text);
        doc.structure[g.index] = lp.two_form_sum(g.index + 1);
        doc.structure_line[g.index] = line_no;
      } else {
        if (doc.frame_declared[g.index])
          lp.fail(ParseErrorCode::DuplicateGenerator, gt.column, "duplicate frame line for " + gt.text);
        doc.frame[g.index] = lp.one_form_sum();
        doc.frame_declared[g.index] = true;
      }
      lp.expect_end();
    } else if (kw == "metric") {
      if (!doc.n) lp.fail(ParseErrorCode::Syntax, head.column, "metric line before 'n'");
      Token e = lp.expect(Tok::Ident, "an entry g<i><j>");
      if (e.text.size() != 3 || e.text[0] != 'g' || !std::isdigit(static_cast<unsigned char>(e.text[1])) ||
          !std::isdigit(static_cast<unsigned char>(e.text[2])))
        lp.fail(ParseErrorCode::Syntax, e.column, "expected an entry g<i><j>");
      int i = e.text[1] - '1', j = e.text[2] - '1';
      if (i < 0 || j < 0 || i >= doc.n || j >= doc.n)
        lp.fail(ParseErrorCode::IndexOutOfRange, e.column, "metric entry outside 1.." + std::to_string(doc.n));
      lp.expect(Tok::Equals, "'='");
      int col = lp.peek().column;
      Poly v = lp.scalar_sum();
      lp.expect_end();
      if (!v.is_constant()) lp.fail(ParseErrorCode::Metric, col, "metric entries must be constants");
      if (metric_entries.count({i, j})) lp.fail(ParseErrorCode::DuplicateGenerator, e.column, "duplicate metric entry");
      metric_entries[{i, j}] = {v.evaluate(0), line_no};
    } else {
      lp.fail(ParseErrorCode::Syntax, head.column, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_name) throw ParseError(ParseErrorCode::Syntax, 1, 1, "missing header line");
  if (!doc.n) throw ParseError(ParseErrorCode::Syntax, line_no, 1, "missing 'n' line");
  for (int k = 0; k < doc.n; ++k)
    if (!doc.structure_line[k])
      throw ParseError(ParseErrorCode::MissingGenerator, line_no, 1, "missing structure line for f" + std::to_string(k + 1));
  if (!metric_entries.empty()) {
    Matrix g = Matrix::identity(doc.n);
    for (const auto& [ij, v] : metric_entries) g(ij.first, ij.second) = v.first;
    for (const auto& [ij, v] : metric_entries) {
      auto [i, j] = ij;
      if (!metric_entries.count({j, i})) g(j, i) = v.first.conj();
      if (!(g(j, i) == v.first.conj()))
        throw ParseError(ParseErrorCode::Metric, v.second, 1, "metric entries are not Hermitian");
    }
    if (!is_real_definite(g))
      throw ParseError(ParseErrorCode::Metric, metric_entries.begin()->second.second, 1,
                       "metric Gram matrix is not positive definite");
    doc.metric = g;
  }
  return doc;
}

void validate_or_throw(const LieComplexModel& m, const Document& doc) {
  ValidationReport r = validate_model(m);
  if (r.ok()) return;
  const Violation& v = r.violations.front();
  int line = v.generator >= 1 ? doc.structure_line[v.generator - 1] : 1;
  throw ParseError(ParseErrorCode::Validation, line, 1,
                   "generator f" + std::to_string(v.generator) + " violates " + v.constraint + ": " + v.message);
}

std::string coefficient_text(const GaussianRational& c) {
  if (c == GaussianRational(1)) return "";
  return "(" + c.to_string() + ")*";
}

std::string generator_name(int g, int n) {
  return g < n ? "f" + std::to_string(g + 1) : "g" + std::to_string(g - n + 1);
}

std::string two_form_text(const std::vector<std::pair<Monomial, std::string>>& terms, int n) {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [m, coef] : terms) {
    if (!s.empty()) s += " + ";
    std::vector<int> gens;
    for (int j = 0; j < n; ++j)
      if (m.hol & (1u << j)) gens.push_back(j);
    for (int j = 0; j < n; ++j)
      if (m.anti & (1u << j)) gens.push_back(n + j);
    s += coef + generator_name(gens[0], n) + "^" + generator_name(gens[1], n);
  }
  return s;
}

void append_metric(std::ostringstream& out, const std::optional<Matrix>& metric, int n) {
  if (!metric) return;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out << "metric g" << i + 1 << j + 1 << " = (" << (*metric)(i, j).to_string() << ")\n";
}

}  // namespace

LieComplexModel parse_model(std::string_view text) {
  Document doc = parse_document(text, false);
  LieComplexModel m;
  m.name = doc.name;
  m.n = doc.n;
  m.metric = doc.metric;
  for (const auto& pf : doc.structure) {
    Form f(doc.n);
    for (const auto& [mono, poly] : pf) f.add(mono, poly.evaluate(0));
    m.structure.push_back(std::move(f));
  }
  validate_or_throw(m, doc);
  return m;
}

DeformationFamily parse_family(std::string_view text) {
  Document doc = parse_document(text, true);
  DeformationFamily fam;
  fam.name = doc.name;
  fam.n = doc.n;
  if (doc.param) fam.parameter = *doc.param;
  fam.structure = doc.structure;
  fam.frame = doc.frame;
  fam.frame_declared = doc.frame_declared;
  fam.metric = doc.metric;
  LieComplexModel base;
  try {
    base = fam.evaluate(0);
  } catch (const WorkbenchError& e) {
    throw ParseError(ParseErrorCode::Validation, 1, 1, std::string("central fibre: ") + e.what());
  }
  if (!(fam.frame_matrix(0) == Matrix::identity(2 * fam.n)))
    throw ParseError(ParseErrorCode::Validation, 1, 1, "frame must be the identity at " + fam.parameter + "=0");
  return fam;
}

std::string format_model(const LieComplexModel& model) {
  std::ostringstream out;
  out << "model " << model.name << "\n";
  out << "n " << model.n << "\n";
  for (int k = 0; k < model.n; ++k) {
    std::vector<std::pair<Monomial, std::string>> terms;
    for (const auto& [m, c] : model.structure[k].terms()) terms.emplace_back(m, coefficient_text(c));
    out << "d f" << k + 1 << " = " << two_form_text(terms, model.n) << "\n";
  }
  append_metric(out, model.metric, model.n);
  return out.str();
}

std::string format_family(const DeformationFamily& fam) {
  std::ostringstream out;
  out << "family " << fam.name << "\n";
  out << "n " << fam.n << "\n";
  out << "param " << fam.parameter << "\n";
  for (int k = 0; k < fam.n; ++k) {
    std::vector<std::pair<Monomial, std::string>> terms;
    for (const auto& [m, p] : fam.structure[k]) terms.emplace_back(m, "(" + p.to_string(fam.parameter) + ")*");
    out << "d f" << k + 1 << " = " << two_form_text(terms, fam.n) << "\n";
  }
  for (int k = 0; k < fam.n; ++k) {
    if (!fam.frame_declared[k]) continue;
    out << "frame f" << k + 1 << " = ";
    if (fam.frame[k].empty()) out << "0";
    bool first = true;
    for (const auto& [g, p] : fam.frame[k]) {
      if (!first) out << " + ";
      first = false;
      out << "(" << p.to_string(fam.parameter) << ")*" << generator_name(g, fam.n);
    }
    out << "\n";
  }
  append_metric(out, fam.metric, fam.n);
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WorkbenchError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool operator==(const LieComplexModel& a, const LieComplexModel& b) {
  if (a.name != b.name || a.n != b.n || !(a.structure == b.structure)) return false;
  if (a.metric.has_value() != b.metric.has_value()) return false;
  return !a.metric || *a.metric == *b.metric;
}

}  // namespace nilwb
