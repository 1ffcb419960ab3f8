#include "nilwb/report.hpp"

namespace nilwb {

Json to_json(const GaussianRational& c) { return c.to_string(); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Form& f) {
  Json out = Json::object();
  int n = f.n();
  for (const auto& [m, c] : f.terms()) {
    std::string key;
    for (int j = 0; j < n; ++j)
      if (m.hol & (1u << j)) key += (key.empty() ? "" : "^") + std::string("f") + std::to_string(j + 1);
    for (int j = 0; j < n; ++j)
      if (m.anti & (1u << j)) key += (key.empty() ? "" : "^") + std::string("g") + std::to_string(j + 1);
    out[key.empty() ? "1" : key] = c.to_string();
  }
  return out;
}

Json bidegree_json(Bidegree b) { return Json::array({b.p, b.q}); }

GaussianRational gaussian_from_json(const Json& j) { return GaussianRational::parse(j.get<std::string>()); }

Matrix matrix_from_json(const Json& j) {
  std::size_t r = j.size();
  std::size_t c = r ? j[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < c; ++b) m(a, b) = gaussian_from_json(j[a][b]);
  return m;
}

std::string serialize_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace nilwb
