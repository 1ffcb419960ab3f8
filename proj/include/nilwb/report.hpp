#pragma once

#include <json.hpp>
#include <string>

#include "nilwb/forms.hpp"

namespace nilwb {

using Json = nlohmann::json;

Json to_json(const GaussianRational& c);
Json to_json(const Matrix& m);            // nested arrays of exact strings
Json to_json(const Form& f);              // {"f1^g2": "1/2 i", ...}
Json bidegree_json(Bidegree b);           // [p, q]
GaussianRational gaussian_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

// Keys sorted, two-space indentation, trailing newline.
std::string serialize_json(const Json& j);

template <class Report>
std::string serialize_report(const Report& r) {
  return serialize_json(to_json(r));
}

}  // namespace nilwb
