#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilwb/cohomology.hpp"

namespace nilwb {

enum class PropertyName {
  SGG, DDBAR_A, DDBAR_B, HDDBAR,
  A, A_PRIME, B, B_PRIME, C, C_PRIME_I, C_PRIME_II, D_PRIME_I, D_PRIME_II, D_PRIME, L,
  E1_DEGEN, E2_DEGEN, PARTIAL_E2,
};

std::string property_name(PropertyName p);
std::optional<PropertyName> property_from_name(const std::string& name);
std::vector<PropertyName> all_properties();
bool property_uses_k(PropertyName p);
bool property_uses_h(PropertyName p);

struct PropertyReport {
  std::string model;
  std::string property;
  std::optional<int> k;
  std::optional<Rational> h;
  std::string verdict;  // "true", "false" or "vacuous"
  std::string clause;   // failing inclusion, when false
  std::optional<Form> witness;
  std::map<std::string, std::size_t> dimensions;
  bool holds() const { return verdict != "false"; }
};
Json to_json(const PropertyReport& r);

// Without k, properties indexed by degree are checked over every degree (witness from the first failure).
PropertyReport check_property(const CohomologyEngine& engine, PropertyName prop, std::optional<int> k = std::nullopt,
                              std::optional<Rational> h = std::nullopt);

struct ChainReport {
  int k = 0;
  Rational h;
  std::map<std::string, bool> verdicts;  // "L_k", "A_k", "C_k", "D'_{k-1}", "B_{k-1}"
  bool consistent = true;
};
Json to_json(const ChainReport& r);
ChainReport verify_equivalence_chain(const CohomologyEngine& engine, int k, const Rational& h);

// H^k_{h-BC} -> H^k_{d_h} -> H^k_{h-A} in representative coordinates.
struct CanonicalMaps {
  int k = 0;
  Rational h;
  std::size_t dim_bc = 0, dim_dh = 0, dim_a = 0;
  Matrix bc_to_dh;
  Matrix dh_to_a;
  Matrix bc_to_a;
  bool bc_to_a_injective = false;
  bool bc_to_a_surjective = false;
};
Json to_json(const CanonicalMaps& m);
CanonicalMaps canonical_map_ranks(const CohomologyEngine& engine, int k, const Rational& h);

}  // namespace nilwb
