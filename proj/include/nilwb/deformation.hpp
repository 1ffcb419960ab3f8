#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilwb/cones.hpp"
#include "nilwb/family.hpp"
#include "nilwb/properties.hpp"

namespace nilwb {

// Structure equations of the fixed coframe eta at t, as forms in eta.
std::vector<Form> frame_structure(const DeformationFamily& family, const Rational& t);
// Fibre at t; throws on an invalid fibre or when the eta structure differs from t = 0.
LieComplexModel evaluate_family(const DeformationFamily& family, const Rational& t, bool check_pin = true);

// Symmetric grid {j * step : -count <= j <= count}.
struct GridSpec {
  Rational step{1, 8};
  int count = 8;
};
GridSpec parse_grid(const std::string& text);  // "step:count"
std::vector<Rational> grid_points(const GridSpec& g);

struct FibreRow {
  Rational t;
  std::map<std::string, std::size_t> dimensions;  // "b2", "h1,0", "bc1,1", "a1,1", "e2_1,0", "hbc2@h=1", ...
  std::map<std::string, std::string> verdicts;     // "sGG", "h-ddbar@h=1", "feasible-sg", ...
};

struct ClaimCheck {
  std::string claim;
  std::string verdict;  // "consistent", "violated" or "not-applicable"
  std::vector<std::string> violations;
};

struct SweepOptions {
  bool check_pin = true;
  bool feasibility = true;
  SolverOptions solver;
};

struct SweepReport {
  std::string family;
  std::vector<Rational> grid;
  std::vector<Rational> h_values;
  std::vector<FibreRow> rows;
  std::vector<ClaimCheck> claims;
  bool all_rows_identical = false;
  bool falsified() const;
  const FibreRow& center() const;
};
Json to_json(const SweepReport& r);
SweepReport sweep(const DeformationFamily& family, const std::vector<Rational>& grid,
                  const std::vector<Rational>& h_values, const SweepOptions& opt = {});

struct SectionSample {
  Rational t;
  Matrix gram;        // rationalized root omega_t
  Form omega_power;   // (Gamma_omega)_t^{n-1,n-1} in the fibre coframe
  Form gamma;         // (n-2,n) minimal-norm potential on the fibre
  Form gamma_omega;   // conj(gamma) + omega_power + gamma, fibre coframe
  Matrix tau;         // de Rham coordinates in the fixed frame
  bool closed = false;
  double root_residual = 0;  // max coefficient of omega_t^{n-1} - omega_power
};

struct SectionReport {
  std::string family;
  std::vector<SectionSample> samples;
  double jump_coarse = 0;
  double jump_fine = 0;
  double max_root_residual = 0;
  bool all_closed = false;
  bool center_matches = false;  // t = 0 sample reproduces the E2sG element
};
Json to_json(const SectionReport& r);
// Throws when omega is not strongly Gauduchon on the central fibre or positivity is lost at some t.
SectionReport tau_section(const DeformationFamily& family, const HermitianMetric& omega, const GridSpec& grid,
                          bool check_pin = true);

}  // namespace nilwb
