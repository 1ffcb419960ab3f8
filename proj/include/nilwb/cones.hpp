#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilwb/metric.hpp"

namespace nilwb {

enum class PositivityKind { OneOne, NMinusOne };

struct PositivityCertificate {
  Form form;
  std::string kind;  // "(1,1)" or "(n-1,n-1)"
  Matrix test_matrix;
  std::vector<GaussianRational> minors;  // leading principal minors
  std::optional<std::size_t> failing_minor;  // 1-based
  bool positive = false;
};
Json to_json(const PositivityCertificate& c);

// c with psi = i sum c_jk w^j ^ wbar^k.
Matrix one_one_coefficients(const Form& psi);
Form one_one_form(const Matrix& c);
// Q_ab = integral of Omega ^ i w^a ^ wbar^b against the real volume form.
Matrix n_minus_one_test_matrix(const Form& omega_power);
// Throws on a wrong bidegree or a non-real form.
PositivityCertificate positivity(const Form& form, PositivityKind kind);

struct SolverOptions {
  int restarts = 64;
  int iterations = 500;
  std::uint64_t seed = 0;
  long rationalize_bound = 1000000;
};

enum class MetricKind { Gauduchon, StronglyGauduchon, SKT, Kahler };
std::string metric_kind_name(MetricKind k);
std::optional<MetricKind> metric_kind_from_name(const std::string& name);

struct FeasibilityResult {
  std::string model;
  std::string kind;
  std::string verdict;  // "feasible" or "undecided"
  std::size_t constraint_dim = 0;
  std::optional<Form> witness;  // Omega of bidegree (n-1,n-1) for Gauduchon/sG, the (1,1)-form otherwise
  std::optional<PositivityCertificate> certificate;
  bool residual_zero = false;
  int restarts_used = 0;
  double best_min_eig = 0;
  bool feasible() const { return verdict == "feasible"; }
};
Json to_json(const FeasibilityResult& r);

// Real forms satisfying the linear condition of each metric kind, as complex columns.
Matrix metric_constraint_basis(const DifferentialAlgebra& alg, MetricKind kind);
FeasibilityResult metric_feasibility(const DifferentialAlgebra& alg, MetricKind kind, const SolverOptions& opt = {});

struct RootResult {
  Matrix gram;            // rationalized Hermitian Gram of the root
  Form omega;             // i sum G_jk w^j ^ wbar^k
  double float_residual = 0;     // max coefficient error of the floating root
  double rational_residual = 0;  // max coefficient error of omega^{n-1} - Omega after rationalization
  bool positive = false;         // exact certificate for the rationalized root
};
Json to_json(const RootResult& r);
// omega with omega^{n-1} = Omega (plain wedge power).
RootResult root_n_minus_1(const Form& omega_power, long rationalize_bound = 1000000000000L);

struct E2sGElement {
  std::string model;
  Form omega;
  Form gamma;        // (n-2,n) minimal-norm solution of del Gamma = -delbar omega^{n-1}
  Form gamma_omega;  // conj(Gamma) + omega^{n-1} + Gamma
  Matrix de_rham_coordinates;
  Matrix e2_coordinates;
  bool closed = false;
  bool real = false;
  bool t_consistent = false;  // T(class of Gamma_omega) equals the E_2 class of Gamma
};
Json to_json(const E2sGElement& e);
// Throws when the metric is not strongly Gauduchon.
E2sGElement e2sg_element(const CohomologyEngine& engine, const HermitianMetric& metric);

// Closed (2n-2)-form whose (n-2,n) part is the pseudo-harmonic representative of the class; throws when
// d_2 of the class is nonzero.
Form j_omega(const CohomologyEngine& engine, const OperatorBundle& ops, const Matrix& e2_coordinates);

struct JOmegaReport {
  std::size_t e2_dim = 0;
  std::size_t ker_d2_dim = 0;
  std::size_t rank_T = 0;
  std::size_t harmonic_dim = 0;
  bool t_surjective = false;
  bool t_of_j_identity = false;  // on a basis of ker d_2
  bool j_injective = false;
};
Json to_json(const JOmegaReport& r);
JOmegaReport check_j_omega(const CohomologyEngine& engine, const OperatorBundle& ops);

enum class ConeSet { V, E, E_R, U_gamma, Creal_gamma };
std::string cone_set_name(ConeSet s);
std::optional<ConeSet> cone_set_from_name(const std::string& name);

struct MembershipResult {
  std::string set;
  std::string verdict;  // "member", "not-member" or "undecided"
  std::string clause;
  std::optional<Form> potential;  // Omega with delbar Omega = -(projected) del Gamma
  std::optional<PositivityCertificate> certificate;
  double best_min_eig = 0;
};
Json to_json(const MembershipResult& r);
MembershipResult cone_membership(const CohomologyEngine& engine, const HermitianMetric& gamma, ConeSet set,
                                 const Form& candidate, const SolverOptions& opt = {});

// Real basis of E_R: (n-2,n)-forms admitting a real potential.
std::vector<Form> e_real_basis(const CohomologyEngine& engine);

struct PairingProbe {
  std::size_t samples = 0;
  std::vector<GaussianRational> values;
  std::size_t positive = 0, negative = 0, zero = 0, non_real = 0;
  bool real_potential_shape = false;  // theta = del xi with delbar xi real
  bool all_real = true;
};
Json to_json(const PairingProbe& p);
PairingProbe pairing_probe(const CohomologyEngine& engine, const Form& theta, const std::vector<Form>& samples,
                           const std::optional<Form>& xi = std::nullopt);

}  // namespace nilwb
