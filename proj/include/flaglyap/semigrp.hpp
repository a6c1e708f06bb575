#pragma once

// Semigroups with non-empty interior in SL(d, R): interior membership,
// samplers, predicted flag types and gap verification.

#include <cstdint>
#include <string>
#include <vector>

#include "flaglyap/basedyn.hpp"
#include "flaglyap/gaugediff.hpp"
#include "flaglyap/tolerances.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

enum class Family { ConePositive, TotallyPositive, MinorPositive, SymplecticQ };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

class SemigroupSpec {
 public:
  /// Matrices with strictly positive entries.
  static SemigroupSpec cone_positive(int d);
  /// All minors of all orders positive.
  static SemigroupSpec totally_positive(int d);
  /// All minors of the orders in k_set positive; k_set strictly increasing in [1, d-1].
  static SemigroupSpec minor_positive(int d, std::vector<int> k_set);
  /// Sp(n, R) inside SL(2n, R) expanding Q(v) = v^T M v, M = [[0, I], [I, 0]].
  static SemigroupSpec symplectic_q(int n);

  Family family() const { return family_; }
  int dim() const { return dim_; }
  const std::vector<int>& k_set() const { return k_set_; }
  int half_dim() const { return dim_ / 2; }
  /// Quadratic form M (SymplecticQ only).
  Matrix form() const;

 private:
  SemigroupSpec(Family f, int d, std::vector<int> k) : family_(f), dim_(d), k_set_(std::move(k)) {}
  Family family_;
  int dim_;
  std::vector<int> k_set_;
};

/// Throws DeterminantError for non-unit determinant, NotSymplectic for
/// SymplecticQ inputs with g^T J g != J.
bool interior_membership(const SemigroupSpec& spec, const Matrix& g,
                         const Tolerances& tol = default_tolerances());

ThetaSet predicted_theta(const SemigroupSpec& spec);

/// Deterministic given the seed. Throws SamplerExhausted after 100 rejections.
Matrix sample_interior(const SemigroupSpec& spec, std::uint64_t seed);

/// Cocycle over base with every generator sampled from the interior.
Cocycle sample_cocycle(const SemigroupSpec& spec, const BaseSystem& base, std::uint64_t seed);

/// Random gauge direction compatible with the family (symplectic algebra for SymplecticQ).
GaugeDirection sample_gauge(const SemigroupSpec& spec, int points, Rng& rng, double scale = 1.0);

struct DifferentiabilityResidual {
  int weight_index = 0;  // i of omega_i
  int direction = 0;
  double analytic = 0.0;
  double finite_difference = 0.0;
  double residual = 0.0;  // |analytic - fd| / (1 + |analytic|)
  bool passed = false;
  double oblique = 0.0;   // oblique_differential for the same (omega, Y)
  double oblique_residual = 0.0;
};

struct GapReport {
  ThetaSet predicted;
  ThetaSet estimated;
  bool containment = false;
  std::vector<int> roots;                    // simple roots outside the prediction
  std::vector<std::vector<double>> gaps;     // per point, alpha_i(H+(x)) for i in roots
  double min_gap = 0.0;
  int min_point = -1;
  int min_root = -1;
  bool gaps_positive = false;
  // SymplecticQ only.
  double pairing_error = 0.0;
  double min_two_chi_n = 0.0;
  bool symplectic_ok = true;
  std::vector<DifferentiabilityResidual> differentiability;
  bool differentiable = true;
  bool passed = false;
};

struct GapCheckOptions {
  double gap_threshold = 1e-8;
  double pairing_tol = 1e-8;
  double differential_tol = 1e-5;
  double step = 1e-4;
  int directions = 3;
  std::uint64_t seed = 99;
};

/// Evaluates every prediction without throwing; verdicts are in the report.
GapReport gap_prediction_report(const Cocycle& c, const SemigroupSpec& spec, const GapCheckOptions& opts = {});

/// As gap_prediction_report, but throws PredictionViolated on the first failed verdict.
GapReport verify_gap_predictions(const Cocycle& c, const SemigroupSpec& spec, const GapCheckOptions& opts = {});

}  // namespace flaglyap
