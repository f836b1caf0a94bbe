#pragma once

#include "digivol/boolean_model.hpp"
#include "digivol/config_algebra.hpp"
#include "digivol/lattice_image.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace digivol {

struct WeightCatalogEntry {
  std::string name;
  WeightVector weights;
  std::string note;
};

/// Named weight vectors; parametrized entries at their default parameters.
const std::vector<WeightCatalogEntry>& weight_catalog();

WeightVector point_count_weights();
WeightVector dorst_theta_weights(double theta = 1.0);
WeightVector dorst_alpha_beta_weights(double alpha, double beta);
/// Published member of the optimal degree-1 family; t = 0 is the published particular.
WeightVector optimal_v1_weights(double t = 0.0);
/// Published member of the optimal degree-0 family.
WeightVector optimal_euler_weights(double t = 0.0);

/// Resolves "name", "name:params" (dorst:THETA, dorst-ab:A,B, opt1:W, opt0:W) or
/// six comma-separated numbers. `degree` overrides the catalog degree when set and
/// is required for raw vectors. Throws DomainError on unknown names.
WeightVector resolve_weights(std::string_view text, std::optional<int> degree = std::nullopt);

/// a^{i-2} * sum_j w_j N_j / N_0. Throws DomainError when N_0 = 0.
double field_estimate(const ConfigHistogram& hist, double a, const WeightVector& w);

/// a^i * sum_j w_j N_j. Degrees 0 and 1 require w1 = w6 = 0 (DomainError).
double design_estimate(const ConfigHistogram& hist, double a, const WeightVector& w);

/// Weights of the same estimator applied to the complemented image: 1<->6, 2<->5.
WeightVector swap_weights(const WeightVector& w);

/// The estimate is unchanged by swapping foreground and background.
bool is_swap_invariant(const WeightVector& w, double tolerance = 1e-12);

/// The estimate changes sign under swapping foreground and background.
bool is_swap_antisymmetric(const WeightVector& w, double tolerance = 1e-12);

struct AsymptoticsReport {
  int degree = 1;
  bool limit_exists = false;
  double limit_factor = 0.0;        ///< lim E estimate / specific value
  double limit_value = 0.0;         ///< lim E estimate at the model
  double target = 0.0;              ///< specific intrinsic volume of the model
  int leading_bias_order = 0;       ///< power of a multiplying the leading bias term
  double leading_bias_value = 0.0;  ///< that term's coefficient at the model
  /// First-order bias split as linear_coefficient * gamma + quadratic_coefficient *
  /// (gamma E V1 / pi)^2, both times exp(-gamma E V2). Degree 1 reports the
  /// order-a term, degree 0 the order-1 term.
  double linear_coefficient = 0.0;
  double quadratic_coefficient = 0.0;
  /// quadratic_coefficient / pi: the multiplier of gamma^2 E V1^2 / pi.
  double classical_factor = 0.0;
};

AsymptoticsReport predicted_asymptotics(const WeightVector& w, const BooleanModelSpec& spec);

}  // namespace digivol
