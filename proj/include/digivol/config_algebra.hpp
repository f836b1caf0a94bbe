#pragma once

#include "digivol/types.hpp"

#include <Eigen/Core>

#include <array>
#include <initializer_list>
#include <string>
#include <vector>

namespace digivol {

// Unit-cell vertex order; vertex i carries bit i of a configuration index.
//   x0 = (0,0), x1 = (1,0), x2 = (0,1), x3 = (1,1)
inline constexpr int kNumConfigurations = 16;
inline constexpr int kNumClasses = 6;

/// Class multiplicities d_1..d_6.
inline constexpr std::array<int, kNumClasses> kClassSize = {1, 4, 4, 2, 4, 1};

/// One representative configuration index per class.
inline constexpr std::array<int, kNumClasses> kClassRepresentative = {0, 1, 3, 6, 7, 15};

/// A foreground subset of the four unit-cell vertices, identified by its index.
struct Configuration {
  int index = 0;

  int black_mask() const { return index; }
  int white_mask() const { return 15 - index; }
  bool is_black(int vertex) const { return (index >> vertex) & 1; }
};

struct ConfigClass {
  int id = 0;
  std::vector<int> members;
  int d = 0;
  int representative = 0;
};

/// Index of the configuration whose foreground is the given vertex list.
int config_index(std::initializer_list<int> black_vertices);

/// Class id 1..6 of a configuration index; throws DomainError outside 0..15.
int config_class(int index);

/// The six classes, in id order.
const std::array<ConfigClass, kNumClasses>& config_classes();

/// Unit-cell coordinates of the vertices selected by `mask`.
PointSet vertex_points(int mask);

/// Inclusion-exclusion matrix: column j = observed class, row i = vacancy class,
/// so that p_obs(j) = sum_i B(i, j) * P(rep_i vacant).
using MobiusMatrix = Eigen::Matrix<int, kNumClasses, kNumClasses>;
MobiusMatrix mobius_matrix();

/// Expansion coefficients of the vacancy probability of each class representative
/// at unit spacing; row m-1 holds c_m.
using CoefficientMatrix = Eigen::Matrix<double, 8, kNumClasses>;
CoefficientMatrix coefficient_matrix();

/// diag(d_1..d_6)
Eigen::Matrix<double, kNumClasses, kNumClasses> class_size_matrix();

/// Six weights for an estimator of the intrinsic volume of the given degree.
struct WeightVector {
  int degree = 1;
  Weights6 w = Weights6::Zero();

  double operator()(int class_id) const { return w[class_id - 1]; }
};

/// c_1..c_8 of the estimator-mean expansion.
struct SeriesConstants {
  Eigen::Matrix<double, 8, 1> c = Eigen::Matrix<double, 8, 1>::Zero();

  /// 1-based accessor matching the usual c_m numbering.
  double operator()(int m) const { return c[m - 1]; }
};

/// A * B * D * w
SeriesConstants series_constants_product(const Weights6& w);

/// Closed-form linear expressions in w.
SeriesConstants series_constants_closed_form(const Weights6& w);

/// Both routes; throws ConsistencyFault when they differ by more than 1e-9.
SeriesConstants series_constants(const Weights6& w);
inline SeriesConstants series_constants(const WeightVector& w) { return series_constants(w.w); }

struct ConstraintCheck {
  std::string label;
  double residual = 0.0;
  bool pass = false;
};

struct ConstraintReport {
  int degree = 1;
  std::vector<ConstraintCheck> checks;

  bool all_pass() const;
};

/// Asymptotic-unbiasedness conditions for the weight vector's degree.
ConstraintReport constraint_report(const WeightVector& w, double tolerance = 1e-9);

/// The second-order linear combination shared by the degree-0 and degree-1 systems
/// (equal to c_5 / 4 when w1 = w6 = 0).
double second_order_combination(const Weights6& w);

/// Solution set of the degree-0 or degree-1 unbiasedness system.
struct WeightFamily {
  WeightVector particular;  ///< minimum-norm solution
  WeightVector direction;   ///< spans the null space, normalized to w2 = 1

  /// particular + t * direction
  WeightVector member(double t) const;
  /// The member whose weight for `class_id` equals `value`. Throws DomainError
  /// when the direction does not move that weight.
  WeightVector member_with(int class_id, double value) const;
};

/// Solves the system with a rank-revealing factorization of rows taken from A*B*D.
/// Throws DomainError for degree not in {0, 1}, ConsistencyFault unless the
/// solution space is exactly one-dimensional.
WeightFamily solve_weight_family(int degree);

}  // namespace digivol
