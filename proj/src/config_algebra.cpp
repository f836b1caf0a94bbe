#include "digivol/config_algebra.hpp"

#include "digivol/geometry.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <bit>
#include <cmath>
#include <sstream>

namespace digivol {

int config_index(std::initializer_list<int> black_vertices) {
  int index = 0;
  for (int v : black_vertices) {
    if (v < 0 || v > 3) {
      throw DomainError("config_index: vertex out of range: " + std::to_string(v));
    }
    index |= 1 << v;
  }
  return index;
}

namespace {

// Class id of each configuration index.
constexpr std::array<int, kNumConfigurations> kClassOfIndex = {
    1, 2, 2, 3, 2, 3, 4, 5, 2, 4, 3, 5, 3, 5, 5, 6};

}  // namespace

int config_class(int index) {
  if (index < 0 || index >= kNumConfigurations) {
    throw DomainError("config_class: index out of range: " + std::to_string(index));
  }
  return kClassOfIndex[index];
}

const std::array<ConfigClass, kNumClasses>& config_classes() {
  static const auto classes = [] {
    std::array<ConfigClass, kNumClasses> out;
    for (int j = 0; j < kNumClasses; ++j) {
      out[j].id = j + 1;
      out[j].d = kClassSize[j];
      out[j].representative = kClassRepresentative[j];
    }
    for (int l = 0; l < kNumConfigurations; ++l) {
      out[kClassOfIndex[l] - 1].members.push_back(l);
    }
    return out;
  }();
  return classes;
}

PointSet vertex_points(int mask) {
  static const std::array<Point, 4> corners = {Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)};
  PointSet pts;
  for (int v = 0; v < 4; ++v) {
    if ((mask >> v) & 1) {
      pts.push_back(corners[v]);
    }
  }
  return pts;
}

MobiusMatrix mobius_matrix() {
  // P(white vacant, black covered) = sum over S subset of black of
  // (-1)^|S| P(white u S vacant); each term is binned by the class of white u S.
  MobiusMatrix b = MobiusMatrix::Zero();
  for (int j = 0; j < kNumClasses; ++j) {
    const Configuration observed{kClassRepresentative[j]};
    const int black = observed.black_mask();
    const int white = observed.white_mask();
    for (int s = black;; s = (s - 1) & black) {
      const int sign = (std::popcount(static_cast<unsigned>(s)) % 2 == 0) ? 1 : -1;
      b(config_class(white | s) - 1, j) += sign;
      if (s == 0) break;
    }
  }
  return b;
}

CoefficientMatrix coefficient_matrix() {
  CoefficientMatrix a = CoefficientMatrix::Zero();
  a(0, 0) = 1.0;
  for (int j = 1; j < kNumClasses; ++j) {
    const PointSet pts = vertex_points(kClassRepresentative[j]);
    const auto m = convex_hull_metrics(pts);
    const double power3 = pts.size() >= 2 ? intrinsic_power_volume(pts, 3) : 0.0;
    a(1, j) = 1.0;
    a(2, j) = -2.0 * m.v1;
    a(3, j) = -m.v2;
    a(4, j) = 2.0 * m.v1 * m.v1;
    a(5, j) = power3;
    a(6, j) = 2.0 * m.v1 * m.v2;
    a(7, j) = -4.0 / 3.0 * m.v1 * m.v1 * m.v1;
  }
  return a;
}

Eigen::Matrix<double, kNumClasses, kNumClasses> class_size_matrix() {
  Eigen::Matrix<double, kNumClasses, 1> d;
  for (int j = 0; j < kNumClasses; ++j) d[j] = kClassSize[j];
  return d.asDiagonal();
}

namespace {

const Eigen::Matrix<double, 8, kNumClasses>& abd_matrix() {
  static const Eigen::Matrix<double, 8, kNumClasses> abd =
      coefficient_matrix() * mobius_matrix().cast<double>() * class_size_matrix();
  return abd;
}

}  // namespace

SeriesConstants series_constants_product(const Weights6& w) {
  return SeriesConstants{abd_matrix() * w};
}

SeriesConstants series_constants_closed_form(const Weights6& w) {
  const double s = kSqrt2;
  const double w1 = w[0], w2 = w[1], w3 = w[2], w4 = w[3], w5 = w[4], w6 = w[5];
  SeriesConstants out;
  auto& c = out.c;
  c[0] = w6;
  c[1] = w1 - w6;
  c[2] = 4.0 * (-w1 + (2.0 - s) * w2 + (-2.0 + 2.0 * s) * w3 + (2.0 - s) * w5 - w6);
  c[3] = -w1 + 2.0 * w2 - 2.0 * w5 + w6;
  c[4] = 4.0 * (2.0 * w1 + (-5.0 + 2.0 * s) * w2 + (4.0 - 4.0 * s) * w3 + (3.0 - 2.0 * s) * w4 +
                (-7.0 + 6.0 * s) * w5 + (3.0 - 2.0 * s) * w6);
  c[5] = (w1 + (2.0 * s - 2.0) * w2 + (2.0 - 4.0 * s) * w3 + (2.0 * s - 2.0) * w5 + w6) / 6.0;
  c[6] = 2.0 * (2.0 * w1 + (-6.0 + s) * w2 + (4.0 - 2.0 * s) * w3 + (2.0 - s) * w4 +
                (-2.0 + 3.0 * s) * w5 - s * w6);
  c[7] = 4.0 / 3.0 *
         (-8.0 * w1 + (22.0 - 7.0 * s) * w2 + (-16.0 + 14.0 * s) * w3 + (-6.0 + 3.0 * s) * w4 +
          (10.0 - 13.0 * s) * w5 + (-2.0 + 3.0 * s) * w6);
  return out;
}

SeriesConstants series_constants(const Weights6& w) {
  const SeriesConstants closed = series_constants_closed_form(w);
  const SeriesConstants product = series_constants_product(w);
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  const double gap = (closed.c - product.c).cwiseAbs().maxCoeff();
  if (gap > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "series_constants: matrix product and closed form disagree by " << gap;
    throw ConsistencyFault(msg.str());
  }
  return closed;
}

double second_order_combination(const Weights6& w) {
  const double s = kSqrt2;
  return (-5.0 + 2.0 * s) * w[1] + (4.0 - 4.0 * s) * w[2] + (3.0 - 2.0 * s) * w[3] +
         (-7.0 + 6.0 * s) * w[4];
}

bool ConstraintReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

ConstraintReport constraint_report(const WeightVector& wv, double tolerance) {
  const Weights6& w = wv.w;
  const double s = kSqrt2;
  ConstraintReport report;
  report.degree = wv.degree;
  auto add = [&](std::string label, double residual) {
    report.checks.push_back({std::move(label), residual, std::abs(residual) <= tolerance});
  };

  const double edge_classes = std::max(std::abs(w[0]), std::abs(w[5]));
  const double first_order = (2.0 - s) * w[1] + (-2.0 + 2.0 * s) * w[2] + (2.0 - s) * w[4];
  switch (wv.degree) {
    case 1:
      add("w1=w6=0", edge_classes);
      add("c3=pi", 4.0 * first_order - kPi);
      add("w2-w5=0", w[1] - w[4]);
      add("second-order=0", second_order_combination(w));
      break;
    case 0:
      add("w1=w6=0", edge_classes);
      add("first-order=0", first_order);
      add("2w2-2w5=1", 2.0 * w[1] - 2.0 * w[4] - 1.0);
      add("second-order=-pi/4", second_order_combination(w) + kPi / 4.0);
      break;
    case 2:
      add("w1=0", w[0]);
      add("w6=1", w[5] - 1.0);
      break;
    default:
      throw DomainError("constraint_report: degree must be 0, 1 or 2");
  }
  return report;
}

WeightFamily solve_weight_family(int degree) {
  if (degree != 0 && degree != 1) {
    throw DomainError("solve_weight_family: degree must be 0 or 1");
  }
  // Rows: w1 = 0, w6 = 0, then conditions on c3, c4 (or w2 - w5) and c5 read
  // off the rows of A*B*D.
  const auto& abd = abd_matrix();
  Eigen::Matrix<double, 5, kNumClasses> system = Eigen::Matrix<double, 5, kNumClasses>::Zero();
  Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();
  system(0, 0) = 1.0;
  system(1, 5) = 1.0;
  system.row(2) = abd.row(2);
  system.row(4) = abd.row(4);
  if (degree == 1) {
    system(3, 1) = 1.0;
    system(3, 4) = -1.0;
    rhs << 0.0, 0.0, kPi, 0.0, 0.0;
  } else {
    system.row(3) = abd.row(3);
    rhs << 0.0, 0.0, 0.0, 1.0, -kPi;
  }

  Eigen::FullPivLU<Eigen::Matrix<double, 5, kNumClasses>> lu(system);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (lu.rank() != 5 || kernel.cols() != 1) {
    std::ostringstream msg;
    msg << "solve_weight_family: expected corank 1, got rank " << lu.rank() << " of 6";
    throw ConsistencyFault(msg.str());
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 5, kNumClasses>> cod(system);
  const Weights6 particular = cod.solve(rhs);
  if ((system * particular - rhs).cwiseAbs().maxCoeff() > 1e-10) {
    throw ConsistencyFault("solve_weight_family: system is inconsistent");
  }

  // The first two rows pin w1 and w6; drop the solver's roundoff there.
  Weights6 particular_clean = particular;
  particular_clean[0] = 0.0;
  particular_clean[5] = 0.0;

  Weights6 direction = kernel.col(0);
  if (std::abs(direction[1]) < 1e-12) {
    throw ConsistencyFault("solve_weight_family: null space direction has no w2 component");
  }
  direction /= direction[1];

  return WeightFamily{WeightVector{degree, particular_clean}, WeightVector{degree, direction}};
}

WeightVector WeightFamily::member(double t) const {
  return WeightVector{particular.degree, particular.w + t * direction.w};
}

WeightVector WeightFamily::member_with(int class_id, double value) const {
  if (class_id < 1 || class_id > kNumClasses) {
    throw DomainError("member_with: class id must be in 1..6");
  }
  const double slope = direction.w[class_id - 1];
  if (std::abs(slope) < 1e-12) {
    throw DomainError("member_with: that weight is the same for every member");
  }
  return member((value - particular.w[class_id - 1]) / slope);
}

}  // namespace digivol
