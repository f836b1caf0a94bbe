#pragma once

#include "digivol/config_algebra.hpp"
#include "digivol/lattice_image.hpp"
#include "digivol/types.hpp"

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

namespace digivol {

struct DiskShape {
  Point center = Point::Zero();
  double radius = 1.0;
};

struct EllipseShape {
  Point center = Point::Zero();
  double semi_major = 1.0;  ///< along the tilted x axis
  double semi_minor = 1.0;
  double tilt = 0.0;
};

/// Pairwise disjoint closed disks with positive gaps.
struct DiskUnionShape {
  std::vector<DiskShape> disks;
};

struct AnnulusShape {
  Point center = Point::Zero();
  double inner = 0.5;
  double outer = 1.0;
};

using Shape = std::variant<DiskShape, EllipseShape, DiskUnionShape, AnnulusShape>;

/// Validates invariants (positive radii, disjoint union, 0 < inner < outer).
/// Throws DomainError.
void validate_shape(const Shape& shape);

/// Closed-set membership.
bool shape_indicator(const Shape& shape, const Point& p);

double reference_v0(const Shape& shape);
double reference_v1(const Shape& shape);

/// Half the circumference of an ellipse, pi / AGM(a, b) * (a^2 - sum 2^{n-1} c_n^2).
double ellipse_half_perimeter(double a, double b);

/// Axis-aligned box containing the shape rotated by `angle` about the origin.
Window rotated_bounding_box(const Shape& shape, double angle);

/// Digitization on a R_v(Z^2 + c) over a window containing the shape plus a margin
/// 2a. The shape is rotated by -v so the grid itself stays axis aligned; every cell
/// of the grid is counted.
BinaryImage digitize_shape(const Shape& shape, double a, const Point& c, double v);

struct DesignResult {
  std::vector<double> estimates;  ///< one per lattice draw
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Averages a^i sum_j w_j N_j over `replicates` lattice draws (c uniform on [0,1)^2,
/// v uniform on [0, 2 pi)); draw k uses stream (seed, k).
/// Degrees 0 and 1 need w1 = w6 = 0: otherwise N_1 is infinite (DomainError).
DesignResult mc_design_estimate(const Shape& shape, double a, const WeightVector& w,
                                int replicates, std::uint64_t seed);

/// max(0, min_{x in W} <x, n> - max_{x in B} <x, n>) for the black set B and
/// white set W of a configuration. Throws DomainError if either set is empty.
double minus_h(int config_index, const Point& direction);

/// Integral of minus_h over the unit circle for the representative of class 2..5.
double class_boundary_density(int class_id);

struct CountBoundCheck {
  int class_id = 2;
  std::uint64_t count = 0;
  double bound = 0.0;
  double margin = 0.0;  ///< bound - count
  bool holds = false;
};

/// N_j <= (1 + 4 sqrt(2) V1) / a for classes 2..5, with a the image's spacing.
std::array<CountBoundCheck, 4> count_bound_check(const BinaryImage& image, double v1_reference);

}  // namespace digivol
