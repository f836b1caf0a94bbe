#include "digivol/design_based.hpp"

#include "digivol/estimators.hpp"
#include "digivol/quadrature.hpp"
#include "digivol/rng.hpp"
#include "digivol/stats.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>

namespace digivol {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool in_disk(const DiskShape& d, const Point& p) {
  return (p - d.center).squaredNorm() <= d.radius * d.radius;
}

/// Disks covering the shape, for bounding boxes.
std::vector<DiskShape> bounding_disks(const Shape& shape) {
  return std::visit(
      Overloaded{
          [](const DiskShape& d) { return std::vector<DiskShape>{d}; },
          [](const EllipseShape& e) {
            return std::vector<DiskShape>{{e.center, std::max(e.semi_major, e.semi_minor)}};
          },
          [](const DiskUnionShape& u) { return u.disks; },
          [](const AnnulusShape& an) { return std::vector<DiskShape>{{an.center, an.outer}}; },
      },
      shape);
}

}  // namespace

void validate_shape(const Shape& shape) {
  auto positive = [](double r, const char* what) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError(std::string(what) + " must be positive");
  };
  std::visit(Overloaded{
                 [&](const DiskShape& d) { positive(d.radius, "disk radius"); },
                 [&](const EllipseShape& e) {
                   positive(e.semi_major, "ellipse semi-axis");
                   positive(e.semi_minor, "ellipse semi-axis");
                 },
                 [&](const DiskUnionShape& u) {
                   if (u.disks.empty()) throw DomainError("disk union needs at least one disk");
                   for (std::size_t i = 0; i < u.disks.size(); ++i) {
                     positive(u.disks[i].radius, "disk radius");
                     for (std::size_t j = 0; j < i; ++j) {
                       const double gap = (u.disks[i].center - u.disks[j].center).norm() -
                                          u.disks[i].radius - u.disks[j].radius;
                       if (!(gap > 0.0)) throw DomainError("disks of a union must be disjoint");
                     }
                   }
                 },
                 [&](const AnnulusShape& an) {
                   positive(an.inner, "annulus inner radius");
                   if (!(an.outer > an.inner) || !std::isfinite(an.outer)) {
                     throw DomainError("annulus needs 0 < inner < outer");
                   }
                 },
             },
             shape);
}

bool shape_indicator(const Shape& shape, const Point& p) {
  return std::visit(
      Overloaded{
          [&](const DiskShape& d) { return in_disk(d, p); },
          [&](const EllipseShape& e) {
            const Point q = Eigen::Rotation2Dd(-e.tilt) * (p - e.center);
            const double x = q.x() / e.semi_major;
            const double y = q.y() / e.semi_minor;
            return x * x + y * y <= 1.0;
          },
          [&](const DiskUnionShape& u) {
            return std::any_of(u.disks.begin(), u.disks.end(),
                               [&](const DiskShape& d) { return in_disk(d, p); });
          },
          [&](const AnnulusShape& an) {
            const double r2 = (p - an.center).squaredNorm();
            return r2 >= an.inner * an.inner && r2 <= an.outer * an.outer;
          },
      },
      shape);
}

double ellipse_half_perimeter(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ellipse semi-axes must be positive");
  if (a < b) std::swap(a, b);
  double x = a;
  double y = b;
  double sum = 0.5 * (a * a - b * b);  // 2^{-1} c_0^2
  double power = 0.5;
  for (int it = 0; it < 64; ++it) {
    const double c = 0.5 * (x - y);
    const double nx = 0.5 * (x + y);
    y = std::sqrt(x * y);
    x = nx;
    power *= 2.0;
    sum += power * c * c;
    if (std::abs(c) <= 1e-16 * x) break;
  }
  return kPi / x * (a * a - sum);
}

double reference_v0(const Shape& shape) {
  return std::visit(Overloaded{
                        [](const DiskShape&) { return 1.0; },
                        [](const EllipseShape&) { return 1.0; },
                        [](const DiskUnionShape& u) { return static_cast<double>(u.disks.size()); },
                        [](const AnnulusShape&) { return 0.0; },
                    },
                    shape);
}

double reference_v1(const Shape& shape) {
  return std::visit(
      Overloaded{
          [](const DiskShape& d) { return kPi * d.radius; },
          [](const EllipseShape& e) { return ellipse_half_perimeter(e.semi_major, e.semi_minor); },
          [](const DiskUnionShape& u) {
            double sum = 0.0;
            for (const auto& d : u.disks) sum += kPi * d.radius;
            return sum;
          },
          [](const AnnulusShape& an) { return kPi * (an.inner + an.outer); },
      },
      shape);
}

Window rotated_bounding_box(const Shape& shape, double angle) {
  const Eigen::Rotation2Dd rot(angle);
  double inf = std::numeric_limits<double>::infinity();
  Window box{inf, inf, -inf, -inf};
  for (const auto& d : bounding_disks(shape)) {
    const Point c = rot * d.center;
    box.x0 = std::min(box.x0, c.x() - d.radius);
    box.y0 = std::min(box.y0, c.y() - d.radius);
    box.x1 = std::max(box.x1, c.x() + d.radius);
    box.y1 = std::max(box.y1, c.y() + d.radius);
  }
  return box;
}

BinaryImage digitize_shape(const Shape& shape, double a, const Point& c, double v) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("lattice spacing must be positive");
  Lattice lattice;
  lattice.a = a;
  lattice.c = c;
  const Window window = rotated_bounding_box(shape, -v).padded(2.0 * a);
  const Eigen::Rotation2Dd rot(v);
  return digitize([&](const Point& q) { return shape_indicator(shape, rot * q); }, lattice, window,
                  CellSelection::all);
}

DesignResult mc_design_estimate(const Shape& shape, double a, const WeightVector& w,
                                int replicates, std::uint64_t seed) {
  validate_shape(shape);
  if (w.degree < 2 && (w.w[0] != 0.0 || w.w[5] != 0.0)) {
    throw DomainError(
        "design-based estimation needs w1 = w6 = 0 for degrees 0 and 1: the counts of the "
        "all-background and all-foreground classes are unbounded or window dependent");
  }
  if (replicates < 1) throw DomainError("replicates must be at least 1");

  DesignResult out;
  out.estimates.assign(static_cast<std::size_t>(replicates), 0.0);
  parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t k) {
    Philox4x32 rng(seed, k);
    const Point c(rng.uniform(), rng.uniform());
    const double v = 2.0 * kPi * rng.uniform();
    const BinaryImage image = digitize_shape(shape, a, c, v);
    out.estimates[k] = design_estimate(config_histogram(image), a, w);
  });
  MeanAccumulator acc;
  for (double e : out.estimates) acc.add(e);
  out.mean = acc.mean();
  out.standard_error = acc.standard_error();
  return out;
}

double minus_h(int config_index, const Point& direction) {
  if (config_index < 0 || config_index >= kNumConfigurations) {
    throw DomainError("configuration index outside 0..15");
  }
  const PointSet black = vertex_points(config_index);
  const PointSet white = vertex_points(15 - config_index);
  if (black.empty() || white.empty()) {
    throw DomainError("minus_h needs nonempty foreground and background");
  }
  double min_white = std::numeric_limits<double>::infinity();
  double max_black = -std::numeric_limits<double>::infinity();
  for (const auto& p : white) min_white = std::min(min_white, p.dot(direction));
  for (const auto& p : black) max_black = std::max(max_black, p.dot(direction));
  return std::max(0.0, min_white - max_black);
}

double class_boundary_density(int class_id) {
  if (class_id < 2 || class_id > 5) throw DomainError("class id must be in 2..5");
  const int rep = kClassRepresentative[class_id - 1];
  auto f = [rep](double v) { return minus_h(rep, Point(std::cos(v), std::sin(v))); };
  // The integrand is smooth between multiples of pi/4.
  double total = 0.0;
  for (int k = 0; k < 8; ++k) {
    total += quad::adaptive_simpson(f, k * kPi / 4, (k + 1) * kPi / 4, 1e-13);
  }
  return total;
}

std::array<CountBoundCheck, 4> count_bound_check(const BinaryImage& image, double v1_reference) {
  const double a = image.lattice().a;
  const ConfigHistogram hist = config_histogram(image);
  const double bound = (1.0 + 4.0 * kSqrt2 * v1_reference) / a;
  std::array<CountBoundCheck, 4> out{};
  for (int j = 2; j <= 5; ++j) {
    auto& check = out[j - 2];
    check.class_id = j;
    check.count = hist.class_counts[j - 1];
    check.bound = bound;
    check.margin = bound - static_cast<double>(check.count);
    check.holds = check.margin >= 0.0;
  }
  return out;
}

}  // namespace digivol
