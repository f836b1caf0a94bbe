#pragma once

#include "digivol/types.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace digivol {

/// Intrinsic volumes of a planar convex body: Euler characteristic, half perimeter, area.
template <typename Scalar>
struct HullMetrics {
  Scalar v0{0};
  Scalar v1{0};
  Scalar v2{0};
};

template <typename Scalar>
Scalar polygon_area_signed(const std::vector<Point2<Scalar>>& poly) {
  Scalar twice{0};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return twice / Scalar(2);
}

/// Vertices of conv(points) in counter-clockwise order, duplicates and collinear
/// points removed (monotone chain). A hull of dimension <= 1 comes back as
/// zero, one or two points.
template <typename Scalar>
std::vector<Point2<Scalar>> convex_hull(std::span<const Point2<Scalar>> points) {
  std::vector<Point2<Scalar>> pts(points.begin(), points.end());
  auto lex_less = [](const Point2<Scalar>& p, const Point2<Scalar>& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  };
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) {
    return pts;
  }

  auto cross = [](const Point2<Scalar>& o, const Point2<Scalar>& p, const Point2<Scalar>& q) {
    return (p.x() - o.x()) * (q.y() - o.y()) - (p.y() - o.y()) * (q.x() - o.x());
  };

  std::vector<Point2<Scalar>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= Scalar(0)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= Scalar(0)) --k;
    hull[k++] = pts[i];
  }
  // Collinear input collapses to its two extremes here.
  hull.resize(k - 1);
  return hull;
}

/// Lengths of the 1-faces of a hull returned by convex_hull, with their outer
/// angles: 1 for a segment hull, 1/2 per edge of a polygon.
template <typename Scalar>
std::vector<std::pair<Scalar, Scalar>> hull_faces(const std::vector<Point2<Scalar>>& hull) {
  std::vector<std::pair<Scalar, Scalar>> faces;
  if (hull.size() == 2) {
    faces.emplace_back((hull[1] - hull[0]).norm(), Scalar(1));
  } else if (hull.size() > 2) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      faces.emplace_back((hull[(i + 1) % hull.size()] - hull[i]).norm(), Scalar(1) / Scalar(2));
    }
  }
  return faces;
}

template <typename Scalar>
HullMetrics<Scalar> convex_hull_metrics(std::span<const Point2<Scalar>> points) {
  HullMetrics<Scalar> m;
  const auto hull = convex_hull(points);
  if (hull.empty()) {
    return m;
  }
  m.v0 = Scalar(1);
  // Half the boundary length; a segment of length L counts both sides, so v1 = L.
  for (const auto& [length, angle] : hull_faces(hull)) {
    m.v1 += angle * length;
  }
  if (hull.size() > 2) {
    m.v2 = std::abs(polygon_area_signed(hull));
  }
  return m;
}

inline HullMetrics<double> convex_hull_metrics(const PointSet& points) {
  return convex_hull_metrics<double>(std::span<const Point>(points));
}

/// V_1^{(m)}(points) = 1/(m 2^{m-1}) * sum over 1-faces F of outer_angle(F) * length(F)^m.
/// Requires at least two distinct points and odd m >= 3.
template <typename Scalar>
Scalar intrinsic_power_volume(std::span<const Point2<Scalar>> points, int m) {
  if (m < 3 || m % 2 == 0) {
    throw DomainError("intrinsic_power_volume: exponent must be odd and >= 3, got " +
                      std::to_string(m));
  }
  const auto hull = convex_hull(points);
  if (hull.size() < 2) {
    throw DomainError("intrinsic_power_volume: need at least two distinct points");
  }
  Scalar sum{0};
  for (const auto& [length, angle] : hull_faces(hull)) {
    sum += angle * std::pow(length, m);
  }
  return sum / (Scalar(m) * std::pow(Scalar(2), m - 1));
}

inline double intrinsic_power_volume(const PointSet& points, int m) {
  return intrinsic_power_volume<double>(std::span<const Point>(points), m);
}

/// Largest pairwise distance.
double diameter(const PointSet& points);

/// Area of the union of equal-radius disks, exact horizontal slicing with adaptive
/// quadrature between the critical ordinates. Absolute accuracy about 1e-10.
double union_of_disks_area(const PointSet& centers, double r);

/// Area of conv(a*points) + B(r) minus the first n_terms of the finite-set Steiner
/// correction series; approximates union_of_disks_area(a*points, r). Requires
/// a*diameter(points) < r.
double dilation_area_series(const PointSet& points, double a, double r, int n_terms);

/// (2n-3)!!/(2n)!! with (-1)!! = 1.
double steiner_series_coefficient(int n);

}  // namespace digivol
