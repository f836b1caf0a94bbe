#include "digivol/geometry.hpp"

#include "digivol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace digivol {

double diameter(const PointSet& points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      d = std::max(d, (points[i] - points[j]).norm());
    }
  }
  return d;
}

namespace {

// Length of the union of the horizontal chords of all disks at height y.
double slice_length(const PointSet& centers, double r, double y,
                    std::vector<std::pair<double, double>>& chords) {
  chords.clear();
  const double r2 = r * r;
  for (const auto& c : centers) {
    const double dy = y - c.y();
    const double h2 = r2 - dy * dy;
    if (h2 > 0.0) {
      const double h = std::sqrt(h2);
      chords.emplace_back(c.x() - h, c.x() + h);
    }
  }
  if (chords.empty()) {
    return 0.0;
  }
  std::sort(chords.begin(), chords.end());
  double total = 0.0;
  double lo = chords.front().first;
  double hi = chords.front().second;
  for (std::size_t i = 1; i < chords.size(); ++i) {
    if (chords[i].first > hi) {
      total += hi - lo;
      lo = chords[i].first;
      hi = chords[i].second;
    } else {
      hi = std::max(hi, chords[i].second);
    }
  }
  return total + (hi - lo);
}

}  // namespace

double union_of_disks_area(const PointSet& centers_in, double r) {
  if (!(r > 0.0)) {
    throw DomainError("union_of_disks_area: radius must be positive");
  }
  PointSet centers = centers_in;
  std::sort(centers.begin(), centers.end(), [](const Point& p, const Point& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  });
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  if (centers.empty()) {
    return 0.0;
  }
  if (centers.size() == 1) {
    return kPi * r * r;
  }

  // The chord-union length is smooth between consecutive critical ordinates:
  // disk tops/bottoms and circle-circle crossings.
  std::vector<double> levels;
  for (const auto& c : centers) {
    levels.push_back(c.y() - r);
    levels.push_back(c.y() + r);
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const Point delta = centers[j] - centers[i];
      const double d = delta.norm();
      if (d > 2.0 * r) {
        continue;
      }
      const Point mid = centers[i] + 0.5 * delta;
      const double h = std::sqrt(std::max(0.0, r * r - 0.25 * d * d));
      const Point normal(-delta.y() / d, delta.x() / d);
      levels.push_back(mid.y() + h * normal.y());
      levels.push_back(mid.y() - h * normal.y());
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double p, double q) { return std::abs(p - q) < 1e-14; }),
               levels.end());

  const double span = levels.back() - levels.front();
  constexpr double kTolerance = 1e-12;
  std::vector<std::pair<double, double>> chords;
  chords.reserve(centers.size());
  auto length = [&](double y) { return slice_length(centers, r, y, chords); };

  double area = 0.0;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double lo = levels[k];
    const double hi = levels[k + 1];
    area += quad::adaptive_simpson_cosine(length, lo, hi, kTolerance * (hi - lo) / span, 30);
  }
  return area;
}

double steiner_series_coefficient(int n) {
  // (2n-3)!! / (2n)!! built as a running product: n=1 gives 1/2.
  double value = 0.5;
  for (int k = 2; k <= n; ++k) {
    value *= static_cast<double>(2 * k - 3) / static_cast<double>(2 * k);
  }
  return value;
}

double dilation_area_series(const PointSet& points, double a, double r, int n_terms) {
  if (!(r > 0.0) || !(a > 0.0)) {
    throw DomainError("dilation_area_series: spacing and radius must be positive");
  }
  const double diam = diameter(points);
  if (!(a * diam < r)) {
    std::ostringstream msg;
    msg << "dilation_area_series: series outside its validity range, a*diam/r = " << a * diam / r
        << " must be < 1 (a/r = " << a / r << ")";
    throw DomainError(msg.str());
  }
  PointSet scaled;
  scaled.reserve(points.size());
  for (const auto& p : points) {
    scaled.push_back(a * p);
  }
  const auto hull = convex_hull_metrics(scaled);
  if (hull.v0 == 0.0) {
    return 0.0;
  }
  // Planar Steiner formula for the hull.
  const double hull_area = hull.v2 + 2.0 * hull.v1 * r + kPi * r * r;
  if (diam == 0.0) {
    return hull_area;
  }
  double correction = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    correction += steiner_series_coefficient(n) * intrinsic_power_volume(points, 2 * n + 1) *
                  std::pow(a / r, 2 * n - 1);
  }
  return hull_area - 2.0 * a * a * correction;
}

}  // namespace digivol
