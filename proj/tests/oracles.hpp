#pragma once

// Independent reference computations used by the tests. None of these call into
// the library's own implementations of the quantity being checked.

#include "digivol/lattice_image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

/// Plain double loop over every counted cell.
inline digivol::ConfigHistogram naive_histogram(const digivol::BinaryImage& image) {
  digivol::ConfigHistogram h;
  for (int r = 0; r + 1 < image.rows(); ++r) {
    const digivol::ColumnSpan span = image.cell_span(r);
    for (int c = span.begin; c < span.end; ++c) {
      const int l = image.get(r, c) + 2 * image.get(r, c + 1) + 4 * image.get(r + 1, c) +
                    8 * image.get(r + 1, c + 1);
      ++h.n[l];
    }
  }
  const int cls[16] = {1, 2, 2, 3, 2, 3, 4, 5, 2, 4, 3, 5, 3, 5, 5, 6};
  for (int l = 0; l < 16; ++l) {
    h.class_counts[cls[l] - 1] += h.n[l];
    h.n0 += h.n[l];
  }
  return h;
}

inline digivol::BinaryImage random_image(int rows, int cols, double density, std::mt19937_64& gen) {
  digivol::BinaryImage image(rows, cols);
  std::bernoulli_distribution coin(density);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) image.set(r, c, coin(gen));
  }
  return image;
}

/// Area of the intersection of two disks of radius r at distance d.
inline double lens_area(double r, double d) {
  if (d >= 2 * r) return 0.0;
  return 2 * r * r * std::acos(d / (2 * r)) - 0.5 * d * std::sqrt(4 * r * r - d * d);
}

/// Area of a union of equal disks from Green's theorem over the uncovered arcs of
/// each circle. Exact up to rounding.
inline double arc_union_area(const std::vector<digivol::Point>& centers, double r) {
  const double two_pi = 2 * std::acos(-1.0);
  double area = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    std::vector<std::pair<double, double>> covered;
    bool hidden = false;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      if (j == i) continue;
      const digivol::Point d = centers[j] - centers[i];
      const double dist = d.norm();
      if (dist == 0.0) {
        if (j < i) hidden = true;  // duplicate, counted once
        continue;
      }
      if (dist >= 2 * r) continue;
      const double mid = std::atan2(d.y(), d.x());
      const double half = std::acos(dist / (2 * r));
      double lo = std::fmod(mid - half + 2 * two_pi, two_pi);
      double hi = lo + 2 * half;
      if (hi > two_pi) {
        covered.push_back({lo, two_pi});
        covered.push_back({0.0, hi - two_pi});
      } else {
        covered.push_back({lo, hi});
      }
    }
    if (hidden) continue;
    std::sort(covered.begin(), covered.end());
    auto arc = [&](double t1, double t2) {
      const digivol::Point& c = centers[i];
      area += 0.5 * (r * r * (t2 - t1) + r * c.x() * (std::sin(t2) - std::sin(t1)) -
                     r * c.y() * (std::cos(t2) - std::cos(t1)));
    };
    double t = 0.0;
    for (const auto& [lo, hi] : covered) {
      if (lo > t) arc(t, lo);
      t = std::max(t, hi);
    }
    if (t < two_pi) arc(t, two_pi);
  }
  return area;
}

/// Half perimeter of an ellipse by the trapezoid rule on the arc-length integrand,
/// which converges geometrically for periodic analytic integrands.
inline double ellipse_half_perimeter_trapezoid(double a, double b, int n = 4096) {
  const double pi = std::acos(-1.0);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = 2 * pi * k / n;
    sum += std::sqrt(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t));
  }
  return 0.5 * sum * 2 * pi / n;
}

/// Least-squares polynomial fit y ~ sum_k p_k x^k, k < degree + 1, by normal
/// equations in long double on Chebyshev-spaced samples.
template <typename F>
std::vector<long double> polyfit(const F& f, double lo, double hi, int degree, int samples) {
  const long double pi = std::acos(-1.0L);
  const int m = degree + 1;
  std::vector<long double> ata(m * m, 0.0L), aty(m, 0.0L);
  for (int s = 0; s < samples; ++s) {
    const long double x = 0.5L * (lo + hi) + 0.5L * (hi - lo) * std::cos(pi * (s + 0.5L) / samples);
    const long double y = f(static_cast<double>(x));
    std::vector<long double> row(m);
    long double p = 1.0L;
    for (int k = 0; k < m; ++k, p *= x) row[k] = p;
    for (int i = 0; i < m; ++i) {
      aty[i] += row[i] * y;
      for (int j = 0; j < m; ++j) ata[i * m + j] += row[i] * row[j];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::fabs(ata[r * m + col]) > std::fabs(ata[piv * m + col])) piv = r;
    }
    for (int j = 0; j < m; ++j) std::swap(ata[col * m + j], ata[piv * m + j]);
    std::swap(aty[col], aty[piv]);
    for (int r = col + 1; r < m; ++r) {
      const long double f2 = ata[r * m + col] / ata[col * m + col];
      for (int j = col; j < m; ++j) ata[r * m + j] -= f2 * ata[col * m + j];
      aty[r] -= f2 * aty[col];
    }
  }
  std::vector<long double> p(m);
  for (int i = m - 1; i >= 0; --i) {
    long double s = aty[i];
    for (int j = i + 1; j < m; ++j) s -= ata[i * m + j] * p[j];
    p[i] = s / ata[i * m + i];
  }
  return p;
}

}  // namespace oracle
