#include "digivol/geometry.hpp"
#include "digivol/quadrature.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace digivol;

TEST_CASE("convex hull metrics of simple sets") {
  const PointSet square = {Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)};
  const auto m = convex_hull_metrics(square);
  CHECK(m.v0 == 1.0);
  CHECK(m.v1 == doctest::Approx(2.0));
  CHECK(m.v2 == doctest::Approx(1.0));

  const PointSet segment = {Point(0, 0), Point(3, 4)};
  const auto s = convex_hull_metrics(segment);
  CHECK(s.v1 == doctest::Approx(5.0));
  CHECK(s.v2 == 0.0);

  const PointSet single = {Point(2, 2)};
  const auto p = convex_hull_metrics(single);
  CHECK(p.v0 == 1.0);
  CHECK(p.v1 == 0.0);

  CHECK(convex_hull_metrics(PointSet{}).v0 == 0.0);

  // Interior and collinear points do not change the hull.
  const PointSet noisy = {Point(0, 0), Point(2, 0), Point(1, 0), Point(2, 2), Point(0, 2),
                          Point(1, 1), Point(0, 1)};
  const auto n = convex_hull_metrics(noisy);
  CHECK(n.v1 == doctest::Approx(4.0));
  CHECK(n.v2 == doctest::Approx(4.0));
}

TEST_CASE("hull metrics work for long double scalars") {
  const std::vector<Point2<long double>> tri = {{0.0L, 0.0L}, {3.0L, 0.0L}, {0.0L, 4.0L}};
  const auto m = convex_hull_metrics<long double>(std::span<const Point2<long double>>(tri));
  CHECK(static_cast<double>(m.v1) == doctest::Approx(6.0));
  CHECK(static_cast<double>(m.v2) == doctest::Approx(6.0));
}

TEST_CASE("intrinsic power volume") {
  const PointSet square = {Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)};
  CHECK(intrinsic_power_volume(square, 3) == doctest::Approx(1.0 / 6.0));
  const PointSet segment = {Point(0, 0), Point(1, 0)};
  CHECK(intrinsic_power_volume(segment, 3) == doctest::Approx(1.0 / 12.0));
  const PointSet diagonal = {Point(0, 0), Point(1, 1)};
  CHECK(intrinsic_power_volume(diagonal, 3) == doctest::Approx(2.0 * std::sqrt(2.0) / 12.0));
  CHECK_THROWS_AS(intrinsic_power_volume(square, 4), DomainError);
  CHECK_THROWS_AS(intrinsic_power_volume(square, 1), DomainError);
  CHECK_THROWS_AS(intrinsic_power_volume(PointSet{Point(1, 1)}, 3), DomainError);
}

TEST_CASE("steiner series coefficients") {
  CHECK(steiner_series_coefficient(1) == doctest::Approx(0.5));
  CHECK(steiner_series_coefficient(2) == doctest::Approx(1.0 / 8.0));
  CHECK(steiner_series_coefficient(3) == doctest::Approx(3.0 / 48.0));
}

TEST_CASE("union of disks against closed forms") {
  CHECK(union_of_disks_area({Point(0, 0)}, 2.0) == doctest::Approx(4 * kPi).epsilon(1e-13));
  CHECK(union_of_disks_area({}, 1.0) == 0.0);
  // Duplicates collapse.
  CHECK(union_of_disks_area({Point(1, 1), Point(1, 1)}, 1.0) == doctest::Approx(kPi));

  for (double d : {0.0, 0.1, 0.7, 1.3, 1.99, 2.5}) {
    const double expected = 2 * kPi - oracle::lens_area(1.0, d);
    CHECK(std::abs(union_of_disks_area({Point(0, 0), Point(d, 0)}, 1.0) - expected) < 1e-10);
    // Orientation does not matter.
    const Point rotated(d * std::cos(0.3), d * std::sin(0.3));
    CHECK(std::abs(union_of_disks_area({Point(0, 0), rotated}, 1.0) - expected) < 1e-10);
  }

  // Three collinear disks where only neighbours overlap.
  const double d = 1.2;
  const double three = 3 * kPi - 2 * oracle::lens_area(1.0, d);
  CHECK(std::abs(union_of_disks_area({Point(0, 0), Point(d, 0), Point(2 * d, 0)}, 1.0) - three) < 1e-10);
}

TEST_CASE("union of disks against the arc-integral oracle") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet centers(1 + trial % 6);
    for (auto& c : centers) c = Point(coord(gen), coord(gen));
    const double r = 0.4 + 0.02 * trial;
    CHECK(std::abs(union_of_disks_area(centers, r) - oracle::arc_union_area(centers, r)) < 1e-9);
  }
  // A disk fully inside the union of others adds nothing.
  const PointSet nested = {Point(0, 0), Point(0.05, 0), Point(-0.05, 0)};
  CHECK(oracle::arc_union_area(nested, 1.0) == doctest::Approx(union_of_disks_area(nested, 1.0)));
}

TEST_CASE("dilation series agrees with exact union area") {
  const PointSet configs[] = {
      {Point(0, 0), Point(1, 0)},
      {Point(0, 0), Point(1, 1)},
      {Point(0, 0), Point(1, 0), Point(0, 1)},
      {Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)},
  };
  for (const auto& pts : configs) {
    for (double a : {0.05, 0.2, 0.5}) {
      PointSet scaled;
      for (const auto& p : pts) scaled.push_back(a * p);
      const double exact = union_of_disks_area(scaled, 1.0);
      CHECK(std::abs(dilation_area_series(pts, a, 1.0, 40) - exact) < 1e-9);
    }
  }
  // Truncation error after one term is O(a^5).
  const PointSet sq = configs[3];
  const double e1 = std::abs(dilation_area_series(sq, 0.1, 1.0, 1) -
                             union_of_disks_area({Point(0, 0), Point(0.1, 0), Point(0, 0.1), Point(0.1, 0.1)}, 1.0));
  const double e2 = std::abs(dilation_area_series(sq, 0.05, 1.0, 1) -
                             union_of_disks_area({Point(0, 0), Point(0.05, 0), Point(0, 0.05), Point(0.05, 0.05)}, 1.0));
  CHECK(e1 / e2 > 20.0);
}

TEST_CASE("dilation series rejects spacings outside its range") {
  const PointSet diag = {Point(0, 0), Point(1, 1)};
  CHECK_THROWS_AS(dilation_area_series(diag, 0.8, 1.0, 3), DomainError);
  CHECK_NOTHROW(dilation_area_series(diag, 0.7, 1.0, 3));
  try {
    dilation_area_series(diag, 0.8, 1.0, 3);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("a/r = 0.8") != std::string::npos);
  }
  CHECK(dilation_area_series({Point(3, 3)}, 0.5, 2.0, 5) == doctest::Approx(4 * kPi));
}

TEST_CASE("diameter") {
  CHECK(diameter({Point(0, 0), Point(1, 1), Point(1, 0)}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(diameter({Point(4, 4)}) == 0.0);
}

TEST_CASE("quadrature rules") {
  const auto& rule = quad::gauss_legendre_32();
  CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  // Exact for polynomials up to degree 63.
  const double p = quad::integrate_gauss(rule, [](double x) { return std::pow(x, 40); }, 0.0, 1.0);
  CHECK(p == doctest::Approx(1.0 / 41.0).epsilon(1e-13));
  const double s = quad::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-11));
  const double half_disk = quad::adaptive_simpson_cosine(
      [](double y) { return 2 * std::sqrt(std::max(0.0, 1 - y * y)); }, -1.0, 1.0, 1e-12);
  CHECK(half_disk == doctest::Approx(kPi).epsilon(1e-11));
}
