#include "digivol/boolean_model.hpp"
#include "digivol/estimators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace digivol;

namespace {

BooleanModelSpec model(double gamma, RadiusLaw law) {
  BooleanModelSpec s;
  s.gamma = gamma;
  s.radius = law;
  return s;
}

}  // namespace

TEST_CASE("radius law moments") {
  const auto u = RadiusLaw::uniform(1.0, 3.0);
  CHECK(u.mean() == doctest::Approx(2.0));
  CHECK(u.second_moment() == doctest::Approx(13.0 / 3.0));
  CHECK(u.inverse_mean() == doctest::Approx(std::log(3.0) / 2.0));
  CHECK(u.expect([](double r) { return r * r; }) == doctest::Approx(13.0 / 3.0));
  CHECK(u.expect([](double r) { return 1.0 / r; }) == doctest::Approx(std::log(3.0) / 2.0));
  const auto p = RadiusLaw::point_mass(2.0);
  CHECK(p.inverse_mean() == 0.5);
  CHECK(RadiusLaw::uniform(1.5, 1.5).kind() == RadiusLaw::Kind::point_mass);
  CHECK_THROWS_AS(RadiusLaw::point_mass(0.0), DomainError);
  CHECK_THROWS_AS(RadiusLaw::uniform(2.0, 1.0), DomainError);
}

TEST_CASE("specific intrinsic volumes") {
  const auto sv = specific_volumes(model(0.5, RadiusLaw::point_mass(1.0)));
  const double e = std::exp(-kPi / 2);
  CHECK(sv.v2 == doctest::Approx(1 - e));
  CHECK(sv.v1 == doctest::Approx(0.5 * kPi * e));
  CHECK(sv.v0 == doctest::Approx((0.5 - 0.25 * kPi) * e));
  CHECK(sv[2] == sv.v2);
  const auto none = specific_volumes(model(0.0, RadiusLaw::point_mass(1.0)));
  CHECK(none.v2 == 0.0);
  CHECK_THROWS_AS(specific_volumes(model(-1.0, RadiusLaw::point_mass(1.0))), DomainError);
}

TEST_CASE("vacancy probabilities") {
  const auto spec = model(0.3, RadiusLaw::point_mass(1.0));
  CHECK(vacancy_probability(0, 0.1, spec) == 1.0);
  CHECK(vacancy_probability(1, 0.1, spec) == doctest::Approx(std::exp(-0.3 * kPi)));
  const double two = 2 * kPi - oracle::lens_area(1.0, 0.1);
  CHECK(vacancy_probability(3, 0.1, spec) == doctest::Approx(std::exp(-0.3 * two)).epsilon(1e-12));
  CHECK_THROWS_AS(vacancy_probability(16, 0.1, spec), DomainError);
  CHECK_THROWS_AS(vacancy_probability(1, 0.0, spec), DomainError);
}

TEST_CASE("exact class probabilities form a distribution") {
  for (const auto& spec : {model(0.3, RadiusLaw::point_mass(1.0)), model(1.0, RadiusLaw::uniform(0.5, 1.5))}) {
    for (double a : {0.05, 0.3, 1.0, 3.0}) {
      const auto p = exact_class_probabilities(a, spec);
      double total = 0.0;
      for (int j = 0; j < kNumClasses; ++j) {
        CHECK(p[j] >= -1e-12);
        total += kClassSize[j] * p[j];
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
      // A single corner is covered with probability v2.
      double corner = 0.0;
      for (int j = 0; j < kNumClasses; ++j) corner += point_count_weights().w[j] * kClassSize[j] * p[j];
      CHECK(corner == doctest::Approx(specific_volumes(spec).v2).epsilon(1e-10));
    }
  }
}

TEST_CASE("series mean converges to the exact mean") {
  const auto spec = model(0.3, RadiusLaw::point_mass(1.0));
  const auto w = resolve_weights("corrected-cauchy");
  double prev = 0.0;
  for (double a : {0.2, 0.1, 0.05}) {
    const double err = std::abs(exact_estimator_mean(w, a, spec) - series_estimator_mean(w, a, spec, 3));
    if (prev > 0.0) CHECK(prev / err > 6.0);
    prev = err;
  }
  // Order 0 for degree 1 is just the c1, c2 part (zero for these weights).
  CHECK(series_estimator_mean(w, 0.1, spec, 0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(series_estimator_mean(w, 0.8, spec, 3), DomainError);
  CHECK_THROWS_AS(series_estimator_mean(w, 0.1, spec, 4), DomainError);

  const auto uspec = model(0.4, RadiusLaw::uniform(0.8, 1.6));
  const double e1 = std::abs(exact_estimator_mean(w, 0.1, uspec) - series_estimator_mean(w, 0.1, uspec, 3));
  const double e2 = std::abs(exact_estimator_mean(w, 0.05, uspec) - series_estimator_mean(w, 0.05, uspec, 3));
  CHECK(e1 / e2 > 6.0);
}

TEST_CASE("realizations are deterministic and thinned to the window") {
  const auto spec = model(0.5, RadiusLaw::uniform(0.5, 1.0));
  const Window w{0.0, 0.0, 5.0, 4.0};
  Philox4x32 r1(3, 9), r2(3, 9);
  const auto a = sample_realization(spec, w, r1);
  const auto b = sample_realization(spec, w, r2);
  REQUIRE(a.grains.size() == b.grains.size());
  CHECK(!a.grains.empty());
  for (std::size_t k = 0; k < a.grains.size(); ++k) {
    CHECK(a.grains[k].center == b.grains[k].center);
    const Point& c = a.grains[k].center;
    const double dx = std::max({w.x0 - c.x(), 0.0, c.x() - w.x1});
    const double dy = std::max({w.y0 - c.y(), 0.0, c.y() - w.y1});
    CHECK(std::hypot(dx, dy) <= 1.0);
  }
  Philox4x32 r3(0, 0);
  CHECK(sample_realization(model(0.0, RadiusLaw::point_mass(1.0)), w, r3).grains.empty());
}

TEST_CASE("disk rasterization equals pointwise digitization") {
  const auto spec = model(0.8, RadiusLaw::uniform(0.2, 0.9));
  const Window w{-1.0, 2.0, 6.0, 7.5};
  for (std::uint64_t k = 0; k < 10; ++k) {
    Philox4x32 rng(11, k);
    const auto real = sample_realization(spec, w, rng);
    Lattice lat;
    lat.a = 0.037 + 0.01 * static_cast<double>(k);
    lat.c = Point(0.1 * static_cast<double>(k), 0.33);
    const auto fast = digitize_realization(real, lat);
    const auto slow = digitize([&](const Point& p) { return real.covers(p); }, lat, w);
    CHECK(fast == slow);
  }
}

TEST_CASE("field experiment on a small model") {
  const auto spec = model(0.5, RadiusLaw::point_mass(1.0));
  const Window w{0.0, 0.0, 8.0, 8.0};
  const auto res = mc_field_experiment(spec, 0.2, w, point_count_weights(), 40, 5);
  CHECK(res.estimates.size() == 40);
  CHECK(std::abs(res.mean - specific_volumes(spec).v2) < 5 * res.standard_error + 1e-12);
  const auto again = mc_field_experiment(spec, 0.2, w, point_count_weights(), 40, 5);
  CHECK(again.estimates == res.estimates);
  CHECK_THROWS_AS(mc_field_experiment(spec, 0.2, w, point_count_weights(), 0, 5), DomainError);
}
