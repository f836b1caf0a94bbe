#pragma once

#include "digivol/config_algebra.hpp"
#include "digivol/lattice_image.hpp"
#include "digivol/quadrature.hpp"
#include "digivol/rng.hpp"
#include "digivol/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace digivol {

/// Law of the grain radius: a point mass or uniform on [lo, hi], lo > 0.
class RadiusLaw {
public:
  enum class Kind { point_mass, uniform };

  static RadiusLaw point_mass(double r);
  static RadiusLaw uniform(double lo, double hi);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double mean() const;            ///< E r
  double second_moment() const;   ///< E r^2
  double inverse_mean() const;    ///< E 1/r
  double min_radius() const { return lo_; }
  double max_radius() const { return hi_; }

  /// E f(r); uniform laws use 32-node Gauss-Legendre.
  template <typename F>
  double expect(const F& f) const {
    if (kind_ == Kind::point_mass) return f(lo_);
    return quad::integrate_gauss(quad::gauss_legendre_32(), f, lo_, hi_) / (hi_ - lo_);
  }

  double sample(Philox4x32& rng) const {
    return kind_ == Kind::point_mass ? lo_ : lo_ + (hi_ - lo_) * rng.uniform();
  }

private:
  RadiusLaw(Kind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

  Kind kind_;
  double lo_;
  double hi_;
};

/// Stationary isotropic Boolean model with disk grains.
struct BooleanModelSpec {
  double gamma = 1.0;
  RadiusLaw radius = RadiusLaw::point_mass(1.0);

  double mean_grain_v1() const { return kPi * radius.mean(); }
  double mean_grain_v2() const { return kPi * radius.second_moment(); }
};

struct SpecificVolumes {
  double v0 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;

  double operator[](int degree) const { return degree == 0 ? v0 : degree == 1 ? v1 : v2; }
};

SpecificVolumes specific_volumes(const BooleanModelSpec& spec);

/// Probability that the scaled vertex set a * xi of the configuration (its set
/// bits) misses the model: exp(-gamma * E area(a * xi + B(r))).
double vacancy_probability(int config_index, double a, const BooleanModelSpec& spec);

/// Probability of one fixed configuration of each class, from the vacancy
/// probabilities of the class representatives through the inclusion-exclusion matrix.
/// Throws ConsistencyFault if an entry is below -1e-10.
std::array<double, kNumClasses> exact_class_probabilities(double a, const BooleanModelSpec& spec);

/// a^{i-2} * sum_j w_j d_j p_j.
double exact_estimator_mean(const WeightVector& w, double a, const BooleanModelSpec& spec);

/// Truncated small-spacing expansion of the estimator mean; `order` in 0..3.
/// Requires a * sqrt(2) < minimum grain radius.
double series_estimator_mean(const WeightVector& w, double a, const BooleanModelSpec& spec,
                             int order);

struct Grain {
  Point center;
  double radius = 0.0;
};

struct Realization {
  std::vector<Grain> grains;
  Window window;      ///< observation window
  double reach = 0.0; ///< centers lie within this distance of the window

  bool covers(const Point& p) const {
    for (const auto& g : grains) {
      if ((p - g.center).squaredNorm() <= g.radius * g.radius) return true;
    }
    return false;
  }
};

/// Poisson germs on window + B(r_max) with i.i.d. radii, so the restriction of
/// the union to the window has the stationary law.
Realization sample_realization(const BooleanModelSpec& spec, const Window& window,
                               Philox4x32& rng);

/// Digitization of the realization; identical to digitize(covers, ...), but
/// rasterizes disk by disk.
BinaryImage digitize_realization(const Realization& realization, const Lattice& lattice,
                                 CellSelection selection = CellSelection::minus_sampling);

struct FieldExperimentResult {
  std::vector<double> estimates;  ///< one per replicate
  double mean = 0.0;
  double standard_error = 0.0;
  /// Per-replicate N_j / (d_j N_0), averaged, with standard errors.
  std::array<double, kNumClasses> class_frequency{};
  std::array<double, kNumClasses> class_frequency_error{};
};

/// Replicate k draws realization k from stream (seed, k), digitizes on a Z^2 with
/// minus sampling and evaluates the density estimator.
FieldExperimentResult mc_field_experiment(const BooleanModelSpec& spec, double a,
                                          const Window& window, const WeightVector& w,
                                          int replicates, std::uint64_t seed);

}  // namespace digivol
