#include "digivol/boolean_model.hpp"

#include "digivol/estimators.hpp"
#include "digivol/geometry.hpp"
#include "digivol/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace digivol {

RadiusLaw RadiusLaw::point_mass(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("radius must be positive and finite");
  }
  return RadiusLaw(Kind::point_mass, r, r);
}

RadiusLaw RadiusLaw::uniform(double lo, double hi) {
  if (!(lo > 0.0) || !std::isfinite(hi) || !(hi >= lo)) {
    throw DomainError("uniform radius law needs 0 < lo <= hi");
  }
  if (lo == hi) return point_mass(lo);
  return RadiusLaw(Kind::uniform, lo, hi);
}

double RadiusLaw::mean() const { return 0.5 * (lo_ + hi_); }

double RadiusLaw::second_moment() const {
  return (lo_ * lo_ + lo_ * hi_ + hi_ * hi_) / 3.0;
}

double RadiusLaw::inverse_mean() const {
  if (kind_ == Kind::point_mass) return 1.0 / lo_;
  return std::log(hi_ / lo_) / (hi_ - lo_);
}

namespace {

void check_model(const BooleanModelSpec& spec) {
  if (!(spec.gamma >= 0.0) || !std::isfinite(spec.gamma)) {
    throw DomainError("intensity must be nonnegative and finite");
  }
}

void check_spacing(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("lattice spacing must be positive and finite");
  }
}

}  // namespace

SpecificVolumes specific_volumes(const BooleanModelSpec& spec) {
  check_model(spec);
  const double g = spec.gamma;
  const double e = std::exp(-g * spec.mean_grain_v2());
  const double gv1 = g * spec.mean_grain_v1();
  return {(g - gv1 * gv1 / kPi) * e, gv1 * e, 1.0 - e};
}

double vacancy_probability(int config_index, double a, const BooleanModelSpec& spec) {
  check_model(spec);
  check_spacing(a);
  if (config_index < 0 || config_index >= kNumConfigurations) {
    throw DomainError("configuration index outside 0..15");
  }
  PointSet vacant = vertex_points(config_index);
  if (vacant.empty()) return 1.0;
  for (auto& p : vacant) p *= a;
  const double mean_area =
      spec.radius.expect([&](double r) { return union_of_disks_area(vacant, r); });
  return std::exp(-spec.gamma * mean_area);
}

std::array<double, kNumClasses> exact_class_probabilities(double a, const BooleanModelSpec& spec) {
  Eigen::Matrix<double, kNumClasses, 1> vacancy;
  for (int i = 0; i < kNumClasses; ++i) {
    vacancy[i] = vacancy_probability(kClassRepresentative[i], a, spec);
  }
  const Eigen::Matrix<double, kNumClasses, 1> p =
      mobius_matrix().cast<double>().transpose() * vacancy;
  std::array<double, kNumClasses> out{};
  for (int j = 0; j < kNumClasses; ++j) {
    if (p[j] < -1e-10) {
      std::ostringstream msg;
      msg << "class probability " << j + 1 << " is negative: " << p[j];
      throw ConsistencyFault(msg.str());
    }
    out[j] = p[j];
  }
  return out;
}

double exact_estimator_mean(const WeightVector& w, double a, const BooleanModelSpec& spec) {
  const auto p = exact_class_probabilities(a, spec);
  double sum = 0.0;
  for (int j = 0; j < kNumClasses; ++j) sum += w.w[j] * kClassSize[j] * p[j];
  return std::pow(a, w.degree - 2) * sum;
}

double series_estimator_mean(const WeightVector& w, double a, const BooleanModelSpec& spec,
                             int order) {
  check_model(spec);
  check_spacing(a);
  if (order < 0 || order > 3) {
    throw DomainError("series order must be in 0..3");
  }
  if (!(a * kSqrt2 < spec.radius.min_radius())) {
    std::ostringstream msg;
    msg << "series expansion needs a*sqrt(2) < minimum radius (a = " << a
        << ", minimum radius = " << spec.radius.min_radius() << ")";
    throw DomainError(msg.str());
  }
  const SeriesConstants c = series_constants(w);
  const double gamma = spec.gamma;
  const double g = gamma * spec.radius.mean();
  const double e = std::exp(-gamma * spec.mean_grain_v2());
  double bracket = c(2);
  if (order >= 1) bracket += a * c(3) * g;
  if (order >= 2) bracket += a * a * (c(4) * gamma + c(5) * g * g);
  if (order >= 3) {
    bracket += a * a * a *
               (c(6) * gamma * spec.radius.inverse_mean() + c(7) * gamma * gamma * spec.radius.mean() +
                c(8) * g * g * g);
  }
  return std::pow(a, w.degree - 2) * (c(1) + bracket * e);
}

Realization sample_realization(const BooleanModelSpec& spec, const Window& window,
                               Philox4x32& rng) {
  check_model(spec);
  Realization out;
  out.window = window;
  out.reach = spec.radius.max_radius();
  const Window box = window.padded(out.reach);
  const double mean_count = spec.gamma * box.area();
  if (mean_count <= 0.0) return out;
  std::poisson_distribution<long> count_law(mean_count);
  const long count = count_law(rng);
  const double reach_sq = out.reach * out.reach;
  out.grains.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    const Point center(box.x0 + box.width() * rng.uniform(), box.y0 + box.height() * rng.uniform());
    const double radius = spec.radius.sample(rng);
    // Distance from the center to the window rectangle.
    const double dx = std::max({window.x0 - center.x(), 0.0, center.x() - window.x1});
    const double dy = std::max({window.y0 - center.y(), 0.0, center.y() - window.y1});
    if (dx * dx + dy * dy <= reach_sq) out.grains.push_back({center, radius});
  }
  return out;
}

BinaryImage digitize_realization(const Realization& realization, const Lattice& lattice,
                                 CellSelection selection) {
  if (!lattice.axis_aligned()) {
    return digitize([&](const Point& p) { return realization.covers(p); }, lattice,
                    realization.window, selection);
  }
  BinaryImage image = make_lattice_grid(lattice, realization.window, selection);
  const double a = lattice.a;
  // Positions are formed exactly as in digitize() so the two agree bit for bit.
  const Point step_i = a * (Eigen::Rotation2Dd(lattice.v) * Point(1.0, 0.0));
  const Point origin = image.position(0, 0);
  const int rows = image.rows();
  const int cols = image.cols();
  for (const auto& grain : realization.grains) {
    const double R = grain.radius;
    const double R2 = R * R;
    const double X = grain.center.x();
    const double Y = grain.center.y();
    const int r_lo = std::max(0, static_cast<int>(std::floor((Y - R - origin.y()) / a)) - 1);
    const int r_hi = std::min(rows - 1, static_cast<int>(std::ceil((Y + R - origin.y()) / a)) + 1);
    for (int r = r_lo; r <= r_hi; ++r) {
      const Point row_start = image.position(r, 0);
      const double dy = row_start.y() - Y;
      if (dy * dy > R2) continue;
      auto inside = [&](int c) {
        const Point p = row_start + static_cast<double>(c) * step_i;
        return (p - grain.center).squaredNorm() <= R2;
      };
      const double h = std::sqrt(R2 - dy * dy);
      int c_lo = std::max(0, static_cast<int>(std::floor((X - h - row_start.x()) / a)) - 1);
      int c_hi = std::min(cols - 1, static_cast<int>(std::ceil((X + h - row_start.x()) / a)) + 1);
      while (c_lo <= c_hi && !inside(c_lo)) ++c_lo;
      while (c_hi >= c_lo && !inside(c_hi)) --c_hi;
      if (c_lo <= c_hi) image.fill_row(r, c_lo, c_hi + 1);
    }
  }
  return image;
}

FieldExperimentResult mc_field_experiment(const BooleanModelSpec& spec, double a,
                                          const Window& window, const WeightVector& w,
                                          int replicates, std::uint64_t seed) {
  check_model(spec);
  check_spacing(a);
  if (replicates < 1) {
    throw DomainError("replicates must be at least 1");
  }
  Lattice lattice;
  lattice.a = a;
  // Fail early on windows that admit no cell.
  (void)make_lattice_grid(lattice, window, CellSelection::minus_sampling);

  FieldExperimentResult out;
  out.estimates.assign(static_cast<std::size_t>(replicates), 0.0);
  std::vector<std::array<double, kNumClasses>> freq(static_cast<std::size_t>(replicates));
  parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t k) {
    Philox4x32 rng(seed, k);
    const Realization realization = sample_realization(spec, window, rng);
    const BinaryImage image = digitize_realization(realization, lattice);
    const ConfigHistogram hist = config_histogram(image);
    out.estimates[k] = field_estimate(hist, a, w);
    for (int j = 0; j < kNumClasses; ++j) {
      freq[k][j] = static_cast<double>(hist.class_counts[j]) /
                   (kClassSize[j] * static_cast<double>(hist.n0));
    }
  });

  MeanAccumulator est;
  std::array<MeanAccumulator, kNumClasses> cls;
  for (std::size_t k = 0; k < out.estimates.size(); ++k) {
    est.add(out.estimates[k]);
    for (int j = 0; j < kNumClasses; ++j) cls[j].add(freq[k][j]);
  }
  out.mean = est.mean();
  out.standard_error = est.standard_error();
  for (int j = 0; j < kNumClasses; ++j) {
    out.class_frequency[j] = cls[j].mean();
    out.class_frequency_error[j] = cls[j].standard_error();
  }
  return out;
}

}  // namespace digivol
