#include "digivol/estimators.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

namespace digivol {

namespace {

WeightVector make(int degree, std::initializer_list<double> values) {
  WeightVector out;
  out.degree = degree;
  int k = 0;
  for (double v : values) out.w[k++] = v;
  return out;
}

std::vector<double> parse_numbers(std::string_view text, std::string_view context) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view token = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size() ||
        !std::isfinite(value)) {
      throw DomainError("bad number '" + std::string(token) + "' in " + std::string(context));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool all_zero(const Weights6& w, std::initializer_list<int> ids) {
  for (int id : ids) {
    if (w[id - 1] != 0.0) return false;
  }
  return true;
}

constexpr double kTol = 1e-9;

}  // namespace

WeightVector point_count_weights() { return make(2, {0, 0.25, 0.5, 0.5, 0.75, 1}); }

WeightVector dorst_theta_weights(double theta) {
  return make(1, {0, 0, theta / 2, kSqrt2 * theta, kSqrt2 * theta / 2, 0});
}

WeightVector dorst_alpha_beta_weights(double alpha, double beta) {
  return make(1, {0, 0, alpha, 2 * beta, beta, 0});
}

// The published parameterizations: w2 = pi/16 (1 + sqrt 2) + t for degree 1 and
// w5 = t for degree 0, with the remaining weights taken from the solver.
WeightVector optimal_v1_weights(double t) {
  static const WeightFamily family = solve_weight_family(1);
  return family.member_with(2, kPi / 16 * (1 + kSqrt2) + t);
}

WeightVector optimal_euler_weights(double t) {
  static const WeightFamily family = solve_weight_family(0);
  return family.member_with(5, t);
}

const std::vector<WeightCatalogEntry>& weight_catalog() {
  static const std::vector<WeightCatalogEntry> catalog = [] {
    const double s = kSqrt2;
    const double k = kPi / 16;
    const WeightVector marching = make(1, {0, s / 4, 0.5, s / 2, s / 4, 0});
    WeightVector corrected = marching;
    corrected.w *= kPi / (4 * (2 * s - 2));
    return std::vector<WeightCatalogEntry>{
        {"point-count", point_count_weights(), "area fraction from foreground points"},
        {"om-v1", make(1, {0, k * (1 + s / 2), k * (1 + s), kPi / 8, k * (1 + s / 2), 0}),
         "discretized Cauchy projection formula"},
        {"bieri-v1", make(1, {0, 0.5, 0.5, 1, 0.5, 0}), "boundary of union of pixel squares"},
        {"corrected-cauchy", make(1, {0, kPi / 8, kPi / 8, kPi / 4, kPi / 8, 0}),
         "pixel-square boundary rescaled by pi/4"},
        {"dorst", dorst_theta_weights(1.0), "8-adjacency chain code, theta = 1"},
        {"dorst-ab", dorst_alpha_beta_weights(0.5, s / 2),
         "8-adjacency with separate axis and diagonal weights"},
        {"marching-squares", marching, "marching squares contour length"},
        {"corrected-marching-squares", corrected, "marching squares rescaled to remove the limit bias"},
        {"om-euler", make(0, {0, 0.25, 0, 0, -0.25, 0}), "6-neighbourhood Euler number"},
        {"bieri-euler", make(0, {0, 0.25, 0, -0.5, -0.25, 0}), "pixel-square Euler number"},
        {"opt1", optimal_v1_weights(0.0), "asymptotically optimal boundary length, w = 0"},
        {"opt0", optimal_euler_weights(0.0), "asymptotically optimal Euler characteristic, w = 0"},
    };
  }();
  return catalog;
}

WeightVector resolve_weights(std::string_view text, std::optional<int> degree) {
  if (degree && (*degree < 0 || *degree > 2)) {
    throw DomainError("degree must be 0, 1 or 2");
  }
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto finish = [&](WeightVector w) {
    if (degree) w.degree = *degree;
    return w;
  };
  auto params = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> v = args.empty() ? std::vector<double>{} : parse_numbers(args, text);
    if (v.size() < lo || v.size() > hi) {
      throw DomainError("wrong number of parameters in '" + std::string(text) + "'");
    }
    return v;
  };

  if (!name.empty() && (std::isdigit(static_cast<unsigned char>(name.front())) || name.front() == '-' ||
                        name.front() == '.' || name.front() == '+')) {
    if (!degree) {
      throw DomainError("a raw weight vector needs an explicit degree");
    }
    const auto v = parse_numbers(text, "weight vector");
    if (v.size() != kNumClasses) {
      throw DomainError("a raw weight vector needs exactly six numbers");
    }
    WeightVector w;
    w.degree = *degree;
    for (int j = 0; j < kNumClasses; ++j) w.w[j] = v[j];
    return w;
  }
  if (name == "dorst") {
    const auto v = params(0, 1);
    return finish(dorst_theta_weights(v.empty() ? 1.0 : v[0]));
  }
  if (name == "dorst-ab") {
    const auto v = params(0, 2);
    if (v.size() == 1) throw DomainError("dorst-ab takes two parameters");
    return finish(v.empty() ? dorst_alpha_beta_weights(0.5, kSqrt2 / 2)
                            : dorst_alpha_beta_weights(v[0], v[1]));
  }
  if (name == "opt1" || name == "optimal-v1") {
    const auto v = params(0, 1);
    return finish(optimal_v1_weights(v.empty() ? 0.0 : v[0]));
  }
  if (name == "opt0" || name == "optimal-euler") {
    const auto v = params(0, 1);
    return finish(optimal_euler_weights(v.empty() ? 0.0 : v[0]));
  }
  for (const auto& entry : weight_catalog()) {
    if (entry.name == name) {
      params(0, 0);
      return finish(entry.weights);
    }
  }
  throw DomainError("unknown weight vector '" + std::string(text) + "'");
}

double field_estimate(const ConfigHistogram& hist, double a, const WeightVector& w) {
  if (hist.n0 == 0) {
    throw DomainError("field estimate needs at least one counted cell");
  }
  double sum = 0.0;
  for (int j = 0; j < kNumClasses; ++j) sum += w.w[j] * static_cast<double>(hist.class_counts[j]);
  return std::pow(a, w.degree - 2) * sum / static_cast<double>(hist.n0);
}

double design_estimate(const ConfigHistogram& hist, double a, const WeightVector& w) {
  if (w.degree < 2 && !all_zero(w.w, {1, 6})) {
    throw DomainError("design-based estimates of degree 0 and 1 need w1 = w6 = 0");
  }
  double sum = 0.0;
  for (int j = 0; j < kNumClasses; ++j) sum += w.w[j] * static_cast<double>(hist.class_counts[j]);
  return std::pow(a, w.degree) * sum;
}

WeightVector swap_weights(const WeightVector& w) {
  WeightVector out = w;
  std::swap(out.w[0], out.w[5]);
  std::swap(out.w[1], out.w[4]);
  return out;
}

bool is_swap_invariant(const WeightVector& w, double tolerance) {
  return (swap_weights(w).w - w.w).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_swap_antisymmetric(const WeightVector& w, double tolerance) {
  return (swap_weights(w).w + w.w).cwiseAbs().maxCoeff() <= tolerance;
}

AsymptoticsReport predicted_asymptotics(const WeightVector& w, const BooleanModelSpec& spec) {
  if (w.degree < 0 || w.degree > 2) {
    throw DomainError("degree must be 0, 1 or 2");
  }
  const SeriesConstants c = series_constants(w);
  const SpecificVolumes sv = specific_volumes(spec);
  const double gamma = spec.gamma;
  const double g = gamma * spec.radius.mean();
  const double e = std::exp(-gamma * spec.mean_grain_v2());
  const double third =
      (c(6) * gamma * spec.radius.inverse_mean() + c(7) * gamma * gamma * spec.radius.mean() +
       c(8) * g * g * g) * e;
  auto zero = [](double x) { return std::abs(x) <= kTol; };

  AsymptoticsReport out;
  out.degree = w.degree;
  out.target = sv[w.degree];
  if (w.degree == 2) {
    out.limit_exists = true;
    out.limit_value = c(1) + c(2) * e;
    out.limit_factor = out.target != 0.0 ? out.limit_value / out.target : 0.0;
    out.linear_coefficient = 0.0;
    out.quadratic_coefficient = 0.0;
    const double zeroth = (c(1) - 1.0) + (c(2) + 1.0) * e;
    if (!zero(c(1) - 1.0) || !zero(c(2) + 1.0)) {
      out.leading_bias_order = 0;
      out.leading_bias_value = zeroth;
    } else if (!zero(c(3))) {
      out.leading_bias_order = 1;
      out.leading_bias_value = c(3) * g * e;
    } else {
      out.leading_bias_order = 2;
      out.leading_bias_value = (c(4) * gamma + c(5) * g * g) * e;
    }
    return out;
  }

  if (w.degree == 1) {
    out.linear_coefficient = c(4);
    out.quadratic_coefficient = c(5);
    out.classical_factor = c(5) / kPi;
    if (!zero(c(1)) || !zero(c(2))) {
      out.limit_exists = false;
      out.leading_bias_order = -1;
      out.leading_bias_value = c(1) + c(2) * e;
      return out;
    }
    out.limit_exists = true;
    out.limit_value = c(3) * g * e;
    out.limit_factor = c(3) / kPi;
    if (!zero(c(3) - kPi)) {
      out.leading_bias_order = 0;
      out.leading_bias_value = out.limit_value - out.target;
    } else if (!zero(c(4)) || !zero(c(5))) {
      out.leading_bias_order = 1;
      out.leading_bias_value = (c(4) * gamma + c(5) * g * g) * e;
    } else {
      out.leading_bias_order = 2;
      out.leading_bias_value = third;
    }
    return out;
  }

  // Degree 0.
  out.linear_coefficient = c(4) - 1.0;
  out.quadratic_coefficient = c(5) + kPi;
  out.classical_factor = out.quadratic_coefficient / kPi;
  if (!zero(c(1)) || !zero(c(2))) {
    out.limit_exists = false;
    out.leading_bias_order = -2;
    out.leading_bias_value = c(1) + c(2) * e;
    return out;
  }
  if (!zero(c(3))) {
    out.limit_exists = false;
    out.leading_bias_order = -1;
    out.leading_bias_value = c(3) * g * e;
    return out;
  }
  out.limit_exists = true;
  out.limit_value = (c(4) * gamma + c(5) * g * g) * e;
  out.limit_factor = out.target != 0.0 ? out.limit_value / out.target : 0.0;
  const double bias = out.limit_value - out.target;
  if (!zero(out.linear_coefficient) || !zero(out.quadratic_coefficient)) {
    out.leading_bias_order = 0;
    out.leading_bias_value = bias;
  } else {
    out.leading_bias_order = 1;
    out.leading_bias_value = third;
  }
  return out;
}

}  // namespace digivol
