#include "digivol/cli.hpp"

#include "digivol/boolean_model.hpp"
#include "digivol/config_algebra.hpp"
#include "digivol/design_based.hpp"
#include "digivol/estimators.hpp"
#include "digivol/lattice_image.hpp"
#include "digivol/pbm.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace digivol {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

struct ModelFlags {
  double gamma = 1.0;
  double radius = 1.0;
  std::optional<double> radius_hi;

  BooleanModelSpec spec() const {
    BooleanModelSpec s;
    s.gamma = gamma;
    s.radius = radius_hi ? RadiusLaw::uniform(radius, *radius_hi) : RadiusLaw::point_mass(radius);
    return s;
  }
  std::string describe() const {
    if (radius_hi) return "uniform(" + format_number(radius) + "," + format_number(*radius_hi) + ")";
    return "point_mass(" + format_number(radius) + ")";
  }
};

struct WeightFlags {
  std::string name = "corrected-cauchy";
  std::optional<int> degree;

  WeightVector resolve() const { return resolve_weights(name, degree); }
};

std::string join_weights(const Weights6& w, const char* sep = ",") {
  std::string s;
  for (int j = 0; j < kNumClasses; ++j) {
    if (j) s += sep;
    s += format_number(w[j]);
  }
  return s;
}

void echo_weights(std::ostream& out, const WeightFlags& flags, const WeightVector& w) {
  out << "# weights=" << flags.name << "\n";
  out << "# degree=" << w.degree << "\n";
  out << "# w=" << join_weights(w.w, ";") << "\n";
}

void add_model_flags(CLI::App* app, ModelFlags& m) {
  app->add_option("--gamma", m.gamma, "Germ intensity")->capture_default_str();
  app->add_option("--radius", m.radius, "Grain radius, or lower end of a uniform law")
      ->capture_default_str();
  app->add_option("--radius-hi", m.radius_hi, "Upper end of a uniform radius law");
}

void add_weight_flags(CLI::App* app, WeightFlags& w) {
  app->add_option("--weights", w.name, "Catalog name, NAME:PARAMS or six comma-separated numbers")
      ->capture_default_str();
  app->add_option("--degree", w.degree, "Degree override (required for raw vectors)")
      ->check(CLI::Range(0, 2));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw DomainError("bad number '" + token + "' in list '" + text + "'");
    }
    out.push_back(v);
  }
  return out;
}

Shape parse_shape(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("shape needs KIND:PARAMS, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  Shape shape;
  if (kind == "disk") {
    const auto v = parse_list(args);
    if (v.size() != 1) throw DomainError("disk:R takes one number");
    shape = DiskShape{Point::Zero(), v[0]};
  } else if (kind == "ellipse") {
    const auto v = parse_list(args);
    if (v.size() != 2 && v.size() != 3) throw DomainError("ellipse:a,b[,tilt] takes two or three numbers");
    shape = EllipseShape{Point::Zero(), v[0], v[1], v.size() == 3 ? v[2] : 0.0};
  } else if (kind == "annulus") {
    const auto v = parse_list(args);
    if (v.size() != 2) throw DomainError("annulus:Rin,Rout takes two numbers");
    shape = AnnulusShape{Point::Zero(), v[0], v[1]};
  } else if (kind == "disks") {
    DiskUnionShape u;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto at = item.find('@');
      if (at == std::string::npos) throw DomainError("disks entries are R@x,y, got '" + item + "'");
      const auto r = parse_list(item.substr(0, at));
      const auto c = parse_list(item.substr(at + 1));
      if (r.size() != 1 || c.size() != 2) throw DomainError("disks entries are R@x,y, got '" + item + "'");
      u.disks.push_back({Point(c[0], c[1]), r[0]});
    }
    shape = u;
  } else {
    throw DomainError("unknown shape kind '" + kind + "'");
  }
  validate_shape(shape);
  return shape;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void cmd_matrices(std::ostream& out) {
  out << "# subcommand=matrices\n";
  out << "matrix,row,col1,col2,col3,col4,col5,col6\n";
  const MobiusMatrix b = mobius_matrix();
  for (int i = 0; i < kNumClasses; ++i) {
    out << "B," << i + 1;
    for (int j = 0; j < kNumClasses; ++j) out << "," << b(i, j);
    out << "\n";
  }
  const CoefficientMatrix a = coefficient_matrix();
  for (int i = 0; i < 8; ++i) {
    out << "A," << i + 1;
    for (int j = 0; j < kNumClasses; ++j) out << "," << format_number(a(i, j));
    out << "\n";
  }
}

void cmd_weights_list(std::ostream& out) {
  out << "# subcommand=weights list\n";
  out << "name,degree,w1,w2,w3,w4,w5,w6\n";
  for (const auto& e : weight_catalog()) {
    out << e.name << "," << e.weights.degree << "," << join_weights(e.weights.w) << "\n";
  }
}

void cmd_weights_solve(std::ostream& out, int degree, double free) {
  const WeightFamily family = solve_weight_family(degree);
  const WeightVector published =
      degree == 1 ? optimal_v1_weights(free) : optimal_euler_weights(free);
  out << "# subcommand=weights solve\n";
  out << "# degree=" << degree << "\n";
  out << "# free=" << format_number(free) << "\n";
  out << "vector,w1,w2,w3,w4,w5,w6\n";
  out << "minimum_norm," << join_weights(family.particular.w) << "\n";
  out << "direction," << join_weights(family.direction.w) << "\n";
  out << "member," << join_weights(published.w) << "\n";
  for (const auto& check : constraint_report(published).checks) {
    out << "# check " << check.label << " residual=" << format_number(check.residual)
        << (check.pass ? " pass" : " FAIL") << "\n";
  }
}

void cmd_weights_analyze(std::ostream& out, const WeightFlags& wf, const ModelFlags& mf) {
  const WeightVector w = wf.resolve();
  const BooleanModelSpec spec = mf.spec();
  const AsymptoticsReport r = predicted_asymptotics(w, spec);
  const SeriesConstants c = series_constants(w);
  out << "# subcommand=weights analyze\n";
  echo_weights(out, wf, w);
  out << "# gamma=" << format_number(mf.gamma) << "\n";
  out << "# radius=" << mf.describe() << "\n";
  out << "key,value\n";
  for (int m = 1; m <= 8; ++m) out << "c" << m << "," << format_number(c(m)) << "\n";
  out << "limit_exists," << (r.limit_exists ? 1 : 0) << "\n";
  out << "limit_factor," << format_number(r.limit_factor) << "\n";
  out << "limit_value," << format_number(r.limit_value) << "\n";
  out << "target," << format_number(r.target) << "\n";
  out << "leading_bias_order," << r.leading_bias_order << "\n";
  out << "leading_bias_value," << format_number(r.leading_bias_value) << "\n";
  out << "linear_coefficient," << format_number(r.linear_coefficient) << "\n";
  out << "quadratic_coefficient," << format_number(r.quadratic_coefficient) << "\n";
  out << "classical_factor," << format_number(r.classical_factor) << "\n";
}

void cmd_count(std::ostream& out, const std::string& path, double spacing,
               const std::optional<WeightFlags>& wf) {
  const BinaryImage image = read_pbm(read_file(path), spacing);
  const ConfigHistogram hist = config_histogram(image);
  out << "# subcommand=count\n";
  out << "# input=" << path << "\n";
  out << "# spacing=" << format_number(spacing) << "\n";
  out << "# rows=" << image.rows() << "\n";
  out << "# cols=" << image.cols() << "\n";
  out << "# n0=" << hist.n0 << "\n";
  std::optional<WeightVector> w;
  if (wf) {
    w = wf->resolve();
    echo_weights(out, *wf, *w);
    out << "# field_estimate=" << format_number(field_estimate(hist, spacing, *w)) << "\n";
    if (w->degree == 2 || (w->w[0] == 0.0 && w->w[5] == 0.0)) {
      out << "# design_estimate=" << format_number(design_estimate(hist, spacing, *w)) << "\n";
    }
  }
  out << "configuration,class,count\n";
  for (int l = 0; l < kNumConfigurations; ++l) {
    out << l << "," << config_class(l) << "," << hist.n[l] << "\n";
  }
}

void cmd_simulate(std::ostream& out, const ModelFlags& mf, const WeightFlags& wf, double spacing,
                  double side, int reps, std::uint64_t seed) {
  const BooleanModelSpec spec = mf.spec();
  const WeightVector w = wf.resolve();
  const Window window{0.0, 0.0, side, side};
  const FieldExperimentResult res = mc_field_experiment(spec, spacing, window, w, reps, seed);
  const double target = specific_volumes(spec)[w.degree];
  out << "# subcommand=simulate\n";
  out << "# gamma=" << format_number(mf.gamma) << "\n";
  out << "# radius=" << mf.describe() << "\n";
  out << "# spacing=" << format_number(spacing) << "\n";
  out << "# window=" << format_number(side) << "\n";
  echo_weights(out, wf, w);
  out << "# reps=" << reps << "\n";
  out << "# seed=" << seed << "\n";
  out << "# mean=" << format_number(res.mean) << "\n";
  out << "# stderr=" << format_number(res.standard_error) << "\n";
  out << "# target=" << format_number(target) << "\n";
  out << "# bias=" << format_number(res.mean - target) << "\n";
  for (int j = 0; j < kNumClasses; ++j) {
    out << "# class" << j + 1 << "_frequency=" << format_number(res.class_frequency[j])
        << " stderr=" << format_number(res.class_frequency_error[j]) << "\n";
  }
  out << "replicate,estimate\n";
  for (std::size_t k = 0; k < res.estimates.size(); ++k) {
    out << k << "," << format_number(res.estimates[k]) << "\n";
  }
}

void cmd_design(std::ostream& out, const std::string& shape_text, const WeightFlags& wf,
                double spacing, int reps, std::uint64_t seed) {
  const Shape shape = parse_shape(shape_text);
  const WeightVector w = wf.resolve();
  if (w.degree == 2) throw DomainError("design estimates support degrees 0 and 1");
  const DesignResult res = mc_design_estimate(shape, spacing, w, reps, seed);
  const double reference = w.degree == 0 ? reference_v0(shape) : reference_v1(shape);
  out << "# subcommand=design\n";
  out << "# shape=" << shape_text << "\n";
  out << "# spacing=" << format_number(spacing) << "\n";
  echo_weights(out, wf, w);
  out << "# reps=" << reps << "\n";
  out << "# seed=" << seed << "\n";
  out << "# mean=" << format_number(res.mean) << "\n";
  out << "# stderr=" << format_number(res.standard_error) << "\n";
  out << "# reference=" << format_number(reference) << "\n";
  out << "# bias=" << format_number(res.mean - reference) << "\n";
  out << "draw,estimate\n";
  for (std::size_t k = 0; k < res.estimates.size(); ++k) {
    out << k << "," << format_number(res.estimates[k]) << "\n";
  }
}

void cmd_bias(std::ostream& out, const ModelFlags& mf, const WeightFlags& wf,
              const std::string& spacings_text, int order) {
  const BooleanModelSpec spec = mf.spec();
  const WeightVector w = wf.resolve();
  const auto spacings = parse_list(spacings_text);
  const double target = specific_volumes(spec)[w.degree];
  out << "# subcommand=bias\n";
  out << "# gamma=" << format_number(mf.gamma) << "\n";
  out << "# radius=" << mf.describe() << "\n";
  echo_weights(out, wf, w);
  out << "# spacings=" << spacings_text << "\n";
  out << "# order=" << order << "\n";
  out << "a,exact_mean,series_mean,target,bias\n";
  for (double a : spacings) {
    const double exact = exact_estimator_mean(w, a, spec);
    double series = std::nan("");
    if (a * kSqrt2 < spec.radius.min_radius()) series = series_estimator_mean(w, a, spec, order);
    out << format_number(a) << "," << format_number(exact) << "," << format_number(series) << ","
        << format_number(target) << "," << format_number(exact - target) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local digital estimators of intrinsic volumes", "digivol"};
  app.require_subcommand(1);

  auto* matrices = app.add_subcommand("matrices", "Print the inclusion-exclusion and coefficient matrices");

  auto* weights = app.add_subcommand("weights", "Weight catalog and unbiasedness systems");
  weights->require_subcommand(1);
  auto* w_list = weights->add_subcommand("list", "Print the weight catalog");
  auto* w_solve = weights->add_subcommand("solve", "Solve the unbiasedness system");
  int solve_degree = 1;
  double solve_free = 0.0;
  w_solve->add_option("--degree", solve_degree, "0 or 1")->check(CLI::Range(0, 1))->capture_default_str();
  w_solve->add_option("--free", solve_free, "Free parameter w of the published family")
      ->capture_default_str();
  auto* w_analyze = weights->add_subcommand("analyze", "Predicted asymptotics under a Boolean model");
  ModelFlags analyze_model;
  WeightFlags analyze_weights;
  add_model_flags(w_analyze, analyze_model);
  add_weight_flags(w_analyze, analyze_weights);

  auto* count = app.add_subcommand("count", "Configuration counts of a P4 PBM image");
  std::string count_input;
  double count_spacing = 1.0;
  WeightFlags count_weights;
  count->add_option("--input", count_input, "PBM file")->required();
  count->add_option("--spacing", count_spacing, "Lattice spacing")->capture_default_str();
  auto* count_w = count->add_option("--weights", count_weights.name, "Weights to evaluate");
  count->add_option("--degree", count_weights.degree, "Degree override")->check(CLI::Range(0, 2));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates on Boolean model realizations");
  ModelFlags sim_model;
  WeightFlags sim_weights;
  double sim_spacing = 0.1;
  double sim_window = 20.0;
  int sim_reps = 100;
  std::uint64_t sim_seed = 1;
  add_model_flags(simulate, sim_model);
  add_weight_flags(simulate, sim_weights);
  simulate->add_option("--spacing", sim_spacing)->capture_default_str();
  simulate->add_option("--window", sim_window, "Side of the square window")->capture_default_str();
  simulate->add_option("--reps", sim_reps)->capture_default_str();
  simulate->add_option("--seed", sim_seed)->capture_default_str();

  auto* design = app.add_subcommand("design", "Design-based estimates on random lattices");
  std::string design_shape = "disk:1";
  WeightFlags design_weights;
  double design_spacing = 0.02;
  int design_reps = 100;
  std::uint64_t design_seed = 1;
  design->add_option("--shape", design_shape, "disk:R | ellipse:a,b[,tilt] | disks:R@x,y;... | annulus:Rin,Rout")
      ->capture_default_str();
  add_weight_flags(design, design_weights);
  design->add_option("--spacing", design_spacing)->capture_default_str();
  design->add_option("--reps", design_reps)->capture_default_str();
  design->add_option("--seed", design_seed)->capture_default_str();

  auto* bias = app.add_subcommand("bias", "Exact and series estimator means over a spacing grid");
  ModelFlags bias_model;
  WeightFlags bias_weights;
  std::string bias_spacings = "0.4,0.2,0.1,0.05";
  int bias_order = 3;
  add_model_flags(bias, bias_model);
  add_weight_flags(bias, bias_weights);
  bias->add_option("--spacings", bias_spacings, "Comma-separated spacings")->capture_default_str();
  bias->add_option("--order", bias_order, "Series order 0..3")->check(CLI::Range(0, 3))->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (matrices->parsed()) {
      cmd_matrices(out);
    } else if (w_list->parsed()) {
      cmd_weights_list(out);
    } else if (w_solve->parsed()) {
      cmd_weights_solve(out, solve_degree, solve_free);
    } else if (w_analyze->parsed()) {
      cmd_weights_analyze(out, analyze_weights, analyze_model);
    } else if (count->parsed()) {
      cmd_count(out, count_input, count_spacing,
                count_w->count() ? std::optional<WeightFlags>(count_weights) : std::nullopt);
    } else if (simulate->parsed()) {
      cmd_simulate(out, sim_model, sim_weights, sim_spacing, sim_window, sim_reps, sim_seed);
    } else if (design->parsed()) {
      cmd_design(out, design_shape, design_weights, design_spacing, design_reps, design_seed);
    } else if (bias->parsed()) {
      cmd_bias(out, bias_model, bias_weights, bias_spacings, bias_order);
    }
  } catch (const ConsistencyFault& e) {
    err << "consistency fault: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace digivol
