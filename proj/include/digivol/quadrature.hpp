#pragma once

#include <Eigen/Core>

#include <cmath>
#include <utility>

namespace digivol::quad {

namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. `tol` is absolute.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
  if (!(b > a)) {
    return 0.0;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Integrate f over [a, b] after the substitution y = mid - half*cos(t), t in [0, pi].
/// Square-root behaviour of f at either endpoint becomes smooth in t.
template <typename F>
double adaptive_simpson_cosine(const F& f, double a, double b, double tol, int max_depth = 48) {
  if (!(b > a)) {
    return 0.0;
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto g = [&](double t) { return f(mid - half * std::cos(t)) * half * std::sin(t); };
  return adaptive_simpson(g, 0.0, 3.14159265358979323846, tol, max_depth);
}

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Nodes and weights by Golub-Welsch: eigen-decomposition of the Jacobi matrix.
GaussRule gauss_legendre(int n);

/// Shared 32-node rule.
const GaussRule& gauss_legendre_32();

template <typename F>
double integrate_gauss(const GaussRule& rule, const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
  }
  return half * sum;
}

}  // namespace digivol::quad
