#include "digivol/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace digivol::quad {

GaussRule gauss_legendre(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k - 1, k) = beta;
    jacobi(k, k - 1) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);

  // Eigenvalues come back ascending; weights are 2 * (first eigenvector component)^2.
  GaussRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();

  // Symmetrize to kill the last ulp of asymmetry in the solver output.
  for (int k = 0; k < n / 2; ++k) {
    const double x = 0.5 * (rule.nodes[n - 1 - k] - rule.nodes[k]);
    const double w = 0.5 * (rule.weights[n - 1 - k] + rule.weights[k]);
    rule.nodes[k] = -x;
    rule.nodes[n - 1 - k] = x;
    rule.weights[k] = w;
    rule.weights[n - 1 - k] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

const GaussRule& gauss_legendre_32() {
  static const GaussRule rule = gauss_legendre(32);
  return rule;
}

}  // namespace digivol::quad
