#include "semidg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace semidg {

namespace {

// Golub-Welsch: nodes/weights of the Gauss rule for the weight function whose
// orthogonal polynomials have recurrence coefficients (alpha, beta); mu0 is
// the total mass of the weight.
void golub_welsch(const std::vector<double>& alpha, const std::vector<double>& beta,
                  double mu0, std::vector<double>& nodes, std::vector<double>& weights) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) jac(i, i) = alpha[i];
  for (int i = 0; i + 1 < n; ++i) {
    const double b = std::sqrt(beta[i + 1]);
    jac(i, i + 1) = b;
    jac(i + 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

// Gauss-Jacobi rule for weight (1-v) on [0,1], exact for (1-v)*q(v) with
// deg q <= 2n-1. Built from the Jacobi(1,0) recurrence on [-1,1].
void gauss_jacobi10(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  std::vector<double> alpha(n), beta(n);
  alpha[0] = -1.0 / 3.0;
  beta[0] = 0.0;  // unused
  for (int k = 1; k < n; ++k) {
    alpha[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    beta[k] = k * (k + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 1.0));
  }
  golub_welsch(alpha, beta, 2.0, nodes, weights);
  // map [-1,1] with weight (1-x) onto [0,1] with weight (1-v)
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (nodes[i] + 1.0);
    weights[i] *= 0.25;
  }
}

}  // namespace

std::vector<QuadPoint1D> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  for (int k = 1; k < n; ++k) beta[k] = k * k / (4.0 * k * k - 1.0);
  std::vector<double> nodes, weights;
  golub_welsch(alpha, beta, 2.0, nodes, weights);
  std::vector<QuadPoint1D> rule(n);
  for (int i = 0; i < n; ++i) {
    rule[i].x = 0.5 * (nodes[i] + 1.0);
    rule[i].w = 0.5 * weights[i];
  }
  return rule;
}

TriQuadRule triangle_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("triangle_rule: negative degree");
  const int n = degree / 2 + 1;
  const auto gl = gauss_legendre(n);
  std::vector<double> gj_nodes, gj_weights;
  gauss_jacobi10(n, gj_nodes, gj_weights);

  TriQuadRule rule;
  rule.degree = degree;
  rule.x.reserve(n * n);
  rule.y.reserve(n * n);
  rule.w.reserve(n * n);
  // Duffy map (u,v) -> (u(1-v), v); the Jacobian (1-v) is absorbed in the
  // Gauss-Jacobi weight, so all weights stay positive.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      rule.x.push_back(gl[i].x * (1.0 - gj_nodes[j]));
      rule.y.push_back(gj_nodes[j]);
      rule.w.push_back(gl[i].w * gj_weights[j]);
    }
  }
  return rule;
}

FacetQuadRule facet_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("facet_rule: negative degree");
  const int n = degree / 2 + 1;
  const auto gl = gauss_legendre(n);
  FacetQuadRule rule;
  rule.degree = degree;
  rule.t.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.t[i] = gl[i].x;
    rule.w[i] = gl[i].w;
  }
  return rule;
}

double reference_monomial_integral(int a, int b) {
  // a! b! / (a+b+2)! evaluated as a stable product
  long double val = 1.0L;
  for (int i = 1; i <= b; ++i) val *= static_cast<long double>(i) / (a + i);
  val /= static_cast<long double>(a + b + 1) * static_cast<long double>(a + b + 2);
  return static_cast<double>(val);
}

}  // namespace semidg
