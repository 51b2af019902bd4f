#pragma once

#include <vector>

namespace semidg {

// One-dimensional rule on [0,1]; weights sum to 1.
struct QuadPoint1D {
  double x;
  double w;
};

// Gauss-Legendre on [0,1], exact for polynomials of degree <= 2n-1.
std::vector<QuadPoint1D> gauss_legendre(int n);

// Rule on the reference triangle {(x,y) : x,y >= 0, x+y <= 1}.
// Weights are positive and sum to 1/2 (the reference measure).
struct TriQuadRule {
  int degree = 0;  // declared exactness in total degree
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;
  int size() const { return static_cast<int>(w.size()); }
};

// Collapsed (Duffy) Gauss rule, exact for all polynomials of total
// degree <= degree.
TriQuadRule triangle_rule(int degree);

// Rule on the reference facet [0,1]; exact to the given degree.
struct FacetQuadRule {
  int degree = 0;
  std::vector<double> t;
  std::vector<double> w;
  int size() const { return static_cast<int>(w.size()); }
};

FacetQuadRule facet_rule(int degree);

// Exact integral of x^a y^b over the reference triangle: a! b! / (a+b+2)!.
double reference_monomial_integral(int a, int b);

}  // namespace semidg
