#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace semidg {

// Modal polynomial basis of total degree <= k on the reference triangle,
// orthonormal in L2 (reference mass matrix = identity). Dubiner-type
// construction evaluated through stable polynomial recurrences; the first
// function is the constant sqrt(2).
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return size_; }

  // Batch evaluation at reference points; result is (#points x size).
  Eigen::MatrixXd values(const std::vector<double>& x, const std::vector<double>& y) const;
  void gradients(const std::vector<double>& x, const std::vector<double>& y,
                 Eigen::MatrixXd& dx, Eigen::MatrixXd& dy) const;
  // Second derivatives, for broken Laplacians.
  void hessians(const std::vector<double>& x, const std::vector<double>& y,
                Eigen::MatrixXd& dxx, Eigen::MatrixXd& dxy, Eigen::MatrixXd& dyy) const;

 private:
  int degree_;
  int size_;
  std::vector<std::array<int, 2>> index_;  // (m, n) per column

  int column(int m, int n) const;
  void eval_point(double xp, double yp, int deriv, double* val, double* dx,
                  double* dy, double* dxx, double* dxy, double* dyy) const;
};

// Equispaced Lagrange nodes of degree k on the reference triangle, with the
// modal<->nodal change of basis. Node classification drives the conforming
// reconstruction: vertex nodes are shared through mesh vertices, edge nodes
// through facets, interior nodes are cell-local.
struct LagrangeNodes {
  enum Kind { kVertex, kEdge, kInterior };
  struct Node {
    double x, y;
    Kind kind;
    int sub;  // local vertex (kVertex) or local edge (kEdge)
    int idx;  // position 1..k-1 along the local edge direction (kEdge)
  };
  int degree = 0;
  std::vector<Node> nodes;
  Eigen::MatrixXd modal_to_nodal;  // V(i,j) = basis_j(node_i)
  Eigen::MatrixXd nodal_to_modal;  // V^-1
};

LagrangeNodes lagrange_nodes(const ReferenceBasis& basis);

}  // namespace semidg
