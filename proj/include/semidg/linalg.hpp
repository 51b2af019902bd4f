#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace semidg {

// Compressed-row matrix of uniform dense blocks. Rows/columns are cell
// blocks; DG facet couplings touch only facet-adjacent cells. All loops are
// sequential with a fixed summation order, so results are bitwise
// reproducible run to run.
class BlockSparseMatrix {
 public:
  BlockSparseMatrix() = default;
  // Pattern entries are (block row, block col); duplicates allowed.
  BlockSparseMatrix(int block_rows, int block_size,
                    std::vector<std::pair<int, int>> pattern);

  int block_rows() const { return nrows_; }
  int block_size() const { return bs_; }
  long rows() const { return static_cast<long>(nrows_) * bs_; }

  // Raw block storage (row-major bs x bs); nullptr if not in the pattern.
  double* block(int r, int c);
  const double* block(int r, int c) const;

  void add_block(int r, int c, const Eigen::MatrixXd& m);
  void set_zero();

  void matvec(const std::vector<double>& x, std::vector<double>& y) const;

  double max_abs() const;
  double max_asymmetry() const;  // max |A - A^T| entrywise

  // Adds the (block-diagonal) other matrix into this one.
  void add_diagonal_of(const BlockSparseMatrix& other);

 private:
  int nrows_ = 0;
  int bs_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_;
  std::vector<double> data_;

  int find(int r, int c) const;
};

struct CGReport {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

class LinearSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Preconditioned conjugate gradients with block-Jacobi (cell-block Cholesky)
// preconditioning. Deterministic. Throws LinearSolveError when the iteration
// cap (10 * n) is exhausted.
CGReport cg_block_jacobi(const BlockSparseMatrix& a, const std::vector<double>& rhs,
                         std::vector<double>& x, double rel_tol);

}  // namespace semidg
