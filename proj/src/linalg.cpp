#include "semidg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>


namespace semidg {

BlockSparseMatrix::BlockSparseMatrix(int block_rows, int block_size,
                                     std::vector<std::pair<int, int>> pattern)
    : nrows_(block_rows), bs_(block_size) {
  std::sort(pattern.begin(), pattern.end());
  pattern.erase(std::unique(pattern.begin(), pattern.end()), pattern.end());
  row_ptr_.assign(nrows_ + 1, 0);
  for (const auto& [r, c] : pattern) {
    if (r < 0 || r >= nrows_ || c < 0 || c >= nrows_)
      throw std::invalid_argument("BlockSparseMatrix: pattern index out of range");
    ++row_ptr_[r + 1];
  }
  for (int r = 0; r < nrows_; ++r) row_ptr_[r + 1] += row_ptr_[r];
  col_.resize(pattern.size());
  for (size_t e = 0; e < pattern.size(); ++e) col_[e] = pattern[e].second;
  data_.assign(pattern.size() * static_cast<size_t>(bs_) * bs_, 0.0);
}

int BlockSparseMatrix::find(int r, int c) const {
  const auto lo = col_.begin() + row_ptr_[r];
  const auto hi = col_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(lo, hi, c);
  if (it == hi || *it != c) return -1;
  return static_cast<int>(it - col_.begin());
}

double* BlockSparseMatrix::block(int r, int c) {
  const int e = find(r, c);
  return e < 0 ? nullptr : data_.data() + static_cast<size_t>(e) * bs_ * bs_;
}

const double* BlockSparseMatrix::block(int r, int c) const {
  const int e = find(r, c);
  return e < 0 ? nullptr : data_.data() + static_cast<size_t>(e) * bs_ * bs_;
}

void BlockSparseMatrix::add_block(int r, int c, const Eigen::MatrixXd& m) {
  double* b = block(r, c);
  if (b == nullptr) throw std::invalid_argument("add_block: entry not in pattern");
  for (int i = 0; i < bs_; ++i)
    for (int j = 0; j < bs_; ++j) b[i * bs_ + j] += m(i, j);
}

void BlockSparseMatrix::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

void BlockSparseMatrix::matvec(const std::vector<double>& x,
                               std::vector<double>& y) const {
  y.assign(rows(), 0.0);
  for (int r = 0; r < nrows_; ++r) {
    double* yr = y.data() + static_cast<size_t>(r) * bs_;
    for (int e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      const double* b = data_.data() + static_cast<size_t>(e) * bs_ * bs_;
      const double* xc = x.data() + static_cast<size_t>(col_[e]) * bs_;
      for (int i = 0; i < bs_; ++i) {
        double s = 0.0;
        for (int j = 0; j < bs_; ++j) s += b[i * bs_ + j] * xc[j];
        yr[i] += s;
      }
    }
  }
}

double BlockSparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double BlockSparseMatrix::max_asymmetry() const {
  double m = 0.0;
  for (int r = 0; r < nrows_; ++r) {
    for (int e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      const int c = col_[e];
      const double* b = data_.data() + static_cast<size_t>(e) * bs_ * bs_;
      const double* bt = block(c, r);
      for (int i = 0; i < bs_; ++i)
        for (int j = 0; j < bs_; ++j) {
          const double other = bt ? bt[j * bs_ + i] : 0.0;
          m = std::max(m, std::abs(b[i * bs_ + j] - other));
        }
    }
  }
  return m;
}

void BlockSparseMatrix::add_diagonal_of(const BlockSparseMatrix& other) {
  if (other.block_rows() != nrows_ || other.block_size() != bs_)
    throw std::invalid_argument("add_diagonal_of: shape mismatch");
  for (int r = 0; r < nrows_; ++r) {
    const double* src = other.block(r, r);
    if (!src) continue;
    double* dst = block(r, r);
    if (!dst) throw std::invalid_argument("add_diagonal_of: missing diagonal block");
    for (int i = 0; i < bs_ * bs_; ++i) dst[i] += src[i];
  }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

CGReport cg_block_jacobi(const BlockSparseMatrix& a, const std::vector<double>& rhs,
                         std::vector<double>& x, double rel_tol) {
  const int n = a.block_rows();
  const int bs = a.block_size();
  const long ndofs = a.rows();
  if (static_cast<long>(rhs.size()) != ndofs)
    throw std::invalid_argument("cg: rhs size mismatch");

  // cell-block Cholesky factors of the diagonal
  std::vector<Eigen::LLT<Eigen::MatrixXd>> prec(n);
  for (int r = 0; r < n; ++r) {
    const double* b = a.block(r, r);
    if (!b) throw std::invalid_argument("cg: missing diagonal block");
    Eigen::MatrixXd d(bs, bs);
    for (int i = 0; i < bs; ++i)
      for (int j = 0; j < bs; ++j) d(i, j) = b[i * bs + j];
    prec[r].compute(0.5 * (d + d.transpose()));
    if (prec[r].info() != Eigen::Success)
      throw LinearSolveError("cg: diagonal block not positive definite");
  }
  auto apply_prec = [&](const std::vector<double>& r, std::vector<double>& z) {
    z.resize(r.size());
    for (int br = 0; br < n; ++br) {
      Eigen::Map<const Eigen::VectorXd> rb(r.data() + static_cast<size_t>(br) * bs, bs);
      Eigen::Map<Eigen::VectorXd> zb(z.data() + static_cast<size_t>(br) * bs, bs);
      zb = prec[br].solve(rb);
    }
  };

  x.assign(ndofs, 0.0);
  const double bnorm = norm2(rhs);
  CGReport rep;
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }
  const long max_iter = 10 * ndofs;

  std::vector<double> r = rhs;  // r = b - A*0
  std::vector<double> z, p, ap(ndofs);
  apply_prec(r, z);
  p = z;
  double rz = dot(r, z);
  double rnorm = norm2(r);

  while (rnorm > rel_tol * bnorm) {
    if (rep.iterations >= max_iter)
      throw LinearSolveError("cg: iteration limit reached, rel residual " +
                             std::to_string(rnorm / bnorm));
    a.matvec(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) throw LinearSolveError("cg: operator not positive definite");
    const double alpha = rz / pap;
    for (long i = 0; i < ndofs; ++i) x[i] += alpha * p[i];
    for (long i = 0; i < ndofs; ++i) r[i] -= alpha * ap[i];
    apply_prec(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    for (long i = 0; i < ndofs; ++i) p[i] = z[i] + beta * p[i];
    rz = rz_new;
    rnorm = norm2(r);
    ++rep.iterations;
  }

  rep.rel_residual = rnorm / bnorm;
  rep.converged = true;
  return rep;
}

}  // namespace semidg
