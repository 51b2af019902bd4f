#include "semidg/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "semidg/quadrature.hpp"

namespace semidg {

// Orthonormal Proriol-Koornwinder-Dubiner basis,
//   phi_{m,n}(x,y) = c_{mn} * Q_m(x,y) * P_n^{(2m+1,0)}(2y-1),
//   Q_m(x,y) = P_m(a) (1-y)^m with a = (2x+y-1)/(1-y),
//   c_{mn} = sqrt(2 (2m+1) (m+n+1)).
// Q_m satisfies a polynomial three-term recurrence in eta = 2x+y-1 and
// z = 1-y, so the collapsed coordinate never needs to be formed and the
// evaluation is stable at the top vertex and for high degrees.

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  if (degree < 0 || degree > 20)
    throw std::invalid_argument("ReferenceBasis: degree out of supported range");
  for (int d = 0; d <= degree; ++d)
    for (int m = d; m >= 0; --m) index_.push_back({m, d - m});
  size_ = static_cast<int>(index_.size());
}

namespace {

struct Scalars {
  double v, x, y, xx, xy, yy;
};

}  // namespace

void ReferenceBasis::eval_point(double xp, double yp, int deriv, double* val,
                                double* dx, double* dy, double* dxx, double* dxy,
                                double* dyy) const {
  const int k = degree_;
  const double eta = 2.0 * xp + yp - 1.0;
  const double z = 1.0 - yp;
  const double b = 2.0 * yp - 1.0;

  // Q_m and derivatives
  std::vector<Scalars> q(k + 1);
  q[0] = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  if (k >= 1) q[1] = {eta, 2.0, 1.0, 0.0, 0.0, 0.0};
  for (int m = 1; m < k; ++m) {
    const double am = (2.0 * m + 1.0) / (m + 1.0);
    const double bm = static_cast<double>(m) / (m + 1.0);
    Scalars& out = q[m + 1];
    const Scalars& c = q[m];
    const Scalars& p = q[m - 1];
    out.v = am * eta * c.v - bm * z * z * p.v;
    if (deriv >= 1) {
      out.x = am * (2.0 * c.v + eta * c.x) - bm * z * z * p.x;
      out.y = am * (c.v + eta * c.y) - bm * (z * z * p.y - 2.0 * z * p.v);
    }
    if (deriv >= 2) {
      out.xx = am * (4.0 * c.x + eta * c.xx) - bm * z * z * p.xx;
      out.xy = am * (2.0 * c.y + c.x + eta * c.xy) - bm * (z * z * p.xy - 2.0 * z * p.x);
      out.yy = am * (2.0 * c.y + eta * c.yy) -
               bm * (z * z * p.yy - 4.0 * z * p.y + 2.0 * p.v);
    }
  }

  // Jacobi polynomials P_n^{(alpha,0)}(b) with alpha = 2m+1, plus b-derivatives
  std::vector<double> r(k + 1), rb(k + 1), rbb(k + 1);
  for (int m = 0; m <= k; ++m) {
    const double alpha = 2.0 * m + 1.0;
    const int nmax = k - m;
    r[0] = 1.0;
    rb[0] = 0.0;
    rbb[0] = 0.0;
    if (nmax >= 1) {
      r[1] = 0.5 * ((alpha + 2.0) * b + alpha);
      rb[1] = 0.5 * (alpha + 2.0);
      rbb[1] = 0.0;
    }
    for (int n = 2; n <= nmax; ++n) {
      const double an = 2.0 * n * (n + alpha) * (2.0 * n + alpha - 2.0);
      const double bn = (2.0 * n + alpha - 1.0) * (2.0 * n + alpha) *
                        (2.0 * n + alpha - 2.0);
      const double cn = (2.0 * n + alpha - 1.0) * alpha * alpha;
      const double dn = 2.0 * (n + alpha - 1.0) * (n - 1.0) * (2.0 * n + alpha);
      r[n] = ((bn * b + cn) * r[n - 1] - dn * r[n - 2]) / an;
      if (deriv >= 1)
        rb[n] = (bn * r[n - 1] + (bn * b + cn) * rb[n - 1] - dn * rb[n - 2]) / an;
      if (deriv >= 2)
        rbb[n] =
            (2.0 * bn * rb[n - 1] + (bn * b + cn) * rbb[n - 1] - dn * rbb[n - 2]) / an;
    }

    // fill all (m, n) columns for this m
    for (int n = 0; n <= nmax; ++n) {
      const int col = column(m, n);
      if (col < 0) continue;
      const double c = std::sqrt(2.0 * (2.0 * m + 1.0) * (m + n + 1.0));
      const Scalars& qm = q[m];
      const double ry = 2.0 * rb[n];
      const double ryy = 4.0 * rbb[n];
      if (val) val[col] = c * qm.v * r[n];
      if (deriv >= 1) {
        dx[col] = c * qm.x * r[n];
        dy[col] = c * (qm.y * r[n] + qm.v * ry);
      }
      if (deriv >= 2) {
        dxx[col] = c * qm.xx * r[n];
        dxy[col] = c * (qm.xy * r[n] + qm.x * ry);
        dyy[col] = c * (qm.yy * r[n] + 2.0 * qm.y * ry + qm.v * ryy);
      }
    }
  }
}

int ReferenceBasis::column(int m, int n) const {
  const int d = m + n;
  if (d > degree_) return -1;
  // degree block d starts at d(d+1)/2; within it m runs d, d-1, ..., 0
  return d * (d + 1) / 2 + (d - m);
}

Eigen::MatrixXd ReferenceBasis::values(const std::vector<double>& x,
                                       const std::vector<double>& y) const {
  const int np = static_cast<int>(x.size());
  Eigen::MatrixXd out(np, size_);
  std::vector<double> val(size_);
  for (int qn = 0; qn < np; ++qn) {
    eval_point(x[qn], y[qn], 0, val.data(), nullptr, nullptr, nullptr, nullptr,
               nullptr);
    for (int i = 0; i < size_; ++i) out(qn, i) = val[i];
  }
  return out;
}

void ReferenceBasis::gradients(const std::vector<double>& x, const std::vector<double>& y,
                               Eigen::MatrixXd& dx, Eigen::MatrixXd& dy) const {
  const int np = static_cast<int>(x.size());
  dx.resize(np, size_);
  dy.resize(np, size_);
  std::vector<double> val(size_), gx(size_), gy(size_);
  for (int qn = 0; qn < np; ++qn) {
    eval_point(x[qn], y[qn], 1, val.data(), gx.data(), gy.data(), nullptr, nullptr,
               nullptr);
    for (int i = 0; i < size_; ++i) {
      dx(qn, i) = gx[i];
      dy(qn, i) = gy[i];
    }
  }
}

void ReferenceBasis::hessians(const std::vector<double>& x, const std::vector<double>& y,
                              Eigen::MatrixXd& dxx, Eigen::MatrixXd& dxy,
                              Eigen::MatrixXd& dyy) const {
  const int np = static_cast<int>(x.size());
  dxx.resize(np, size_);
  dxy.resize(np, size_);
  dyy.resize(np, size_);
  std::vector<double> val(size_), gx(size_), gy(size_), hxx(size_), hxy(size_),
      hyy(size_);
  for (int qn = 0; qn < np; ++qn) {
    eval_point(x[qn], y[qn], 2, val.data(), gx.data(), gy.data(), hxx.data(),
               hxy.data(), hyy.data());
    for (int i = 0; i < size_; ++i) {
      dxx(qn, i) = hxx[i];
      dxy(qn, i) = hxy[i];
      dyy(qn, i) = hyy[i];
    }
  }
}

LagrangeNodes lagrange_nodes(const ReferenceBasis& basis) {
  const int k = basis.degree();
  if (k < 1) throw std::invalid_argument("lagrange_nodes: degree must be >= 1");
  LagrangeNodes ln;
  ln.degree = k;
  for (int b = 0; b <= k; ++b) {
    for (int a = 0; a + b <= k; ++a) {
      LagrangeNodes::Node n{};
      n.x = static_cast<double>(a) / k;
      n.y = static_cast<double>(b) / k;
      const int c = k - a - b;  // barycentric index of vertex 0
      if (a == 0 && b == 0) {
        n.kind = LagrangeNodes::kVertex;
        n.sub = 0;
      } else if (a == k) {
        n.kind = LagrangeNodes::kVertex;
        n.sub = 1;
      } else if (b == k) {
        n.kind = LagrangeNodes::kVertex;
        n.sub = 2;
      } else if (c == 0) {
        // on edge 0 (v1 -> v2): position from v1 is b
        n.kind = LagrangeNodes::kEdge;
        n.sub = 0;
        n.idx = b;
      } else if (a == 0) {
        // on edge 1 (v2 -> v0): position from v2 is k - b
        n.kind = LagrangeNodes::kEdge;
        n.sub = 1;
        n.idx = k - b;
      } else if (b == 0) {
        // on edge 2 (v0 -> v1): position from v0 is a
        n.kind = LagrangeNodes::kEdge;
        n.sub = 2;
        n.idx = a;
      } else {
        n.kind = LagrangeNodes::kInterior;
        n.sub = 0;
        n.idx = 0;
      }
      ln.nodes.push_back(n);
    }
  }

  std::vector<double> xs, ys;
  for (const auto& n : ln.nodes) {
    xs.push_back(n.x);
    ys.push_back(n.y);
  }
  ln.modal_to_nodal = basis.values(xs, ys);
  ln.nodal_to_modal = ln.modal_to_nodal.inverse();
  return ln;
}

}  // namespace semidg
