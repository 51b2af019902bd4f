#include "semidg/checks.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "semidg/analysis.hpp"
#include "semidg/estimator.hpp"
#include "semidg/forms.hpp"
#include "semidg/harness.hpp"
#include "semidg/quadrature.hpp"
#include "semidg/solver.hpp"

namespace semidg {

namespace {

CheckResult failure(const std::string& name, const std::string& detail) {
  return {name, false, detail};
}

CheckResult success(const std::string& name, const std::string& detail = "") {
  return {name, true, detail};
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

DGFunction random_function(const DGSpace& space, std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  DGFunction f(space);
  for (double& c : f.coeffs) c = dist(rng);
  return f;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

CheckResult check_quadrature_exactness() {
  const char* name = "quadrature exactness";
  int cases = 0;
  for (int degree = 1; degree <= 24; ++degree) {
    const TriQuadRule rule = triangle_rule(degree);
    double wsum = 0.0;
    for (double w : rule.w) {
      if (!(w > 0.0)) return failure(name, "nonpositive cell weight");
      wsum += w;
    }
    if (std::abs(wsum - 0.5) > 1e-13) return failure(name, "cell weights do not sum to 1/2");
    for (int a = 0; a + 0 <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double q = 0.0;
        for (int i = 0; i < rule.size(); ++i)
          q += rule.w[i] * std::pow(rule.x[i], a) * std::pow(rule.y[i], b);
        const double exact = reference_monomial_integral(a, b);
        if (std::abs(q - exact) > 1e-13) {
          std::ostringstream os;
          os << "cell rule degree " << degree << " misses x^" << a << " y^" << b;
          return failure(name, os.str());
        }
        ++cases;
      }
    }
  }
  for (int degree = 1; degree <= 24; ++degree) {
    const FacetQuadRule rule = facet_rule(degree);
    for (double w : rule.w)
      if (!(w > 0.0)) return failure(name, "nonpositive facet weight");
    for (int a = 0; a <= degree; ++a) {
      double q = 0.0;
      for (int i = 0; i < rule.size(); ++i) q += rule.w[i] * std::pow(rule.t[i], a);
      if (std::abs(q - 1.0 / (a + 1)) > 1e-13) {
        std::ostringstream os;
        os << "facet rule degree " << degree << " misses t^" << a;
        return failure(name, os.str());
      }
      ++cases;
    }
  }
  return success(name, std::to_string(cases) + " monomials");
}

CheckResult check_basis_orthonormality() {
  const char* name = "basis orthonormality";
  for (int k = 1; k <= 4; ++k) {
    const ReferenceBasis basis(k);
    const TriQuadRule rule = triangle_rule(2 * k + 2);
    const Eigen::MatrixXd v = basis.values(rule.x, rule.y);
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(basis.size(), basis.size());
    for (int q = 0; q < rule.size(); ++q)
      mass.noalias() += rule.w[q] * (v.row(q).transpose() * v.row(q));
    const double err =
        (mass - Eigen::MatrixXd::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff();
    if (err > 1e-12)
      return failure(name, "mass deviation " + sci(err) + " at k=" + std::to_string(k));
  }
  return success(name);
}

CheckResult check_mesh_conformity_random_marks(unsigned seed) {
  const char* name = "mesh conformity under random marking";
  std::mt19937 rng(seed);
  int cases = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Mesh mesh = build_crisscross(1 + trial % 3);
    const double area0 = mesh.total_area();
    for (int step = 0; step < 5; ++step) {
      std::uniform_int_distribution<int> count(1, std::max(1, mesh.num_cells() / 2));
      std::uniform_int_distribution<int> pick(0, mesh.num_cells() - 1);
      std::vector<int> marked;
      const int m = count(rng);
      for (int i = 0; i < m; ++i) marked.push_back(pick(rng));
      BisectResult refined = bisect(mesh, marked);
      const std::string bad = check_mesh(refined.mesh);
      if (!bad.empty()) return failure(name, bad);
      if (std::abs(refined.mesh.total_area() - area0) > 1e-12 * area0)
        return failure(name, "area not conserved");
      for (int c : marked) {
        // every marked cell must have been split
        int children = 0;
        for (int nc = 0; nc < refined.mesh.num_cells(); ++nc)
          if (refined.parent[nc] == c) ++children;
        if (children < 2) return failure(name, "marked cell not bisected");
      }
      mesh = std::move(refined.mesh);
      ++cases;
    }
  }
  return success(name, std::to_string(cases) + " refinements");
}

CheckResult check_projection_idempotent(unsigned seed) {
  const char* name = "projection idempotent on the space";
  std::mt19937 rng(seed);
  const Mesh mesh = build_crisscross(2);
  for (int k = 1; k <= 3; ++k) {
    const DGSpace space(mesh, k);
    for (int trial = 0; trial < 34; ++trial) {
      const DGFunction f = random_function(space, rng);
      // evaluate f through its own cells and project again
      const DGFunction g = project_l2(
          [&](double x, double y) {
            for (int c = 0; c < mesh.num_cells(); ++c) {
              const AffineMap& map = space.cell_map(c);
              double xr, yr;
              map.to_reference(x, y, xr, yr);
              if (xr >= -1e-12 && yr >= -1e-12 && xr + yr <= 1.0 + 1e-12) {
                std::vector<double> vals;
                std::vector<std::array<double, 2>> grads;
                evaluate(f, c, {xr}, {yr}, vals, grads);
                return vals[0];
              }
            }
            return 0.0;
          },
          space);
      for (size_t i = 0; i < f.coeffs.size(); ++i)
        if (std::abs(f.coeffs[i] - g.coeffs[i]) > 1e-10)
          return failure(name, "projection changed coefficients");
    }
  }
  return success(name);
}

CheckResult check_jump_of_continuous_vanishes(unsigned seed) {
  const char* name = "jumps of conforming functions vanish";
  std::mt19937 rng(seed);
  for (int k = 1; k <= 3; ++k) {
    const Mesh mesh = build_crisscross(2);
    const DGSpace space(mesh, k);
    for (int trial = 0; trial < 34; ++trial) {
      const DGFunction v = reconstruct(random_function(space, rng));
      for (int f = 0; f < mesh.num_facets(); ++f) {
        const FacetTrace tr = facet_trace(v, f);
        for (size_t q = 0; q < tr.weight.size(); ++q)
          if (std::abs(tr.jump_value(static_cast<int>(q))) > 1e-11)
            return failure(name, "nonzero jump after reconstruction");
      }
    }
  }
  return success(name);
}

CheckResult check_monotonicity(unsigned seed) {
  const char* name = "semilinear monotonicity";
  std::mt19937 rng(seed);
  const Mesh mesh = build_crisscross(2);
  double min_val = 1e300;
  double min_coer = 1e300;
  for (double p : {2.0, 3.0, 4.0, 8.0}) {
    ProblemSpec spec = smooth_problem(p);
    const DGSpace space(mesh, 2, p);
    for (int trial = 0; trial < 30; ++trial) {
      const DGFunction u = random_function(space, rng);
      const DGFunction w = random_function(space, rng);
      const auto bu = assemble_semilinear(space, spec, u);
      const auto bw = assemble_semilinear(space, spec, w);
      std::vector<double> diff(bu.size());
      for (size_t i = 0; i < bu.size(); ++i) diff[i] = u.coeffs[i] - w.coeffs[i];
      std::vector<double> bd(bu.size());
      for (size_t i = 0; i < bu.size(); ++i) bd[i] = bu[i] - bw[i];
      const double val = dot(bd, diff);
      min_val = std::min(min_val, val);
      // distinct random functions must pair strictly positively
      if (!(val > 0.0)) return failure(name, "pairing not positive: " + sci(val));
      DGFunction d(space);
      for (size_t i = 0; i < d.coeffs.size(); ++i) d.coeffs[i] = diff[i];
      const double qn = quasinorm(d, u, p);
      if (qn > 0.0) min_coer = std::min(min_coer, val / (qn * qn));
    }
  }
  return success(name, "min pairing " + sci(min_val) +
                           ", min ratio vs quasinorm^2 " + sci(min_coer));
}

CheckResult check_quasinorm_lower_bound(unsigned seed) {
  const char* name = "quasinorm dominates Lp^p";
  std::mt19937 rng(seed);
  const Mesh mesh = build_crisscross(2);
  double upper_c = 0.0;  // empirical constant of |v|^2_(w,p) <= C ||v||_p^2
  for (double p : {2.0, 4.0, 8.0}) {
    const DGSpace space(mesh, 2, p);
    for (int trial = 0; trial < 34; ++trial) {
      const DGFunction v = random_function(space, rng);
      const DGFunction w = random_function(space, rng);
      const double lp = lp_norm(v, p);
      const double qn = quasinorm(v, w, p);
      if (std::pow(lp, p) > qn * qn * (1.0 + 1e-10))
        return failure(name, "lower bound violated");
      if (lp > 0.0) upper_c = std::max(upper_c, qn * qn / (lp * lp));
    }
  }
  return success(name, "upper comparison constant " + sci(upper_c));
}

CheckResult check_jacobian_fd_order(unsigned seed) {
  const char* name = "semilinear Jacobian vs finite differences";
  std::mt19937 rng(seed);
  const Mesh mesh = build_crisscross(1);
  double min_order = 10.0;
  for (double p : {3.0, 4.0, 6.0}) {
    ProblemSpec spec = smooth_problem(p);
    const DGSpace space(mesh, 1, p);
    for (int trial = 0; trial < 34; ++trial) {
      const DGFunction u = random_function(space, rng);
      const DGFunction w = random_function(space, rng);
      const BlockSparseMatrix jac = assemble_jacobian_semilinear(space, spec, u);
      std::vector<double> jw;
      jac.matvec(w.coeffs, jw);
      const auto bu = assemble_semilinear(space, spec, u);

      std::vector<double> errs;
      for (double eps : {1e-3, 1e-4, 1e-5}) {
        DGFunction up(space);
        for (size_t i = 0; i < u.coeffs.size(); ++i)
          up.coeffs[i] = u.coeffs[i] + eps * w.coeffs[i];
        const auto bup = assemble_semilinear(space, spec, up);
        double err = 0.0;
        for (size_t i = 0; i < bu.size(); ++i) {
          const double d = (bup[i] - bu[i]) / eps - jw[i];
          err += d * d;
        }
        errs.push_back(std::sqrt(err));
      }
      // observed order between successive eps (factor 10 apart)
      for (size_t i = 0; i + 1 < errs.size(); ++i) {
        if (errs[i + 1] == 0.0) continue;  // derivative exact (e.g. locally linear)
        const double order = std::log10(errs[i] / errs[i + 1]);
        min_order = std::min(min_order, order);
        if (order < 0.9)
          return failure(name, "observed order " + std::to_string(order));
      }
    }
  }
  return success(name, "min observed order " + std::to_string(min_order));
}

CheckResult check_kp_identity_on_conforming(unsigned seed) {
  const char* name = "reconstruction fixes conforming functions";
  std::mt19937 rng(seed);
  for (int k = 1; k <= 3; ++k) {
    const Mesh mesh = build_crisscross(2);
    const DGSpace space(mesh, k);
    for (int trial = 0; trial < 34; ++trial) {
      // E(v) is conforming with zero trace; E must fix it
      const DGFunction v = reconstruct(random_function(space, rng));
      const DGFunction ev = reconstruct(v);
      for (size_t i = 0; i < v.coeffs.size(); ++i)
        if (std::abs(v.coeffs[i] - ev.coeffs[i]) > 1e-12)
          return failure(name, "E(E(v)) != E(v)");
    }
  }
  return success(name);
}

CheckResult check_kp_stability_bounded(unsigned seed) {
  const char* name = "reconstruction stability ratio bounded";
  std::mt19937 rng(seed);
  std::ostringstream detail;
  for (int k = 1; k <= 2; ++k) {
    double prev_c0 = -1.0, prev_c1 = -1.0;
    for (int n : {2, 4, 8}) {
      const Mesh mesh = build_crisscross(n);
      const DGSpace space(mesh, k);
      double c0 = 0.0, c1 = 0.0;
      for (int trial = 0; trial < 34; ++trial) {
        const DGFunction v = random_function(space, rng);
        const KPStabilitySample s = kp_stability_sample(v);
        if (s.rhs0 > 0.0) c0 = std::max(c0, s.lhs0 / s.rhs0);
        if (s.rhs1 > 0.0) c1 = std::max(c1, s.lhs1 / s.rhs1);
      }
      if (prev_c0 > 0.0 && (c0 > 10.0 * prev_c0 || prev_c0 > 10.0 * c0))
        return failure(name, "alpha=0 constant varies more than 10x across levels");
      if (prev_c1 > 0.0 && (c1 > 10.0 * prev_c1 || prev_c1 > 10.0 * c1))
        return failure(name, "alpha=1 constant varies more than 10x across levels");
      prev_c0 = c0;
      prev_c1 = c1;
      if (n == 8) detail << "k=" << k << ": C0=" << c0 << " C1=" << c1 << "  ";
    }
  }
  return success(name, detail.str());
}

CheckResult check_bilinear_coercivity(unsigned seed) {
  const char* name = "interior penalty coercivity sample";
  std::mt19937 rng(seed);
  double min_ratio = 1e300;
  for (int k = 1; k <= 2; ++k) {
    for (int n : {2, 4}) {
      const Mesh mesh = build_crisscross(n);
      const DGSpace space(mesh, k);
      ProblemSpec spec = smooth_problem(2.0);  // C_sigma = 10
      const MeshSizeField sizes = mesh_size(mesh);
      const std::vector<double> sigma = penalty_field(space, spec, sizes);
      const BlockSparseMatrix a = assemble_bilinear(space, spec, sigma);
      for (int trial = 0; trial < 25; ++trial) {
        const DGFunction u = random_function(space, rng);
        std::vector<double> au;
        a.matvec(u.coeffs, au);
        const double quad = dot(au, u.coeffs);
        const double en = energy_norm(u, sigma);
        if (!(quad > 0.0)) return failure(name, "quadratic form not positive");
        min_ratio = std::min(min_ratio, quad / (en * en));
      }
    }
  }
  if (min_ratio < 0.1)
    return failure(name, "coercivity ratio " + sci(min_ratio) + " < 0.1");
  return success(name, "min ratio " + std::to_string(min_ratio));
}

CheckResult check_jacobian_psd(unsigned seed) {
  const char* name = "semilinear Jacobian symmetric positive semidefinite";
  std::mt19937 rng(seed);
  const Mesh mesh = build_crisscross(2);
  for (double p : {2.0, 4.0, 7.5}) {
    ProblemSpec spec = smooth_problem(p);
    const DGSpace space(mesh, 2, p);
    for (int trial = 0; trial < 34; ++trial) {
      const DGFunction u = random_function(space, rng);
      const BlockSparseMatrix jac = assemble_jacobian_semilinear(space, spec, u);
      if (jac.max_asymmetry() > 1e-10 * std::max(1.0, jac.max_abs()))
        return failure(name, "asymmetric Jacobian");
      const DGFunction x = random_function(space, rng);
      std::vector<double> jx;
      jac.matvec(x.coeffs, jx);
      if (dot(jx, x.coeffs) < -1e-12) return failure(name, "negative curvature");
    }
  }
  return success(name);
}

CheckResult check_norm_homogeneity(unsigned seed) {
  const char* name = "norm homogeneity";
  std::mt19937 rng(seed);
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 2, 4.0);
  ProblemSpec spec = smooth_problem(4.0);
  const MeshSizeField sizes = mesh_size(mesh);
  const std::vector<double> sigma = penalty_field(space, spec, sizes);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const DGFunction v = random_function(space, rng);
    const double c = (trial % 2 ? -1.0 : 1.0) * scale(rng);
    DGFunction cv(space);
    for (size_t i = 0; i < v.coeffs.size(); ++i) cv.coeffs[i] = c * v.coeffs[i];
    const double lp1 = lp_norm(cv, 4.0), lp0 = lp_norm(v, 4.0);
    if (std::abs(lp1 - std::abs(c) * lp0) > 1e-10 * std::max(1.0, lp1))
      return failure(name, "Lp norm not homogeneous");
    const double en1 = energy_norm(cv, sigma), en0 = energy_norm(v, sigma);
    if (std::abs(en1 - std::abs(c) * en0) > 1e-9 * std::max(1.0, en1))
      return failure(name, "energy norm not homogeneous");
  }
  return success(name);
}

CheckResult check_reconstruction_idempotent(unsigned seed) {
  const char* name = "reconstruction idempotent";
  std::mt19937 rng(seed);
  for (int k = 1; k <= 3; ++k) {
    const Mesh mesh = build_crisscross(2);
    const DGSpace space(mesh, k);
    for (int trial = 0; trial < 34; ++trial) {
      const DGFunction v = random_function(space, rng);
      const DGFunction e1 = reconstruct(v);
      const DGFunction e2 = reconstruct(e1);
      for (size_t i = 0; i < e1.coeffs.size(); ++i)
        if (std::abs(e1.coeffs[i] - e2.coeffs[i]) > 1e-12)
          return failure(name, "not idempotent");
    }
  }
  return success(name);
}

std::vector<CheckResult> run_all_checks(unsigned seed) {
  return {
      check_quadrature_exactness(),
      check_basis_orthonormality(),
      check_mesh_conformity_random_marks(seed),
      check_projection_idempotent(seed + 1),
      check_jump_of_continuous_vanishes(seed + 2),
      check_monotonicity(seed + 3),
      check_quasinorm_lower_bound(seed + 4),
      check_jacobian_fd_order(seed + 5),
      check_kp_identity_on_conforming(seed + 6),
      check_kp_stability_bounded(seed + 7),
      check_bilinear_coercivity(seed + 8),
      check_jacobian_psd(seed + 9),
      check_norm_homogeneity(seed + 10),
      check_reconstruction_idempotent(seed + 11),
  };
}

int run_selftest(std::ostream& out, unsigned seed) {
  const auto results = run_all_checks(seed);
  int failures = 0;
  for (const CheckResult& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
    if (!r.pass) ++failures;
  }
  out << (failures == 0 ? "selftest: all checks passed\n"
                        : "selftest: " + std::to_string(failures) + " check(s) failed\n");
  return failures;
}

}  // namespace semidg
