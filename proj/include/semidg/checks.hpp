#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semidg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Randomized property suites over small meshes, deterministic for a fixed
// seed. Each suite runs at least 100 cases where that is meaningful.
CheckResult check_quadrature_exactness();
CheckResult check_basis_orthonormality();
CheckResult check_mesh_conformity_random_marks(unsigned seed);
CheckResult check_projection_idempotent(unsigned seed);
CheckResult check_jump_of_continuous_vanishes(unsigned seed);
CheckResult check_monotonicity(unsigned seed);
CheckResult check_quasinorm_lower_bound(unsigned seed);
CheckResult check_jacobian_fd_order(unsigned seed);
CheckResult check_kp_identity_on_conforming(unsigned seed);
CheckResult check_kp_stability_bounded(unsigned seed);
CheckResult check_bilinear_coercivity(unsigned seed);
CheckResult check_jacobian_psd(unsigned seed);
CheckResult check_norm_homogeneity(unsigned seed);
CheckResult check_reconstruction_idempotent(unsigned seed);

// All of the above with a fixed default seed; prints one line per check.
std::vector<CheckResult> run_all_checks(unsigned seed = 20240901);
int run_selftest(std::ostream& out, unsigned seed = 20240901);

}  // namespace semidg
