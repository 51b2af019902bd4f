#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "semidg/harness.hpp"
#include "semidg/solver.hpp"

using namespace semidg;

TEST_CASE("default continuation schedules") {
  CHECK(default_continuation(2.0) == std::vector<double>{2.0});
  CHECK(default_continuation(4.0) == std::vector<double>{2.0, 4.0});
  CHECK(default_continuation(5.0) == std::vector<double>{2.0, 4.0, 5.0});
  CHECK(default_continuation(12.0) ==
        std::vector<double>{2.0, 4.0, 6.0, 8.0, 10.0, 12.0});
}

TEST_CASE("p=2 converges in exactly one Newton iteration") {
  const Mesh mesh = build_crisscross(8);
  const DGSpace space(mesh, 1);
  const ProblemSpec spec = smooth_problem(2.0);
  const auto [u, report] = solve(space, spec);
  CHECK(report.converged);
  REQUIRE(report.stages.size() == 1);
  CHECK(report.stages[0].iterations == 1);
  CHECK(report.final_residual <= 1e-10);
}

TEST_CASE("zero source is solved immediately") {
  const Mesh mesh = build_crisscross(4);
  const DGSpace space(mesh, 1, 6.0);
  ProblemSpec spec = smooth_problem(6.0);
  spec.source = [](double, double) { return 0.0; };
  const auto [u, report] = solve(space, spec);
  CHECK(report.converged);
  CHECK(report.total_newton_iterations() == 0);
  for (double c : u.coeffs) CHECK(c == 0.0);
}

TEST_CASE("smooth p=4 problem on the 8x8 criss-cross mesh") {
  const Mesh mesh = build_crisscross(8);
  const DGSpace space(mesh, 1, 4.0);
  const ProblemSpec spec = smooth_problem(4.0);
  const auto [u, report] = solve(space, spec);
  CHECK(report.converged);
  CHECK(report.total_newton_iterations() <= 25);
  CHECK(report.final_residual <= 1e-9);
  REQUIRE(report.stages.size() == 2);  // continuation 2 then 4
  CHECK(report.stages[0].p == 2.0);
  CHECK(report.stages[1].p == 4.0);
}

TEST_CASE("newton converges superlinearly near the solution") {
  const Mesh mesh = build_crisscross(8);
  const DGSpace space(mesh, 1, 4.0);
  const ProblemSpec spec = smooth_problem(4.0);
  NewtonConfig cfg;
  cfg.continuation = {4.0};  // single stage from zero: a longer Newton path
  const auto [u, report] = solve(space, spec, cfg);
  CHECK(report.converged);
  const auto& hist = report.stages[0].residual_history;
  bool checked = false;
  for (size_t i = 0; i + 1 < hist.size(); ++i) {
    // skip steps truncated by the linear-solver accuracy floor
    if (hist[i] < 1e-3 && hist[i + 1] > 1e-12 && hist[i + 1] < 1.0) {
      CHECK(std::log(hist[i + 1]) / std::log(hist[i]) >= 1.5);
      checked = true;
    }
  }
  CHECK(checked);
}

TEST_CASE("solution is independent of the initial guess") {
  constexpr double pi = std::numbers::pi;
  const Mesh mesh = build_crisscross(4);
  const DGSpace space(mesh, 1, 4.0);
  const ProblemSpec spec = smooth_problem(4.0);

  const auto [u_cold, rep1] = solve(space, spec);

  const DGFunction big = project_l2(
      [](double x, double y) { return 10.0 * std::sin(pi * x) * std::sin(pi * y); },
      space);
  const auto [u_warm, rep2] = solve(space, spec, {}, &big);

  CHECK(rep1.converged);
  CHECK(rep2.converged);
  double dmax = 0.0;
  for (size_t i = 0; i < u_cold.coeffs.size(); ++i)
    dmax = std::max(dmax, std::abs(u_cold.coeffs[i] - u_warm.coeffs[i]));
  CHECK(dmax <= 1e-8);
}

TEST_CASE("iteration cap raises NonConvergence with the report attached") {
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 1, 8.0);
  const ProblemSpec spec = constant_source_problem(8.0);
  NewtonConfig cfg;
  cfg.max_iter = 1;
  cfg.continuation = {8.0};
  try {
    solve(space, spec, cfg);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK_FALSE(e.report.converged);
    REQUIRE(e.report.stages.size() == 1);
    CHECK(e.report.stages[0].iterations == 1);
    CHECK(e.report.final_residual > 1e-10);
  }
}

TEST_CASE("continuation validation") {
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 1, 4.0);
  const ProblemSpec spec = smooth_problem(4.0);
  NewtonConfig cfg;
  cfg.continuation = {2.0, 3.0};  // does not end at p
  CHECK_THROWS_AS(solve(space, spec, cfg), std::invalid_argument);
  cfg.continuation = {4.0, 3.0, 4.0};
  CHECK_THROWS_AS(solve(space, spec, cfg), std::invalid_argument);
}
