#include "semidg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <stdexcept>

#include "semidg/analysis.hpp"
#include "semidg/estimator.hpp"

namespace semidg {

std::vector<double> eoc(const std::vector<double>& errors,
                        const std::vector<double>& hs) {
  if (errors.size() != hs.size() || errors.size() < 2)
    throw std::invalid_argument("eoc: need two or more matching entries");
  for (double e : errors)
    if (!(e > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
  for (double h : hs)
    if (!(h > 0.0)) throw std::invalid_argument("eoc: mesh sizes must be positive");
  std::vector<double> rates;
  for (size_t i = 0; i + 1 < errors.size(); ++i)
    rates.push_back(std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]));
  return rates;
}

ProblemSpec smooth_problem(double p, double c_sigma) {
  constexpr double pi = std::numbers::pi;
  ProblemSpec spec;
  spec.p = p;
  spec.c_sigma = c_sigma;
  spec.exact = [](double x, double y) {
    return std::sin(pi * x) * std::sin(pi * y);
  };
  spec.exact_grad = [](double x, double y) -> std::array<double, 2> {
    return {pi * std::cos(pi * x) * std::sin(pi * y),
            pi * std::sin(pi * x) * std::cos(pi * y)};
  };
  spec.source = [p](double x, double y) {
    const double u = std::sin(pi * x) * std::sin(pi * y);
    // u >= 0 on the unit square, so |u|^(p-2) u = u^(p-1)
    return 2.0 * pi * pi * u + std::pow(std::max(u, 0.0), p - 1.0);
  };
  return spec;
}

ProblemSpec constant_source_problem(double p, double c_sigma, double f_value) {
  ProblemSpec spec;
  spec.p = p;
  spec.c_sigma = c_sigma;
  spec.source = [f_value](double, double) { return f_value; };
  return spec;
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return std::string("p") + buf;
}

ConvergeResult run_converge(const ConvergeOptions& opts) {
  if (opts.levels < 2) throw std::invalid_argument("run_converge: levels must be >= 2");
  const ProblemSpec spec = smooth_problem(opts.p, opts.c_sigma);
  ConvergeResult result;
  if (opts.write_files) std::filesystem::create_directories(opts.out_dir);

  auto mesh = std::make_unique<Mesh>(build_crisscross(opts.initial_n));
  auto space =
      std::make_unique<DGSpace>(*mesh, opts.degree, spec.p, opts.quad_bump);
  std::unique_ptr<DGFunction> initial;

  for (int level = 0; level < opts.levels; ++level) {
    NewtonConfig cfg;
    auto [u, report] = solve(*space, spec, cfg, initial.get());
    result.reports.push_back(report);

    const MeshSizeField sizes = mesh_size(*mesh);
    const std::vector<double> sigma = penalty_field(*space, spec, sizes);
    const ErrorReport err = error_report(*space, u, spec);
    const EstimatorReport est = estimate(*space, spec, u, sizes);

    RateRow row;
    row.level = level;
    row.cells = mesh->num_cells();
    row.dofs = space->total_dofs();
    row.h_max = *std::max_element(sizes.h_cell.begin(), sizes.h_cell.end());
    row.enorm_err = err.enorm;
    row.lp_err = err.lp;
    row.quasinorm_err = err.quasinorm;
    row.l2_err = err.l2;
    row.estimator_total = est.total;
    row.effectivity = effectivity(est, err);
    result.table.rows.push_back(row);

    const double en = energy_norm(u, sigma);
    const double lpn = lp_norm(u, spec.p);
    result.stability.push_back(en * en +
                               std::pow(lpn, spec.p) / spec.conjugate_q());

    if (opts.write_files && opts.write_vtk) {
      const std::string path = opts.out_dir + "/converge_k" +
                               std::to_string(opts.degree) + "_" + format_p(opts.p) +
                               "_level" + std::to_string(level) + ".vtk";
      write_vtk(*space, u, &est, path);
    }

    if (level + 1 == opts.levels) break;

    // two uniform bisection sweeps halve h and restore the criss-cross layout
    DGFunction carried = u;
    for (int sweep = 0; sweep < 2; ++sweep) {
      std::vector<int> all(mesh->num_cells());
      for (int c = 0; c < mesh->num_cells(); ++c) all[c] = c;
      BisectResult refined = bisect(*mesh, all);
      auto next_mesh = std::make_unique<Mesh>(std::move(refined.mesh));
      auto next_space =
          std::make_unique<DGSpace>(*next_mesh, opts.degree, spec.p, opts.quad_bump);
      DGFunction next = transfer(carried, *next_space, refined.parent);
      carried = std::move(next);
      mesh = std::move(next_mesh);
      space = std::move(next_space);
    }
    initial = std::make_unique<DGFunction>(std::move(carried));
  }

  result.table.compute_eoc();

  if (opts.write_files) {
    std::filesystem::create_directories(opts.out_dir);
    const std::string stem = opts.out_dir + "/converge_k" +
                             std::to_string(opts.degree) + "_" + format_p(opts.p);
    result.csv_path = stem + ".csv";
    result.svg_path = stem + ".svg";
    write_rate_csv(result.table, result.csv_path);
    write_rate_svg(result.table, opts.degree, result.svg_path);
  }
  return result;
}

AdaptRunResult run_adapt(const AdaptRunOptions& opts) {
  const ProblemSpec spec =
      constant_source_problem(opts.p, opts.c_sigma, opts.f_value);
  AdaptConfig cfg;
  cfg.degree = opts.degree;
  cfg.max_iterations = opts.iterations;
  cfg.mark_fraction = opts.mark_fraction;
  cfg.max_dofs = opts.max_dofs;
  cfg.quad_bump = opts.quad_bump;

  AdaptRunResult result;
  if (opts.write_files) std::filesystem::create_directories(opts.out_dir);

  AdaptObserver observer;
  if (opts.write_files && opts.write_vtk) {
    observer = [&](int iter, const DGSpace& space, const DGFunction& u,
                   const EstimatorReport& est) {
      char suffix[32];
      std::snprintf(suffix, sizeof suffix, "_iter%02d.vtk", iter);
      const std::string path = opts.out_dir + "/adapt_" + format_p(opts.p) + suffix;
      write_vtk(space, u, &est, path);
      result.vtk_paths.push_back(path);
    };
  }

  result.run = adapt_loop(spec, cfg, observer);

  if (opts.write_files) {
    result.csv_path = opts.out_dir + "/adapt_" + format_p(opts.p) + ".csv";
    write_adapt_csv(result.run.records, result.csv_path);
  }
  return result;
}

}  // namespace semidg
