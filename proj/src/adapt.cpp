#include "semidg/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace semidg {

std::vector<int> mark(const std::vector<double>& etas, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("mark: fraction must be in (0, 1]");
  for (double e : etas)
    if (!(e >= 0.0)) throw std::invalid_argument("mark: indicators must be >= 0");
  const int n = static_cast<int>(etas.size());
  const int m = static_cast<int>(std::ceil(fraction * n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (etas[a] != etas[b]) return etas[a] > etas[b];
    return a < b;
  });
  order.resize(m);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<int> mark_maximum(const std::vector<double>& etas, double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("mark_maximum: theta must be in (0, 1]");
  double emax = 0.0;
  for (double e : etas) {
    if (!(e >= 0.0))
      throw std::invalid_argument("mark_maximum: indicators must be >= 0");
    emax = std::max(emax, e);
  }
  std::vector<int> marked;
  if (emax == 0.0) return marked;
  for (size_t c = 0; c < etas.size(); ++c)
    if (etas[c] >= theta * emax) marked.push_back(static_cast<int>(c));
  return marked;
}

AdaptResult adapt_loop(const ProblemSpec& spec, const AdaptConfig& config,
                       const AdaptObserver& observer) {
  spec.validate();
  if (config.max_iterations < 1)
    throw std::invalid_argument("adapt_loop: max_iterations must be >= 1");

  AdaptResult result;
  auto mesh = std::make_unique<Mesh>(build_crisscross(1));
  auto space = std::make_unique<DGSpace>(*mesh, config.degree, spec.p, config.quad_bump);
  std::unique_ptr<DGFunction> initial;  // solution carried over from the last mesh

  if (space->total_dofs() > config.max_dofs)
    throw std::invalid_argument("adapt_loop: dof cap below the initial mesh");

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    std::pair<DGFunction, SolveReport> solved = [&]() {
      try {
        return solve(*space, spec, config.newton, initial.get());
      } catch (NonConvergenceError& e) {
        throw NonConvergenceError(
            "adapt iteration " + std::to_string(iter) + ": " + e.what(), e.report);
      }
    }();
    DGFunction& u = solved.first;

    const MeshSizeField sizes = mesh_size(*mesh);
    auto est = std::make_unique<EstimatorReport>(estimate(*space, spec, u, sizes));

    AdaptRecord rec;
    rec.iteration = iter;
    rec.cells = mesh->num_cells();
    rec.dofs = space->total_dofs();
    rec.estimator_total = est->total;
    rec.newton_iterations = solved.second.total_newton_iterations();
    rec.final_residual = solved.second.final_residual;
    for (int f = 0; f < mesh->num_facets(); ++f) {
      const Facet& fac = mesh->facet(f);
      if (fac.boundary) continue;
      const double hp = sizes.h_cell[fac.cells[0]];
      const double hm = sizes.h_cell[fac.cells[1]];
      rec.max_h_ratio = std::max(rec.max_h_ratio, std::max(hp / hm, hm / hp));
    }
    {
      std::vector<double> vals;
      std::vector<std::array<double, 2>> grads;
      const std::vector<double> xr{0.0, 1.0, 0.0}, yr{0.0, 0.0, 1.0};
      for (int c = 0; c < mesh->num_cells(); ++c) {
        evaluate(u, c, xr, yr, vals, grads);
        for (double v : vals) rec.u_max = std::max(rec.u_max, v);
      }
    }
    result.records.push_back(rec);

    if (observer) observer(iter, *space, u, *est);

    bool stop = (iter + 1 == config.max_iterations);
    if (!stop) {
      std::vector<double> indicators(mesh->num_cells());
      for (int c = 0; c < mesh->num_cells(); ++c)
        indicators[c] = est->cell_indicator(c);
      const std::vector<int> marked =
          config.marking == MarkingRule::kMaximumThreshold
              ? mark_maximum(indicators, config.mark_fraction)
              : mark(indicators, config.mark_fraction);
      BisectResult refined = bisect(*mesh, marked);
      auto next_mesh = std::make_unique<Mesh>(std::move(refined.mesh));
      const long next_dofs =
          static_cast<long>(next_mesh->num_cells()) * space->dofs_per_cell();
      if (next_dofs > config.max_dofs) {
        stop = true;
      } else {
        auto next_space = std::make_unique<DGSpace>(*next_mesh, config.degree, spec.p,
                                                    config.quad_bump);
        initial = std::make_unique<DGFunction>(transfer(u, *next_space, refined.parent));
        mesh = std::move(next_mesh);
        space = std::move(next_space);
      }
    }

    if (stop) {
      result.solution = std::make_unique<DGFunction>(std::move(u));
      result.estimator = std::move(est);
      break;
    }
  }

  result.mesh = std::move(mesh);
  result.space = std::move(space);
  return result;
}

}  // namespace semidg
