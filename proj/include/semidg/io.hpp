#pragma once

#include <string>
#include <vector>

#include "semidg/adapt.hpp"
#include "semidg/dgspace.hpp"
#include "semidg/estimator.hpp"

namespace semidg {

// Per-level convergence data; eoc rows sit between consecutive levels.
struct RateRow {
  int level = 0;
  int cells = 0;
  long dofs = 0;
  double h_max = 0.0;
  double enorm_err = 0.0;
  double lp_err = 0.0;
  double quasinorm_err = 0.0;
  double l2_err = 0.0;
  double estimator_total = 0.0;
  double effectivity = 0.0;
};

struct RateTable {
  std::vector<RateRow> rows;
  // eoc[i] pairs rows i and i+1: enorm, lp, quasinorm, l2, estimator
  std::vector<std::array<double, 5>> eoc;

  void compute_eoc();
};

// Fixed column order (downstream parsers are positional):
// level,cells,dofs,h_max,enorm_err,lp_err,quasinorm_err,l2_err,
// estimator_total,effectivity,eoc_enorm,eoc_lp,eoc_quasinorm,eoc_l2,
// eoc_estimator. Numbers carry 12 significant digits; the first row's EOC
// fields are empty.
void write_rate_csv(const RateTable& table, const std::string& path);
RateTable read_rate_csv(const std::string& path);
std::string rate_csv_string(const RateTable& table);
RateTable parse_rate_csv_string(const std::string& text);

// Self-contained log-log SVG: one polyline per error measure plus labeled
// reference slopes h^k and h^(k+1).
void write_rate_svg(const RateTable& table, int degree, const std::string& path);

// adapt trace: iteration,cells,dofs,estimator,newton_iters
void write_adapt_csv(const std::vector<AdaptRecord>& records, const std::string& path);

// Legacy ASCII VTK unstructured grid with cell data: solution means and the
// estimator fields eta_R2 / eta_J2.
void write_vtk(const DGSpace& space, const DGFunction& u, const EstimatorReport* est,
               const std::string& path);

}  // namespace semidg
