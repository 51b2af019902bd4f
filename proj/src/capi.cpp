#include "semidg.h"

#include <fstream>
#include <iostream>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "semidg/checks.hpp"
#include "semidg/harness.hpp"
#include "semidg/mesh.hpp"
#include "semidg/solver.hpp"

struct semidg_mesh {
  semidg::Mesh impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
semidg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SEMIDG_ERR_INVALID_ARG;
  } catch (const semidg::NonConvergenceError& e) {
    set_error(e.what());
    return SEMIDG_ERR_NONCONVERGENCE;
  } catch (const semidg::LinearSolveError& e) {
    set_error(e.what());
    return SEMIDG_ERR_LINEAR_SOLVE;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SEMIDG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SEMIDG_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* semidg_status_message(semidg_status status) {
  switch (status) {
    case SEMIDG_OK: return "ok";
    case SEMIDG_ERR_INVALID_ARG: return "invalid argument";
    case SEMIDG_ERR_NONCONVERGENCE: return "nonlinear solver did not converge";
    case SEMIDG_ERR_LINEAR_SOLVE: return "linear solver failed";
    case SEMIDG_ERR_IO: return "i/o error";
    case SEMIDG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* semidg_last_error(void) { return g_last_error.c_str(); }

semidg_status semidg_mesh_crisscross(int n, semidg_mesh** out_mesh) {
  if (out_mesh == nullptr) {
    set_error("out_mesh is null");
    return SEMIDG_ERR_INVALID_ARG;
  }
  *out_mesh = nullptr;
  return guarded([&]() {
    *out_mesh = new semidg_mesh{semidg::build_crisscross(n)};
    return SEMIDG_OK;
  });
}

semidg_status semidg_mesh_bisect(const semidg_mesh* mesh, const int* marked,
                                 int n_marked, semidg_mesh** out_mesh) {
  if (mesh == nullptr || out_mesh == nullptr || (n_marked > 0 && marked == nullptr)) {
    set_error("null argument");
    return SEMIDG_ERR_INVALID_ARG;
  }
  *out_mesh = nullptr;
  return guarded([&]() {
    std::vector<int> m(marked, marked + n_marked);
    semidg::BisectResult r = semidg::bisect(mesh->impl, m);
    *out_mesh = new semidg_mesh{std::move(r.mesh)};
    return SEMIDG_OK;
  });
}

semidg_status semidg_mesh_read(const char* path, semidg_mesh** out_mesh) {
  if (path == nullptr || out_mesh == nullptr) {
    set_error("null argument");
    return SEMIDG_ERR_INVALID_ARG;
  }
  *out_mesh = nullptr;
  std::ifstream in(path);
  if (!in) {
    set_error(std::string("cannot open ") + path);
    return SEMIDG_ERR_IO;
  }
  return guarded([&]() {
    *out_mesh = new semidg_mesh{semidg::read_mesh(in)};
    return SEMIDG_OK;
  });
}

semidg_status semidg_mesh_write(const semidg_mesh* mesh, const char* path) {
  if (mesh == nullptr || path == nullptr) {
    set_error("null argument");
    return SEMIDG_ERR_INVALID_ARG;
  }
  std::ofstream out(path);
  if (!out) {
    set_error(std::string("cannot open ") + path);
    return SEMIDG_ERR_IO;
  }
  return guarded([&]() {
    semidg::write_mesh(mesh->impl, out);
    return out ? SEMIDG_OK : SEMIDG_ERR_IO;
  });
}

void semidg_mesh_free(semidg_mesh* mesh) { delete mesh; }

int semidg_mesh_num_vertices(const semidg_mesh* mesh) {
  return mesh ? mesh->impl.num_vertices() : -1;
}

int semidg_mesh_num_cells(const semidg_mesh* mesh) {
  return mesh ? mesh->impl.num_cells() : -1;
}

int semidg_mesh_num_facets(const semidg_mesh* mesh) {
  return mesh ? mesh->impl.num_facets() : -1;
}

double semidg_mesh_total_area(const semidg_mesh* mesh) {
  return mesh ? mesh->impl.total_area() : -1.0;
}

semidg_status semidg_mesh_check(const semidg_mesh* mesh) {
  if (mesh == nullptr) {
    set_error("null mesh");
    return SEMIDG_ERR_INVALID_ARG;
  }
  const std::string report = semidg::check_mesh(mesh->impl);
  if (report.empty()) return SEMIDG_OK;
  set_error(report);
  return SEMIDG_ERR_INVALID_ARG;
}

void semidg_converge_opts_init(semidg_converge_opts* opts) {
  if (opts == nullptr) return;
  opts->degree = 1;
  opts->p = 4.0;
  opts->levels = 5;
  opts->c_sigma = 10.0;
  opts->quad_bump = 0;
  opts->out_dir = ".";
  opts->write_vtk = 0;
}

semidg_status semidg_run_converge(const semidg_converge_opts* opts) {
  if (opts == nullptr || opts->out_dir == nullptr) {
    set_error("null options");
    return SEMIDG_ERR_INVALID_ARG;
  }
  return guarded([&]() {
    semidg::ConvergeOptions o;
    o.degree = opts->degree;
    o.p = opts->p;
    o.levels = opts->levels;
    o.c_sigma = opts->c_sigma;
    o.quad_bump = opts->quad_bump;
    o.out_dir = opts->out_dir;
    o.write_vtk = opts->write_vtk != 0;
    semidg::run_converge(o);
    return SEMIDG_OK;
  });
}

void semidg_adapt_opts_init(semidg_adapt_opts* opts) {
  if (opts == nullptr) return;
  opts->degree = 1;
  opts->p = 2.0;
  opts->iterations = 13;
  opts->mark_fraction = 0.5;
  opts->max_dofs = 2000000L;
  opts->c_sigma = 10.0;
  opts->quad_bump = 0;
  opts->out_dir = ".";
  opts->write_vtk = 1;
}

semidg_status semidg_run_adapt(const semidg_adapt_opts* opts) {
  if (opts == nullptr || opts->out_dir == nullptr) {
    set_error("null options");
    return SEMIDG_ERR_INVALID_ARG;
  }
  return guarded([&]() {
    semidg::AdaptRunOptions o;
    o.degree = opts->degree;
    o.p = opts->p;
    o.iterations = opts->iterations;
    o.mark_fraction = opts->mark_fraction;
    o.max_dofs = opts->max_dofs;
    o.c_sigma = opts->c_sigma;
    o.quad_bump = opts->quad_bump;
    o.out_dir = opts->out_dir;
    o.write_vtk = opts->write_vtk != 0;
    semidg::run_adapt(o);
    return SEMIDG_OK;
  });
}

int semidg_selftest(void) {
  try {
    return semidg::run_selftest(std::cout);
  } catch (const std::exception& e) {
    set_error(e.what());
    return -1;
  }
}

}  // extern "C"
