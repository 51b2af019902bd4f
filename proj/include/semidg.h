/* C interface to the semidg solver library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions returning semidg_status report SEMIDG_OK (0) on success; a
 * human-readable description of the last failure on the calling thread is
 * available through semidg_last_error().
 */
#ifndef SEMIDG_H
#define SEMIDG_H

#if defined(__GNUC__) && !defined(SEMIDG_API)
#define SEMIDG_API __attribute__((visibility("default")))
#elif !defined(SEMIDG_API)
#define SEMIDG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum semidg_status {
  SEMIDG_OK = 0,
  SEMIDG_ERR_INVALID_ARG = 1,
  SEMIDG_ERR_NONCONVERGENCE = 2,
  SEMIDG_ERR_LINEAR_SOLVE = 3,
  SEMIDG_ERR_IO = 4,
  SEMIDG_ERR_INTERNAL = 5
} semidg_status;

SEMIDG_API const char* semidg_status_message(semidg_status status);
SEMIDG_API const char* semidg_last_error(void);

/* ---- meshes ---------------------------------------------------------- */

typedef struct semidg_mesh semidg_mesh;

/* Criss-cross triangulation of the unit square (n x n subsquares, four
 * triangles each). */
SEMIDG_API semidg_status semidg_mesh_crisscross(int n, semidg_mesh** out_mesh);

/* Conforming newest-vertex bisection of the marked cells. */
SEMIDG_API semidg_status semidg_mesh_bisect(const semidg_mesh* mesh, const int* marked,
                                 int n_marked, semidg_mesh** out_mesh);

/* Text format: "nv nc nf" header, vertex lines "x y", cell lines
 * "i j k ref_edge gen"; facets are recomputed on load. */
SEMIDG_API semidg_status semidg_mesh_read(const char* path, semidg_mesh** out_mesh);
SEMIDG_API semidg_status semidg_mesh_write(const semidg_mesh* mesh, const char* path);

SEMIDG_API void semidg_mesh_free(semidg_mesh* mesh);

SEMIDG_API int semidg_mesh_num_vertices(const semidg_mesh* mesh);
SEMIDG_API int semidg_mesh_num_cells(const semidg_mesh* mesh);
SEMIDG_API int semidg_mesh_num_facets(const semidg_mesh* mesh);
SEMIDG_API double semidg_mesh_total_area(const semidg_mesh* mesh);

/* Conformity check; returns SEMIDG_OK or SEMIDG_ERR_INVALID_ARG with the
 * violation report in semidg_last_error(). */
SEMIDG_API semidg_status semidg_mesh_check(const semidg_mesh* mesh);

/* ---- experiments ------------------------------------------------------ */

typedef struct semidg_converge_opts {
  int degree;        /* polynomial degree k >= 1 */
  double p;          /* nonlinearity exponent >= 2 */
  int levels;        /* uniform refinement levels >= 2 */
  double c_sigma;    /* penalty constant > 0 */
  int quad_bump;     /* added quadrature degree */
  const char* out_dir;
  int write_vtk;     /* nonzero: VTK per level */
} semidg_converge_opts;

SEMIDG_API void semidg_converge_opts_init(semidg_converge_opts* opts);

/* Manufactured-solution convergence study; writes
 * converge_k{k}_p{p}.csv / .svg under out_dir. */
SEMIDG_API semidg_status semidg_run_converge(const semidg_converge_opts* opts);

typedef struct semidg_adapt_opts {
  int degree;
  double p;
  int iterations;        /* adaptive iterations >= 1 */
  double mark_fraction;  /* maximum-strategy threshold factor, in (0, 1] */
  long max_dofs;
  double c_sigma;
  int quad_bump;
  const char* out_dir;
  int write_vtk;         /* nonzero: VTK per iteration */
} semidg_adapt_opts;

SEMIDG_API void semidg_adapt_opts_init(semidg_adapt_opts* opts);

/* Adaptive run with constant source f = 1000; writes adapt_p{p}.csv and
 * optional per-iteration VTK under out_dir. */
SEMIDG_API semidg_status semidg_run_adapt(const semidg_adapt_opts* opts);

/* Runs the invariant/property suites, printing one line per check to
 * stdout; returns the number of failed checks (0 on full pass, -1 on
 * internal error). */
SEMIDG_API int semidg_selftest(void);

#ifdef __cplusplus
}
#endif

#endif /* SEMIDG_H */
