#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "semidg.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "semidg_capi_test") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("selftest runs clean through the C API") {
  CHECK(semidg_selftest() == 0);
}

TEST_CASE("status messages") {
  CHECK(std::string(semidg_status_message(SEMIDG_OK)) == "ok");
  CHECK(std::string(semidg_status_message(SEMIDG_ERR_NONCONVERGENCE)) ==
        "nonlinear solver did not converge");
}

TEST_CASE("mesh lifecycle through the C API") {
  semidg_mesh* mesh = nullptr;
  REQUIRE(semidg_mesh_crisscross(2, &mesh) == SEMIDG_OK);
  REQUIRE(mesh != nullptr);
  CHECK(semidg_mesh_num_cells(mesh) == 16);
  CHECK(semidg_mesh_num_vertices(mesh) == 13);
  CHECK(semidg_mesh_total_area(mesh) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(semidg_mesh_check(mesh) == SEMIDG_OK);

  const int marked[2] = {0, 3};
  semidg_mesh* fine = nullptr;
  REQUIRE(semidg_mesh_bisect(mesh, marked, 2, &fine) == SEMIDG_OK);
  CHECK(semidg_mesh_num_cells(fine) > 16);
  CHECK(semidg_mesh_check(fine) == SEMIDG_OK);

  semidg_mesh_free(fine);
  semidg_mesh_free(mesh);
}

TEST_CASE("invalid arguments set an error") {
  semidg_mesh* mesh = nullptr;
  CHECK(semidg_mesh_crisscross(0, &mesh) == SEMIDG_ERR_INVALID_ARG);
  CHECK(mesh == nullptr);
  CHECK(std::string(semidg_last_error()).find("n must be >= 1") != std::string::npos);
  CHECK(semidg_mesh_crisscross(2, nullptr) == SEMIDG_ERR_INVALID_ARG);

  REQUIRE(semidg_mesh_crisscross(1, &mesh) == SEMIDG_OK);
  const int bad[1] = {99};
  semidg_mesh* out = nullptr;
  CHECK(semidg_mesh_bisect(mesh, bad, 1, &out) == SEMIDG_ERR_INVALID_ARG);
  CHECK(out == nullptr);
  semidg_mesh_free(mesh);
}

TEST_CASE("mesh file round trip") {
  TempDir tmp;
  const std::string path = (tmp.path / "mesh.txt").string();

  semidg_mesh* mesh = nullptr;
  REQUIRE(semidg_mesh_crisscross(3, &mesh) == SEMIDG_OK);
  REQUIRE(semidg_mesh_write(mesh, path.c_str()) == SEMIDG_OK);

  semidg_mesh* back = nullptr;
  REQUIRE(semidg_mesh_read(path.c_str(), &back) == SEMIDG_OK);
  CHECK(semidg_mesh_num_cells(back) == semidg_mesh_num_cells(mesh));
  CHECK(semidg_mesh_num_vertices(back) == semidg_mesh_num_vertices(mesh));
  CHECK(semidg_mesh_num_facets(back) == semidg_mesh_num_facets(mesh));

  semidg_mesh_free(back);
  semidg_mesh_free(mesh);

  semidg_mesh* missing = nullptr;
  CHECK(semidg_mesh_read((tmp.path / "nope.txt").string().c_str(), &missing) ==
        SEMIDG_ERR_IO);
}

TEST_CASE("converge experiment through the C API") {
  TempDir tmp;
  semidg_converge_opts opts;
  semidg_converge_opts_init(&opts);
  CHECK(opts.levels == 5);
  CHECK(opts.c_sigma == 10.0);
  opts.degree = 1;
  opts.p = 2.0;
  opts.levels = 2;
  const std::string out_dir = (tmp.path / "conv").string();
  opts.out_dir = out_dir.c_str();
  REQUIRE(semidg_run_converge(&opts) == SEMIDG_OK);
  CHECK(fs::exists(tmp.path / "conv" / "converge_k1_p2.csv"));
  CHECK(fs::exists(tmp.path / "conv" / "converge_k1_p2.svg"));

  opts.p = 1.0;  // invalid exponent
  CHECK(semidg_run_converge(&opts) == SEMIDG_ERR_INVALID_ARG);
  CHECK(semidg_run_converge(nullptr) == SEMIDG_ERR_INVALID_ARG);
}

TEST_CASE("solver failures surface as status codes") {
  TempDir tmp;
  semidg_converge_opts opts;
  semidg_converge_opts_init(&opts);
  opts.degree = 2;
  opts.levels = 2;
  opts.c_sigma = 0.01;  // far below the coercivity threshold
  const std::string out_dir = (tmp.path / "fail").string();
  opts.out_dir = out_dir.c_str();
  const semidg_status st = semidg_run_converge(&opts);
  CHECK((st == SEMIDG_ERR_LINEAR_SOLVE || st == SEMIDG_ERR_NONCONVERGENCE));
  CHECK(std::string(semidg_last_error()).size() > 0);
}

TEST_CASE("adapt experiment through the C API") {
  TempDir tmp;
  semidg_adapt_opts opts;
  semidg_adapt_opts_init(&opts);
  CHECK(opts.iterations == 13);
  CHECK(opts.mark_fraction == 0.5);
  CHECK(opts.max_dofs == 2000000L);
  opts.degree = 1;
  opts.p = 4.0;
  opts.iterations = 2;
  const std::string out_dir = (tmp.path / "adapt").string();
  opts.out_dir = out_dir.c_str();
  REQUIRE(semidg_run_adapt(&opts) == SEMIDG_OK);
  CHECK(fs::exists(tmp.path / "adapt" / "adapt_p4.csv"));
  CHECK(fs::exists(tmp.path / "adapt" / "adapt_p4_iter00.vtk"));
  CHECK(fs::exists(tmp.path / "adapt" / "adapt_p4_iter01.vtk"));

  opts.mark_fraction = 0.0;
  CHECK(semidg_run_adapt(&opts) == SEMIDG_ERR_INVALID_ARG);
}
