#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "scthresh/config.hpp"
#include "scthresh/errors.hpp"
#include "scthresh/io.hpp"
#include "scthresh/runner.hpp"

using namespace scthresh;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RunConfig small_exact_config(const std::string& outdir) {
  return parse_config("engine = exact\n"
                      "[model]\nkind = nn\nJ = 1\n"
                      "[lattice]\nd = 2,3\n"
                      "[beta]\nmin = 0\nmax = 0.4\nsteps = 21\n"
                      "[output]\ndirectory = " + outdir + "\nemit_plot_script = true\n");
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 12345.6789e-7, 0.0, -2.5e17}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("run produces curves, crossing report, metadata and plot script") {
  TempDir dir("scthresh_run_test");
  const RunArtifacts artifacts = run(small_exact_config(dir.path.string()));

  REQUIRE(artifacts.curve_files.size() == 2);
  CHECK(fs::exists(artifacts.curve_files[0]));
  CHECK(fs::exists(artifacts.curve_files[1]));
  REQUIRE(!artifacts.report_file.empty());
  CHECK(fs::exists(artifacts.report_file));
  CHECK(fs::exists(artifacts.metadata_file));
  CHECK(fs::exists(artifacts.plot_script_file));

  // CSV header and row count
  const std::string csv = slurp(artifacts.curve_files[0]);
  CHECK(csv.rfind("beta,ReT+,ImT+,ReT-,ImT-,F\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);  // header + 21 points

  // metadata mentions both engines and the predictor
  const std::string meta = slurp(artifacts.metadata_file);
  CHECK(meta.find("\"predictor_beta_c\"") != std::string::npos);
  CHECK(meta.find("\"mu_hat\"") != std::string::npos);

  // report carries a crossing between d=2 and d=3
  const std::string report = slurp(artifacts.report_file);
  CHECK(report.find("\"beta_c\"") != std::string::npos);
}

TEST_CASE("rerunning the same config reproduces identical CSV bytes") {
  TempDir dir_a("scthresh_repro_a");
  TempDir dir_b("scthresh_repro_b");
  const RunArtifacts a = run(small_exact_config(dir_a.path.string()));
  const RunArtifacts b = run(small_exact_config(dir_b.path.string()));
  REQUIRE(a.curve_files.size() == b.curve_files.size());
  for (std::size_t i = 0; i < a.curve_files.size(); ++i) {
    CHECK(slurp(a.curve_files[i]) == slurp(b.curve_files[i]));
  }
}

TEST_CASE("mc runs write the mc schema and reproduce trajectories") {
  TempDir dir_a("scthresh_mc_a");
  TempDir dir_b("scthresh_mc_b");
  auto config_for = [](const std::string& outdir) {
    return parse_config("engine = mc\n"
                        "[model]\nkind = nn\n"
                        "[lattice]\nd = 2\n"
                        "[beta]\nlist = 0.1,0.2\n"
                        "[mc]\nsweeps = 2000\nseed = 4\nchains = 2\nbins = 4\n"
                        "[output]\ndirectory = " + outdir + "\n");
  };
  const RunArtifacts a = run(config_for(dir_a.path.string()));
  const RunArtifacts b = run(config_for(dir_b.path.string()));
  REQUIRE(a.curve_files.size() == 1);
  const std::string csv = slurp(a.curve_files[0]);
  CHECK(csv.rfind("beta,R,R_err,F,F_err,acc_plaquette,acc_sector\n", 0) == 0);
  CHECK(csv == slurp(b.curve_files[0]));
}

TEST_CASE("unwritable output directory raises IoError") {
  TempDir dir("scthresh_blocked");
  const fs::path blocker = dir.path / "file";
  io::write_file(blocker.string(), "x");
  RunConfig config = small_exact_config((blocker / "sub").string());
  CHECK_THROWS_AS(run(config), IoError);
}

TEST_CASE("curve CSVs round-trip through the reader") {
  TempDir dir("scthresh_roundtrip");
  const RunArtifacts artifacts = run(small_exact_config(dir.path.string()));
  const FidelityCurve curve = io::read_curve_csv(artifacts.curve_files[1], 3);
  CHECK(curve.distance == 3);
  REQUIRE(curve.points.size() == 21);
  CHECK(curve.points[0].beta == 0.0);
  CHECK(curve.points[0].fidelity == 1.0);
  CHECK(curve.points.back().beta == 0.4);
  for (const auto& p : curve.points) CHECK(p.fidelity_err == 0.0);
}
