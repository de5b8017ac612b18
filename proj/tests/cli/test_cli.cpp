// End-to-end checks of the wmoment binary: verbs, config handling, output
// files, manifest bookkeeping, and exit codes. The binary path arrives via
// the WMOMENT_PATH compile definition.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wm/asymptotics.hpp"
#include "wm/potential.hpp"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wm_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(WMOMENT_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing file ", path.string());
  Csv csv;
  std::string line, cell;
  REQUIRE(std::getline(in, line));
  std::stringstream head(line);
  while (std::getline(head, cell, ',')) csv.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream body(line);
    while (std::getline(body, cell, ',')) row.push_back(std::stod(cell));
    REQUIRE(row.size() == csv.header.size());
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

nlohmann::json read_manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  REQUIRE_MESSAGE(in.good(), "missing manifest in ", dir.string());
  nlohmann::json doc;
  in >> doc;
  return doc;
}

// Every file the manifest lists must exist, and apart from the manifest
// itself the directory must contain nothing unlisted.
void check_manifest_closure(const fs::path& dir, const nlohmann::json& manifest) {
  std::set<std::string> listed;
  for (const auto& name : manifest.at("files")) {
    listed.insert(name.get<std::string>());
    CHECK_MESSAGE(fs::exists(dir / name.get<std::string>()),
                  "listed file missing: ", name.get<std::string>());
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    CHECK_MESSAGE(listed.count(name) == 1, "unlisted output file: ", name);
  }
}

}  // namespace

TEST_CASE("equilibrium run stays constant and writes a complete manifest") {
  const fs::path base = fresh_dir("equilibrium");
  const fs::path dir = base / "out";
  const int code = run_cli("run --scenario equilibrium --t-end 0.02 --stride 10 --output-dir " +
                               dir.string(),
                           base / "log.txt");
  CHECK(code == 0);

  const Csv traj = read_csv(dir / "trajectory.csv");
  REQUIRE(traj.header ==
          std::vector<std::string>{"t", "x", "rho", "u", "P", "f3"});
  // two snapshots (t = 0 and t = t_end) over the 64-cell preset grid
  REQUIRE(traj.rows.size() == 2 * 64);
  CHECK(traj.rows.front()[0] == 0.0);
  CHECK(traj.rows.back()[0] == doctest::Approx(0.02).epsilon(1e-12));
  for (const auto& row : traj.rows) {
    CHECK(std::abs(row[2] - 1.0) <= 1e-12); // rho
    CHECK(std::abs(row[3]) <= 1e-12);       // u
    CHECK(std::abs(row[4] - 1.0) <= 1e-12); // P
    CHECK(std::abs(row[5]) <= 1e-12);       // f3
  }

  const Csv diag = read_csv(dir / "diagnostics.csv");
  REQUIRE(diag.header ==
          std::vector<std::string>{"t", "mass", "momentum", "energy", "momentum_residual",
                                   "energy_residual"});
  CHECK(diag.rows.size() >= 2);
  CHECK(diag.rows.front()[1] == doctest::Approx(diag.rows.back()[1]).epsilon(1e-12));

  const auto manifest = read_manifest(dir);
  CHECK(manifest.at("verb") == "run");
  CHECK(manifest.at("exit_code") == 0);
  CHECK(manifest.at("failure").is_null());
  CHECK(manifest.at("config").at("scenario") == "equilibrium");
  std::vector<std::string> files = manifest.at("files");
  std::sort(files.begin(), files.end());
  CHECK(files == std::vector<std::string>{"diagnostics.csv", "trajectory.csv"});
  check_manifest_closure(dir, manifest);
}

TEST_CASE("tunneling run starts from the classical steady profile") {
  const fs::path dir = fresh_dir("tunneling");
  const int code = run_cli(
      "run --scenario bump-tunneling --cells 32 --t-end 0.002 --output-dir " + dir.string(),
      dir / "log.txt");
  CHECK(code == 0);

  const Csv traj = read_csv(dir / "trajectory.csv");
  const auto pot = wm::Potential1D::bump();
  int checked = 0;
  for (const auto& row : traj.rows) {
    if (row[0] != 0.0) continue;
    const auto steady = wm::steady_classical_state(pot, 3, row[1]);
    CHECK(row[2] == doctest::Approx(steady.rho).epsilon(1e-13));
    CHECK(std::abs(row[3]) <= 1e-13);
    CHECK(row[4] == doctest::Approx(2.0 * steady.half_pressure).epsilon(1e-13));
    CHECK(std::abs(row[5]) <= 1e-13);
    ++checked;
  }
  CHECK(checked == 32);
}

TEST_CASE("asymptotics verb tabulates the library prediction") {
  const fs::path dir = fresh_dir("asymptotics");
  const int code = run_cli(
      "asymptotics --scenario bump-tunneling --cells 16 --output-dir " + dir.string(),
      dir / "log.txt");
  CHECK(code == 0);

  const Csv table = read_csv(dir / "asymptotics.csv");
  REQUIRE(table.header ==
          std::vector<std::string>{"x", "rho0", "g", "rho", "u", "P", "f3"});
  REQUIRE(table.rows.size() == 16);
  const auto pot = wm::Potential1D::bump();
  for (const auto& row : table.rows) {
    const double x = row[0];
    const auto prediction = wm::predict(pot, x, 0.05, 1.0);
    CHECK(row[1] == doctest::Approx(std::exp(-pot.derivative(0, x))).epsilon(1e-13));
    CHECK(row[2] == doctest::Approx(wm::g_of_x(pot, x)).epsilon(1e-13));
    CHECK(row[3] == doctest::Approx(prediction.rho).epsilon(1e-13));
    CHECK(row[4] == doctest::Approx(prediction.u).epsilon(1e-13));
    CHECK(row[5] == doctest::Approx(prediction.pressure).epsilon(1e-13));
    CHECK(row[6] == doctest::Approx(prediction.f3).epsilon(1e-13));
  }
}

TEST_CASE("dump-system emits the assembled matrices with labeled columns") {
  const fs::path dir = fresh_dir("dump");
  const int code = run_cli(
      "dump-system --order 3 --rho 1 --u 0 --temperature 1 --potential harmonic:1 "
      "--at 0.3 --output-dir " +
          dir.string(),
      dir / "log.txt");
  CHECK(code == 0);

  const Csv a = read_csv(dir / "system_a.csv");
  REQUIRE(a.header == std::vector<std::string>{"rho", "u", "P/2", "f3"});
  const std::vector<std::vector<double>> expected_a{
      {0.0, 1.0, 0.0, 0.0},
      {0.0, 0.0, 2.0, 0.0},
      {0.0, 1.5, 0.0, 3.0},
      {-0.5, 0.0, 1.0, 0.0},
  };
  REQUIRE(a.rows.size() == 4);
  for (size_t r = 0; r < 4; ++r) {
    for (size_t c = 0; c < 4; ++c) {
      CHECK(a.rows[r][c] == doctest::Approx(expected_a[r][c]).epsilon(1e-15));
    }
  }

  // hbar defaults to zero here, so the source holds exactly the force entry
  // and the relaxation diagonal.
  const Csv g = read_csv(dir / "system_g.csv");
  REQUIRE(g.rows.size() == 4);
  int nonzero = 0;
  for (const auto& row : g.rows) {
    for (double v : row) nonzero += v != 0.0;
  }
  CHECK(nonzero == 2);
  CHECK(g.rows[1][0] == doctest::Approx(-0.3).epsilon(1e-15)); // -V'(0.3)/rho
  CHECK(g.rows[3][3] == doctest::Approx(-1.0).epsilon(1e-15)); // -1/tau

  SUBCASE("higher order grows the matrix with the unknowns") {
    const fs::path dir6 = fresh_dir("dump6");
    REQUIRE(run_cli("dump-system --order 6 --rho 1.2 --u 0.3 --temperature 0.9 "
                    "--coeffs 0.05,-0.02,0.01,0.03 --output-dir " +
                        dir6.string(),
                    dir6 / "log.txt") == 0);
    const Csv a6 = read_csv(dir6 / "system_a.csv");
    REQUIRE(a6.header ==
            std::vector<std::string>{"rho", "u", "P/2", "f3", "f4", "f5", "f6"});
    REQUIRE(a6.rows.size() == 7);
  }

  SUBCASE("three-dimensional dump emits one matrix per direction") {
    const fs::path dir3 = fresh_dir("dump3d");
    REQUIRE(run_cli("dump-system --dimension 3 --order 3 --output-dir " + dir3.string(),
                    dir3 / "log.txt") == 0);
    for (const char* name : {"system_m1.csv", "system_m2.csv", "system_m3.csv",
                             "system_g.csv"}) {
      const Csv m = read_csv(dir3 / name);
      REQUIRE(m.header.size() == 20);
      REQUIRE(m.rows.size() == 20);
    }
    const Csv m1 = read_csv(dir3 / "system_m1.csv");
    CHECK(m1.header[0] == "rho");
    CHECK(m1.header[1] == "u1");
    CHECK(m1.header[4] == "p11/2");
    CHECK(m1.header[5] == "p12");
    CHECK(m1.header[10] == "f300");
  }
}

TEST_CASE("eigen-report certifies the regularized closure reproducibly") {
  const fs::path dir = fresh_dir("eigen");
  const int code = run_cli(
      "eigen-report --order 4 --samples 5 --seed 7 --dimension 1 --output-dir " + dir.string(),
      dir / "log.txt");
  CHECK(code == 0);

  std::ifstream in(dir / "eigen_report.jsonl");
  REQUIRE(in.good());
  std::string line;
  int samples = 0;
  while (std::getline(in, line)) {
    const auto record = nlohmann::json::parse(line);
    CHECK(record.at("order") == 4);
    CHECK(record.at("dimension") == 1);
    CHECK(record.at("sample") == samples);
    CHECK(record.at("hyperbolic") == true);
    CHECK(record.at("max_imag").get<double>() >= 0.0);
    CHECK(record.at("eigenvector_condition").get<double>() < 1e8);
    ++samples;
  }
  CHECK(samples == 5);

  SUBCASE("the same seed reproduces the report byte for byte") {
    const fs::path dir2 = fresh_dir("eigen_again");
    REQUIRE(run_cli("eigen-report --order 4 --samples 5 --seed 7 --dimension 1 --output-dir " +
                        dir2.string(),
                    dir2 / "log.txt") == 0);
    CHECK(slurp(dir / "eigen_report.jsonl") == slurp(dir2 / "eigen_report.jsonl"));
  }

  SUBCASE("all supported orders certify in both dimensions") {
    for (int order = 3; order <= 6; ++order) {
      for (int dimension : {1, 3}) {
        const fs::path d =
            fresh_dir("eigen_" + std::to_string(order) + "_" + std::to_string(dimension));
        CHECK(run_cli("eigen-report --order " + std::to_string(order) + " --samples 3 --seed 1" +
                          " --dimension " + std::to_string(dimension) + " --output-dir " +
                          d.string(),
                      d / "log.txt") == 0);
      }
    }
  }
}

TEST_CASE("config files drive runs and precedence favors flags") {
  const fs::path dir = fresh_dir("config");
  const fs::path config = dir / "run.conf";
  {
    std::ofstream out(config);
    out << "# short tunneling run\n";
    out << "scenario = bump-tunneling\n";
    out << "grid.cells = 16\n";
    out << "solver.t-end = 0.002\n";
    out << "output.dir = " << (dir / "out").string() << "\n";
  }
  const int code = run_cli("run " + config.string() + " --t-end 0.004", dir / "log.txt");
  CHECK(code == 0);

  const auto manifest = read_manifest(dir / "out");
  CHECK(std::stod(manifest.at("config").at("solver.t-end").get<std::string>()) ==
        doctest::Approx(0.004));
  CHECK(manifest.at("config").at("grid.cells") == "16");

  const Csv traj = read_csv(dir / "out" / "trajectory.csv");
  CHECK(traj.rows.back()[0] == doctest::Approx(0.004).epsilon(1e-12));
}

TEST_CASE("configuration problems exit with code 2 and name the offender") {
  const fs::path dir = fresh_dir("config_errors");

  SUBCASE("unknown key in a config file") {
    const fs::path config = dir / "bad.conf";
    std::ofstream(config) << "solver.dt = 0.1\n";
    CHECK(run_cli("run " + config.string(), dir / "log.txt") == 2);
    const std::string log = slurp(dir / "log.txt");
    CHECK(log.find("solver.dt") != std::string::npos);
    CHECK(log.find("bad.conf:1") != std::string::npos);
  }

  SUBCASE("malformed value names its key") {
    CHECK(run_cli("run --scenario equilibrium --cfl 2 --output-dir " + dir.string(),
                  dir / "log.txt") == 2);
    CHECK(slurp(dir / "log.txt").find("solver.cfl") != std::string::npos);
  }

  SUBCASE("order below the supported range") {
    CHECK(run_cli("run --order 2 --output-dir " + dir.string(), dir / "log.txt") == 2);
    CHECK(slurp(dir / "log.txt").find("order") != std::string::npos);
  }

  SUBCASE("missing config file") {
    CHECK(run_cli("run " + (dir / "nope.conf").string(), dir / "log.txt") == 2);
  }

  SUBCASE("unknown verb") {
    CHECK(run_cli("frobnicate", dir / "log.txt") == 2);
  }

  SUBCASE("unknown scenario") {
    CHECK(run_cli("run --scenario warp", dir / "log.txt") == 2);
    CHECK(slurp(dir / "log.txt").find("warp") != std::string::npos);
  }
}

TEST_CASE("runtime failures surface as dedicated exit codes") {
  SUBCASE("solver-path failures exit with code 3") {
    // The bump potential has closed-form derivatives only up to order 13;
    // order 15 needs the 15th derivative for the quantum source.
    const fs::path dir = fresh_dir("fail3");
    CHECK(run_cli("run --scenario bump-tunneling --order 15 --cells 16 --t-end 0.001 "
                  "--output-dir " +
                      dir.string(),
                  dir / "log.txt") == 3);
  }

  SUBCASE("a non-hyperbolic sample under the plain closure exits with code 4") {
    // Seed picked so the sampled coefficient magnitudes cross the
    // hyperbolicity threshold of the unregularized closure; the regularized
    // run over the same seed stays certified.
    const fs::path dir = fresh_dir("fail4");
    const std::string args = "eigen-report --order 6 --samples 40 --seed 3 --dimension 1 ";
    CHECK(run_cli(args + "--closure grad --output-dir " + dir.string(), dir / "log.txt") == 4);

    const auto manifest = read_manifest(dir);
    CHECK(manifest.at("exit_code") == 4);
    CHECK(manifest.at("failure").at("message").get<std::string>().find("hyperbolic") !=
          std::string::npos);

    const fs::path dir_reg = fresh_dir("fail4_reg");
    CHECK(run_cli(args + "--closure regularized --output-dir " + dir_reg.string(),
                  dir_reg / "log.txt") == 0);
  }
}
