#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbpg/cli.hpp"
#include "bbpg/errors.hpp"

using namespace bbpg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_config: study defaults reproduce the coupling") {
  const RunConfig c = parse_config({"study", "--levels", "1..4"});
  CHECK(c.command == Command::study);
  CHECK(c.level_min == 1);
  CHECK(c.level_max == 4);
  CHECK_FALSE(c.alpha.has_value());  // per-level alpha = 2^(-2l)
  CHECK(c.t0 == 1e-5);
  CHECK(c.max_iter == 500);
  CHECK_FALSE(c.parallel_levels);
}

TEST_CASE("parse_config: rejections") {
  CHECK_THROWS_AS(parse_config({"solve", "--level", "3", "--alpha", "0"}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config({"frobnicate"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"solve", "--no-such-flag"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"study", "--levels", "4"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"study", "--levels", "4..2"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"solve", "--t0", "-1"}), ConfigError);
}

TEST_CASE("parse_config: json file under flag precedence") {
  const fs::path dir = fresh_dir("bbpg_cli_cfg");
  const fs::path cfg = dir / "run.json";
  {
    std::ofstream out(cfg);
    out << R"({"t0": 0.001, "max_iter": 9, "out": "from_file"})";
  }
  const RunConfig file_only =
      parse_config({"solve", "--config", cfg.string()});
  CHECK(file_only.t0 == 0.001);
  CHECK(file_only.max_iter == 9);
  CHECK(file_only.out_dir == "from_file");

  const RunConfig overridden = parse_config(
      {"solve", "--config", cfg.string(), "--t0", "0.01", "--out", "cli_dir"});
  CHECK(overridden.t0 == 0.01);
  CHECK(overridden.max_iter == 9);
  CHECK(overridden.out_dir == "cli_dir");

  {
    std::ofstream out(cfg);
    out << R"({"mystery_knob": 3})";
  }
  CHECK_THROWS_AS(parse_config({"solve", "--config", cfg.string()}),
                  ConfigError);

  {
    std::ofstream out(cfg);
    out << "{not json";
  }
  CHECK_THROWS_AS(parse_config({"solve", "--config", cfg.string()}),
                  ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("run_cli exit codes") {
  const char* no_args[] = {"bangbang_pg"};
  CHECK(run_cli(1, no_args) == 2);

  const char* bad_alpha[] = {"bangbang_pg", "solve", "--alpha", "0"};
  CHECK(run_cli(4, bad_alpha) == 2);

  // Solver failure surfaces as exit code 3.
  const fs::path dir = fresh_dir("bbpg_cli_solver");
  const std::string out = dir.string();
  const char* stuck[] = {"bangbang_pg", "solve",      "--level", "3",
                         "--max-iter",  "1",          "--out",   out.c_str()};
  CHECK(run_cli(8, stuck) == 3);
  fs::remove_all(dir);
}

TEST_CASE("solve runs are byte-identical") {
  const fs::path dir_a = fresh_dir("bbpg_cli_run_a");
  const fs::path dir_b = fresh_dir("bbpg_cli_run_b");

  RunConfig config = parse_config({"solve", "--level", "1"});
  config.out_dir = dir_a.string();
  CHECK(main_dispatch(config) == 0);
  config.out_dir = dir_b.string();
  CHECK(main_dispatch(config) == 0);

  CHECK(slurp(dir_a / "trajectory.csv") == slurp(dir_b / "trajectory.csv"));
  CHECK(fs::exists(dir_a / "metadata.json"));
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("output dir falls back to the environment variable") {
  const fs::path dir = fresh_dir("bbpg_cli_envdir");
  setenv("BANGBANG_PG_OUT", dir.c_str(), 1);
  const RunConfig c = parse_config({"solve", "--level", "1"});
  CHECK(c.out_dir == dir.string());
  unsetenv("BANGBANG_PG_OUT");
  const RunConfig d = parse_config({"solve", "--level", "1"});
  CHECK(d.out_dir == "out");
  fs::remove_all(dir);
}

TEST_CASE("diagnose-kappa --analytic writes the measure table") {
  const fs::path dir = fresh_dir("bbpg_cli_kappa");
  RunConfig config = parse_config({"diagnose-kappa", "--analytic"});
  CHECK(config.analytic);
  config.out_dir = dir.string();
  CHECK(main_dispatch(config) == 0);
  const std::string csv = slurp(dir / "measure.csv");
  CHECK(csv.rfind("alpha,measure\n", 0) == 0);
  fs::remove_all(dir);
}
