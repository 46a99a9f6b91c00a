#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "trivopt/bench.hpp"
#include "trivopt/problems.hpp"

using namespace trivopt;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory under the system temp root, wiped on destruction.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
  std::string file(const std::string& leaf) const {
    return (path / leaf).string();
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("bench_harness") {

TEST_CASE("config files parse with comments, blanks, and field coverage") {
  ScratchDir dir("trivopt_bench_parse");
  write_file(dir.file("a.cfg"),
             "# experiment description\n"
             "problem = rayleigh-sphere\n"
             "\n"
             "n = 12\n"
             "algo = dtriv\n"
             "k = inf\n"
             "opt = rmsprop\n"
             "lr = 0.025\n"
             "iters = 7\n"
             "seed = 99\n"
             "out = runs/trace.csv\n");
  const ExperimentConfig cfg = parse_config_file(dir.file("a.cfg"));
  CHECK(cfg.problem == "rayleigh-sphere");
  CHECK(cfg.n == 12);
  CHECK(cfg.algo == "dtriv");
  CHECK(cfg.k == 0);  // the written horizon was "inf"
  CHECK(cfg.opt == "rmsprop");
  CHECK(cfg.lr == doctest::Approx(0.025));
  CHECK(cfg.iters == 7);
  CHECK(cfg.seed == 99);
  CHECK(cfg.out == "runs/trace.csv");
}

TEST_CASE("config parsing rejects malformed input") {
  ScratchDir dir("trivopt_bench_badcfg");
  CHECK_THROWS_AS(parse_config_file(dir.file("missing.cfg")), IoError);

  write_file(dir.file("b.cfg"), "problem procrustes\n");
  CHECK_THROWS_AS(parse_config_file(dir.file("b.cfg")), ConfigError);

  write_file(dir.file("c.cfg"), "wavelength = 7\n");
  CHECK_THROWS_AS(parse_config_file(dir.file("c.cfg")), ConfigError);

  write_file(dir.file("d.cfg"), "lr = fast\n");
  CHECK_THROWS_AS(parse_config_file(dir.file("d.cfg")), ConfigError);

  write_file(dir.file("e.cfg"), "iters = -4\n");
  CHECK_THROWS_AS(parse_config_file(dir.file("e.cfg")), ConfigError);

  write_file(dir.file("f.cfg"), "= 3\n");
  CHECK_THROWS_AS(parse_config_file(dir.file("f.cfg")), ConfigError);
}

TEST_CASE("overrides apply in place and reject garbage") {
  ExperimentConfig cfg;
  apply_override(cfg, "lr=0.5");
  CHECK(cfg.lr == doctest::Approx(0.5));
  apply_override(cfg, "k=inf");
  CHECK(cfg.k == 0);
  apply_override(cfg, "algo=rgd-momentum");
  CHECK(cfg.algo == "rgd-momentum");
  CHECK_THROWS_AS(apply_override(cfg, "lr"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "n=three"), ConfigError);
}

TEST_CASE("cross-field validation catches incompatible settings") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  cfg.problem = "travelling-salesman";
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.algo = "bfgs";
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.opt = "lion";
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.retraction = "cayley";  // only the plain-gradient family supports it
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.algo = "rgd";
  CHECK_NOTHROW(validate_config(cfg));
  cfg = ExperimentConfig{};
  cfg.lr = -0.1;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.beta2 = 1.0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("starting points are reproducible functions of the seed") {
  const Problem pb = build_problem("procrustes", 5, 40);
  const Point a = starting_point(pb, 40);
  const Point b = starting_point(pb, 40);
  const Point c = starting_point(pb, 41);
  CHECK((a.coords - b.coords).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.coords - c.coords).norm() > 1e-3);
}

TEST_CASE("zero-iteration experiments emit a header-only trace") {
  ScratchDir dir("trivopt_bench_zero");
  ExperimentConfig cfg;
  cfg.problem = "procrustes";
  cfg.n = 4;
  cfg.algo = "rgd";
  cfg.iters = 0;
  cfg.seed = 3;
  cfg.out = dir.file("zero.csv");
  RunRecord rec;
  const SummaryRow row = run_experiment(cfg, &rec);
  CHECK(read_file(cfg.out) ==
        "iter_outer,iter_inner,f,grad_norm,step_dist,restarts\n");
  CHECK(row.status == "ok");
  const Problem pb = build_problem("procrustes", 4, 3);
  const Point p0 = starting_point(pb, 3);
  CHECK(row.final_f == doctest::Approx(pb.objective(p0.coords)).epsilon(1e-15));
}

TEST_CASE("summary values recompute from the terminal point") {
  ExperimentConfig cfg;
  cfg.problem = "procrustes";
  cfg.n = 4;
  cfg.algo = "atriv";
  cfg.k = 1;
  cfg.opt = "adam";
  cfg.lr = 1e-2;
  cfg.iters = 200;
  cfg.seed = 8;
  cfg.out.clear();
  RunRecord rec;
  const SummaryRow row = run_experiment(cfg, &rec);
  const Problem pb = build_problem("procrustes", 4, 8);
  CHECK(std::abs(row.final_f - pb.objective(rec.terminal.coords)) <= 1e-12);
  REQUIRE(pb.known_optimum.has_value());
  CHECK(row.gap == doctest::Approx(rec.best_f - *pb.known_optimum).epsilon(1e-15));
  if (row.iters_to_gap > 0) {
    const std::size_t hit = static_cast<std::size_t>(row.iters_to_gap) - 1;
    CHECK(rec.rows[hit].f - *pb.known_optimum <= 1e-6);
    for (std::size_t t = 0; t < hit; ++t) {
      CHECK(rec.rows[t].f - *pb.known_optimum > 1e-6);
    }
  }
}

TEST_CASE("traces are byte-identical across repeated runs") {
  ScratchDir dir("trivopt_bench_repeat");
  ExperimentConfig cfg;
  cfg.problem = "rayleigh-sphere";
  cfg.n = 6;
  cfg.algo = "atriv";
  cfg.k = 2;
  cfg.opt = "adam";
  cfg.iters = 60;
  cfg.seed = 5;
  cfg.out = dir.file("first.csv");
  run_experiment(cfg);
  cfg.out = dir.file("second.csv");
  run_experiment(cfg);
  CHECK(read_file(dir.file("first.csv")) == read_file(dir.file("second.csv")));
  // Spot-check the schema line.
  const std::string content = read_file(dir.file("first.csv"));
  CHECK(content.rfind("iter_outer,iter_inner,f,grad_norm,step_dist,restarts\n",
                      0) == 0);
  CHECK(content.find('\r') == std::string::npos);
}

TEST_CASE("decimal rendering round-trips doubles") {
  for (const double x :
       {0.1, -3.14159265358979, 1e-300, 5.0e17, 123456.789, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("summary table renders special cells") {
  ScratchDir dir("trivopt_bench_summary");
  SummaryRow row;
  row.problem = "procrustes";
  row.n = 4;
  row.algo = "dtriv";
  row.k = 0;  // infinite horizon renders as "inf"
  row.opt = "sgd";
  row.lr = 0.5;
  row.iters = 3;
  row.seed = 77;
  row.status = "aborted: expm failed, badly";
  row.final_f = 1.5;
  row.best_f = 1.25;
  row.gap = std::numeric_limits<double>::quiet_NaN();
  row.iters_to_gap = -1;
  row.restarts = 2;
  row.wall_time_s = 0.25;
  write_summary_csv(dir.file("summary.csv"), {row});
  const std::string content = read_file(dir.file("summary.csv"));
  CHECK(content.find(",inf,") != std::string::npos);
  // Commas inside the status message must not add columns.
  CHECK(content.find("aborted: expm failed; badly") != std::string::npos);
  // NaN gap and never-reached threshold render as empty cells.
  CHECK(content.find("1.25,,,2,") != std::string::npos);
  CHECK(content.rfind("problem,n,algo,k,opt,lr,iters,seed,status,final_f,"
                      "best_f,gap,iters_to_1e-6,restarts,wall_time_s\n",
                      0) == 0);
}

TEST_CASE("grids isolate failures and order rows deterministically") {
  std::vector<ExperimentConfig> configs;
  ExperimentConfig good;
  good.problem = "procrustes";
  good.n = 3;
  good.algo = "rgd";
  good.iters = 5;
  good.seed = 2;
  good.out.clear();
  ExperimentConfig bad = good;
  bad.problem = "no-such-problem";
  ExperimentConfig second = good;
  second.algo = "atriv";
  second.k = 0;
  ExperimentConfig third = good;
  third.algo = "atriv";
  third.k = 1;
  configs = {bad, good, second, third};
  const std::vector<SummaryRow> rows = run_grid(configs);
  REQUIRE(rows.size() == 4);
  // Sorted by (problem, algo, horizon): the failed config's echo sorts by the
  // same key, and the infinite horizon sorts after every finite one.
  CHECK(rows[0].problem == "no-such-problem");
  CHECK(rows[0].status.rfind("error:", 0) == 0);
  CHECK(rows[1].algo == "atriv");
  CHECK(rows[1].k == 1);
  CHECK(rows[2].algo == "atriv");
  CHECK(rows[2].k == 0);
  CHECK(rows[3].algo == "rgd");
  CHECK(rows[3].status == "ok");
  CHECK_THROWS_AS(run_grid({}), ConfigError);
}

TEST_CASE("directory grids default trace paths and write the summary") {
  ScratchDir dir("trivopt_bench_grid");
  write_file(dir.file("01_rgd.cfg"),
             "problem = procrustes\nn = 3\nalgo = rgd\niters = 5\nseed = 4\n");
  write_file(dir.file("02_atriv.cfg"),
             "problem = procrustes\nn = 3\nalgo = atriv\nk = 1\niters = 5\n"
             "seed = 4\nout = nested/custom.csv\n");
  const std::vector<SummaryRow> rows = run_grid_dir(dir.path.string());
  CHECK(rows.size() == 2);
  CHECK(fs::exists(dir.path / "summary.csv"));
  CHECK(fs::exists(dir.path / "01_rgd_trace.csv"));
  // A relative out path lands inside the grid directory, creating folders.
  CHECK(fs::exists(dir.path / "nested" / "custom.csv"));
  for (const SummaryRow& row : rows) CHECK(row.status == "ok");
}

TEST_CASE("directory grid errors are explicit") {
  CHECK_THROWS_AS(run_grid_dir("/definitely/not/a/real/path"), IoError);
  ScratchDir dir("trivopt_bench_emptygrid");
  CHECK_THROWS_AS(run_grid_dir(dir.path.string()), ConfigError);
}

TEST_CASE("command dispatcher maps argument problems to exit codes") {
  ScratchDir dir("trivopt_bench_cli");
  write_file(dir.file("run.cfg"),
             "problem = procrustes\nn = 3\nalgo = rgd\niters = 4\nseed = 6\n");
  const std::string out = dir.file("cli_trace.csv");
  CHECK(bench_main({"run", dir.file("run.cfg"), "--iters", "2", "--out", out}) == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(dir.file("cli_trace_summary.csv")));
  CHECK(bench_main({"run", dir.file("run.cfg"), "--iters=2", "--out", out}) == 0);
  CHECK(bench_main({"run", dir.file("missing.cfg")}) == 2);
  CHECK(bench_main({"run", dir.file("run.cfg"), "--lr", "bogus"}) == 3);
  CHECK(bench_main({"run", dir.file("run.cfg"), "--cheat", "1"}) == 3);
  CHECK(bench_main({"launch"}) == 3);
  CHECK(bench_main({}) == 3);
}

TEST_CASE("single-config grid matches the standalone run") {
  ExperimentConfig cfg;
  cfg.problem = "rayleigh-sphere";
  cfg.n = 5;
  cfg.algo = "rgd";
  cfg.lr = 0.1;
  cfg.iters = 40;
  cfg.seed = 12;
  cfg.out.clear();
  const SummaryRow alone = run_experiment(cfg);
  const std::vector<SummaryRow> grid = run_grid({cfg});
  REQUIRE(grid.size() == 1);
  CHECK(grid[0].final_f == alone.final_f);
  CHECK(grid[0].best_f == alone.best_f);
  CHECK(grid[0].status == alone.status);
}

}  // TEST_SUITE
