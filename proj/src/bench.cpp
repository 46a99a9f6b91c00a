#include "trivopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <tuple>

#include "trivopt/matfun.hpp"
#include "trivopt/problems.hpp"

namespace trivopt {
namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::int64_t x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + value + "' is not an integer");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t x = std::stoull(value, &used);
    if (used != value.size() || value.find('-') != std::string::npos) {
      throw std::invalid_argument(value);
    }
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + value +
                      "' is not a non-negative integer");
  }
}

/// Applies one key/value pair; reports whether the key was "out" so grid mode
/// can substitute its per-config default only when the file left it unset.
void set_field(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "problem") {
    cfg.problem = value;
  } else if (key == "n") {
    const std::int64_t n = parse_int(key, value);
    if (n < 2 || n > 512) throw ConfigError("config key 'n': out of range");
    cfg.n = static_cast<int>(n);
  } else if (key == "algo") {
    cfg.algo = value;
  } else if (key == "k") {
    if (value == "inf") {
      cfg.k = 0;  // horizon 0 encodes the single-chart schedule
    } else {
      const std::int64_t k = parse_int(key, value);
      if (k < 0 || k > std::numeric_limits<int>::max()) {
        throw ConfigError("config key 'k': out of range");
      }
      cfg.k = static_cast<int>(k);
    }
  } else if (key == "opt") {
    cfg.opt = value;
  } else if (key == "lr") {
    cfg.lr = parse_double(key, value);
  } else if (key == "mu") {
    cfg.mu = parse_double(key, value);
  } else if (key == "beta1") {
    cfg.beta1 = parse_double(key, value);
  } else if (key == "beta2") {
    cfg.beta2 = parse_double(key, value);
  } else if (key == "eps") {
    cfg.eps = parse_double(key, value);
  } else if (key == "retraction") {
    cfg.retraction = value;
  } else if (key == "iters") {
    const std::int64_t it = parse_int(key, value);
    if (it < 0) throw ConfigError("config key 'iters': must be >= 0");
    cfg.iters = it;
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

struct ParsedConfig {
  ExperimentConfig cfg;
  bool out_was_set = false;
};

ParsedConfig parse_config_file_impl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  ParsedConfig parsed;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    }
    set_field(parsed.cfg, key, value);
    if (key == "out") parsed.out_was_set = true;
  }
  return parsed;
}

std::string sanitize_csv_cell(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

void create_parent_dirs(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) {
      throw IoError("cannot create directory '" + parent.string() + "': " +
                    ec.message());
    }
  }
}

Retraction retraction_from_name(const std::string& name) {
  if (name == "exp") return Retraction::Exponential;
  if (name == "cayley") return Retraction::Cayley;
  throw ConfigError("unknown retraction '" + name + "' (expected exp or cayley)");
}

/// Sort key for deterministic grid output: (problem, algo, horizon with the
/// single-chart schedule last, optimizer, n, seed); stable sort keeps input
/// order for full ties.
std::tuple<std::string, std::string, long long, std::string, int, std::uint64_t>
grid_sort_key(const SummaryRow& row) {
  const long long k_key =
      row.k == 0 ? std::numeric_limits<long long>::max() : row.k;
  return {row.problem, row.algo, k_key, row.opt, row.n, row.seed};
}

int checks_failed = 0;

void check(bool ok, const char* name) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
  if (!ok) ++checks_failed;
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
  return parse_config_file_impl(path).cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  }
  set_field(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.problem != "procrustes" && cfg.problem != "rayleigh-sphere" &&
      cfg.problem != "geodesic-distance") {
    throw ConfigError("unknown problem '" + cfg.problem + "'");
  }
  if (cfg.n < 2) throw ConfigError("n must be >= 2");
  const bool is_rgd_family = cfg.algo == "rgd" || cfg.algo == "rgd-momentum" ||
                             cfg.algo == "rgd-full-history";
  if (cfg.algo != "atriv" && cfg.algo != "dtriv" && !is_rgd_family) {
    throw ConfigError("unknown algo '" + cfg.algo +
                      "' (expected atriv, dtriv, rgd, rgd-momentum, or "
                      "rgd-full-history)");
  }
  if (cfg.k < 0) throw ConfigError("k must be >= 0 (0 means the infinite horizon)");
  optimizer_rule_from_name(cfg.opt);  // throws on unknown names
  if (!(cfg.lr > 0.0) || !std::isfinite(cfg.lr)) {
    throw ConfigError("lr must be positive and finite");
  }
  if (!(cfg.mu >= 0.0 && cfg.mu < 1.0)) throw ConfigError("mu must lie in [0, 1)");
  if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0) ||
      !(cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) {
    throw ConfigError("beta1/beta2 must lie in [0, 1)");
  }
  if (!(cfg.eps >= 0.0)) throw ConfigError("eps must be >= 0");
  if (cfg.retraction != "exp" && cfg.retraction != "cayley") {
    throw ConfigError("unknown retraction '" + cfg.retraction + "'");
  }
  if (cfg.retraction == "cayley" && cfg.algo != "rgd") {
    throw ConfigError("the cayley retraction is only available for algo = rgd");
  }
  if (cfg.iters < 0) throw ConfigError("iters must be >= 0");
}

Point starting_point(const Problem& problem, std::uint64_t seed) {
  Rng rng = Rng(seed).child(0xA11CE);
  return random_point(problem.kind, problem.n, rng);
}

SummaryRow run_experiment(const ExperimentConfig& cfg, RunRecord* record) {
  validate_config(cfg);
  const Problem problem = build_problem(cfg.problem, cfg.n, cfg.seed);
  const Point p0 = starting_point(problem, cfg.seed);
  OptimizerHyper hyper;
  hyper.mu = cfg.mu;
  hyper.beta1 = cfg.beta1;
  hyper.beta2 = cfg.beta2;
  hyper.eps = cfg.eps;
  const OptimizerRule rule = optimizer_rule_from_name(cfg.opt);

  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  if (cfg.algo == "atriv") {
    rec = atriv_run(problem, rule, cfg.k, cfg.lr, cfg.iters, p0, hyper);
  } else if (cfg.algo == "dtriv") {
    rec = dtriv_run(problem, rule, cfg.k, cfg.lr, cfg.iters, p0, hyper);
  } else if (cfg.algo == "rgd") {
    rec = rgd_run(problem, cfg.lr, cfg.iters, p0,
                  retraction_from_name(cfg.retraction));
  } else if (cfg.algo == "rgd-momentum") {
    rec = rgd_momentum_transport_run(problem, cfg.lr, cfg.mu, cfg.iters, p0);
  } else {
    rec = rgd_momentum_full_history_run(problem, cfg.lr, cfg.mu, cfg.iters, p0);
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - t0;

  if (!cfg.out.empty()) write_trace_csv(cfg.out, rec);

  SummaryRow row;
  row.problem = cfg.problem;
  row.n = cfg.n;
  row.algo = cfg.algo;
  row.k = cfg.k;
  row.opt = cfg.opt;
  row.lr = cfg.lr;
  row.iters = cfg.iters;
  row.seed = cfg.seed;
  row.status = rec.aborted ? sanitize_csv_cell("aborted: " + rec.abort_reason)
                           : "ok";
  row.final_f = rec.final_f;
  row.best_f = rec.best_f;
  row.gap = std::numeric_limits<double>::quiet_NaN();
  row.iters_to_gap = -1;
  if (problem.known_optimum) {
    row.gap = rec.best_f - *problem.known_optimum;
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
      if (rec.rows[i].f - *problem.known_optimum <= 1e-6) {
        row.iters_to_gap = static_cast<std::int64_t>(i) + 1;
        break;
      }
    }
  }
  row.restarts = rec.restarts;
  row.wall_time_s = elapsed.count();
  if (record) *record = std::move(rec);
  return row;
}

std::vector<SummaryRow> run_grid(const std::vector<ExperimentConfig>& configs) {
  if (configs.empty()) throw ConfigError("run_grid: no configurations given");
  std::vector<SummaryRow> rows;
  rows.reserve(configs.size());
  for (const ExperimentConfig& cfg : configs) {
    try {
      rows.push_back(run_experiment(cfg));
    } catch (const std::exception& e) {
      // One bad run must not sink the batch: echo the config with an error
      // status and keep going.
      SummaryRow row;
      row.problem = cfg.problem;
      row.n = cfg.n;
      row.algo = cfg.algo;
      row.k = cfg.k;
      row.opt = cfg.opt;
      row.lr = cfg.lr;
      row.iters = cfg.iters;
      row.seed = cfg.seed;
      row.status = sanitize_csv_cell(std::string("error: ") + e.what());
      row.final_f = std::numeric_limits<double>::quiet_NaN();
      row.best_f = std::numeric_limits<double>::quiet_NaN();
      row.gap = std::numeric_limits<double>::quiet_NaN();
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SummaryRow& a, const SummaryRow& b) {
                     return grid_sort_key(a) < grid_sort_key(b);
                   });
  return rows;
}

std::vector<SummaryRow> run_grid_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("grid directory '" + dir + "' does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  if (files.empty()) {
    throw ConfigError("grid directory '" + dir + "' contains no .cfg files");
  }
  std::vector<ExperimentConfig> configs;
  for (const fs::path& file : files) {
    ParsedConfig parsed = parse_config_file_impl(file.string());
    if (!parsed.out_was_set) {
      parsed.cfg.out =
          (fs::path(dir) / (file.stem().string() + "_trace.csv")).string();
    } else if (!parsed.cfg.out.empty() &&
               fs::path(parsed.cfg.out).is_relative()) {
      parsed.cfg.out = (fs::path(dir) / parsed.cfg.out).string();
    }
    configs.push_back(std::move(parsed.cfg));
  }
  std::vector<SummaryRow> rows = run_grid(configs);
  write_summary_csv((fs::path(dir) / "summary.csv").string(), rows);
  return rows;
}

void write_trace_csv(const std::string& path, const RunRecord& record) {
  create_parent_dirs(path);
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings exact
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "iter_outer,iter_inner,f,grad_norm,step_dist,restarts\n";
  for (const IterationRow& row : record.rows) {
    out << row.iter_outer << ',' << row.iter_inner << ',' << format_double(row.f)
        << ',' << format_double(row.grad_norm) << ','
        << format_double(row.step_dist) << ',' << row.restarts << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  create_parent_dirs(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "problem,n,algo,k,opt,lr,iters,seed,status,final_f,best_f,gap,"
         "iters_to_1e-6,restarts,wall_time_s\n";
  for (const SummaryRow& row : rows) {
    out << sanitize_csv_cell(row.problem) << ',' << row.n << ','
        << sanitize_csv_cell(row.algo) << ',';
    if (row.k == 0) {
      out << "inf";
    } else {
      out << row.k;
    }
    out << ',' << sanitize_csv_cell(row.opt) << ',' << format_double(row.lr)
        << ',' << row.iters << ',' << row.seed << ','
        << sanitize_csv_cell(row.status) << ',' << format_double(row.final_f)
        << ',' << format_double(row.best_f) << ',';
    if (std::isnan(row.gap)) {
      out << "";  // gap columns only exist when an oracle optimum exists
    } else {
      out << format_double(row.gap);
    }
    out << ',';
    if (row.iters_to_gap >= 0) out << row.iters_to_gap;
    out << ',' << row.restarts << ',' << format_double(row.wall_time_s) << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int selftest() {
  checks_failed = 0;
  Rng rng(2024);

  {
    const Matrix Om = random_skew(rng, 5);
    const ExpmReport rep = expm(Om);
    const double defect =
        (rep.result.transpose() * rep.result - Matrix::Identity(5, 5)).norm();
    check(rep.polynomial_products <= 5 && defect <= 1e-12,
          "expm of a skew generator is orthogonal in <= 5 products");
  }
  {
    const Matrix Om = random_skew_with_spectral_norm(rng, 4, 2.0);
    const Matrix back = logm_principal(expm(Om).result).result;
    check((back - Om).norm() <= 1e-10 * std::max(1.0, Om.norm()),
          "logm inverts expm on the rotation group");
  }
  {
    const Matrix Om = random_skew(rng, 4);
    const Matrix E = gaussian_matrix(rng, 4, 4);
    const Matrix F = gaussian_matrix(rng, 4, 4);
    const double lhs = frobenius_inner(dexp(Om, E), F);
    const double rhs = frobenius_inner(E, dexp_adjoint(Om, F));
    check(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)),
          "dexp and dexp_adjoint satisfy the pairing identity");
  }
  {
    const Matrix Om = random_skew_with_spectral_norm(rng, 4, 1.5);
    const Matrix E = gaussian_matrix(rng, 4, 4);
    const Matrix round = dexp(Om, dexp_inverse(Om, E));
    check((round - E).norm() <= 1e-10 * std::max(1.0, E.norm()),
          "dexp_inverse inverts dexp");
  }
  {
    const Point p = random_point(ManifoldKind::SpecialOrthogonal, 4, rng);
    Tangent v = random_tangent(p, rng);
    v.coords *= 1.0 / spectral_norm(v.coords);
    const Tangent back = log_point(p, exp_point(v));
    check((back.coords - v.coords).norm() <= 1e-10,
          "rotation-group log inverts exp inside the injectivity radius");
  }
  {
    const Point p = random_point(ManifoldKind::Sphere, 5, rng);
    Tangent v = random_tangent(p, rng);
    v.coords *= 2.0 / v.coords.norm();
    const Tangent back = log_point(p, exp_point(v));
    check((back.coords - v.coords).norm() <= 1e-10,
          "sphere log inverts exp inside the injectivity radius");
  }
  {
    const Point p = random_point(ManifoldKind::Sphere, 4, rng);
    const Point q = random_point(ManifoldKind::Sphere, 4, rng);
    const Tangent w = random_tangent(p, rng);
    const Tangent moved = parallel_transport(w, q);
    check(std::abs(tangent_norm(moved) - tangent_norm(w)) <= 1e-11,
          "parallel transport preserves the tangent norm");
  }
  {
    OptimizerState ada(OptimizerRule::Adagrad, 2, OptimizerHyper{0.9, 0.9, 0.99, 0.0});
    Vector g(2);
    g << 3.0, 4.0;
    ada.step(g);
    const Vector out = ada.step(g);
    Vector expect(2);
    expect << 3.0 / std::sqrt(18.0), 4.0 / std::sqrt(32.0);
    check((out - expect).norm() <= 1e-12,
          "adagrad reproduces the two-step hand recursion");
  }
  {
    const NoninvarianceWitness generic = coordinate_noninvariance_witness(41);
    Matrix perm = Matrix::Zero(6, 6);
    perm(0, 2) = 1.0;
    perm(1, 0) = 1.0;
    perm(2, 1) = 1.0;
    perm(3, 4) = -1.0;
    perm(4, 3) = 1.0;
    perm(5, 5) = 1.0;
    const NoninvarianceWitness inv = coordinate_noninvariance_witness(41, perm);
    check(generic.deviation > 1e-3 && inv.deviation <= 1e-12,
          "diagonal adaptivity breaks under rotations, not signed permutations");
  }
  {
    // Flat space: the anchored trivialization must collapse to the plain
    // Euclidean optimizer.
    Problem pb;
    pb.name = "quadratic";
    pb.kind = ManifoldKind::Euclidean;
    pb.n = 3;
    Matrix target(3, 1);
    target << 1.0, -2.0, 0.5;
    pb.objective = [target](const Matrix& x) {
      return 0.5 * (x - target).squaredNorm();
    };
    pb.ambient_gradient = [target](const Matrix& x) { return Matrix(x - target); };
    Matrix x0 = Matrix::Zero(3, 1);
    const Point p0 = make_point(ManifoldKind::Euclidean, x0);
    const RunRecord rec =
        atriv_run(pb, OptimizerRule::Adam, 1, 0.05, 50, p0, OptimizerHyper{});
    OptimizerState adam(OptimizerRule::Adam, 3, OptimizerHyper{});
    Matrix x = x0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      worst = std::max(worst, std::abs(rec.rows[static_cast<std::size_t>(t)].f -
                                       0.5 * (x - target).squaredNorm()));
      const Vector step = adam.step(Vector(x - target));
      x -= 0.05 * step;
    }
    check(worst <= 1e-12 && !rec.aborted,
          "anchored trivialization in flat space equals the plain optimizer");
  }
  {
    Rng a(7), b(7);
    bool same = true;
    for (int i = 0; i < 5; ++i) same = same && (a.normal() == b.normal());
    check(same, "random streams are reproducible from the seed");
  }
  std::printf("%d check(s) failed\n", checks_failed);
  return checks_failed;
}

int bench_main(const std::vector<std::string>& args) {
  // Thin manual dispatcher; the heavy lifting (validation, file handling)
  // lives in the library functions above.
  const auto usage = [](std::ostream& os) {
    os << "usage:\n"
          "  bench run <config-file> [--problem P] [--n N] [--algo A] [--k K]\n"
          "            [--opt O] [--lr X] [--iters N] [--seed S] [--out PATH]\n"
          "  bench grid <dir>\n"
          "  bench selftest\n";
  };
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    usage(std::cout);
    return args.empty() ? 3 : 0;
  }
  const std::string& cmd = args[0];
  try {
    if (cmd == "selftest") {
      return selftest() == 0 ? 0 : 1;
    }
    if (cmd == "run") {
      if (args.size() < 2) {
        usage(std::cerr);
        return 3;
      }
      ExperimentConfig cfg = parse_config_file(args[1]);
      for (std::size_t i = 2; i < args.size(); ++i) {
        const std::string& flag = args[i];
        if (flag.rfind("--", 0) != 0) {
          throw ConfigError("expected '--key value' overrides, got '" + flag + "'");
        }
        const std::string body = flag.substr(2);
        const auto eq = body.find('=');
        if (eq != std::string::npos) {
          set_field(cfg, body.substr(0, eq), body.substr(eq + 1));
        } else {
          if (i + 1 >= args.size()) {
            throw ConfigError("flag '" + flag + "' is missing its value");
          }
          set_field(cfg, body, args[i + 1]);
          ++i;
        }
      }
      RunRecord rec;
      const SummaryRow row = run_experiment(cfg, &rec);
      if (!cfg.out.empty()) {
        std::string summary_path = cfg.out;
        const std::string suffix = ".csv";
        if (summary_path.size() >= suffix.size() &&
            summary_path.compare(summary_path.size() - suffix.size(),
                                 suffix.size(), suffix) == 0) {
          summary_path.resize(summary_path.size() - suffix.size());
        }
        summary_path += "_summary.csv";
        write_summary_csv(summary_path, {row});
      }
      std::cout << cfg.problem << " n=" << cfg.n << " " << cfg.algo << " k="
                << (cfg.k == 0 ? std::string("inf") : std::to_string(cfg.k))
                << " " << cfg.opt << ": status=" << row.status
                << " final_f=" << format_double(row.final_f)
                << " best_f=" << format_double(row.best_f);
      if (!std::isnan(row.gap)) std::cout << " gap=" << format_double(row.gap);
      std::cout << " restarts=" << row.restarts << "\n";
      return row.status == "ok" ? 0 : 1;
    }
    if (cmd == "grid") {
      if (args.size() != 2) {
        usage(std::cerr);
        return 3;
      }
      const std::vector<SummaryRow> rows = run_grid_dir(args[1]);
      bool all_ok = true;
      for (const SummaryRow& row : rows) {
        std::cout << row.problem << " n=" << row.n << " " << row.algo << " k="
                  << (row.k == 0 ? std::string("inf") : std::to_string(row.k))
                  << " " << row.opt << ": status=" << row.status
                  << " best_f=" << format_double(row.best_f) << "\n";
        all_ok = all_ok && row.status == "ok";
      }
      return all_ok ? 0 : 1;
    }
    usage(std::cerr);
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace trivopt
