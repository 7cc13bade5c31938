#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotavg/error.hpp"
#include "rotavg/io.hpp"
#include "rotavg/local.hpp"
#include "rotavg/solver.hpp"
#include "rotavg/synth.hpp"

namespace rotavg::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kDeg = 180.0 / std::numbers::pi;

struct SynthOptions {
  int n = 100;
  double density = 0.3;
  double sigma = 0.1;
  std::string style = "sfm";
  std::uint64_t seed = 0;
};

struct SolveOptions {
  std::string solver = "rcd";
  double tol = 1e-9;
  int max_epochs = 10000;
  std::string k_order = "random";
  std::uint64_t seed = 0;
  std::string init = "random";
  int local_sweeps = 30;
  std::string bcd_start = "eye";
};

struct Graph {
  CameraGraph graph;
  std::vector<long long> ids;
  RotationStack ground_truth;  // synthetic inputs only
};

GraphStyle parse_style(const std::string& s) {
  return s == "slam" ? GraphStyle::kSlam : GraphStyle::kSfm;
}

SynthSpec to_spec(const SynthOptions& o) {
  return {o.n, o.density, o.sigma, parse_style(o.style), o.seed};
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write '" + path.string() + "'");
  return out;
}

Graph load_graph(const std::string& path, const std::string& format) {
  std::ifstream in = open_in(path);
  const GraphFileFormat f = format.empty() ? guess_format(path) : parse_format_name(format);
  Graph g;
  if (f == GraphFileFormat::kG2o) {
    LoadedGraph loaded = parse_g2o(in);
    g.graph = std::move(loaded.graph);
    g.ids = std::move(loaded.original_ids);
  } else {
    g.graph = parse_native(in);
  }
  return g;
}

RotationStack load_rotations(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_rotations(in);
}

SolveConfig solve_config(const SolveOptions& o) {
  SolveConfig cfg;
  cfg.tolerance = o.tol;
  cfg.max_epochs = o.max_epochs;
  cfg.k_order = o.k_order == "cyclic" ? KOrder::kCyclic : KOrder::kRandomPermutation;
  cfg.seed = o.seed;
  validate(cfg);
  return cfg;
}

RotationStack initial_rotations(const CameraGraph& g, const std::string& init, std::uint64_t seed) {
  if (init == "identity") return identity_stack(g.num_vertices());
  if (init == "spanning-tree") return spanning_tree_init(g, seed);
  return random_stack(g.num_vertices(), seed);
}

SolveReport run_solver(const CameraGraph& g, const SolveOptions& o) {
  if (!check_connected(g)) throw Error(ErrorCode::kDisconnected, "camera graph is disconnected");
  const MeasurementMatrix M(g);
  const SolveConfig cfg = solve_config(o);
  const RotationStack R0 = initial_rotations(g, o.init, o.seed);
  if (o.solver == "bcd") {
    const DenseSdpIterate Y0 = o.bcd_start == "eye"
                                   ? DenseSdpIterate::Identity(3 * M.size(), 3 * M.size())
                                   : gram(R0);
    return bcd_solve(M, Y0, cfg).report;
  }
  if (o.solver == "rcdl") {
    LocalConfig lcfg;
    lcfg.sweeps = o.local_sweeps;
    return rcdl_solve(M, R0, cfg, lcfg);
  }
  return rcd_solve(M, R0, cfg);
}

json config_echo(const SolveOptions& o) {
  return {{"solver", o.solver},     {"tol", o.tol},   {"max_epochs", o.max_epochs},
          {"k_order", o.k_order},   {"seed", o.seed}, {"init", o.init},
          {"local_sweeps", o.local_sweeps}, {"bcd_start", o.bcd_start}};
}

int report_error(std::ostream& err, const Error& e) {
  json record = {{"error", error_name(e.code())}, {"message", e.what()}};
  if (e.line() > 0) record["line"] = e.line();
  err << record.dump() << '\n';
  return is_numerical(e.code()) ? kNumericalError : kDataError;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_solve(const std::string& input, const std::string& graph_format,
              const SynthOptions& synth, bool use_synth, const SolveOptions& o,
              const std::string& gt_path, const std::string& out_dir, const std::string& format,
              bool omit_timing, std::ostream& out) {
  Graph g;
  if (use_synth) {
    SynthInstance inst = generate(to_spec(synth));
    g.graph = std::move(inst.graph);
    g.ground_truth = std::move(inst.ground_truth);
  } else {
    g = load_graph(input, graph_format);
  }
  const SolveReport report = run_solver(g.graph, o);

  const MeasurementMatrix M(g.graph);
  out << "solver: " << report.solver << '\n'
      << "n: " << g.graph.num_vertices() << '\n'
      << "m: " << g.graph.num_edges() << '\n'
      << "epochs: " << report.epochs << '\n'
      << "iterations: " << report.iterations << '\n'
      << "termination: " << termination_name(report.termination) << '\n'
      << "objective: " << std::setprecision(17) << report.final_objective() << '\n'
      << "chordal_cost: " << chordal_cost(report.rotations, M) << '\n';

  RotationStack reference = g.ground_truth;
  if (!gt_path.empty()) reference = load_rotations(gt_path);
  std::optional<ErrorStats> stats;
  if (!reference.empty()) {
    stats = error_stats(report.rotations, reference);
    out << "error_deg: mean " << stats->mean_deg << " median " << stats->median_deg << " max "
        << stats->max_deg << '\n';
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const bool csv = format == "csv";
    ResultRecord record;
    record.report = &report;
    record.camera_ids = g.ids;
    record.config_json = config_echo(o).dump();
    record.include_timing = !omit_timing;
    auto results = open_out(fs::path(out_dir) / (csv ? "results.csv" : "results.jsonl"));
    write_results(record, results, csv ? ResultFormat::kCsv : ResultFormat::kJsonLines);
    auto rotations = open_out(fs::path(out_dir) / "rotations.txt");
    write_rotations(report.rotations, rotations);
    if (!g.ids.empty()) {
      auto ids = open_out(fs::path(out_dir) / "vertex_ids.txt");
      for (std::size_t v = 0; v < g.ids.size(); ++v) ids << v << ' ' << g.ids[v] << '\n';
    }
    if (stats) {
      auto errors = open_out(fs::path(out_dir) / "errors.json");
      errors << json{{"mean_deg", stats->mean_deg},
                     {"median_deg", stats->median_deg},
                     {"max_deg", stats->max_deg}}
                    .dump()
             << '\n';
    }
  }
  return kOk;
}

int cmd_synth(const SynthOptions& synth, const std::string& out_dir, std::ostream& out) {
  const SynthInstance inst = generate(to_spec(synth));
  fs::create_directories(out_dir);
  auto graph = open_out(fs::path(out_dir) / "graph.txt");
  write_native(inst.graph, graph);
  auto gt = open_out(fs::path(out_dir) / "ground_truth.txt");
  write_rotations(inst.ground_truth, gt);
  out << "n: " << inst.graph.num_vertices() << '\n'
      << "m: " << inst.graph.num_edges() << '\n'
      << "d_g: " << std::setprecision(6)
      << graph_density(inst.graph.num_vertices(), static_cast<long long>(inst.graph.num_edges()))
      << '\n';
  return kOk;
}

struct BenchRun {
  std::string solver;
  int n;
  double density;
  double sigma;
  std::uint64_t seed;
};

std::string bench_row(const BenchRun& run, const SynthOptions& base, const SolveOptions& o,
                      bool omit_timing) {
  std::ostringstream row;
  row << std::setprecision(17);
  SynthOptions s = base;
  s.n = run.n;
  s.density = run.density;
  s.sigma = run.sigma;
  s.seed = run.seed;
  row << run.solver << ',' << run.n << ',';
  try {
    const SynthInstance inst = generate(to_spec(s));
    const long long m = static_cast<long long>(inst.graph.num_edges());
    row << m << ',' << graph_density(run.n, m) << ',' << run.sigma << ',' << run.seed << ',';
    SolveOptions so = o;
    so.solver = run.solver;
    so.seed = run.seed;
    const SolveReport r = run_solver(inst.graph, so);
    row << r.epochs << ',' << r.iterations << ',' << r.final_objective() << ','
        << (omit_timing ? 0.0 : r.seconds);
  } catch (const Error& e) {
    row.str("");
    row << run.solver << ',' << run.n << ",,," << run.sigma << ',' << run.seed << ",,,"
        << error_name(e.code()) << ',';
  }
  return row.str();
}

int cmd_bench(const std::vector<std::string>& solvers, const std::vector<int>& ns,
              const std::vector<double>& densities, const std::vector<double>& sigmas,
              int repeats, std::uint64_t base_seed, const SynthOptions& base,
              const SolveOptions& o, int jobs, bool omit_timing, const std::string& out_path,
              std::ostream& out) {
  std::vector<BenchRun> runs;
  for (const auto& solver : solvers) {
    for (int n : ns) {
      for (double d : densities) {
        for (double sigma : sigmas) {
          for (int r = 0; r < repeats; ++r) {
            runs.push_back({solver, n, d, sigma, base_seed + static_cast<std::uint64_t>(r)});
          }
        }
      }
    }
  }
  std::vector<std::string> rows(runs.size());
  std::size_t next = 0;
  std::mutex mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t idx;
      {
        std::lock_guard lock(mutex);
        if (next >= runs.size()) return;
        idx = next++;
      }
      rows[idx] = bench_row(runs[idx], base, o, omit_timing);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(runs.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file = open_out(out_path);
    sink = &file;
  }
  *sink << "solver,n,m,d_g,sigma,seed,epochs,iterations,objective,seconds\n";
  for (const auto& row : rows) *sink << row << '\n';
  return kOk;
}

int cmd_diagnose(const std::string& input, const std::string& graph_format,
                 const std::string& solution, std::ostream& out) {
  const Graph g = load_graph(input, graph_format);
  const AlphaMaxReport a = alpha_max_report(g.graph);
  const long long n = g.graph.num_vertices();
  const long long m = static_cast<long long>(g.graph.num_edges());
  out << std::setprecision(10) << "n: " << n << '\n' << "m: " << m << '\n' << "d_g: ";
  if (n >= 3 && m >= n && m <= n * (n - 1) / 2) {
    out << graph_density(n, m) << '\n';
  } else {
    out << "n/a\n";
  }
  out << "max_degree: " << a.max_degree << '\n'
      << "fiedler_value: " << a.fiedler_value << '\n'
      << "cycle: " << (a.is_cycle ? "yes" : "no") << '\n'
      << "alpha_max_fiedler_deg: " << a.fiedler_bound * kDeg << '\n'
      << "alpha_max_deg: " << a.alpha_max * kDeg << '\n';
  if (!solution.empty()) {
    const RotationStack R = load_rotations(solution);
    const auto residuals = edge_residuals(R, g.graph);
    const auto above = std::count_if(residuals.begin(), residuals.end(),
                                     [&](double r) { return r > a.alpha_max; });
    out << "residual_max_deg: " << *std::max_element(residuals.begin(), residuals.end()) * kDeg
        << '\n'
        << "fraction_above_alpha_max: "
        << static_cast<double>(above) / static_cast<double>(residuals.size()) << '\n';
  }
  return kOk;
}

void add_solve_options(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--solver", o.solver, "Solver")
      ->check(CLI::IsMember({"bcd", "rcd", "rcdl"}))
      ->capture_default_str();
  cmd->add_option("--tol", o.tol, "Relative objective change per epoch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-epochs", o.max_epochs)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--k-order", o.k_order)
      ->check(CLI::IsMember({"random", "cyclic"}))
      ->capture_default_str();
  cmd->add_option("--init", o.init)
      ->check(CLI::IsMember({"identity", "random", "spanning-tree"}))
      ->capture_default_str();
  cmd->add_option("--local-sweeps", o.local_sweeps)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--bcd-start", o.bcd_start,
                  "BCD start: eye (identity matrix) or init (Gram matrix of --init)")
      ->check(CLI::IsMember({"eye", "init"}))
      ->capture_default_str();
}

void add_synth_options(CLI::App* cmd, SynthOptions& s, const std::string& prefix) {
  cmd->add_option("--" + prefix + "n", s.n, "Camera count")->capture_default_str();
  cmd->add_option("--" + prefix + "density", s.density, "Target graph density")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--" + prefix + "sigma", s.sigma, "Noise std-dev (rad)")->capture_default_str();
  cmd->add_option("--" + prefix + "style", s.style)
      ->check(CLI::IsMember({"sfm", "slam"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation averaging by rotation coordinate descent"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  SynthOptions solve_synth;
  std::string input, graph_format, gt_path, out_dir, format = "jsonl";
  bool omit_timing = false;
  CLI::App* solve = app.add_subcommand("solve", "Solve a rotation averaging instance");
  auto* input_opt = solve->add_option("--input", input, "Graph file (.g2o or native)");
  auto* synth_flag =
      solve->add_flag("--synth", "Solve a generated instance (see --synth-* options)");
  input_opt->excludes(synth_flag);
  solve->add_option("--graph-format", graph_format, "g2o | native (default: by extension)");
  add_synth_options(solve, solve_synth, "synth-");
  solve->add_option("--synth-seed", solve_synth.seed)->capture_default_str();
  add_solve_options(solve, solve_opts);
  solve->add_option("--seed", solve_opts.seed, "Seed for initialisation and k order")
      ->capture_default_str();
  solve->add_option("--gt", gt_path, "Reference rotations for error statistics");
  solve->add_option("--out", out_dir, "Output directory");
  solve->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  solve->add_flag("--omit-timing", omit_timing, "Write 0 for all timings");

  SynthOptions synth_opts;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic instance");
  add_synth_options(synth, synth_opts, "");
  synth->add_option("--seed", synth_opts.seed)->capture_default_str();
  synth->add_option("--out", synth_out, "Output directory")->required();

  SolveOptions bench_opts;
  SynthOptions bench_synth;
  std::string bench_solvers = "rcd", bench_ns = "100", bench_densities = "0.3",
              bench_sigmas = "0.1", bench_out;
  int repeats = 1, jobs = 1;
  std::uint64_t bench_seed = 0;
  bool bench_omit_timing = false;
  CLI::App* bench = app.add_subcommand("bench", "Sweep solvers over synthetic instances");
  bench->add_option("--solvers", bench_solvers, "Comma-separated solvers")->capture_default_str();
  bench->add_option("--n", bench_ns, "Comma-separated camera counts")->capture_default_str();
  bench->add_option("--density", bench_densities, "Comma-separated densities")->capture_default_str();
  bench->add_option("--sigma", bench_sigmas, "Comma-separated noise levels")->capture_default_str();
  bench->add_option("--style", bench_synth.style)
      ->check(CLI::IsMember({"sfm", "slam"}))
      ->capture_default_str();
  bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", bench_seed, "First seed")->capture_default_str();
  bench->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--out", bench_out, "CSV file (default: stdout)");
  bench->add_flag("--omit-timing", bench_omit_timing, "Write 0 for all timings");
  add_solve_options(bench, bench_opts);

  std::string diag_input, diag_format, diag_solution;
  CLI::App* diagnose = app.add_subcommand("diagnose", "Graph statistics and the residual bound");
  diagnose->add_option("--input", diag_input, "Graph file")->required();
  diagnose->add_option("--graph-format", diag_format);
  diagnose->add_option("--solution", diag_solution, "Rotation file to check residuals");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (solve->parsed()) {
      if (input.empty() && synth_flag->count() == 0) {
        err << json{{"error", "Usage"}, {"message", "solve needs --input or --synth"}}.dump()
            << '\n';
        return kUsageError;
      }
      return cmd_solve(input, graph_format, solve_synth, synth_flag->count() > 0, solve_opts, gt_path,
                       out_dir, format, omit_timing, out);
    }
    if (synth->parsed()) return cmd_synth(synth_opts, synth_out, out);
    if (bench->parsed()) {
      std::vector<int> ns;
      std::vector<double> ds, sigmas;
      for (const auto& s : split_list(bench_ns)) ns.push_back(std::stoi(s));
      for (const auto& s : split_list(bench_densities)) ds.push_back(std::stod(s));
      for (const auto& s : split_list(bench_sigmas)) sigmas.push_back(std::stod(s));
      const auto solvers = split_list(bench_solvers);
      for (const auto& s : solvers) {
        if (s != "bcd" && s != "rcd" && s != "rcdl") {
          err << json{{"error", "Usage"}, {"message", "unknown solver " + s}}.dump() << '\n';
          return kUsageError;
        }
      }
      return cmd_bench(solvers, ns, ds, sigmas, repeats, bench_seed, bench_synth, bench_opts,
                       jobs, bench_omit_timing, bench_out, out);
    }
    if (diagnose->parsed()) return cmd_diagnose(diag_input, diag_format, diag_solution, out);
  } catch (const Error& e) {
    return report_error(err, e);
  } catch (const std::invalid_argument& e) {
    err << json{{"error", "Usage"}, {"message", e.what()}}.dump() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace rotavg::cli
