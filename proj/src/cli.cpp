#include "wbag/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "wbag/acyclic.hpp"
#include "wbag/bench.hpp"
#include "wbag/fixtures.hpp"
#include "wbag/format.hpp"
#include "wbag/generator.hpp"
#include "wbag/semantics.hpp"
#include "wbag/solver.hpp"
#include "wbag/trace_io.hpp"

namespace wbag::cli {

namespace {

struct SolverFlags {
  std::string model = "quad";
  std::string method = "rk4";
  double delta = 0.01;
  double epsilon = 1e-4;
  double tmax = 1000.0;
  double wall_limit = 30.0;
  std::size_t record_every = 10;

  void attach(CLI::App& cmd) {
    cmd.add_option("--model", model, "Semantics: quad, euler, dfquad, sdfquad")
        ->check(CLI::IsMember({"quad", "euler", "dfquad", "sdfquad"}))
        ->capture_default_str();
    cmd.add_option("--method", method, "Step method: euler or rk4")
        ->check(CLI::IsMember({"euler", "rk4"}))
        ->capture_default_str();
    cmd.add_option("--delta", delta, "Step size")->capture_default_str();
    cmd.add_option("--epsilon", epsilon, "Convergence threshold on max |ds/dt|")
        ->capture_default_str();
    cmd.add_option("--tmax", tmax, "Cap on simulated time")->capture_default_str();
    cmd.add_option("--wall-limit", wall_limit, "Wall-clock cap in seconds")
        ->capture_default_str();
  }

  SolverConfig config(bool record) const {
    SolverConfig c;
    c.step = delta;
    c.epsilon = epsilon;
    c.max_time = tmax;
    c.wall_clock_limit = std::chrono::duration<double>(wall_limit);
    c.method = *step_method_from_string(method);
    c.record_every = record_every;
    c.record_trajectory = record;
    c.validate();
    return c;
  }

  std::unique_ptr<Semantics> semantics() const { return make_semantics(*model_from_id(model)); }
};

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string general(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_table(std::ostream& out, const Bag& bag, const std::vector<double>& final_values,
                 const std::vector<bool>& converged) {
  std::size_t width = 4;
  for (const Argument& a : bag.arguments()) width = std::max(width, a.name.size());
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
  out << pad("name") << "initial  final   converged\n";
  for (ArgId j = 0; j < bag.size(); ++j) {
    out << pad(bag.name(j)) << fixed4(bag.weight(j)) << "   " << fixed4(final_values[j]) << "  "
        << (converged[j] ? "yes" : "no") << '\n';
  }
}

void print_ode_status(std::ostream& out, const SolverResult& r, const Semantics& model,
                      const SolverConfig& config) {
  out << "status: " << to_string(r.status) << " (model " << model.id() << ", "
      << to_string(config.method) << ", delta " << general(config.step) << ") t="
      << general(r.final_time) << " steps=" << r.steps_taken
      << " max|ds/dt|=" << general(r.max_derivative) << " converged_arguments="
      << r.report.converged_count() << '/' << r.report.arguments.size() << '\n';
}

int exit_for(const SolverResult& r) { return r.converged() ? kExitOk : kExitCapReached; }

std::vector<bool> converged_flags(const ConvergenceReport& report) {
  std::vector<bool> flags;
  for (const ArgumentReport& a : report.arguments) flags.push_back(a.converged);
  return flags;
}

int cmd_solve(const SolverFlags& flags, const std::string& algo, bool refine,
              const std::string& file, std::ostream& out) {
  const SolverConfig config = flags.config(false);
  const auto model = flags.semantics();
  const Bag bag = read_bag_file(file);

  const bool use_acyclic = algo == "acyclic" || (algo == "auto" && is_acyclic(bag));
  if (use_acyclic) {
    const State s = acyclic_equilibrium(*model, bag);
    print_table(out, bag, s.values, std::vector<bool>(bag.size(), true));
    out << "status: exact (acyclic pass, model " << model->id() << ")\n";
    if (refine) out << "refinement: not applicable to the exact acyclic pass\n";
    return kExitOk;
  }

  if (refine) {
    const RefinementResult r = integrate_with_refinement(*model, bag, config);
    print_table(out, bag, r.coarse.final_state.values, converged_flags(r.coarse.report));
    print_ode_status(out, r.coarse, *model, config);
    out << "refinement: delta " << general(config.step) << " vs " << general(config.step / 2)
        << ", max difference " << general(r.difference) << ", "
        << (r.stable ? "stable" : "unstable") << '\n';
    return r.coarse.converged() && r.fine.converged() ? kExitOk : kExitCapReached;
  }

  const SolverResult r = integrate(*model, bag, config);
  print_table(out, bag, r.final_state.values, converged_flags(r.report));
  print_ode_status(out, r, *model, config);
  return exit_for(r);
}

int cmd_trace(const SolverFlags& flags, const std::string& file, const std::string& out_path,
              const std::string& report_path, std::ostream& out) {
  const SolverConfig config = flags.config(true);
  const auto model = flags.semantics();
  const Bag bag = read_bag_file(file);
  const SolverResult r = integrate(*model, bag, config);

  std::ofstream csv(out_path);
  if (!csv) throw std::runtime_error("cannot write " + out_path);
  write_trajectory_csv(csv, bag, *r.trajectory);
  if (!report_path.empty()) {
    std::ofstream rep(report_path);
    if (!rep) throw std::runtime_error("cannot write " + report_path);
    write_report_csv(rep, bag, r.report);
  }
  print_ode_status(out, r, *model, config);
  out << "trajectory: " << r.trajectory->size() << " samples written to " << out_path << '\n';
  return exit_for(r);
}

int cmd_check(const std::string& file, std::ostream& out) {
  const Bag bag = read_bag_file(file);
  const OrderResult order = topological_order(bag);
  if (const auto* cyclic = std::get_if<CyclicVerdict>(&order)) {
    out << "cyclic; witness: ";
    for (std::size_t i = 0; i < cyclic->cycle.size(); ++i) {
      out << (i ? ", " : "") << bag.name(cyclic->cycle[i]);
    }
    out << '\n';
  } else {
    out << "acyclic; " << bag.size() << " arguments, " << bag.attacks().size() << " attacks, "
        << bag.supports().size() << " supports\n";
  }
  return kExitOk;
}

void emit_bag(const Bag& bag, const std::string& out_path, const std::string& header,
              std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    if (!header.empty()) out << "// " << header << '\n';
    out << serialize_bag(bag);
  } else {
    write_bag_file(out_path, bag, header);
  }
}

int cmd_plot(const std::string& csv_path, const std::string& out_path,
             const std::string& title) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open " + csv_path);
  const TrajectoryTable table = read_trajectory_csv(in);
  std::ofstream svg(out_path);
  if (!svg) throw std::runtime_error("cannot write " + out_path);
  svg << render_svg(table, title);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Argument strength in weighted bipolar argumentation graphs", "wbag"};
  app.require_subcommand(1);

  // solve
  SolverFlags solve_flags;
  std::string solve_file, algo = "auto";
  bool refine = false;
  auto* solve = app.add_subcommand("solve", "Compute final strengths");
  solve_flags.attach(*solve);
  solve->add_option("--algo", algo, "auto, ode or acyclic")
      ->check(CLI::IsMember({"auto", "ode", "acyclic"}))
      ->capture_default_str();
  solve->add_flag("--refine", refine, "Repeat the ODE run at half the step and compare");
  solve->add_option("file", solve_file, "BAG file")->required();

  // trace
  SolverFlags trace_flags;
  std::string trace_file, trace_out, trace_report;
  auto* trace = app.add_subcommand("trace", "Write the strength trajectory as CSV");
  trace_flags.attach(*trace);
  trace->add_option("--record-every", trace_flags.record_every, "Sample every N steps")
      ->capture_default_str();
  trace->add_option("--out", trace_out, "Trajectory CSV path")->required();
  trace->add_option("--report", trace_report, "Convergence report CSV path");
  trace->add_option("file", trace_file, "BAG file")->required();

  // check
  std::string check_file;
  auto* check = app.add_subcommand("check", "Validate a file and report acyclicity");
  check->add_option("file", check_file, "BAG file")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate graphs");
  gen->require_subcommand(1);

  GenSpec rand_spec;
  std::string rand_weights = "uniform", rand_out;
  bool no_self_loops = false;
  auto* gen_random = gen->add_subcommand("random", "Seeded random graph");
  gen_random->add_option("--nodes", rand_spec.nodes, "Argument count")->required();
  gen_random->add_option("--edges", rand_spec.edges, "Edge count")->required();
  gen_random->add_option("--attack-probability", rand_spec.attack_probability)
      ->capture_default_str();
  gen_random->add_option("--weights", rand_weights, "uniform or constant")
      ->check(CLI::IsMember({"uniform", "constant"}))
      ->capture_default_str();
  gen_random->add_option("--weight", rand_spec.constant_weight, "Weight for --weights constant")
      ->capture_default_str();
  gen_random->add_option("--seed", rand_spec.seed)->capture_default_str();
  gen_random->add_flag("--no-self-loops", no_self_loops);
  gen_random->add_option("--out", rand_out, "Output file (default stdout)");

  std::size_t cycle_k_value = 0;
  std::string cycle_out;
  auto* gen_cycle = gen->add_subcommand("cycle", "Cycle(k) oscillation family");
  gen_cycle->add_option("--k", cycle_k_value, "k >= 1")->required();
  gen_cycle->add_option("--out", cycle_out, "Output file (default stdout)");

  std::string fixture_name, fixture_out;
  auto* gen_fixture = gen->add_subcommand("fixture", "Built-in example graph");
  gen_fixture->add_option("name", fixture_name, "stock or edemocracy")
      ->required()
      ->check(CLI::IsMember({"stock", "edemocracy"}));
  gen_fixture->add_option("--out", fixture_out, "Output file (default stdout)");

  BenchmarkSpec bench_spec;
  std::string bench_dir;
  auto* gen_bench = gen->add_subcommand("benchmark", "Benchmark directory tree");
  gen_bench->add_option("--dir", bench_dir, "Output directory")->required();
  gen_bench->add_option("--base", bench_spec.base_size)->capture_default_str();
  gen_bench->add_option("--increments", bench_spec.increments)->capture_default_str();
  gen_bench->add_option("--trials", bench_spec.trials)->capture_default_str();
  gen_bench->add_option("--edge-ratio", bench_spec.edge_ratio)->capture_default_str();
  gen_bench->add_option("--attack-probability", bench_spec.attack_probability)
      ->capture_default_str();
  gen_bench->add_option("--seed", bench_spec.seed)->capture_default_str();

  // bench
  SolverFlags bench_flags;
  BenchOptions bench_options;
  std::string bench_root, records_path, stats_path;
  bool no_fast_path = false, no_warmup = false;
  auto* bench = app.add_subcommand("bench", "Run a model over a benchmark tree");
  bench_flags.attach(*bench);
  bench->add_option("dir", bench_root, "Directory of size-named subdirectories")->required();
  bench->add_option("--records", records_path, "Per-file CSV path");
  bench->add_option("--stats", stats_path, "Per-size stats CSV path (default stdout)");
  bench->add_option("--jobs", bench_options.jobs, "Worker threads")->capture_default_str();
  bench->add_flag("--no-fast-path", no_fast_path, "Integrate acyclic graphs too");
  bench->add_flag("--no-warmup", no_warmup, "Skip the untimed warm-up solve");

  // plot
  std::string plot_csv, plot_out, plot_title;
  auto* plot = app.add_subcommand("plot", "Render a trajectory CSV as an SVG line chart");
  plot->add_option("csv", plot_csv, "Trajectory CSV")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();
  plot->add_option("--title", plot_title);

  std::vector<const char*> argv{"wbag"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve) return cmd_solve(solve_flags, algo, refine, solve_file, out);
    if (*trace) return cmd_trace(trace_flags, trace_file, trace_out, trace_report, out);
    if (*check) return cmd_check(check_file, out);
    if (*gen_random) {
      rand_spec.weight_mode =
          rand_weights == "uniform" ? GenSpec::Weights::uniform : GenSpec::Weights::constant;
      rand_spec.allow_self_loops = !no_self_loops;
      emit_bag(random_bag(rand_spec), rand_out, "generator: " + rand_spec.describe(), out);
      return kExitOk;
    }
    if (*gen_cycle) {
      emit_bag(cycle_k(cycle_k_value), cycle_out,
               "generator: cycle_k k=" + std::to_string(cycle_k_value), out);
      return kExitOk;
    }
    if (*gen_fixture) {
      emit_bag(fixture(fixture_name), fixture_out, "fixture: " + fixture_name, out);
      return kExitOk;
    }
    if (*gen_bench) {
      const auto files = generate_benchmark(bench_dir, bench_spec);
      out << "wrote " << files.size() << " files under " << bench_dir << '\n';
      return kExitOk;
    }
    if (*bench) {
      const SolverConfig config = bench_flags.config(false);
      const auto model = bench_flags.semantics();
      bench_options.acyclic_fast_path = !no_fast_path;
      bench_options.warmup = !no_warmup;
      const BenchReport report = run_benchmark(bench_root, *model, config, bench_options);
      for (const std::string& w : report.warnings) err << "warning: " << w << '\n';

      const std::string settings = "model=" + std::string(model->id()) + " method=" +
                                   bench_flags.method + " delta=" + general(config.step) +
                                   " epsilon=" + general(config.epsilon) +
                                   " jobs=" + std::to_string(bench_options.jobs) +
                                   " warmup=" + (bench_options.warmup ? "1" : "0") +
                                   " fast_path=" + (bench_options.acyclic_fast_path ? "1" : "0");
      if (!records_path.empty()) {
        std::ofstream rec(records_path);
        if (!rec) throw std::runtime_error("cannot write " + records_path);
        write_records_csv(rec, report.records);
      }
      if (stats_path.empty()) {
        write_stats_csv(out, report.stats, settings);
      } else {
        std::ofstream st(stats_path);
        if (!st) throw std::runtime_error("cannot write " + stats_path);
        write_stats_csv(st, report.stats, settings);
      }
      std::size_t failures = 0;
      for (const BenchRecord& r : report.records) {
        if (r.status == "error") {
          ++failures;
          err << "error: " << r.size << '/' << r.file << ": " << r.message << '\n';
        }
      }
      err << report.records.size() << " files, " << failures << " failures\n";
      return kExitOk;
    }
    if (*plot) return cmd_plot(plot_csv, plot_out, plot_title);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace wbag::cli
