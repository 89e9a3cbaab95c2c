// Acceptance runner: one PASS/FAIL line per criterion.
//
//   wbag_acceptance            run all criteria
//   wbag_acceptance --only N   run criterion N

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "test_support.hpp"
#include "wbag/acyclic.hpp"
#include "wbag/bench.hpp"
#include "wbag/cli.hpp"
#include "wbag/fixtures.hpp"
#include "wbag/format.hpp"
#include "wbag/generator.hpp"
#include "wbag/solver.hpp"

using namespace wbag;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double value_of(const Bag& bag, std::span<const double> s, const char* name) {
  return s[*bag.find(name)];
}

// Final column of the `solve` table for `name`.
double solve_table_value(const std::string& table, const std::string& name) {
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string n;
    double initial = 0, final_value = 0;
    if (row >> n >> initial >> final_value && n == name) return final_value;
  }
  return std::nan("");
}

Verdict edemocracy_exact() {
  Verdict v;
  testkit::TempDir tmp("acc1");
  const auto file = tmp / "edemocracy.bag";
  write_bag_file(file, edemocracy_fixture(), "");

  std::ostringstream out, err;
  const auto start = Clock::now();
  const int code =
      cli::run({"solve", "--algo", "acyclic", "--model", "quad", file.string()}, out, err);
  const double ms = elapsed_ms(start);
  v.require(code == cli::kExitOk, "exit code " + std::to_string(code) + ": " + err.str());

  const std::pair<const char*, double> expected[] = {{"P2", 0.186}, {"A1", 0.719}, {"A2", 0.664}};
  for (auto [name, target] : expected) {
    const double got = solve_table_value(out.str(), name);
    v.require(std::abs(got - target) <= 0.005,
              std::string(name) + "=" + fmt("%.4f", got) + " vs " + fmt("%.3f", target));
  }

  const Bag bag = edemocracy_fixture();
  const State exact = acyclic_equilibrium(QuadraticEnergy{}, bag);
  for (ArgId j = 0; j < bag.size(); ++j) {
    if (!bag.attackers(j).empty() || !bag.supporters(j).empty()) continue;
    v.require(exact.values[j] == bag.weight(j), bag.name(j) + " moved off its weight");
  }
  v.require(ms < 10.0, "runtime " + fmt("%.2f", ms) + " ms");
  v.note("P2 " + fmt("%.6f", value_of(bag, exact.values, "P2")) + ", A1 " +
         fmt("%.6f", value_of(bag, exact.values, "A1")) + ", A2 " +
         fmt("%.6f", value_of(bag, exact.values, "A2")) + ", " + fmt("%.2f", ms) + " ms");
  return v;
}

Verdict edemocracy_ode() {
  Verdict v;
  testkit::TempDir tmp("acc2");
  const auto file = tmp / "edemocracy.bag";
  write_bag_file(file, edemocracy_fixture(), "");

  std::ostringstream out, err;
  const auto start = Clock::now();
  const int code = cli::run({"solve", "--algo", "ode", "--method", "rk4", "--delta", "0.01",
                             "--epsilon", "1e-4", file.string()},
                            out, err);
  const double ms = elapsed_ms(start);
  v.require(code == cli::kExitOk, "exit code " + std::to_string(code));
  v.require(out.str().find("status: converged") != std::string::npos, "ODE run did not converge");

  const Bag bag = edemocracy_fixture();
  SolverConfig config;
  config.step = 0.01;
  config.epsilon = 1e-4;
  const SolverResult r = integrate(QuadraticEnergy{}, bag, config);
  const double diff =
      max_norm_distance(r.final_state.values, acyclic_equilibrium(QuadraticEnergy{}, bag).values);
  v.require(r.converged(), "library run did not converge");
  v.require(diff <= 1e-3, "max difference " + fmt("%.3g", diff));
  v.require(ms < 1000.0, "runtime " + fmt("%.1f", ms) + " ms");
  v.note("max |ode - exact| = " + fmt("%.3g", diff) + ", " + fmt("%.1f", ms) + " ms");
  return v;
}

Verdict stock_fixture_values() {
  Verdict v;
  const Bag bag = stock_fixture();
  const auto start = Clock::now();
  const SolverResult r = integrate(QuadraticEnergy{}, bag, SolverConfig{});
  const double ms = elapsed_ms(start);
  v.require(r.converged(), "status " + std::string(to_string(r.status)));
  const std::pair<const char*, double> expected[] = {
      {"Buy", 0.82}, {"Sell", 0.36}, {"1", 0.20}, {"2", 0.80},
      {"3", 0.16},   {"4", 0.90},    {"5", 0.90}};
  std::string values;
  for (auto [name, target] : expected) {
    const double got = value_of(bag, r.final_state.values, name);
    v.require(std::abs(got - target) <= 0.01,
              std::string(name) + "=" + fmt("%.4f", got) + " vs " + fmt("%.2f", target));
    values += std::string(values.empty() ? "" : " ") + name + ":" + fmt("%.4f", got);
  }
  v.require(ms < 1000.0, "runtime " + fmt("%.1f", ms) + " ms");
  v.note(values + ", t=" + fmt("%.2f", r.final_time) + ", " + fmt("%.1f", ms) + " ms");
  return v;
}

Verdict cycle_family() {
  Verdict v;
  for (std::size_t k : {3u, 10u}) {
    const Bag bag = cycle_k(k);
    const auto start = Clock::now();
    const SolverResult r = integrate(QuadraticEnergy{}, bag, SolverConfig{});
    const double ms = elapsed_ms(start);
    const std::string tag = "Cycle(" + std::to_string(k) + ")";
    const std::size_t flips = r.report.arguments[*bag.find("A")].sign_changes;
    v.require(r.converged(), tag + " status " + std::string(to_string(r.status)));
    v.require(ms < 5000.0, tag + " runtime " + fmt("%.1f", ms) + " ms");
    if (k == 10) v.require(flips >= 2, tag + " A sign changes " + std::to_string(flips));
    v.note(tag + " t=" + fmt("%.2f", r.final_time) + " A sign changes " + std::to_string(flips) +
           ", " + fmt("%.1f", ms) + " ms");
  }
  return v;
}

Verdict rk4_order() {
  Verdict v;
  const Bag bag = stock_fixture();
  const QuadraticEnergy quad;
  const auto run_to_two = [&](double step) {
    SolverConfig c;
    c.step = step;
    c.max_time = 2.0;
    c.epsilon = 1e-300;  // never stop early; the horizon is the only exit
    const SolverResult r = integrate(quad, bag, c);
    if (std::abs(r.final_time - 2.0) > 1e-9) throw std::logic_error("horizon missed");
    return r.final_state.values;
  };
  const auto start = Clock::now();
  const auto reference = run_to_two(0.0005);
  const double coarse = max_norm_distance(run_to_two(0.04), reference);
  const double fine = max_norm_distance(run_to_two(0.02), reference);
  const double ms = elapsed_ms(start);
  const double ratio = coarse / fine;
  v.require(ratio >= 8.0, "error ratio " + fmt("%.2f", ratio) + " < 8");
  v.require(ms < 5000.0, "runtime " + fmt("%.1f", ms) + " ms");
  v.note("err(0.04)=" + fmt("%.3g", coarse) + " err(0.02)=" + fmt("%.3g", fine) + " ratio " +
         fmt("%.2f", ratio) + ", " + fmt("%.1f", ms) + " ms");
  return v;
}

Verdict continuization_fixed_point() {
  Verdict v;
  for (ModelKind kind : kAllModels) {
    const auto model = make_semantics(kind);
    std::size_t converged = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      GenSpec g;
      g.nodes = 30;
      g.edges = 90;
      g.seed = 6000 + seed;
      const Bag bag = random_bag(g);
      const SolverResult r = integrate(*model, bag, SolverConfig{});
      if (!r.converged()) continue;
      ++converged;
      worst = std::max(worst, fixed_point_residual(*model, bag, r.final_state.values));
    }
    v.require(worst <= 1e-4, std::string(model->id()) + " residual " + fmt("%.3g", worst));
    v.note(std::string(model->id()) + " " + std::to_string(converged) + "/50 converged, max residual " +
           fmt("%.2g", worst));
  }
  return v;
}

Verdict property_suite() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(7007);

  // (a) range
  std::size_t range_runs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto model = make_semantics(kAllModels[trial % 4]);
    const Bag bag = testkit::random_test_bag(rng, 50, 150);
    try {
      const SolverResult r = integrate(*model, bag, SolverConfig{});
      for (const ArgumentReport& a : r.report.arguments) {
        if (a.lower_bound < 0.0 || a.upper_bound > 1.0) {
          v.require(false, "(a) left [0,1] on trial " + std::to_string(trial));
        }
      }
      ++range_runs;
    } catch (const SolverError& e) {
      v.require(false, std::string("(a) ") + e.what());
    }
  }

  // (b) support-only monotone, attack-only capped
  for (int trial = 0; trial < 20; ++trial) {
    const Bag sup = testkit::random_test_bag(rng, 30, 90, testkit::EdgeKinds::supports_only);
    SolverConfig c;
    c.record_trajectory = true;
    c.record_every = 1;
    const SolverResult r = integrate(QuadraticEnergy{}, sup, c);
    const auto& traj = *r.trajectory;
    bool monotone = true;
    for (std::size_t k = 1; k < traj.size(); ++k) {
      for (std::size_t j = 0; j < sup.size(); ++j) {
        monotone = monotone && traj[k].values[j] >= traj[k - 1].values[j] - 1e-12;
      }
    }
    v.require(monotone, "(b) support-only run decreased on trial " + std::to_string(trial));

    const Bag att = testkit::random_test_bag(rng, 30, 90, testkit::EdgeKinds::attacks_only);
    const SolverResult ra = integrate(QuadraticEnergy{}, att, SolverConfig{});
    for (ArgId j = 0; j < att.size(); ++j) {
      if (ra.report.arguments[j].upper_bound > att.weight(j) + 1e-12) {
        v.require(false, "(b) attack-only run exceeded a weight on trial " + std::to_string(trial));
        break;
      }
    }
  }

  // (c) Euler-based stationarity at w in {0,1}
  for (int trial = 0; trial < 20; ++trial) {
    const Bag base = testkit::random_test_bag(rng, 20, 60);
    std::vector<Argument> args(base.arguments().begin(), base.arguments().end());
    for (std::size_t j = 0; j < args.size(); j += 3) args[j].weight = (j / 3) % 2 ? 1.0 : 0.0;
    const Bag bag(args, base.attacks(), base.supports());
    const SolverResult r = integrate(EulerBased{}, bag, SolverConfig{});
    for (std::size_t j = 0; j < args.size(); j += 3) {
      const ArgumentReport& a = r.report.arguments[j];
      v.require(a.lower_bound == args[j].weight && a.upper_bound == args[j].weight,
                "(c) argument with weight " + fmt("%g", args[j].weight) + " moved");
    }
  }

  // (d) parent locality
  for (ModelKind kind : kAllModels) {
    const auto model = make_semantics(kind);
    for (int trial = 0; trial < 50; ++trial) {
      const Bag bag = testkit::random_test_bag(rng, 20, 50);
      const auto s = testkit::random_state(rng, bag.size());
      const auto j = static_cast<ArgId>(rng() % bag.size());
      auto perturbed = testkit::random_state(rng, bag.size());
      for (ArgId i : bag.attackers(j)) perturbed[i] = s[i];
      for (ArgId i : bag.supporters(j)) perturbed[i] = s[i];
      if (model->update_at(bag, s, j) != model->update_at(bag, perturbed, j)) {
        v.require(false, "(d) " + std::string(model->id()) + " read a non-parent");
        break;
      }
    }
  }

  // (e) unit Euler step is the discrete update
  for (ModelKind kind : kAllModels) {
    const auto model = make_semantics(kind);
    for (int trial = 0; trial < 50; ++trial) {
      const Bag bag = testkit::random_test_bag(rng, 20, 60);
      const State s{testkit::random_state(rng, bag.size()), 0.0};
      const double gap =
          max_norm_distance(euler_step(*model, bag, s, 1.0).values, model->update(bag, s.values));
      if (gap > 1e-15) {
        v.require(false, "(e) " + std::string(model->id()) + " gap " + fmt("%.3g", gap));
        break;
      }
    }
  }

  const double ms = elapsed_ms(start);
  v.require(ms < 60000.0, "runtime " + fmt("%.0f", ms) + " ms");
  v.note("(a)-(e) checked, " + std::to_string(range_runs) + " range runs, " + fmt("%.0f", ms) +
         " ms");
  return v;
}

Verdict euler_vs_rk4() {
  Verdict v;
  for (const auto& [name, bag] : {std::pair{"stock", stock_fixture()},
                                  std::pair{"edemocracy", edemocracy_fixture()}}) {
    SolverConfig euler;
    euler.method = StepMethod::euler;
    euler.step = 0.001;
    SolverConfig rk4;
    rk4.step = 0.01;
    const SolverResult a = integrate(QuadraticEnergy{}, bag, euler);
    const SolverResult b = integrate(QuadraticEnergy{}, bag, rk4);
    const double diff = max_norm_distance(a.final_state.values, b.final_state.values);
    v.require(a.converged() && b.converged(), std::string(name) + " did not converge");
    v.require(diff <= 1e-3, std::string(name) + " difference " + fmt("%.3g", diff));
    v.note(std::string(name) + " " + fmt("%.2g", diff));
  }
  return v;
}

Verdict desk_scale_benchmark() {
  Verdict v;
  testkit::TempDir tmp("acc9");
  BenchmarkSpec spec;
  spec.base_size = 100;
  spec.increments = 5;
  spec.trials = 5;
  spec.edge_ratio = 10.0;
  const auto start = Clock::now();
  generate_benchmark(tmp.path(), spec);
  BenchOptions options;
  options.jobs = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  const BenchReport report = run_benchmark(tmp.path(), QuadraticEnergy{}, SolverConfig{}, options);
  const double ms = elapsed_ms(start);

  std::size_t done = 0;
  for (const BenchRecord& r : report.records) {
    if (r.status == "converged" || r.status == "exact") ++done;
  }
  const double share = report.records.empty()
                           ? 0.0
                           : static_cast<double>(done) / static_cast<double>(report.records.size());
  v.require(report.records.size() == 25, std::to_string(report.records.size()) + " records");
  v.require(share >= 0.95, "converged share " + fmt("%.2f", share));

  std::ostringstream csv;
  write_stats_csv(csv, report.stats, "model=quad");
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  v.require(line.starts_with("# "), "missing settings line");
  std::getline(in, line);
  v.require(line == "size,count,min_ms,mean_ms,max_ms", "bad header '" + line + "'");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::size_t size = 0, count = 0;
    double lo = 0, mean = 0, hi = 0;
    const bool parsed =
        std::sscanf(line.c_str(), "%zu,%zu,%lf,%lf,%lf", &size, &count, &lo, &mean, &hi) == 5;
    v.require(parsed && lo <= mean && mean <= hi, "bad stats row '" + line + "'");
    v.require(size == 100 * (rows + 1), "unexpected size in '" + line + "'");
    ++rows;
  }
  v.require(rows == 5, std::to_string(rows) + " stats rows");
  v.require(ms < 300000.0, "runtime " + fmt("%.0f", ms) + " ms");
  v.note(std::to_string(done) + "/" + std::to_string(report.records.size()) + " converged, " +
         fmt("%.0f", ms) + " ms");
  return v;
}

Verdict format_round_trip() {
  Verdict v;
  std::mt19937_64 rng(1010);
  std::size_t ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const Bag bag = testkit::random_test_bag(rng, n, rng() % (3 * n + 1));
    const Bag back = parse_bag(serialize_bag(bag));
    bool same = structurally_equal(bag, back, 1.0) && back.size() == bag.size();
    for (ArgId j = 0; same && j < bag.size(); ++j) {
      char digits[32];
      std::snprintf(digits, sizeof digits, "%.6g", bag.weight(j));
      same = back.name(j) == bag.name(j) && back.weight(j) == std::strtod(digits, nullptr);
    }
    if (same) ++ok;
  }
  v.require(ok == 200, std::to_string(ok) + "/200 round-trips");

  const Bag plain = parse_bag(
      "arg(a).\narg(b).\narg(c).\natt(a,b).\natt(b,c).\natt(c,a).\natt(a,c).\n");
  bool halves = plain.size() == 3;
  for (const Argument& a : plain.arguments()) halves = halves && a.weight == 0.5;
  v.require(halves, "ConArg-style weights are not all 0.5");
  v.note(std::to_string(ok) + "/200 round-trips, unweighted file loads at 0.5");
  return v;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "e-democracy exact values", edemocracy_exact},
      {2, "e-democracy ODE agrees with exact pass", edemocracy_ode},
      {3, "stock fixture published strengths", stock_fixture_values},
      {4, "Cycle(3) and Cycle(10) converge with damped oscillation", cycle_family},
      {5, "RK4 error ratio >= 8 on stock fixture, T=2, delta 0.04 -> 0.02", rk4_order},
      {6, "converged runs are fixed points (all models)", continuization_fixed_point},
      {7, "property suite", property_suite},
      {8, "Euler (0.001) vs RK4 (0.01) on both fixtures", euler_vs_rk4},
      {9, "desk-scale benchmark 100..500", desk_scale_benchmark},
      {10, "format round-trip and unweighted input", format_round_trip},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }

  int failures = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failures;
    std::printf("%s [%d] %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
