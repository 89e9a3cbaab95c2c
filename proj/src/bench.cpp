#include "wbag/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "wbag/acyclic.hpp"
#include "wbag/format.hpp"

namespace wbag {

namespace {

struct Job {
  std::size_t size;
  std::filesystem::path path;
};

std::optional<std::size_t> parse_size(const std::string& name) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  return value;
}

struct Solved {
  std::string status;
  std::size_t steps = 0;
  std::vector<double> values;
};

Solved solve(const Semantics& model, const Bag& bag, const SolverConfig& config,
             bool acyclic_fast_path) {
  if (acyclic_fast_path && is_acyclic(bag)) {
    return {"exact", 0, acyclic_equilibrium(model, bag).values};
  }
  SolverResult r = integrate(model, bag, config);
  return {std::string(to_string(r.status)), r.steps_taken, std::move(r.final_state.values)};
}

BenchRecord run_one(const Job& job, const Semantics& model, const SolverConfig& config,
                    const BenchOptions& options) {
  BenchRecord rec;
  rec.size = job.size;
  rec.file = job.path.filename().string();
  rec.residual = std::numeric_limits<double>::quiet_NaN();
  try {
    const Bag bag = read_bag_file(job.path);
    const auto start = std::chrono::steady_clock::now();
    Solved s = solve(model, bag, config, options.acyclic_fast_path);
    const auto stop = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rec.status = std::move(s.status);
    rec.steps = s.steps;
    rec.residual = fixed_point_residual(model, bag, s.values);
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.message = e.what();
  }
  return rec;
}

}  // namespace

BenchReport run_benchmark(const std::filesystem::path& dir, const Semantics& model,
                          const SolverConfig& config, const BenchOptions& options) {
  config.validate();
  BenchReport report;
  std::vector<Job> jobs;

  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    const auto size = parse_size(name);
    if (!size) {
      report.warnings.push_back("skipping non-numeric directory '" + name + "'");
      continue;
    }
    for (const auto& file : std::filesystem::directory_iterator(entry.path())) {
      if (file.is_regular_file()) jobs.push_back({*size, file.path()});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return std::tie(a.size, a.path) < std::tie(b.size, b.path);
  });

  if (options.warmup && !jobs.empty()) run_one(jobs.front(), model, config, options);

  report.records.resize(jobs.size());
  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(jobs.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      report.records[i] = run_one(jobs[i], model, config, options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          report.records[i] = run_one(jobs[i], model, config, options);
        }
      });
    }
  }

  report.stats = aggregate(report.records);
  return report;
}

std::vector<SizeStats> aggregate(const std::vector<BenchRecord>& records) {
  std::map<std::size_t, SizeStats> by_size;
  for (const BenchRecord& r : records) {
    SizeStats& s = by_size[r.size];
    s.size = r.size;
    if (r.status == "error") continue;
    if (s.count == 0) {
      s.min_ms = s.max_ms = r.wall_ms;
    } else {
      s.min_ms = std::min(s.min_ms, r.wall_ms);
      s.max_ms = std::max(s.max_ms, r.wall_ms);
    }
    s.mean_ms += r.wall_ms;
    ++s.count;
  }
  std::vector<SizeStats> out;
  for (auto& [size, s] : by_size) {
    if (s.count > 0) s.mean_ms /= static_cast<double>(s.count);
    // Keep mean within [min, max] despite summation rounding.
    s.mean_ms = std::clamp(s.mean_ms, s.min_ms, s.max_ms);
    out.push_back(s);
  }
  return out;
}

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "size,file,status,steps,wall_ms,residual\n";
  char buf[64];
  for (const BenchRecord& r : records) {
    out << r.size << ',' << r.file << ',' << r.status << ',' << r.steps << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.wall_ms);
    out << buf << ',';
    if (std::isnan(r.residual)) {
      out << "nan";
    } else {
      std::snprintf(buf, sizeof buf, "%.9g", r.residual);
      out << buf;
    }
    out << '\n';
  }
}

void write_stats_csv(std::ostream& out, const std::vector<SizeStats>& stats,
                     const std::string& settings_comment) {
  if (!settings_comment.empty()) out << "# " << settings_comment << '\n';
  out << "size,count,min_ms,mean_ms,max_ms\n";
  char buf[128];
  for (const SizeStats& s : stats) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f,%.6f,%.6f\n", s.size, s.count, s.min_ms,
                  s.mean_ms, s.max_ms);
    out << buf;
  }
}

}  // namespace wbag
