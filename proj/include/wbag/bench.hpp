#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wbag/semantics.hpp"
#include "wbag/solver.hpp"

namespace wbag {

struct BenchRecord {
  std::size_t size = 0;
  std::string file;
  /// A SolverStatus name, "exact" for the acyclic pass, or "error".
  std::string status;
  std::size_t steps = 0;
  double wall_ms = 0.0;
  double residual = 0.0;  // NaN when the file could not be solved
  std::string message;    // failure detail, empty on success
};

struct SizeStats {
  std::size_t size = 0;
  std::size_t count = 0;  // timed solves; failures are excluded
  double min_ms = 0.0;
  double mean_ms = 0.0;
  double max_ms = 0.0;
};

struct BenchOptions {
  std::size_t jobs = 1;
  bool acyclic_fast_path = true;
  bool warmup = true;
};

struct BenchReport {
  std::vector<BenchRecord> records;  // sorted by (size, file)
  std::vector<SizeStats> stats;      // sorted by size
  std::vector<std::string> warnings;
};

/// Solves every file under `dir`/<size>/ (size-named subdirectories) and
/// aggregates wall time per size. Only the solve call is timed. Files that
/// fail to parse or solve are recorded with status "error" and the run
/// continues. Throws std::filesystem::filesystem_error if `dir` is unreadable.
BenchReport run_benchmark(const std::filesystem::path& dir, const Semantics& model,
                          const SolverConfig& config, const BenchOptions& options = {});

std::vector<SizeStats> aggregate(const std::vector<BenchRecord>& records);

/// size,file,status,steps,wall_ms,residual
void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// size,count,min_ms,mean_ms,max_ms, preceded by one `#` comment line that
/// records the run settings.
void write_stats_csv(std::ostream& out, const std::vector<SizeStats>& stats,
                     const std::string& settings_comment);

}  // namespace wbag
