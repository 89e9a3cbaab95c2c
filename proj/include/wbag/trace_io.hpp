#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wbag/bag.hpp"
#include "wbag/solver.hpp"

namespace wbag {

/// Header `t,<name1>,<name2>,...`, one row per sample, 9 significant digits.
void write_trajectory_csv(std::ostream& out, const Bag& bag,
                          const std::vector<TrajectorySample>& samples);

/// Header `name,converged,final,lower,upper,sign_changes`.
void write_report_csv(std::ostream& out, const Bag& bag, const ConvergenceReport& report);

struct TrajectoryTable {
  std::vector<std::string> names;            // value columns, without `t`
  std::vector<double> times;
  std::vector<std::vector<double>> columns;  // columns[k][row]
};

/// Reads a trajectory CSV. Throws std::runtime_error on malformed input.
TrajectoryTable read_trajectory_csv(std::istream& in);

/// SVG 1.1 line chart: one polyline per column, linear axes t in [0, T_max]
/// and s in [0, 1], legend on the right.
std::string render_svg(const TrajectoryTable& table, const std::string& title = {});

}  // namespace wbag
