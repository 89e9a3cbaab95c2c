#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wbag/bag.hpp"
#include "wbag/semantics.hpp"

namespace wbag {

/// Integration failed: a strength left [0,1] or became non-finite.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StepMethod { euler, rk4 };

struct SolverConfig {
  double step = 0.01;
  double epsilon = 1e-4;  // convergence threshold on max |ds/dt|
  double max_time = 1000.0;
  std::chrono::duration<double> wall_clock_limit{30.0};
  StepMethod method = StepMethod::rk4;
  std::size_t record_every = 10;
  bool record_trajectory = false;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

enum class SolverStatus { converged, time_cap_reached, wall_clock_cap_reached };

std::string_view to_string(SolverStatus status);
std::string_view to_string(StepMethod method);
std::optional<StepMethod> step_method_from_string(std::string_view name);

struct ArgumentReport {
  bool converged = false;  // |ds_j/dt| <= epsilon at exit
  double final_value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::size_t sign_changes = 0;
};

/// Per-argument oscillation monitor. A derivative sign flip is counted only
/// when |ds_j/dt| exceeds epsilon on both sides of the flip.
struct ConvergenceReport {
  std::vector<ArgumentReport> arguments;

  std::size_t converged_count() const;
};

struct TrajectorySample {
  double time = 0.0;
  std::vector<double> values;
};

struct SolverResult {
  SolverStatus status = SolverStatus::time_cap_reached;
  State final_state;
  std::size_t steps_taken = 0;
  double final_time = 0.0;
  double max_derivative = 0.0;  // max |ds/dt| at final_state
  std::optional<std::vector<TrajectorySample>> trajectory;
  ConvergenceReport report;

  bool converged() const { return status == SolverStatus::converged; }
};

/// Autonomous vector field: writes ds/dt at `s` into `out`.
using VectorField = std::function<void(std::span<const double> s, std::span<double> out)>;

/// Reusable buffers for repeated stepping of one system size.
class Stepper {
 public:
  Stepper(StepMethod method, std::size_t dimension);

  StepMethod method() const { return method_; }

  /// Advances `s` in place by one step. `slope` must hold field(s); for RK4
  /// it is reused as the first stage.
  void advance(const VectorField& field, std::span<double> s, std::span<const double> slope,
               double step);

 private:
  StepMethod method_;
  std::vector<double> k2_, k3_, k4_, probe_;
};

State euler_step(const Semantics& model, const Bag& bag, const State& s, double step);
State rk4_step(const Semantics& model, const Bag& bag, const State& s, double step);

/// Single RK4 step on an arbitrary field; the model-free form is what the
/// order-of-accuracy tests drive.
std::vector<double> rk4_step(const VectorField& field, std::span<const double> s, double step);
std::vector<double> euler_step(const VectorField& field, std::span<const double> s,
                               double step);

/// Integrates from s(0) = weights until max |ds/dt| <= epsilon, the simulated
/// time reaches max_time, or the wall-clock limit fires.
///
/// Throws SolverError when a strength leaves [0,1] by more than 1e-9 or
/// becomes non-finite; that indicates a step size too large for the field.
SolverResult integrate(const Semantics& model, const Bag& bag, const SolverConfig& config);

struct RefinementResult {
  SolverResult coarse;  // at config.step
  SolverResult fine;    // at config.step / 2
  double difference = 0.0;  // max-norm distance of the final states
  bool stable = false;      // difference <= 10 * epsilon
};

RefinementResult integrate_with_refinement(const Semantics& model, const Bag& bag,
                                           const SolverConfig& config);

/// max_j |f_j(s) - s_j|
double fixed_point_residual(const Semantics& model, const Bag& bag, std::span<const double> s);

double max_norm(std::span<const double> v);
double max_norm_distance(std::span<const double> a, std::span<const double> b);

}  // namespace wbag
