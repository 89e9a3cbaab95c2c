#include "wbag/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace wbag {

namespace {

constexpr double kRangeTolerance = 1e-9;
constexpr std::size_t kClockCheckStride = 16;

VectorField model_field(const Semantics& model, const Bag& bag) {
  return [&model, &bag](std::span<const double> s, std::span<double> out) {
    model.derivative(bag, s, out);
  };
}

void check_finite(const Bag& bag, std::span<const double> v, double t, const char* what) {
  for (ArgId j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j])) {
      throw SolverError(std::string("non-finite ") + what + " at argument '" + bag.name(j) +
                        "' (t=" + std::to_string(t) + ")");
    }
  }
}

void check_range(const Bag& bag, std::span<const double> v, double t) {
  for (ArgId j = 0; j < v.size(); ++j) {
    if (!(v[j] >= -kRangeTolerance && v[j] <= 1.0 + kRangeTolerance)) {
      throw SolverError("strength of '" + bag.name(j) + "' left [0,1] (value " +
                        std::to_string(v[j]) + " at t=" + std::to_string(t) +
                        "); reduce the step size");
    }
  }
}

State single_step(const Semantics& model, const Bag& bag, const State& s, double step,
                  StepMethod method) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  check_state(bag, s.values);
  const VectorField field = model_field(model, bag);
  std::vector<double> slope(bag.size());
  field(s.values, slope);
  State next{s.values, s.time + step};
  Stepper(method, bag.size()).advance(field, next.values, slope, step);
  check_finite(bag, next.values, next.time, "strength");
  check_range(bag, next.values, next.time);
  return next;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be > 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be > 0");
  }
  if (!(max_time >= step)) throw std::invalid_argument("max_time must be >= step");
  if (!(wall_clock_limit.count() > 0.0)) {
    throw std::invalid_argument("wall-clock limit must be > 0");
  }
  if (record_every == 0) throw std::invalid_argument("record_every must be >= 1");
}

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::converged:
      return "converged";
    case SolverStatus::time_cap_reached:
      return "time_cap_reached";
    case SolverStatus::wall_clock_cap_reached:
      return "wall_clock_cap_reached";
  }
  return "unknown";
}

std::string_view to_string(StepMethod method) {
  return method == StepMethod::euler ? "euler" : "rk4";
}

std::optional<StepMethod> step_method_from_string(std::string_view name) {
  if (name == "euler") return StepMethod::euler;
  if (name == "rk4") return StepMethod::rk4;
  return std::nullopt;
}

std::size_t ConvergenceReport::converged_count() const {
  return static_cast<std::size_t>(std::count_if(
      arguments.begin(), arguments.end(), [](const ArgumentReport& a) { return a.converged; }));
}

Stepper::Stepper(StepMethod method, std::size_t dimension) : method_(method) {
  if (method_ == StepMethod::rk4) {
    k2_.resize(dimension);
    k3_.resize(dimension);
    k4_.resize(dimension);
    probe_.resize(dimension);
  }
}

void Stepper::advance(const VectorField& field, std::span<double> s,
                      std::span<const double> slope, double step) {
  const std::size_t n = s.size();
  if (method_ == StepMethod::euler) {
    for (std::size_t i = 0; i < n; ++i) s[i] += step * slope[i];
    return;
  }
  const double half = 0.5 * step;
  for (std::size_t i = 0; i < n; ++i) probe_[i] = s[i] + half * slope[i];
  field(probe_, k2_);
  for (std::size_t i = 0; i < n; ++i) probe_[i] = s[i] + half * k2_[i];
  field(probe_, k3_);
  for (std::size_t i = 0; i < n; ++i) probe_[i] = s[i] + step * k3_[i];
  field(probe_, k4_);
  const double sixth = step / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] += sixth * (slope[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
  }
}

State euler_step(const Semantics& model, const Bag& bag, const State& s, double step) {
  return single_step(model, bag, s, step, StepMethod::euler);
}

State rk4_step(const Semantics& model, const Bag& bag, const State& s, double step) {
  return single_step(model, bag, s, step, StepMethod::rk4);
}

std::vector<double> rk4_step(const VectorField& field, std::span<const double> s, double step) {
  std::vector<double> next(s.begin(), s.end());
  std::vector<double> slope(s.size());
  field(s, slope);
  Stepper(StepMethod::rk4, s.size()).advance(field, next, slope, step);
  return next;
}

std::vector<double> euler_step(const VectorField& field, std::span<const double> s,
                               double step) {
  std::vector<double> next(s.begin(), s.end());
  std::vector<double> slope(s.size());
  field(s, slope);
  Stepper(StepMethod::euler, s.size()).advance(field, next, slope, step);
  return next;
}

SolverResult integrate(const Semantics& model, const Bag& bag, const SolverConfig& config) {
  config.validate();
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();

  const std::size_t n = bag.size();
  const VectorField field = model_field(model, bag);
  Stepper stepper(config.method, n);

  SolverResult result;
  result.final_state = initial_state(bag);
  std::vector<double>& s = result.final_state.values;
  std::vector<double> slope(n);

  result.report.arguments.resize(n);
  for (ArgId j = 0; j < n; ++j) {
    result.report.arguments[j].lower_bound = s[j];
    result.report.arguments[j].upper_bound = s[j];
  }
  std::vector<std::int8_t> last_sign(n, 0);

  if (config.record_trajectory) {
    result.trajectory.emplace();
    result.trajectory->push_back({0.0, s});
  }

  std::size_t steps = 0;
  double t = 0.0;
  for (;;) {
    field(s, slope);
    check_finite(bag, slope, t, "derivative");

    for (ArgId j = 0; j < n; ++j) {
      const double d = slope[j];
      if (std::abs(d) <= config.epsilon) continue;
      const std::int8_t sign = d > 0.0 ? 1 : -1;
      if (last_sign[j] != 0 && last_sign[j] != sign) ++result.report.arguments[j].sign_changes;
      last_sign[j] = sign;
    }

    result.max_derivative = max_norm(slope);
    if (result.max_derivative <= config.epsilon) {
      result.status = SolverStatus::converged;
      break;
    }
    if (t + 0.5 * config.step > config.max_time) {
      result.status = SolverStatus::time_cap_reached;
      break;
    }
    if (steps % kClockCheckStride == 0 && Clock::now() - started >= config.wall_clock_limit) {
      result.status = SolverStatus::wall_clock_cap_reached;
      break;
    }

    stepper.advance(field, s, slope, config.step);
    ++steps;
    t = static_cast<double>(steps) * config.step;
    check_finite(bag, s, t, "strength");
    check_range(bag, s, t);

    for (ArgId j = 0; j < n; ++j) {
      ArgumentReport& r = result.report.arguments[j];
      r.lower_bound = std::min(r.lower_bound, s[j]);
      r.upper_bound = std::max(r.upper_bound, s[j]);
    }
    if (config.record_trajectory && steps % config.record_every == 0) {
      result.trajectory->push_back({t, s});
    }
  }

  result.steps_taken = steps;
  result.final_time = t;
  result.final_state.time = t;
  if (config.record_trajectory && result.trajectory->back().time != t) {
    result.trajectory->push_back({t, s});
  }
  for (ArgId j = 0; j < n; ++j) {
    ArgumentReport& r = result.report.arguments[j];
    r.final_value = s[j];
    r.converged = std::abs(slope[j]) <= config.epsilon;
  }
  return result;
}

RefinementResult integrate_with_refinement(const Semantics& model, const Bag& bag,
                                           const SolverConfig& config) {
  config.validate();
  SolverConfig fine_config = config;
  fine_config.step = config.step / 2.0;
  RefinementResult r{integrate(model, bag, config), integrate(model, bag, fine_config)};
  r.difference = max_norm_distance(r.coarse.final_state.values, r.fine.final_state.values);
  r.stable = r.difference <= 10.0 * config.epsilon;
  return r;
}

double fixed_point_residual(const Semantics& model, const Bag& bag, std::span<const double> s) {
  double worst = 0.0;
  for (ArgId j = 0; j < bag.size(); ++j) {
    worst = std::max(worst, std::abs(model.update_at(bag, s, j) - s[j]));
  }
  return worst;
}

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_norm_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sizes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace wbag
