#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wbag/bag.hpp"

namespace wbag {

/// Strength of every argument at one point in (model) time.
struct State {
  std::vector<double> values;
  double time = 0.0;
};

/// Initial state: every strength equals its argument's weight, t = 0.
State initial_state(const Bag& bag);

/// Checks length and that every component lies in [-tolerance, 1+tolerance].
/// Throws std::invalid_argument naming the first offending argument.
void check_state(const Bag& bag, std::span<const double> values, double tolerance = 1e-9);

// Aggregation primitives ----------------------------------------------------

/// Sum of supporter strengths minus sum of attacker strengths.
double energy(const Bag& bag, std::span<const double> s, ArgId j);

/// max(x,0)^2 / (1 + max(x,0)^2)
double impact(double x);

/// prod_{attackers}(1 - s) - prod_{supporters}(1 - s); empty product is 1.
double geometric_energy(const Bag& bag, std::span<const double> s, ArgId j);

/// As geometric_energy with (1 - s^2) factors.
double squared_geometric_energy(const Bag& bag, std::span<const double> s, ArgId j);

// Per-argument update formulas, exposed for direct evaluation.
double quadratic_energy_combine(double weight, double energy);
double euler_based_combine(double weight, double energy);
double df_quad_combine(double weight, double aggregate);

// Models ---------------------------------------------------------------------

enum class ModelKind { quadratic_energy, euler_based, df_quad, squared_df_quad };

/// A gradual semantics given by its discrete update f. The continuous model is
/// ds/dt = f(s) - s with s(0) = weights, so the derivative is derived here and
/// never overridden.
///
/// Implementations must make update_at(j) depend only on w(j) and the
/// strengths of j's attackers and supporters.
class Semantics {
 public:
  virtual ~Semantics() = default;

  virtual ModelKind kind() const = 0;
  /// CLI identifier: quad, euler, dfquad or sdfquad.
  virtual std::string_view id() const = 0;
  virtual std::string_view display_name() const = 0;

  /// f for a single argument.
  virtual double update_at(const Bag& bag, std::span<const double> s, ArgId j) const = 0;

  void update(const Bag& bag, std::span<const double> s, std::span<double> out) const;
  std::vector<double> update(const Bag& bag, std::span<const double> s) const;

  void derivative(const Bag& bag, std::span<const double> s, std::span<double> out) const;
  std::vector<double> derivative(const Bag& bag, std::span<const double> s) const;
};

class QuadraticEnergy final : public Semantics {
 public:
  ModelKind kind() const override { return ModelKind::quadratic_energy; }
  std::string_view id() const override { return "quad"; }
  std::string_view display_name() const override { return "quadratic energy"; }
  double update_at(const Bag& bag, std::span<const double> s, ArgId j) const override;
};

class EulerBased final : public Semantics {
 public:
  ModelKind kind() const override { return ModelKind::euler_based; }
  std::string_view id() const override { return "euler"; }
  std::string_view display_name() const override { return "continuous Euler-based"; }
  double update_at(const Bag& bag, std::span<const double> s, ArgId j) const override;
};

class DfQuad final : public Semantics {
 public:
  ModelKind kind() const override { return ModelKind::df_quad; }
  std::string_view id() const override { return "dfquad"; }
  std::string_view display_name() const override { return "continuous DF-QuAD"; }
  double update_at(const Bag& bag, std::span<const double> s, ArgId j) const override;
};

class SquaredDfQuad final : public Semantics {
 public:
  ModelKind kind() const override { return ModelKind::squared_df_quad; }
  std::string_view id() const override { return "sdfquad"; }
  std::string_view display_name() const override { return "continuous squared DF-QuAD"; }
  double update_at(const Bag& bag, std::span<const double> s, ArgId j) const override;
};

std::unique_ptr<Semantics> make_semantics(ModelKind kind);

/// Looks up a model by CLI identifier.
std::optional<ModelKind> model_from_id(std::string_view id);

inline constexpr ModelKind kAllModels[] = {ModelKind::quadratic_energy, ModelKind::euler_based,
                                           ModelKind::df_quad, ModelKind::squared_df_quad};

}  // namespace wbag
