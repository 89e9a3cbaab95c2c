#include "wbag/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wbag {

State initial_state(const Bag& bag) { return State{bag.weights(), 0.0}; }

void check_state(const Bag& bag, std::span<const double> values, double tolerance) {
  if (values.size() != bag.size()) {
    throw std::invalid_argument("state has " + std::to_string(values.size()) +
                                " components, graph has " + std::to_string(bag.size()) +
                                " arguments");
  }
  for (ArgId j = 0; j < values.size(); ++j) {
    const double v = values[j];
    if (!(v >= -tolerance && v <= 1.0 + tolerance)) {
      throw std::invalid_argument("strength of '" + bag.name(j) + "' is " +
                                  std::to_string(v) + ", outside [0,1]");
    }
  }
}

double energy(const Bag& bag, std::span<const double> s, ArgId j) {
  double e = 0.0;
  for (ArgId i : bag.supporters(j)) e += s[i];
  for (ArgId i : bag.attackers(j)) e -= s[i];
  return e;
}

double impact(double x) {
  if (!(x > 0.0)) return 0.0;
  if (x > 1e150) return 1.0;
  const double sq = x * x;
  return sq / (1.0 + sq);
}

double geometric_energy(const Bag& bag, std::span<const double> s, ArgId j) {
  double att = 1.0;
  double sup = 1.0;
  for (ArgId i : bag.attackers(j)) att *= 1.0 - s[i];
  for (ArgId i : bag.supporters(j)) sup *= 1.0 - s[i];
  return att - sup;
}

double squared_geometric_energy(const Bag& bag, std::span<const double> s, ArgId j) {
  double att = 1.0;
  double sup = 1.0;
  for (ArgId i : bag.attackers(j)) att *= 1.0 - s[i] * s[i];
  for (ArgId i : bag.supporters(j)) sup *= 1.0 - s[i] * s[i];
  return att - sup;
}

double quadratic_energy_combine(double weight, double e) {
  return weight + (1.0 - weight) * impact(e) - weight * impact(-e);
}

double euler_based_combine(double weight, double e) {
  // w = 0 must stay 0 even when exp(e) overflows (0 * inf).
  if (weight == 0.0) return 0.0;
  const double denom = 1.0 + weight * std::exp(e);
  if (std::isinf(denom)) return 1.0;
  return 1.0 - (1.0 - weight * weight) / denom;
}

double df_quad_combine(double weight, double aggregate) {
  return weight + weight * std::min(aggregate, 0.0) + (1.0 - weight) * std::max(aggregate, 0.0);
}

void Semantics::update(const Bag& bag, std::span<const double> s, std::span<double> out) const {
  for (ArgId j = 0; j < bag.size(); ++j) out[j] = update_at(bag, s, j);
}

std::vector<double> Semantics::update(const Bag& bag, std::span<const double> s) const {
  std::vector<double> out(bag.size());
  update(bag, s, out);
  return out;
}

void Semantics::derivative(const Bag& bag, std::span<const double> s,
                           std::span<double> out) const {
  for (ArgId j = 0; j < bag.size(); ++j) out[j] = update_at(bag, s, j) - s[j];
}

std::vector<double> Semantics::derivative(const Bag& bag, std::span<const double> s) const {
  std::vector<double> out(bag.size());
  derivative(bag, s, out);
  return out;
}

double QuadraticEnergy::update_at(const Bag& bag, std::span<const double> s, ArgId j) const {
  return quadratic_energy_combine(bag.weight(j), energy(bag, s, j));
}

double EulerBased::update_at(const Bag& bag, std::span<const double> s, ArgId j) const {
  return euler_based_combine(bag.weight(j), energy(bag, s, j));
}

double DfQuad::update_at(const Bag& bag, std::span<const double> s, ArgId j) const {
  return df_quad_combine(bag.weight(j), geometric_energy(bag, s, j));
}

double SquaredDfQuad::update_at(const Bag& bag, std::span<const double> s, ArgId j) const {
  return df_quad_combine(bag.weight(j), squared_geometric_energy(bag, s, j));
}

std::unique_ptr<Semantics> make_semantics(ModelKind kind) {
  switch (kind) {
    case ModelKind::quadratic_energy:
      return std::make_unique<QuadraticEnergy>();
    case ModelKind::euler_based:
      return std::make_unique<EulerBased>();
    case ModelKind::df_quad:
      return std::make_unique<DfQuad>();
    case ModelKind::squared_df_quad:
      return std::make_unique<SquaredDfQuad>();
  }
  throw std::invalid_argument("unknown model kind");
}

std::optional<ModelKind> model_from_id(std::string_view id) {
  for (ModelKind k : kAllModels) {
    if (make_semantics(k)->id() == id) return k;
  }
  return std::nullopt;
}

}  // namespace wbag
