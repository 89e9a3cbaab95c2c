#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wbag {

using ArgId = std::uint32_t;

/// Thrown when a graph violates its structural invariants.
class BagError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Argument {
  std::string name;
  double weight = 0.5;

  friend bool operator==(const Argument&, const Argument&) = default;
};

struct Edge {
  ArgId source = 0;
  ArgId target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// True if `name` is usable as an argument label: non-empty, no whitespace,
/// commas, parentheses, and no `//` (comment marker in the text format).
bool is_valid_name(std::string_view name);

/// Weighted bipolar argumentation graph. Immutable once constructed.
///
/// Attacks and supports are independent relations: each is a set of ordered
/// pairs, but the same pair may appear in both. Self-loops are allowed.
/// Per-argument parent lists (attackers, supporters) are precomputed in
/// compressed-row form so that semantics can evaluate one argument in time
/// proportional to its in-degree.
class Bag {
 public:
  Bag() = default;

  /// Validates every invariant; throws BagError on the first violation.
  Bag(std::vector<Argument> arguments, std::vector<Edge> attacks,
      std::vector<Edge> supports);

  std::size_t size() const { return arguments_.size(); }
  bool empty() const { return arguments_.empty(); }

  const std::vector<Argument>& arguments() const { return arguments_; }
  const Argument& argument(ArgId id) const { return arguments_.at(id); }
  const std::string& name(ArgId id) const { return arguments_.at(id).name; }
  double weight(ArgId id) const { return arguments_.at(id).weight; }
  std::vector<double> weights() const;

  /// Edges in declaration order.
  const std::vector<Edge>& attacks() const { return attacks_; }
  const std::vector<Edge>& supports() const { return supports_; }

  std::span<const ArgId> attackers(ArgId target) const {
    return parents(attacker_offsets_, attacker_ids_, target);
  }
  std::span<const ArgId> supporters(ArgId target) const {
    return parents(supporter_offsets_, supporter_ids_, target);
  }

  std::optional<ArgId> find(std::string_view name) const;

  bool has_attack(ArgId source, ArgId target) const;
  bool has_support(ArgId source, ArgId target) const;

 private:
  static std::span<const ArgId> parents(const std::vector<std::size_t>& offsets,
                                        const std::vector<ArgId>& ids,
                                        ArgId target) {
    return {ids.data() + offsets[target], offsets[target + 1] - offsets[target]};
  }

  std::vector<Argument> arguments_;
  std::vector<Edge> attacks_;
  std::vector<Edge> supports_;
  std::vector<std::size_t> attacker_offsets_{0};
  std::vector<ArgId> attacker_ids_;
  std::vector<std::size_t> supporter_offsets_{0};
  std::vector<ArgId> supporter_ids_;
  std::vector<ArgId> by_name_;  // argument ids sorted by name
};

/// Structural equality: same names in the same order, weights equal within
/// `weight_tolerance`, and equal attack and support sets (edge order ignored).
bool structurally_equal(const Bag& a, const Bag& b, double weight_tolerance = 0.0);

/// Incremental construction with early error reporting.
class BagBuilder {
 public:
  ArgId add_argument(std::string name, double weight = 0.5);
  void add_attack(ArgId source, ArgId target);
  void add_support(ArgId source, ArgId target);

  std::size_t size() const { return arguments_.size(); }
  Bag build() &&;
  Bag build() const&;

 private:
  std::vector<Argument> arguments_;
  std::vector<Edge> attacks_;
  std::vector<Edge> supports_;
};

/// Initial weight from a track record of `t` correct and `f` incorrect
/// assessments, with pseudocounts encoding a prior bias.
double weight_from_counts(std::uint64_t t, std::uint64_t f, std::uint64_t t_bias,
                          std::uint64_t f_bias);

}  // namespace wbag
