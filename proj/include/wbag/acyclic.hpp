#pragma once

#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "wbag/bag.hpp"
#include "wbag/semantics.hpp"

namespace wbag {

class CyclicGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Permutation of argument ids where every attack or support source precedes
/// its target.
struct TopologicalOrder {
  std::vector<ArgId> order;
};

/// Evidence that a graph is cyclic.
struct CyclicVerdict {
  /// A strongly connected component with at least two members, or a single
  /// argument with a self-loop. Sorted by id.
  std::vector<ArgId> component;
  /// One simple cycle inside `component`, starting at its lowest id; the edge
  /// back to the first element is implied.
  std::vector<ArgId> cycle;
};

using OrderResult = std::variant<TopologicalOrder, CyclicVerdict>;

/// Kahn elimination over attacks and supports; ready arguments are taken in
/// increasing id order, so the result is deterministic.
OrderResult topological_order(const Bag& bag);

bool is_acyclic(const Bag& bag);

/// True if `order` is a permutation of the argument ids respecting every edge.
bool is_valid_topological_order(const Bag& bag, std::span<const ArgId> order);

/// Exact equilibrium of an acyclic graph: each argument's update is evaluated
/// once, after all of its parents are final. Throws CyclicGraphError.
State acyclic_equilibrium(const Semantics& model, const Bag& bag);

/// Same, following a caller-supplied order. Throws std::invalid_argument if
/// the order is not a valid topological order of `bag`.
State acyclic_equilibrium(const Semantics& model, const Bag& bag,
                          std::span<const ArgId> order);

}  // namespace wbag
