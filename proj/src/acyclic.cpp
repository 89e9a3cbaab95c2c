#include "wbag/acyclic.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace wbag {

namespace {

// Children per argument over both relations, compressed-row.
struct Successors {
  std::vector<std::size_t> offsets;
  std::vector<ArgId> ids;

  explicit Successors(const Bag& bag) : offsets(bag.size() + 1, 0) {
    for (const auto* rel : {&bag.attacks(), &bag.supports()}) {
      for (const Edge& e : *rel) ++offsets[e.source + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    ids.resize(offsets.back());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto* rel : {&bag.attacks(), &bag.supports()}) {
      for (const Edge& e : *rel) ids[cursor[e.source]++] = e.target;
    }
  }

  std::span<const ArgId> of(ArgId v) const {
    return {ids.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }

  bool self_loop(ArgId v) const {
    const auto children = of(v);
    return std::find(children.begin(), children.end(), v) != children.end();
  }
};

constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

// Iterative Tarjan restricted to `alive` vertices. Returns the first SCC that
// is non-trivial (size >= 2 or a self-loop).
std::vector<ArgId> find_cyclic_component(std::size_t n, const Successors& succ,
                                         const std::vector<bool>& alive) {
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<ArgId> stack;
  std::size_t counter = 0;

  struct Frame {
    ArgId v;
    std::size_t next_child;
  };

  for (ArgId root = 0; root < n; ++root) {
    if (!alive[root] || index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto children = succ.of(f.v);
      if (f.next_child < children.size()) {
        const ArgId w = children[f.next_child++];
        if (!alive[w]) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const ArgId v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] != index[v]) continue;

      std::vector<ArgId> component;
      ArgId w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);

      if (component.size() >= 2 || succ.self_loop(v)) {
        std::sort(component.begin(), component.end());
        return component;
      }
    }
  }
  return {};
}

// Shortest cycle through the lowest-id member, staying inside the component.
std::vector<ArgId> witness_cycle(const Bag& bag, const Successors& succ,
                                 const std::vector<ArgId>& component) {
  const ArgId start = component.front();
  if (succ.self_loop(start)) return {start};

  std::vector<bool> member(bag.size(), false);
  for (ArgId v : component) member[v] = true;
  std::vector<ArgId> parent(bag.size(), std::numeric_limits<ArgId>::max());
  std::queue<ArgId> frontier;
  frontier.push(start);
  parent[start] = start;
  while (!frontier.empty()) {
    const ArgId v = frontier.front();
    frontier.pop();
    for (ArgId w : succ.of(v)) {
      if (!member[w]) continue;
      if (w == start) {
        std::vector<ArgId> cycle;
        for (ArgId x = v; x != start; x = parent[x]) cycle.push_back(x);
        cycle.push_back(start);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (parent[w] == std::numeric_limits<ArgId>::max()) {
        parent[w] = v;
        frontier.push(w);
      }
    }
  }
  return component;  // unreachable for a genuine SCC
}

}  // namespace

OrderResult topological_order(const Bag& bag) {
  const std::size_t n = bag.size();
  const Successors succ(bag);
  std::vector<std::size_t> in_degree(n, 0);
  for (ArgId v = 0; v < n; ++v) in_degree[v] = bag.attackers(v).size() + bag.supporters(v).size();

  std::priority_queue<ArgId, std::vector<ArgId>, std::greater<>> ready;
  for (ArgId v = 0; v < n; ++v) {
    if (in_degree[v] == 0) ready.push(v);
  }

  TopologicalOrder result;
  result.order.reserve(n);
  while (!ready.empty()) {
    const ArgId v = ready.top();
    ready.pop();
    result.order.push_back(v);
    for (ArgId w : succ.of(v)) {
      if (--in_degree[w] == 0) ready.push(w);
    }
  }
  if (result.order.size() == n) return result;

  std::vector<bool> alive(n, true);
  for (ArgId v : result.order) alive[v] = false;
  CyclicVerdict verdict;
  verdict.component = find_cyclic_component(n, succ, alive);
  verdict.cycle = witness_cycle(bag, succ, verdict.component);
  return verdict;
}

bool is_acyclic(const Bag& bag) {
  return std::holds_alternative<TopologicalOrder>(topological_order(bag));
}

bool is_valid_topological_order(const Bag& bag, std::span<const ArgId> order) {
  const std::size_t n = bag.size();
  if (order.size() != n) return false;
  std::vector<std::size_t> position(n, kUnvisited);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != kUnvisited) return false;
    position[order[i]] = i;
  }
  for (const auto* rel : {&bag.attacks(), &bag.supports()}) {
    for (const Edge& e : *rel) {
      if (position[e.source] >= position[e.target]) return false;
    }
  }
  return true;
}

State acyclic_equilibrium(const Semantics& model, const Bag& bag) {
  OrderResult r = topological_order(bag);
  if (auto* cyclic = std::get_if<CyclicVerdict>(&r)) {
    std::string names;
    for (ArgId v : cyclic->cycle) names += (names.empty() ? "" : ", ") + bag.name(v);
    throw CyclicGraphError("graph is cyclic (" + names + ")");
  }
  return acyclic_equilibrium(model, bag, std::get<TopologicalOrder>(r).order);
}

State acyclic_equilibrium(const Semantics& model, const Bag& bag,
                          std::span<const ArgId> order) {
  if (!is_valid_topological_order(bag, order)) {
    throw std::invalid_argument("not a topological order of the graph");
  }
  // Parents are final before their children are visited, so one update per
  // argument is exact.
  State s = initial_state(bag);
  for (ArgId v : order) s.values[v] = model.update_at(bag, s.values, v);
  return s;
}

}  // namespace wbag
