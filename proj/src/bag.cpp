#include "wbag/bag.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace wbag {

namespace {

void build_parent_index(std::size_t n, const std::vector<Edge>& edges,
                        std::vector<std::size_t>& offsets, std::vector<ArgId>& ids) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[e.target + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  ids.assign(edges.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) ids[cursor[e.target]++] = e.source;
}

void check_relation(std::size_t n, const std::vector<Edge>& edges, const char* relation,
                    const std::vector<Argument>& args) {
  for (const Edge& e : edges) {
    if (e.source >= n || e.target >= n) {
      throw BagError(std::string(relation) + " edge references argument id out of range");
    }
  }
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw BagError("duplicate " + std::string(relation) + " " + args[dup->source].name +
                   " -> " + args[dup->target].name);
  }
}

bool contains_edge(const std::vector<Edge>& edges, ArgId source, ArgId target) {
  return std::find(edges.begin(), edges.end(), Edge{source, target}) != edges.end();
}

}  // namespace

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (unsigned char c : name) {
    if (std::isspace(c) || c == ',' || c == '(' || c == ')') return false;
  }
  return name.find("//") == std::string_view::npos;
}

Bag::Bag(std::vector<Argument> arguments, std::vector<Edge> attacks,
         std::vector<Edge> supports)
    : arguments_(std::move(arguments)),
      attacks_(std::move(attacks)),
      supports_(std::move(supports)) {
  const std::size_t n = arguments_.size();
  for (const Argument& a : arguments_) {
    if (!is_valid_name(a.name)) throw BagError("invalid argument name '" + a.name + "'");
    if (!(a.weight >= 0.0 && a.weight <= 1.0)) {
      throw BagError("weight of '" + a.name + "' outside [0,1]");
    }
  }

  by_name_.resize(n);
  std::iota(by_name_.begin(), by_name_.end(), ArgId{0});
  std::sort(by_name_.begin(), by_name_.end(),
            [&](ArgId x, ArgId y) { return arguments_[x].name < arguments_[y].name; });
  auto same = std::adjacent_find(by_name_.begin(), by_name_.end(), [&](ArgId x, ArgId y) {
    return arguments_[x].name == arguments_[y].name;
  });
  if (same != by_name_.end()) {
    throw BagError("duplicate argument name '" + arguments_[*same].name + "'");
  }

  check_relation(n, attacks_, "attack", arguments_);
  check_relation(n, supports_, "support", arguments_);

  build_parent_index(n, attacks_, attacker_offsets_, attacker_ids_);
  build_parent_index(n, supports_, supporter_offsets_, supporter_ids_);
}

std::vector<double> Bag::weights() const {
  std::vector<double> w(arguments_.size());
  std::transform(arguments_.begin(), arguments_.end(), w.begin(),
                 [](const Argument& a) { return a.weight; });
  return w;
}

std::optional<ArgId> Bag::find(std::string_view name) const {
  auto it = std::lower_bound(by_name_.begin(), by_name_.end(), name,
                             [&](ArgId id, std::string_view key) {
                               return arguments_[id].name < key;
                             });
  if (it != by_name_.end() && arguments_[*it].name == name) return *it;
  return std::nullopt;
}

bool Bag::has_attack(ArgId source, ArgId target) const {
  return contains_edge(attacks_, source, target);
}

bool Bag::has_support(ArgId source, ArgId target) const {
  return contains_edge(supports_, source, target);
}

bool structurally_equal(const Bag& a, const Bag& b, double weight_tolerance) {
  if (a.size() != b.size()) return false;
  for (ArgId i = 0; i < a.size(); ++i) {
    if (a.name(i) != b.name(i)) return false;
    if (std::abs(a.weight(i) - b.weight(i)) > weight_tolerance) return false;
  }
  auto sorted = [](std::vector<Edge> e) {
    std::sort(e.begin(), e.end());
    return e;
  };
  return sorted(a.attacks()) == sorted(b.attacks()) &&
         sorted(a.supports()) == sorted(b.supports());
}

ArgId BagBuilder::add_argument(std::string name, double weight) {
  arguments_.push_back({std::move(name), weight});
  return static_cast<ArgId>(arguments_.size() - 1);
}

void BagBuilder::add_attack(ArgId source, ArgId target) { attacks_.push_back({source, target}); }

void BagBuilder::add_support(ArgId source, ArgId target) {
  supports_.push_back({source, target});
}

Bag BagBuilder::build() && {
  return Bag(std::move(arguments_), std::move(attacks_), std::move(supports_));
}

Bag BagBuilder::build() const& { return Bag(arguments_, attacks_, supports_); }

double weight_from_counts(std::uint64_t t, std::uint64_t f, std::uint64_t t_bias,
                          std::uint64_t f_bias) {
  const double positive = static_cast<double>(t) + static_cast<double>(t_bias);
  const double total = positive + static_cast<double>(f) + static_cast<double>(f_bias);
  if (total == 0.0) throw std::invalid_argument("weight_from_counts: all counts are zero");
  return positive / total;
}

}  // namespace wbag
