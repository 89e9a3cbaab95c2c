#include "wbag/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "wbag/format.hpp"

namespace wbag {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased integer in [0, bound) by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Floyd's sampling of `count` distinct values from [0, population), sorted.
std::vector<std::uint64_t> sample_distinct(std::mt19937_64& rng, std::uint64_t population,
                                           std::uint64_t count) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);
  for (std::uint64_t j = population - count; j < population; ++j) {
    const std::uint64_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t pair_space(std::size_t n, bool self_loops) {
  const auto nn = static_cast<std::uint64_t>(n);
  return self_loops ? nn * nn : nn * (nn - 1);
}

Edge pair_at(std::uint64_t index, std::size_t n, bool self_loops) {
  if (self_loops) {
    return {static_cast<ArgId>(index / n), static_cast<ArgId>(index % n)};
  }
  // Row r holds the n-1 targets other than r.
  const auto source = static_cast<ArgId>(index / (n - 1));
  auto target = static_cast<ArgId>(index % (n - 1));
  if (target >= source) ++target;
  return {source, target};
}

}  // namespace

void GenSpec::validate() const {
  if (nodes == 0) throw std::invalid_argument("nodes must be positive");
  if (!(attack_probability >= 0.0 && attack_probability <= 1.0)) {
    throw std::invalid_argument("attack probability must lie in [0,1]");
  }
  if (weight_mode == Weights::constant && !(constant_weight >= 0.0 && constant_weight <= 1.0)) {
    throw std::invalid_argument("constant weight must lie in [0,1]");
  }
  if (edges > pair_space(nodes, allow_self_loops)) {
    throw std::invalid_argument("requested " + std::to_string(edges) + " edges but only " +
                                std::to_string(pair_space(nodes, allow_self_loops)) +
                                " ordered pairs exist");
  }
}

std::string GenSpec::describe() const {
  char buf[256];
  char weights[48];
  if (weight_mode == Weights::uniform) {
    std::snprintf(weights, sizeof weights, "uniform");
  } else {
    std::snprintf(weights, sizeof weights, "constant:%.6g", constant_weight);
  }
  std::snprintf(buf, sizeof buf,
                "random_bag nodes=%zu edges=%zu attack_probability=%.6g weights=%s "
                "self_loops=%d seed=%llu prng=mt19937_64",
                nodes, edges, attack_probability, weights, allow_self_loops ? 1 : 0,
                static_cast<unsigned long long>(seed));
  return buf;
}

Bag random_bag(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const std::size_t n = spec.nodes;

  BagBuilder builder;
  for (std::size_t i = 0; i < n; ++i) {
    const double w =
        spec.weight_mode == GenSpec::Weights::uniform ? uniform_unit(rng) : spec.constant_weight;
    builder.add_argument("a" + std::to_string(i), w);
  }

  const auto pairs = sample_distinct(rng, pair_space(n, spec.allow_self_loops), spec.edges);
  for (std::uint64_t index : pairs) {
    const Edge e = pair_at(index, n, spec.allow_self_loops);
    if (uniform_unit(rng) < spec.attack_probability) {
      builder.add_attack(e.source, e.target);
    } else {
      builder.add_support(e.source, e.target);
    }
  }
  return std::move(builder).build();
}

Bag cycle_k(std::size_t k) {
  if (k == 0) throw std::invalid_argument("Cycle(k) requires k >= 1");
  BagBuilder b;
  const ArgId a = b.add_argument("A", 1.0);
  std::vector<ArgId> bs, cs;
  for (std::size_t i = 1; i <= k; ++i) bs.push_back(b.add_argument("B" + std::to_string(i), 0.0));
  for (std::size_t i = 1; i <= k; ++i) cs.push_back(b.add_argument("C" + std::to_string(i), 0.0));

  for (ArgId bi : bs) b.add_support(a, bi);
  for (ArgId bi : bs) {
    for (ArgId cj : cs) b.add_support(bi, cj);
  }
  for (ArgId ci : cs) b.add_attack(ci, a);
  return std::move(b).build();
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t size, std::size_t index) {
  return splitmix64(splitmix64(seed + size) + index);
}

std::vector<std::filesystem::path> generate_benchmark(const std::filesystem::path& dir,
                                                      const BenchmarkSpec& spec) {
  if (spec.base_size == 0 || spec.increments == 0 || spec.trials == 0) {
    throw std::invalid_argument("benchmark sizes, increments and trials must be positive");
  }
  if (!(spec.edge_ratio >= 0.0) || !std::isfinite(spec.edge_ratio)) {
    throw std::invalid_argument("edge ratio must be a non-negative number");
  }

  std::vector<GenSpec> batches;
  for (std::size_t i = 1; i <= spec.increments; ++i) {
    GenSpec g;
    g.nodes = spec.base_size * i;
    g.edges = static_cast<std::size_t>(std::floor(spec.edge_ratio * static_cast<double>(g.nodes)));
    g.attack_probability = spec.attack_probability;
    g.validate();
    batches.push_back(g);
  }

  std::vector<std::filesystem::path> written;
  for (GenSpec g : batches) {
    const auto sub = dir / std::to_string(g.nodes);
    std::filesystem::create_directories(sub);
    for (std::size_t index = 0; index < spec.trials; ++index) {
      g.seed = derive_seed(spec.seed, g.nodes, index);
      const auto path = sub / ("bag_" + std::to_string(index) + ".bag");
      write_bag_file(path, random_bag(g), "generator: " + g.describe());
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace wbag
