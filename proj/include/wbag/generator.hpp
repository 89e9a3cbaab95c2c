#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wbag/bag.hpp"

namespace wbag {

struct GenSpec {
  enum class Weights { uniform, constant };

  std::size_t nodes = 1;
  std::size_t edges = 0;
  double attack_probability = 0.5;
  Weights weight_mode = Weights::uniform;
  double constant_weight = 0.5;
  std::uint64_t seed = 0;
  bool allow_self_loops = true;

  /// Throws std::invalid_argument on an unsatisfiable or out-of-range spec.
  void validate() const;
  /// One-line description, also written as the header comment of generated files.
  std::string describe() const;
};

/// Arguments a0..a(n-1); `edges` distinct ordered pairs drawn uniformly
/// without replacement, each an attack with probability attack_probability
/// and otherwise a support.
///
/// Reproducible across platforms and standard libraries: the bit stream is
/// std::mt19937_64 (fully specified by the standard) and every draw from it
/// is mapped by code in this library, not by <random> distributions.
Bag random_bag(const GenSpec& spec);

/// A:1 supports B_1..B_k (weight 0), every B_i supports every C_j (weight 0),
/// every C_j attacks A. Requires k >= 1.
Bag cycle_k(std::size_t k);

/// Seed for file `index` of the size-`size` batch.
std::uint64_t derive_seed(std::uint64_t seed, std::size_t size, std::size_t index);

struct BenchmarkSpec {
  std::size_t base_size = 100;
  std::size_t increments = 30;
  std::size_t trials = 100;
  double edge_ratio = 10.0;
  double attack_probability = 0.5;
  std::uint64_t seed = 0;
};

/// Writes <dir>/<base*i>/bag_<index>.bag for i = 1..increments and
/// index = 0..trials-1; each graph has floor(edge_ratio * size) edges.
/// Returns the written paths in creation order.
std::vector<std::filesystem::path> generate_benchmark(const std::filesystem::path& dir,
                                                      const BenchmarkSpec& spec);

}  // namespace wbag
