#pragma once

#include <cstdint>
#include <random>

#include "dauction/instance.hpp"

namespace dauction {

/// Parameters of a random instance. Identical params always yield the
/// identical instance on every platform.
struct GeneratorParams {
  int n = 8;
  int k = 2;
  Money max_value = 100;
  /// Cap on |followers| per buyer; extra edges are dropped at random.
  int max_followers = 4;
  double edge_probability = 0.3;
  std::uint64_t seed = 0;
};

/// Portable integer draws on top of mt19937_64, whose output sequence is fixed
/// by the standard (unlike the std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// True with probability p (53-bit resolution).
  bool chance(double p);

 private:
  std::mt19937_64 engine_;
};

/// Directed graph with independent edges per ordered pair, values uniform on
/// [0, max_value], a random nonempty set of seller followers. value_cap is set
/// to max_value.
AuctionInstance gen_random_instance(const GeneratorParams& params);

/// Parameters for the seeded property corpus: n uniform on [1, max_n], k
/// uniform on [1, max_k], edge probability uniform on a small grid.
GeneratorParams corpus_params(std::uint64_t seed, int max_n = 8, int max_k = 4,
                              Money max_value = 100, int max_followers = 4);

}  // namespace dauction
