#include "dauction/generator.hpp"

#include <algorithm>
#include <array>

namespace dauction {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject the short tail so every residue is equally likely.
  const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
  std::uint64_t x = engine_();
  while (x < threshold) x = engine_();
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  const auto threshold = static_cast<std::uint64_t>(p * 9007199254740992.0);  // 2^53
  return (engine_() >> 11) < threshold;
}

AuctionInstance gen_random_instance(const GeneratorParams& params) {
  if (params.n < 0) throw InputError("n must be non-negative");
  if (params.k < 1) throw InputError("k must be at least 1");
  if (params.max_value < 0) throw InputError("max_value must be non-negative");
  if (params.max_followers < 0) throw InputError("max_followers must be non-negative");

  Rng rng(params.seed);
  AuctionInstance inst;
  inst.k = params.k;
  inst.value_cap = params.max_value;
  const auto n = static_cast<BuyerId>(params.n);
  inst.buyers.resize(static_cast<std::size_t>(n));

  for (BuyerId i = 0; i < n; ++i) {
    auto& b = inst.buyers[static_cast<std::size_t>(i)];
    b.value = rng.between(0, params.max_value);
    for (BuyerId j = 0; j < n; ++j) {
      if (j != i && rng.chance(params.edge_probability)) b.followers.push_back(j);
    }
    auto& f = b.followers;
    // Partial Fisher-Yates keeps a uniform subset of the allowed size.
    const auto cap = static_cast<std::size_t>(params.max_followers);
    if (f.size() > cap) {
      for (std::size_t pos = 0; pos < cap; ++pos) {
        const auto pick = pos + static_cast<std::size_t>(rng.below(f.size() - pos));
        std::swap(f[pos], f[pick]);
      }
      f.resize(cap);
      std::sort(f.begin(), f.end());
    }
  }

  if (n > 0) {
    std::vector<BuyerId> pool(static_cast<std::size_t>(n));
    for (BuyerId i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    const auto size = static_cast<std::size_t>(rng.between(1, n));
    for (std::size_t pos = 0; pos < size; ++pos) {
      const auto pick = pos + static_cast<std::size_t>(rng.below(pool.size() - pos));
      std::swap(pool[pos], pool[pick]);
    }
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    inst.seller_followers = std::move(pool);
  }
  return inst;
}

GeneratorParams corpus_params(std::uint64_t seed, int max_n, int max_k, Money max_value,
                              int max_followers) {
  static constexpr std::array<double, 5> kEdgeGrid{0.1, 0.2, 0.3, 0.45, 0.6};
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  GeneratorParams p;
  p.n = static_cast<int>(rng.between(1, max_n));
  p.k = static_cast<int>(rng.between(1, max_k));
  p.max_value = max_value;
  p.max_followers = max_followers;
  p.edge_probability = kEdgeGrid[rng.below(kEdgeGrid.size())];
  p.seed = seed;
  return p;
}

}  // namespace dauction
