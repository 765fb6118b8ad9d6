#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dauction/instance.hpp"
#include "dauction/properties.hpp"

namespace dauction {

inline constexpr std::size_t kDefaultSubsetCap = 20;

struct DiffusionSolution {
  std::vector<BuyerId> best_subset;
  Money best_revenue = 0;
  /// Revenue of every subset of the seller's followers, in enumeration order.
  std::vector<std::pair<std::vector<BuyerId>, Money>> table;
};

/// Tries every subset of the seller's direct followers under the
/// distance-based mechanism (truthful reports). Subsets are visited in
/// lexicographic order of their sorted id lists, so the first maximum is the
/// lexicographically smallest. Throws EnumerationTooLarge above `subset_cap`.
DiffusionSolution optimal_diffusion_exact(const AuctionInstance& instance,
                                          std::size_t subset_cap = kDefaultSubsetCap);

struct DiffusionDecision {
  bool yes = false;
  /// Revenue-maximizing subset; reaches the threshold exactly when `yes`.
  std::vector<BuyerId> witness;
  Money revenue = 0;
};

/// Whether some subset of direct followers earns at least `threshold`.
DiffusionDecision optimal_diffusion_decision(const AuctionInstance& instance, Money threshold,
                                             std::size_t subset_cap = kDefaultSubsetCap);

/// A multiset of positive integers to split into two equal-sum halves.
struct PartitionInstance {
  std::vector<Money> items;

  Money total() const;
};

/// Throws InputError on an empty multiset or a non-positive item.
void validate(const PartitionInstance& p);

/// Exact subset-sum answer. Throws EnumerationTooLarge when the total
/// exceeds `total_cap`.
bool partition_oracle(const PartitionInstance& p, Money total_cap = 1'000'000);

/// Values used by the gadget network. `standard(m)` gives
/// epsilon 1, v2 2, v1 3, v3 4, v4 (m+2)v3 + m v1 + 2, v5 v4 + 1.
struct ReductionParams {
  Money epsilon = 1;
  Money v1 = 3;
  Money v2 = 2;
  Money v3 = 4;
  Money v4 = 0;
  Money v5 = 0;

  static ReductionParams standard(Money m);
  /// epsilon + m v1 + v4.
  Money threshold(Money m) const;
};

/// Throws InputError unless 0 < epsilon < v2 < v1 < v3,
/// (m+2) v3 < epsilon + m v1 + v4 and v4 < v5.
void validate(const ReductionParams& params, Money m);

/// The gadget network built from a Partition instance. Items are doubled
/// first when their total is odd; doubling keeps the answer ("no") and makes
/// the half-sum an integer.
struct Reduction {
  PartitionInstance items;  // as used, after any doubling
  bool doubled = false;
  Money m = 0;
  ReductionParams params;
  AuctionInstance instance;
  Money threshold = 0;
  std::vector<BuyerId> item_roots;  // one per item, value epsilon
  std::vector<BuyerId> b_chain;     // b_1 .. b_{m+2}
  std::vector<BuyerId> c_chain;     // c_1 .. c_{m+1}
};

/// Ids: each item root followed by its v(i) children, then the b chain, then
/// the c chain, so b_{m+1} precedes c_{m+1} at equal distance.
Reduction reduce_partition(const PartitionInstance& p);
Reduction reduce_partition(const PartitionInstance& p, const ReductionParams& params);

/// Partition answer equals the decision answer on the reduced network.
PropertyReport verify_reduction(const PartitionInstance& p);
PropertyReport verify_reduction(const PartitionInstance& p, const ReductionParams& params);

/// Parses "1,1,2" (commas and/or spaces). Throws InputError.
PartitionInstance parse_partition(const std::string& text);

}  // namespace dauction
