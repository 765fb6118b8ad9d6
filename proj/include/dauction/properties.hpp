#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dauction/instance.hpp"
#include "dauction/generator.hpp"
#include "dauction/mechanisms.hpp"
#include "dauction/network.hpp"

namespace dauction {

/// A concrete violation (or, for expected-fail checks, the demonstrating
/// case). Replaying `profile` with `buyer` switched to `deviation` (or the
/// seller restricted to `seller_subset`) reproduces `before` / `after`.
struct Witness {
  AuctionInstance instance;
  ReportProfile profile;
  std::optional<ReserveConfig> reserve;
  BuyerId buyer = kSeller;
  std::optional<Report> deviation;
  std::optional<std::vector<BuyerId>> seller_subset;
  Money before = 0;
  Money after = 0;
  std::string note;
};

struct PropertyReport {
  std::string property;
  bool passed = true;
  /// Present exactly when the check failed.
  std::optional<Witness> witness;
  /// Informational: a case where a domination or incentive gap is strict.
  std::optional<Witness> strict_example;
  std::uint64_t cases = 0;
  std::string detail;
};

/// The finite set of reports a buyer can switch to: every subset of her true
/// followers combined with a bid grid that covers every outcome-relevant
/// comparison for integer money.
struct ManipulationSpace {
  BuyerId buyer = kSeller;
  std::vector<Money> candidate_values;
  std::vector<std::vector<BuyerId>> candidate_forward_sets;

  std::size_t size() const { return candidate_values.size() * candidate_forward_sets.size(); }
};

inline constexpr std::size_t kDefaultFollowerCap = 8;

/// Values: {0, cap} and v_j, v_j - 1, v_j + 1 over all buyers j (negatives
/// dropped), where cap is value_cap or the largest true value. Forward sets:
/// the full powerset of the buyer's true followers, in lexicographic order.
/// Throws EnumerationTooLarge when the buyer has more than `follower_cap`
/// followers.
ManipulationSpace enumerate_manipulations(const AuctionInstance& instance, BuyerId buyer,
                                          std::size_t follower_cap = kDefaultFollowerCap);

/// Which part of a buyer's report a deviation may change.
enum class DeviationScope {
  kAll,             // value and forwarding
  kForwardingOnly,  // truthful value, any r' subset of r
  kValueOnly,       // full forwarding, any value
};

/// Dominant-strategy check with opponents fixed at `profile` (truthful when
/// omitted): for every buyer, the truthful report earns at least the utility
/// of every manipulation in scope. The first violation found (lowest buyer,
/// then value, then forward set) is the witness.
PropertyReport check_strategy_proofness(const AuctionInstance& instance, MechanismKind mechanism,
                                        std::optional<ReserveConfig> reserve = std::nullopt,
                                        DeviationScope scope = DeviationScope::kAll,
                                        const ReportProfile* profile = nullptr);

/// Whether (v_i, {}) is a dominant strategy for every buyer against the given
/// opponents (truthful when omitted). Fails with the first manipulation that
/// strictly beats hiding.
PropertyReport check_hiding_dominance(const AuctionInstance& instance, MechanismKind mechanism,
                                      const ReportProfile* profile = nullptr);

enum class Metric { kSurplus, kRevenue };

/// metric(A) >= metric(B) under truthful reports on every instance; records
/// the first instance where the inequality is strict.
PropertyReport check_domination(std::span<const AuctionInstance> instances, MechanismKind a,
                                MechanismKind b, Metric metric);

/// Revenue from informing every direct buyer is at least the revenue from any
/// subset. The witness is the best violating subset.
PropertyReport check_follower_revenue_monotonicity(const AuctionInstance& instance,
                                                   std::size_t subset_cap = 20);

// Predicates on a single outcome. `report` is the profile that produced it.
PropertyReport check_feasibility(const AuctionInstance& instance, const ReportProfile& report,
                                 const Outcome& outcome);
PropertyReport check_individual_rationality(const AuctionInstance& instance,
                                            const ReportProfile& report, const Outcome& outcome);
/// Revenue non-negative, and in fact every payment non-negative.
PropertyReport check_non_deficit(const AuctionInstance& instance, const ReportProfile& report,
                                 const Outcome& outcome);
PropertyReport check_non_wastefulness(const AuctionInstance& instance,
                                      const ReportProfile& report, const Outcome& outcome);
/// Every winner i has fewer than k buyers outside her subtree bidding above her.
PropertyReport check_bounded_efficiency(const AuctionInstance& instance,
                                        const ReportProfile& report, const Outcome& outcome);

/// Searches seeded random instances with `k` units for a buyer whose sincere
/// forwarding earns strictly more than hiding all followers (truthful value,
/// truthful opponents). The witness profile is the hiding one and its
/// deviation is the sincere report, so replay_deviation shows the gain.
std::optional<Witness> search_hiding_penalty(MechanismKind mechanism, int k,
                                             std::uint64_t first_seed, std::uint64_t seed_count,
                                             int max_n = 6, Money max_value = 30);

/// Re-evaluates a deviation witness: returns (utility at profile, utility
/// after the deviation) for `witness.buyer`.
std::pair<Money, Money> replay_deviation(MechanismKind mechanism, const Witness& witness);

/// Re-evaluates a seller-subset witness: (revenue with all followers,
/// revenue with the subset).
std::pair<Money, Money> replay_seller_subset(const Witness& witness);

/// Exhaustive dominant-strategy check over every network with at most
/// `max_n` buyers, every seller follower set, every k in [1, n], every true
/// value in [0, max_value] and every opponent report. Opponent reports are
/// enumerated as opponent types (any report is some buyer's truthful type),
/// so the quantifier over opponent profiles is covered in full. Deviations
/// range over all values in [0, max_value + 1] and all forward subsets.
struct SmallWorldReport {
  PropertyReport truthful_dominant;  // truthful report is dominant
  PropertyReport hiding_dominant;    // (v_i, {}) is dominant
  std::uint64_t contexts = 0;
  std::uint64_t mechanism_runs = 0;
};
SmallWorldReport check_small_worlds(MechanismKind mechanism, int max_n, Money max_value,
                                    bool check_truthful, bool check_hiding);

std::string serialize_property_report(const PropertyReport& report);

}  // namespace dauction
