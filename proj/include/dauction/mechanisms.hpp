#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dauction/instance.hpp"
#include "dauction/network.hpp"

namespace dauction {

/// Allocation and payments of one mechanism run. allocated[i] is 0 or 1;
/// surplus is computed from TRUE values, revenue from payments.
struct Outcome {
  std::vector<std::uint8_t> allocated;
  std::vector<Money> payment;
  Money surplus = 0;
  Money revenue = 0;

  std::vector<BuyerId> winners() const;
  std::size_t winner_count() const;
  bool wins(BuyerId i) const { return allocated[static_cast<std::size_t>(i)] != 0; }
  Money paid(BuyerId i) const { return payment[static_cast<std::size_t>(i)]; }

  bool operator==(const Outcome&) const = default;
};

/// Reserve price realised as k dummy seller-adjacent buyers of this value.
struct ReserveConfig {
  Money reserve_value = 0;
};

enum class MechanismKind { kDistanceBased, kNdVcg, kFcfsF };

std::string_view mechanism_name(MechanismKind kind);
/// Accepts "distance", "ndvcg", "fcfs". Throws InputError otherwise.
MechanismKind parse_mechanism(std::string_view name);

/// k'-th highest value counting multiplicity. Infinite when k' <= 0 (checked
/// first), zero when fewer than k' values are present.
Price v_star(std::vector<Money> values, int k_prime);

/// Connected buyers by ascending distance, ties broken by ascending id.
std::vector<BuyerId> priority_order(const ReachabilityView& view);

/// Everything the mechanisms read from the reported forwarding, computed once
/// so that bids can vary without rebuilding the network.
class PreparedNetwork {
 public:
  /// Validates `report` against `instance`; bids in `report` are ignored.
  PreparedNetwork(const AuctionInstance& instance, const ReportProfile& report);

  std::size_t buyer_count() const { return competitors_.size(); }
  const ReachabilityView& view() const { return view_; }
  const std::vector<BuyerId>& order() const { return order_; }
  const std::vector<BuyerId>& seller_followers() const { return seller_followers_; }
  /// Connected buyers outside i's critical subtree (empty for unconnected i).
  const std::vector<BuyerId>& competitors(BuyerId i) const {
    return competitors_[static_cast<std::size_t>(i)];
  }

 private:
  ReachabilityView view_;
  std::vector<BuyerId> order_;
  std::vector<BuyerId> seller_followers_;
  std::vector<std::vector<BuyerId>> competitors_;
};

/// Runs `kind` on a prepared network with the given bids (one per buyer).
/// Fills allocation, payments and revenue; surplus is left at 0 because true
/// values are not known here.
Outcome run_prepared(MechanismKind kind, const PreparedNetwork& network,
                     std::span<const Money> bids, int k,
                     std::optional<ReserveConfig> reserve = std::nullopt);
/// Same, writing into `out` so its storage can be reused across calls.
void run_prepared(MechanismKind kind, const PreparedNetwork& network,
                  std::span<const Money> bids, int k, std::optional<ReserveConfig> reserve,
                  Outcome& out);

/// The distance-based mechanism, optionally with a reserve price.
Outcome run_distance_based(const AuctionInstance& instance, const ReportProfile& report,
                           std::optional<ReserveConfig> reserve = std::nullopt);

/// VCG over the seller's direct followers only.
Outcome run_nd_vcg(const AuctionInstance& instance, const ReportProfile& report);

/// First min(k, |connected|) buyers in priority order receive a unit for free.
Outcome run_fcfs_f(const AuctionInstance& instance, const ReportProfile& report);

/// Dispatches on `kind`. A reserve is honoured only by the distance-based
/// mechanism; passing one with another kind throws InputError.
Outcome run_mechanism(MechanismKind kind, const AuctionInstance& instance,
                      const ReportProfile& report,
                      std::optional<ReserveConfig> reserve = std::nullopt);

Money social_surplus(const AuctionInstance& instance, const Outcome& outcome);
Money revenue(const Outcome& outcome);

/// Quasi-linear utility of buyer i under her TRUE value.
Money utility(const AuctionInstance& instance, const Outcome& outcome, BuyerId i);

/// Stable text form: one `buyer` line per buyer, then winners and totals.
std::string serialize_outcome(const Outcome& outcome, MechanismKind kind);

}  // namespace dauction
