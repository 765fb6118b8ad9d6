#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dauction/types.hpp"

namespace dauction {

/// True type of a buyer: valuation for one unit and the buyers she can
/// forward the sale information to. Followers are kept sorted and unique.
struct BuyerType {
  Money value = 0;
  std::vector<BuyerId> followers;

  bool operator==(const BuyerType&) const = default;
};

/// Ground truth of one auction: unit count, the seller's direct followers and
/// every buyer's true type. value_cap is the known upper bound on values.
struct AuctionInstance {
  int k = 1;
  std::vector<BuyerId> seller_followers;
  std::vector<BuyerType> buyers;
  std::optional<Money> value_cap;

  std::size_t buyer_count() const { return buyers.size(); }

  bool operator==(const AuctionInstance&) const = default;
};

/// What a single buyer declares: a value and the subset of her true
/// followers she actually forwards to.
struct Report {
  Money value = 0;
  std::vector<BuyerId> forwarded;

  bool operator==(const Report&) const = default;
};

/// One report per buyer, indexed by BuyerId.
struct ReportProfile {
  std::vector<Report> reports;

  std::size_t size() const { return reports.size(); }
  const Report& operator[](BuyerId i) const { return reports[static_cast<std::size_t>(i)]; }
  Report& operator[](BuyerId i) { return reports[static_cast<std::size_t>(i)]; }

  bool operator==(const ReportProfile&) const = default;
};

/// Checks structural invariants: k >= 1, ids resolve, no self-follow, no
/// duplicates, non-negative values, values within value_cap. Sorts nothing;
/// callers are expected to pass sorted follower lists. Throws InputError.
void validate(const AuctionInstance& instance);

/// Checks that `report` has one entry per buyer and that every forwarded set
/// is a sorted, duplicate-free subset of the true followers. Throws InputError.
void validate(const AuctionInstance& instance, const ReportProfile& report);

/// Every buyer reports her true value and forwards to all followers.
ReportProfile truthful_report(const AuctionInstance& instance);

/// Copy of `instance` whose seller informs only `subset` (must be a subset of
/// the original seller followers).
AuctionInstance with_seller_followers(const AuctionInstance& instance,
                                      std::span<const BuyerId> subset);

/// Sorts and dedups follower lists in place.
void normalize(AuctionInstance& instance);

}  // namespace dauction
