#include "dauction/instance.hpp"

#include <algorithm>
#include <string>

namespace dauction {
namespace {

std::string buyer_label(std::size_t i) { return "buyer " + std::to_string(i); }

void check_id_list(std::span<const BuyerId> ids, std::size_t n, BuyerId owner,
                   const std::string& where) {
  for (std::size_t pos = 0; pos < ids.size(); ++pos) {
    const BuyerId id = ids[pos];
    if (id < 0 || static_cast<std::size_t>(id) >= n) {
      throw InputError(where + ": dangling buyer id " + std::to_string(id));
    }
    if (id == owner) throw InputError(where + ": buyer follows itself");
    if (pos > 0 && ids[pos - 1] >= id) {
      throw InputError(where + ": follower ids must be strictly increasing (duplicate or "
                       "unsorted id " + std::to_string(id) + ")");
    }
  }
}

}  // namespace

void validate(const AuctionInstance& instance) {
  if (instance.k < 1) throw InputError("k must be at least 1");
  const std::size_t n = instance.buyers.size();
  check_id_list(instance.seller_followers, n, kSeller, "seller_followers");
  if (instance.value_cap && *instance.value_cap < 0) {
    throw InputError("value_cap must be non-negative");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = instance.buyers[i];
    if (b.value < 0) throw InputError(buyer_label(i) + ": negative value");
    if (instance.value_cap && b.value > *instance.value_cap) {
      throw InputError(buyer_label(i) + ": value exceeds value_cap");
    }
    check_id_list(b.followers, n, static_cast<BuyerId>(i), buyer_label(i));
  }
}

void validate(const AuctionInstance& instance, const ReportProfile& report) {
  const std::size_t n = instance.buyers.size();
  if (report.size() != n) {
    throw InputError("report profile has " + std::to_string(report.size()) +
                     " entries for " + std::to_string(n) + " buyers");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = report.reports[i];
    if (r.value < 0) throw InputError(buyer_label(i) + ": negative reported value");
    check_id_list(r.forwarded, n, static_cast<BuyerId>(i), buyer_label(i) + " report");
    const auto& truth = instance.buyers[i].followers;
    if (!std::includes(truth.begin(), truth.end(), r.forwarded.begin(), r.forwarded.end())) {
      throw InputError(buyer_label(i) + ": forwards to a buyer outside her followers");
    }
  }
}

ReportProfile truthful_report(const AuctionInstance& instance) {
  ReportProfile profile;
  profile.reports.reserve(instance.buyers.size());
  for (const auto& b : instance.buyers) profile.reports.push_back({b.value, b.followers});
  return profile;
}

AuctionInstance with_seller_followers(const AuctionInstance& instance,
                                      std::span<const BuyerId> subset) {
  const auto& all = instance.seller_followers;
  for (BuyerId id : subset) {
    if (!std::binary_search(all.begin(), all.end(), id)) {
      throw InputError("buyer " + std::to_string(id) + " is not a seller follower");
    }
  }
  AuctionInstance restricted = instance;
  restricted.seller_followers.assign(subset.begin(), subset.end());
  std::sort(restricted.seller_followers.begin(), restricted.seller_followers.end());
  restricted.seller_followers.erase(
      std::unique(restricted.seller_followers.begin(), restricted.seller_followers.end()),
      restricted.seller_followers.end());
  return restricted;
}

void normalize(AuctionInstance& instance) {
  auto tidy = [](std::vector<BuyerId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  };
  tidy(instance.seller_followers);
  for (auto& b : instance.buyers) tidy(b.followers);
}

}  // namespace dauction
