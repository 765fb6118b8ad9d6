#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the graph or mechanism code paths it is used to check.

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "dauction/instance.hpp"

namespace oracle {

using dauction::AuctionInstance;
using dauction::BuyerId;
using dauction::Money;
using dauction::ReportProfile;

inline constexpr int kInf = 1 << 30;

/// BFS distances with `removed` deleted from the network (-1: nobody).
inline std::vector<int> distances_without(const AuctionInstance& inst, const ReportProfile& rep,
                                          BuyerId removed = -1) {
  const auto n = inst.buyers.size();
  std::vector<int> dist(n, kInf);
  std::deque<BuyerId> q;
  for (BuyerId j : inst.seller_followers) {
    if (j == removed) continue;
    dist[j] = 1;
    q.push_back(j);
  }
  while (!q.empty()) {
    BuyerId u = q.front();
    q.pop_front();
    for (BuyerId v : rep.reports[u].forwarded) {
      if (v == removed || dist[v] != kInf) continue;
      dist[v] = dist[u] + 1;
      q.push_back(v);
    }
  }
  return dist;
}

/// Buyers whose removal disconnects i from the seller.
inline std::vector<BuyerId> critical_parents_by_removal(const AuctionInstance& inst,
                                                        const ReportProfile& rep, BuyerId i) {
  std::vector<BuyerId> out;
  for (BuyerId j = 0; j < static_cast<BuyerId>(inst.buyers.size()); ++j) {
    if (j == i) continue;
    if (distances_without(inst, rep, j)[i] == kInf) out.push_back(j);
  }
  return out;
}

/// Parent in the critical tree: the critical parent with the largest distance,
/// or -1 for the seller.
inline BuyerId tree_parent_by_removal(const AuctionInstance& inst, const ReportProfile& rep,
                                      BuyerId i) {
  const auto dist = distances_without(inst, rep);
  BuyerId best = -1;
  for (BuyerId j : critical_parents_by_removal(inst, rep, i)) {
    if (best == -1 || dist[j] > dist[best]) best = j;
  }
  return best;
}

/// k-th highest by full sort; +inf encoded as nullopt.
inline std::optional<Money> kth_highest_sorted(std::vector<Money> values, int k) {
  if (k <= 0) return std::nullopt;
  if (static_cast<int>(values.size()) < k) return Money{0};
  std::sort(values.begin(), values.end(), std::greater<>());
  return values[static_cast<std::size_t>(k - 1)];
}

struct RefOutcome {
  std::vector<int> allocated;
  std::vector<Money> payment;
};

/// Literal transcription of the distance-based procedure on explicit sets,
/// built on the removal oracle above.
inline RefOutcome reference_distance_based(const AuctionInstance& inst, const ReportProfile& rep,
                                           std::optional<Money> reserve = std::nullopt) {
  const auto n = static_cast<BuyerId>(inst.buyers.size());
  const auto dist = distances_without(inst, rep);
  std::vector<BuyerId> parent(n, -1);
  std::vector<BuyerId> connected;
  for (BuyerId i = 0; i < n; ++i) {
    if (dist[i] != kInf) {
      connected.push_back(i);
      parent[i] = tree_parent_by_removal(inst, rep, i);
    }
  }
  auto is_descendant_or_self = [&](BuyerId j, BuyerId i) {
    for (BuyerId cur = j; cur != -1; cur = parent[cur]) {
      if (cur == i) return true;
    }
    return false;
  };
  std::vector<BuyerId> order = connected;
  std::stable_sort(order.begin(), order.end(),
                   [&](BuyerId a, BuyerId b) { return dist[a] < dist[b]; });

  RefOutcome out{std::vector<int>(n, 0), std::vector<Money>(n, 0)};
  std::set<BuyerId> winners;
  int k_left = inst.k;
  for (BuyerId i : order) {
    std::vector<Money> pool;
    for (BuyerId j : connected) {
      if (!is_descendant_or_self(j, i) && !winners.count(j)) pool.push_back(rep.reports[j].value);
    }
    if (reserve) {
      for (int d = 0; d < inst.k; ++d) pool.push_back(*reserve);
    }
    const auto price = kth_highest_sorted(pool, k_left);
    if (price && rep.reports[i].value >= *price) {
      out.allocated[i] = 1;
      out.payment[i] = *price;
      winners.insert(i);
      --k_left;
    }
  }
  return out;
}

/// Max of sum of reported values over feasible allocations, by subset
/// enumeration over the connected buyers.
inline Money optimal_surplus_by_enumeration(const AuctionInstance& inst,
                                            const ReportProfile& rep) {
  const auto dist = distances_without(inst, rep);
  std::vector<Money> vals;
  for (std::size_t i = 0; i < inst.buyers.size(); ++i) {
    if (dist[i] != kInf) vals.push_back(rep.reports[i].value);
  }
  Money best = 0;
  const std::size_t m = vals.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    if (static_cast<int>(__builtin_popcountll(mask)) > inst.k) continue;
    Money s = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (mask >> b & 1U) s += vals[b];
    }
    best = std::max(best, s);
  }
  return best;
}

/// Partition by enumerating every subset.
inline bool partition_by_enumeration(const std::vector<Money>& items) {
  Money total = 0;
  for (Money v : items) total += v;
  if (total % 2 != 0) return false;
  for (std::size_t mask = 0; mask < (std::size_t{1} << items.size()); ++mask) {
    Money s = 0;
    for (std::size_t b = 0; b < items.size(); ++b) {
      if (mask >> b & 1U) s += items[b];
    }
    if (2 * s == total) return true;
  }
  return false;
}

}  // namespace oracle
