#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dauction/instance.hpp"

namespace dauction {

/// The reported diffusion network: edges seller -> r_s and i -> forwarded(i).
/// Stored in compressed adjacency form; immutable after construction.
class Digraph {
 public:
  /// Validates `report` against `instance` and builds the reported network.
  static Digraph from_report(const AuctionInstance& instance, const ReportProfile& report);

  std::size_t buyer_count() const { return seller_links_.size(); }
  std::span<const BuyerId> seller_successors() const { return seller_out_; }
  std::span<const BuyerId> successors(BuyerId i) const;
  std::span<const BuyerId> predecessors(BuyerId i) const;
  bool seller_links_to(BuyerId i) const { return seller_links_[static_cast<std::size_t>(i)] != 0; }

 private:
  std::vector<BuyerId> seller_out_;
  std::vector<std::uint8_t> seller_links_;
  std::vector<std::uint32_t> out_offsets_;
  std::vector<BuyerId> out_targets_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<BuyerId> in_sources_;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Connected buyers and their shortest-path distance from the seller.
struct ReachabilityView {
  /// distance[i] >= 1 for connected buyers, kUnreachable otherwise.
  std::vector<int> distance;
  /// Connected buyers in ascending id order.
  std::vector<BuyerId> connected;

  bool is_connected(BuyerId i) const {
    return distance[static_cast<std::size_t>(i)] != kUnreachable;
  }
  int distance_of(BuyerId i) const { return distance[static_cast<std::size_t>(i)]; }
};

ReachabilityView connected_and_distances(const Digraph& graph);
ReachabilityView connected_and_distances(const AuctionInstance& instance,
                                         const ReportProfile& report);

/// Strict dominators of every connected buyer in the reachable network rooted
/// at the seller, computed by iterative set intersection to a fixed point.
/// A buyer j is a critical parent of i exactly when j strictly dominates i.
class DominatorSets {
 public:
  DominatorSets(const Digraph& graph, const ReachabilityView& view);

  /// Critical parents of `i`, ascending by id. Throws DomainError when i is
  /// not connected.
  std::vector<BuyerId> critical_parents(BuyerId i) const;

  /// The critical parent farthest from the seller (the immediate dominator),
  /// or kSeller when i has no critical parent.
  BuyerId least_critical_parent(BuyerId i) const;

 private:
  bool dominates(BuyerId j, BuyerId i) const;
  void require_connected(BuyerId i) const;

  std::vector<int> distance_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

std::vector<BuyerId> critical_parents(const Digraph& graph, const ReachabilityView& view,
                                      BuyerId i);
BuyerId least_critical_parent(const Digraph& graph, const ReachabilityView& view, BuyerId i);

/// Rooted tree over the connected buyers in which every buyer hangs under its
/// least critical parent, or directly under the seller.
class DiffusionCriticalTree {
 public:
  DiffusionCriticalTree(const Digraph& graph, const ReachabilityView& view);

  bool contains(BuyerId i) const { return parent_[static_cast<std::size_t>(i)] != kAbsent; }
  /// Parent of a connected buyer (kSeller for the root's children).
  BuyerId parent(BuyerId i) const;
  /// Children of a buyer, or of the seller when `i == kSeller`.
  std::span<const BuyerId> children(BuyerId i) const;
  /// True when `node` lies in the subtree rooted at `root` (including itself).
  bool in_subtree(BuyerId node, BuyerId root) const;
  /// Strict descendants of `i` in ascending id order.
  std::vector<BuyerId> descendants(BuyerId i) const;
  std::size_t size() const { return node_count_; }

 private:
  static constexpr BuyerId kAbsent = -2;

  void require_member(BuyerId i) const;

  std::vector<BuyerId> parent_;
  // children CSR; slot 0 is the seller, slot i+1 is buyer i
  std::vector<std::uint32_t> child_offsets_;
  std::vector<BuyerId> child_ids_;
  std::vector<std::uint32_t> enter_;
  std::vector<std::uint32_t> leave_;
  std::size_t node_count_ = 0;
};

DiffusionCriticalTree build_critical_tree(const AuctionInstance& instance,
                                          const ReportProfile& report);

/// Connected buyers other than `i` and its descendants, ascending by id.
std::vector<BuyerId> eligible_others(const DiffusionCriticalTree& tree,
                                     const ReachabilityView& view, BuyerId i);

}  // namespace dauction
