#include "dauction/network.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace dauction {
namespace {

std::size_t idx(BuyerId i) { return static_cast<std::size_t>(i); }

// Builds a CSR adjacency from per-source lists given as (source, target) pairs.
void build_csr(std::size_t n, const std::vector<std::pair<BuyerId, BuyerId>>& edges,
               std::vector<std::uint32_t>& offsets, std::vector<BuyerId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) ++offsets[idx(e.first) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) targets[cursor[idx(e.first)]++] = e.second;
}

}  // namespace

Digraph Digraph::from_report(const AuctionInstance& instance, const ReportProfile& report) {
  validate(instance);
  validate(instance, report);
  const std::size_t n = instance.buyer_count();

  Digraph g;
  g.seller_out_ = instance.seller_followers;
  g.seller_links_.assign(n, 0);
  for (BuyerId j : g.seller_out_) g.seller_links_[idx(j)] = 1;

  std::vector<std::pair<BuyerId, BuyerId>> forward;
  std::vector<std::pair<BuyerId, BuyerId>> backward;
  for (std::size_t i = 0; i < n; ++i) {
    for (BuyerId j : report.reports[i].forwarded) {
      forward.emplace_back(static_cast<BuyerId>(i), j);
    }
  }
  backward.reserve(forward.size());
  for (const auto& e : forward) backward.emplace_back(e.second, e.first);
  std::stable_sort(backward.begin(), backward.end());
  build_csr(n, forward, g.out_offsets_, g.out_targets_);
  build_csr(n, backward, g.in_offsets_, g.in_sources_);
  return g;
}

std::span<const BuyerId> Digraph::successors(BuyerId i) const {
  const auto b = out_offsets_[idx(i)];
  const auto e = out_offsets_[idx(i) + 1];
  return {out_targets_.data() + b, e - b};
}

std::span<const BuyerId> Digraph::predecessors(BuyerId i) const {
  const auto b = in_offsets_[idx(i)];
  const auto e = in_offsets_[idx(i) + 1];
  return {in_sources_.data() + b, e - b};
}

ReachabilityView connected_and_distances(const Digraph& graph) {
  const std::size_t n = graph.buyer_count();
  ReachabilityView view;
  view.distance.assign(n, kUnreachable);

  std::vector<BuyerId> queue;
  queue.reserve(n);
  for (BuyerId j : graph.seller_successors()) {
    view.distance[idx(j)] = 1;
    queue.push_back(j);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const BuyerId u = queue[head];
    const int next = view.distance[idx(u)] + 1;
    for (BuyerId v : graph.successors(u)) {
      if (view.distance[idx(v)] == kUnreachable) {
        view.distance[idx(v)] = next;
        queue.push_back(v);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  view.connected = std::move(queue);
  return view;
}

ReachabilityView connected_and_distances(const AuctionInstance& instance,
                                         const ReportProfile& report) {
  return connected_and_distances(Digraph::from_report(instance, report));
}

DominatorSets::DominatorSets(const Digraph& graph, const ReachabilityView& view)
    : distance_(view.distance), words_((graph.buyer_count() + 63) / 64) {
  const std::size_t n = graph.buyer_count();
  bits_.assign(n * words_, 0);
  if (view.connected.empty()) return;

  std::vector<std::uint64_t> universe(words_, 0);
  for (BuyerId i : view.connected) universe[idx(i) / 64] |= std::uint64_t{1} << (idx(i) % 64);

  // Visit nodes nearest-first so that most sets settle in one sweep.
  std::vector<BuyerId> order = view.connected;
  std::stable_sort(order.begin(), order.end(), [&](BuyerId a, BuyerId b) {
    return view.distance_of(a) < view.distance_of(b);
  });
  for (BuyerId i : order) {
    std::copy(universe.begin(), universe.end(), bits_.begin() + idx(i) * words_);
  }

  std::vector<std::uint64_t> scratch(words_);
  bool changed = true;
  while (changed) {
    changed = false;
    for (BuyerId v : order) {
      if (graph.seller_links_to(v)) {
        std::fill(scratch.begin(), scratch.end(), 0);
      } else {
        std::copy(universe.begin(), universe.end(), scratch.begin());
        for (BuyerId p : graph.predecessors(v)) {
          if (!view.is_connected(p)) continue;
          const std::uint64_t* dp = bits_.data() + idx(p) * words_;
          for (std::size_t w = 0; w < words_; ++w) scratch[w] &= dp[w];
        }
      }
      scratch[idx(v) / 64] |= std::uint64_t{1} << (idx(v) % 64);
      std::uint64_t* dv = bits_.data() + idx(v) * words_;
      if (!std::equal(scratch.begin(), scratch.end(), dv)) {
        std::copy(scratch.begin(), scratch.end(), dv);
        changed = true;
      }
    }
  }
}

void DominatorSets::require_connected(BuyerId i) const {
  if (i < 0 || idx(i) >= distance_.size()) {
    throw DomainError("unknown buyer " + std::to_string(i));
  }
  if (distance_[idx(i)] == kUnreachable) {
    throw DomainError("buyer " + std::to_string(i) + " is not connected");
  }
}

bool DominatorSets::dominates(BuyerId j, BuyerId i) const {
  return (bits_[idx(i) * words_ + idx(j) / 64] >> (idx(j) % 64)) & 1U;
}

std::vector<BuyerId> DominatorSets::critical_parents(BuyerId i) const {
  require_connected(i);
  std::vector<BuyerId> out;
  const std::uint64_t* row = bits_.data() + idx(i) * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = row[w];
    while (word != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(word));
      word &= word - 1;
      const auto j = static_cast<BuyerId>(w * 64 + bit);
      if (j != i) out.push_back(j);
    }
  }
  return out;
}

BuyerId DominatorSets::least_critical_parent(BuyerId i) const {
  require_connected(i);
  // Dominators of i form a chain along every shortest path, so their
  // distances are pairwise distinct and the deepest one is unique.
  BuyerId best = kSeller;
  int best_distance = 0;
  const std::uint64_t* row = bits_.data() + idx(i) * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = row[w];
    while (word != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(word));
      word &= word - 1;
      const auto j = static_cast<BuyerId>(w * 64 + bit);
      if (j != i && distance_[idx(j)] > best_distance) {
        best = j;
        best_distance = distance_[idx(j)];
      }
    }
  }
  return best;
}

std::vector<BuyerId> critical_parents(const Digraph& graph, const ReachabilityView& view,
                                      BuyerId i) {
  return DominatorSets(graph, view).critical_parents(i);
}

BuyerId least_critical_parent(const Digraph& graph, const ReachabilityView& view, BuyerId i) {
  return DominatorSets(graph, view).least_critical_parent(i);
}

DiffusionCriticalTree::DiffusionCriticalTree(const Digraph& graph,
                                             const ReachabilityView& view) {
  const std::size_t n = graph.buyer_count();
  parent_.assign(n, kAbsent);
  node_count_ = view.connected.size();

  const DominatorSets doms(graph, view);
  std::vector<std::pair<BuyerId, BuyerId>> edges;  // (slot, child)
  edges.reserve(view.connected.size());
  for (BuyerId i : view.connected) {
    const BuyerId p = doms.least_critical_parent(i);
    parent_[idx(i)] = p;
    edges.emplace_back(p + 1, i);
  }
  build_csr(n + 1, edges, child_offsets_, child_ids_);

  // Euler tour from the seller; a node's subtree is the interval it spans.
  enter_.assign(n, 0);
  leave_.assign(n, 0);
  std::uint32_t clock = 0;
  std::vector<std::pair<BuyerId, std::uint32_t>> stack;
  stack.emplace_back(kSeller, 0);
  while (!stack.empty()) {
    auto& [node, next_child] = stack.back();
    const auto kids = children(node);
    if (next_child < kids.size()) {
      const BuyerId child = kids[next_child++];
      enter_[idx(child)] = clock++;
      stack.emplace_back(child, 0);
    } else {
      if (node != kSeller) leave_[idx(node)] = clock;
      stack.pop_back();
    }
  }
}

void DiffusionCriticalTree::require_member(BuyerId i) const {
  if (i < 0 || idx(i) >= parent_.size() || parent_[idx(i)] == kAbsent) {
    throw DomainError("buyer " + std::to_string(i) + " is not in the critical tree");
  }
}

BuyerId DiffusionCriticalTree::parent(BuyerId i) const {
  require_member(i);
  return parent_[idx(i)];
}

std::span<const BuyerId> DiffusionCriticalTree::children(BuyerId i) const {
  if (i != kSeller) require_member(i);
  const auto slot = idx(i + 1);
  const auto b = child_offsets_[slot];
  const auto e = child_offsets_[slot + 1];
  return {child_ids_.data() + b, e - b};
}

bool DiffusionCriticalTree::in_subtree(BuyerId node, BuyerId root) const {
  if (root == kSeller) return node == kSeller || contains(node);
  if (!contains(node) || !contains(root)) return false;
  return enter_[idx(root)] <= enter_[idx(node)] && leave_[idx(node)] <= leave_[idx(root)];
}

std::vector<BuyerId> DiffusionCriticalTree::descendants(BuyerId i) const {
  require_member(i);
  std::vector<BuyerId> out;
  for (std::size_t j = 0; j < parent_.size(); ++j) {
    const auto b = static_cast<BuyerId>(j);
    if (b != i && in_subtree(b, i)) out.push_back(b);
  }
  return out;
}

DiffusionCriticalTree build_critical_tree(const AuctionInstance& instance,
                                          const ReportProfile& report) {
  const Digraph graph = Digraph::from_report(instance, report);
  return DiffusionCriticalTree(graph, connected_and_distances(graph));
}

std::vector<BuyerId> eligible_others(const DiffusionCriticalTree& tree,
                                     const ReachabilityView& view, BuyerId i) {
  if (i < 0 || idx(i) >= view.distance.size() || !view.is_connected(i)) {
    throw DomainError("buyer " + std::to_string(i) + " is not connected");
  }
  std::vector<BuyerId> out;
  out.reserve(view.connected.size());
  for (BuyerId j : view.connected) {
    if (!tree.in_subtree(j, i)) out.push_back(j);
  }
  return out;
}

}  // namespace dauction
