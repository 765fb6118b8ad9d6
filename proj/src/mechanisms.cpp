#include "dauction/mechanisms.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dauction {
namespace {

std::size_t idx(BuyerId i) { return static_cast<std::size_t>(i); }

Price kth_highest(std::vector<Money>& values, int k_prime) {
  if (k_prime <= 0) return Price::infinite();
  const auto k = static_cast<std::size_t>(k_prime);
  if (values.size() < k) return Price::of(0);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   values.end(), std::greater<>());
  return Price::of(values[k - 1]);
}

void finalize(const AuctionInstance& instance, Outcome& out) {
  out.surplus = social_surplus(instance, out);
  out.revenue = revenue(out);
}

}  // namespace

std::vector<BuyerId> Outcome::winners() const {
  std::vector<BuyerId> out;
  for (std::size_t i = 0; i < allocated.size(); ++i) {
    if (allocated[i] != 0) out.push_back(static_cast<BuyerId>(i));
  }
  return out;
}

std::size_t Outcome::winner_count() const {
  return static_cast<std::size_t>(std::count(allocated.begin(), allocated.end(), 1));
}

std::string_view mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kDistanceBased: return "distance";
    case MechanismKind::kNdVcg: return "ndvcg";
    case MechanismKind::kFcfsF: return "fcfs";
  }
  return "unknown";
}

MechanismKind parse_mechanism(std::string_view name) {
  if (name == "distance") return MechanismKind::kDistanceBased;
  if (name == "ndvcg") return MechanismKind::kNdVcg;
  if (name == "fcfs") return MechanismKind::kFcfsF;
  throw InputError("unknown mechanism '" + std::string(name) +
                   "' (expected distance, ndvcg or fcfs)");
}

Price v_star(std::vector<Money> values, int k_prime) { return kth_highest(values, k_prime); }

std::vector<BuyerId> priority_order(const ReachabilityView& view) {
  std::vector<BuyerId> order = view.connected;
  std::sort(order.begin(), order.end(), [&](BuyerId a, BuyerId b) {
    const int da = view.distance_of(a);
    const int db = view.distance_of(b);
    return da != db ? da < db : a < b;
  });
  return order;
}

PreparedNetwork::PreparedNetwork(const AuctionInstance& instance, const ReportProfile& report)
    : seller_followers_(instance.seller_followers) {
  const Digraph graph = Digraph::from_report(instance, report);
  view_ = connected_and_distances(graph);
  order_ = priority_order(view_);
  const DiffusionCriticalTree tree(graph, view_);
  competitors_.resize(instance.buyer_count());
  for (BuyerId i : view_.connected) {
    auto& list = competitors_[idx(i)];
    for (BuyerId j : view_.connected) {
      if (!tree.in_subtree(j, i)) list.push_back(j);
    }
  }
}

namespace {

void run_distance_prepared(const PreparedNetwork& net, std::span<const Money> bids, int k,
                           const std::optional<ReserveConfig>& reserve, Outcome& out) {
  int units_left = k;
  thread_local std::vector<Money> competitors;
  for (BuyerId i : net.order()) {
    competitors.clear();
    for (BuyerId j : net.competitors(i)) {
      if (out.allocated[idx(j)] == 0) competitors.push_back(bids[idx(j)]);
    }
    // Dummies sit directly under the seller: never a descendant, never a winner.
    if (reserve) {
      competitors.insert(competitors.end(), static_cast<std::size_t>(k), reserve->reserve_value);
    }
    const Price price = kth_highest(competitors, units_left);
    if (price.accepts(bids[idx(i)])) {
      out.allocated[idx(i)] = 1;
      out.payment[idx(i)] = price.amount();
      --units_left;
    }
  }
}

void run_nd_vcg_prepared(const PreparedNetwork& net, std::span<const Money> bids, int k,
                         Outcome& out) {
  const auto& direct = net.seller_followers();  // ascending id == priority among d = 1
  int sold = 0;
  thread_local std::vector<Money> others;
  for (BuyerId i : direct) {
    if (sold == k) break;
    others.clear();
    for (BuyerId j : direct) {
      if (j != i) others.push_back(bids[idx(j)]);
    }
    const Price price = kth_highest(others, k);
    if (price.accepts(bids[idx(i)])) {
      out.allocated[idx(i)] = 1;
      out.payment[idx(i)] = price.amount();
      ++sold;
    }
  }
}

void run_fcfs_prepared(const PreparedNetwork& net, int k, Outcome& out) {
  const auto& order = net.order();
  const std::size_t take = std::min(order.size(), static_cast<std::size_t>(k));
  for (std::size_t pos = 0; pos < take; ++pos) out.allocated[idx(order[pos])] = 1;
}

std::vector<Money> bids_of(const ReportProfile& report) {
  std::vector<Money> bids;
  bids.reserve(report.size());
  for (const auto& r : report.reports) bids.push_back(r.value);
  return bids;
}

}  // namespace

Outcome run_prepared(MechanismKind kind, const PreparedNetwork& network,
                     std::span<const Money> bids, int k, std::optional<ReserveConfig> reserve) {
  Outcome out;
  run_prepared(kind, network, bids, k, reserve, out);
  return out;
}

void run_prepared(MechanismKind kind, const PreparedNetwork& network,
                  std::span<const Money> bids, int k, std::optional<ReserveConfig> reserve,
                  Outcome& out) {
  if (bids.size() != network.buyer_count()) {
    throw InputError("expected " + std::to_string(network.buyer_count()) + " bids, got " +
                     std::to_string(bids.size()));
  }
  if (k < 1) throw InputError("k must be at least 1");
  if (reserve && kind != MechanismKind::kDistanceBased) {
    throw InputError("reserve price is only defined for the distance mechanism");
  }
  if (reserve && reserve->reserve_value < 0) throw InputError("reserve must be non-negative");
  out.allocated.assign(network.buyer_count(), 0);
  out.payment.assign(network.buyer_count(), 0);
  out.surplus = 0;
  switch (kind) {
    case MechanismKind::kDistanceBased: run_distance_prepared(network, bids, k, reserve, out); break;
    case MechanismKind::kNdVcg: run_nd_vcg_prepared(network, bids, k, out); break;
    case MechanismKind::kFcfsF: run_fcfs_prepared(network, k, out); break;
  }
  out.revenue = revenue(out);
}

Outcome run_distance_based(const AuctionInstance& instance, const ReportProfile& report,
                           std::optional<ReserveConfig> reserve) {
  Outcome out = run_prepared(MechanismKind::kDistanceBased, PreparedNetwork(instance, report),
                             bids_of(report), instance.k, reserve);
  finalize(instance, out);
  return out;
}

Outcome run_nd_vcg(const AuctionInstance& instance, const ReportProfile& report) {
  Outcome out = run_prepared(MechanismKind::kNdVcg, PreparedNetwork(instance, report),
                             bids_of(report), instance.k);
  finalize(instance, out);
  return out;
}

Outcome run_fcfs_f(const AuctionInstance& instance, const ReportProfile& report) {
  Outcome out = run_prepared(MechanismKind::kFcfsF, PreparedNetwork(instance, report),
                             bids_of(report), instance.k);
  finalize(instance, out);
  return out;
}

Outcome run_mechanism(MechanismKind kind, const AuctionInstance& instance,
                      const ReportProfile& report, std::optional<ReserveConfig> reserve) {
  switch (kind) {
    case MechanismKind::kDistanceBased: return run_distance_based(instance, report, reserve);
    case MechanismKind::kNdVcg:
      if (reserve) throw InputError("reserve price is only defined for the distance mechanism");
      return run_nd_vcg(instance, report);
    case MechanismKind::kFcfsF:
      if (reserve) throw InputError("reserve price is only defined for the distance mechanism");
      return run_fcfs_f(instance, report);
  }
  throw InputError("unknown mechanism");
}

Money social_surplus(const AuctionInstance& instance, const Outcome& outcome) {
  Money total = 0;
  for (std::size_t i = 0; i < outcome.allocated.size(); ++i) {
    if (outcome.allocated[i] != 0) total += instance.buyers[i].value;
  }
  return total;
}

Money revenue(const Outcome& outcome) {
  Money total = 0;
  for (Money p : outcome.payment) total += p;
  return total;
}

Money utility(const AuctionInstance& instance, const Outcome& outcome, BuyerId i) {
  const Money value = outcome.wins(i) ? instance.buyers[idx(i)].value : 0;
  return value - outcome.paid(i);
}

std::string serialize_outcome(const Outcome& outcome, MechanismKind kind) {
  std::ostringstream os;
  os << "mechanism " << mechanism_name(kind) << '\n';
  for (std::size_t i = 0; i < outcome.allocated.size(); ++i) {
    os << "buyer " << i << " allocated " << int{outcome.allocated[i]} << " payment "
       << outcome.payment[i] << '\n';
  }
  os << "winners";
  for (BuyerId w : outcome.winners()) os << ' ' << w;
  os << '\n' << "surplus " << outcome.surplus << '\n' << "revenue " << outcome.revenue << '\n';
  return os.str();
}

}  // namespace dauction
