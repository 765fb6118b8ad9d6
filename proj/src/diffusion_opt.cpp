#include "dauction/diffusion_opt.hpp"

#include <algorithm>
#include <charconv>

#include "dauction/mechanisms.hpp"

namespace dauction {

DiffusionSolution optimal_diffusion_exact(const AuctionInstance& instance,
                                          std::size_t subset_cap) {
  validate(instance);
  const auto& direct = instance.seller_followers;
  if (direct.size() > subset_cap) {
    throw EnumerationTooLarge(std::to_string(direct.size()) + " seller followers (cap " +
                              std::to_string(subset_cap) + ")");
  }
  std::vector<std::vector<BuyerId>> subsets;
  const std::uint64_t count = std::uint64_t{1} << direct.size();
  subsets.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<BuyerId> s;
    for (std::size_t b = 0; b < direct.size(); ++b) {
      if ((mask >> b) & 1U) s.push_back(direct[b]);
    }
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end());

  const auto profile = truthful_report(instance);
  DiffusionSolution sol;
  sol.table.reserve(subsets.size());
  bool first = true;
  for (auto& s : subsets) {
    const Money r = run_distance_based(with_seller_followers(instance, s), profile).revenue;
    if (first || r > sol.best_revenue) {
      sol.best_revenue = r;
      sol.best_subset = s;
      first = false;
    }
    sol.table.emplace_back(std::move(s), r);
  }
  return sol;
}

DiffusionDecision optimal_diffusion_decision(const AuctionInstance& instance, Money threshold,
                                             std::size_t subset_cap) {
  const auto sol = optimal_diffusion_exact(instance, subset_cap);
  return {sol.best_revenue >= threshold, sol.best_subset, sol.best_revenue};
}

Money PartitionInstance::total() const {
  Money t = 0;
  for (Money v : items) t += v;
  return t;
}

void validate(const PartitionInstance& p) {
  if (p.items.empty()) throw InputError("partition needs at least one item");
  for (Money v : p.items) {
    if (v < 1) throw InputError("partition items must be positive, got " + std::to_string(v));
  }
}

bool partition_oracle(const PartitionInstance& p, Money total_cap) {
  validate(p);
  const Money total = p.total();
  if (total > total_cap) {
    throw EnumerationTooLarge("partition total " + std::to_string(total) + " exceeds cap " +
                              std::to_string(total_cap));
  }
  if (total % 2 != 0) return false;
  const auto half = static_cast<std::size_t>(total / 2);
  std::vector<std::uint8_t> reachable(half + 1, 0);
  reachable[0] = 1;
  for (Money v : p.items) {
    const auto step = static_cast<std::size_t>(v);
    for (std::size_t s = half; s >= step; --s) {
      if (reachable[s - step] != 0) reachable[s] = 1;
      if (s == step) break;
    }
  }
  return reachable[half] != 0;
}

ReductionParams ReductionParams::standard(Money m) {
  ReductionParams p;
  p.v4 = (m + 2) * p.v3 + m * p.v1 + 2;
  p.v5 = p.v4 + 1;
  return p;
}

Money ReductionParams::threshold(Money m) const { return epsilon + m * v1 + v4; }

void validate(const ReductionParams& params, Money m) {
  const auto& p = params;
  if (!(0 < p.epsilon && p.epsilon < p.v2 && p.v2 < p.v1 && p.v1 < p.v3)) {
    throw InputError("reduction values must satisfy 0 < epsilon < v2 < v1 < v3");
  }
  if (!((m + 2) * p.v3 < p.threshold(m))) {
    throw InputError("reduction values must satisfy (m+2) v3 < epsilon + m v1 + v4");
  }
  if (!(p.v4 < p.v5)) throw InputError("reduction values must satisfy v4 < v5");
}

namespace {

PartitionInstance effective_items(const PartitionInstance& p, bool& doubled) {
  validate(p);
  doubled = p.total() % 2 != 0;
  if (!doubled) return p;
  PartitionInstance out = p;
  for (auto& v : out.items) v *= 2;
  return out;
}

}  // namespace

Reduction reduce_partition(const PartitionInstance& p) {
  bool doubled = false;
  const auto items = effective_items(p, doubled);
  return reduce_partition(p, ReductionParams::standard(items.total() / 2));
}

Reduction reduce_partition(const PartitionInstance& p, const ReductionParams& params) {
  Reduction red;
  red.items = effective_items(p, red.doubled);
  red.m = red.items.total() / 2;
  validate(params, red.m);
  red.params = params;
  red.threshold = params.threshold(red.m);

  auto& inst = red.instance;
  inst.k = static_cast<int>(red.m + 2);
  auto add = [&](Money value) {
    inst.buyers.push_back({value, {}});
    return static_cast<BuyerId>(inst.buyers.size() - 1);
  };
  for (Money v : red.items.items) {
    const BuyerId root = add(params.epsilon);
    red.item_roots.push_back(root);
    for (Money c = 0; c < v; ++c) {
      const BuyerId child = add(params.v1);
      inst.buyers[static_cast<std::size_t>(root)].followers.push_back(child);
    }
  }
  red.b_chain.push_back(add(params.v2));
  for (Money j = 0; j < red.m; ++j) red.b_chain.push_back(add(params.v3));
  red.b_chain.push_back(add(params.v4));
  for (Money j = 0; j < red.m; ++j) red.c_chain.push_back(add(params.epsilon));
  red.c_chain.push_back(add(params.v5));
  for (const auto* chain : {&red.b_chain, &red.c_chain}) {
    for (std::size_t j = 0; j + 1 < chain->size(); ++j) {
      inst.buyers[static_cast<std::size_t>((*chain)[j])].followers = {(*chain)[j + 1]};
    }
  }
  inst.seller_followers = red.item_roots;
  inst.seller_followers.push_back(red.b_chain.front());
  inst.seller_followers.push_back(red.c_chain.front());
  validate(inst);
  return red;
}

PropertyReport verify_reduction(const PartitionInstance& p) {
  bool doubled = false;
  const auto items = effective_items(p, doubled);
  return verify_reduction(p, ReductionParams::standard(items.total() / 2));
}

PropertyReport verify_reduction(const PartitionInstance& p, const ReductionParams& params) {
  PropertyReport report;
  report.property = "partition-reduction";
  const auto red = reduce_partition(p, params);
  const bool expected = partition_oracle(p);
  const auto decision = optimal_diffusion_decision(red.instance, red.threshold);
  report.cases = std::uint64_t{1} << red.instance.seller_followers.size();
  report.detail = std::string("partition ") + (expected ? "yes" : "no") + " diffusion " +
                  (decision.yes ? "yes" : "no") + " best revenue " +
                  std::to_string(decision.revenue) + " threshold " +
                  std::to_string(red.threshold);
  if (expected != decision.yes) {
    report.passed = false;
    Witness w;
    w.instance = red.instance;
    w.profile = truthful_report(red.instance);
    w.seller_subset = decision.witness;
    w.before = red.threshold;
    w.after = decision.revenue;
    w.note = expected ? "partition exists but no subset reaches the threshold"
                      : "no partition but a subset reaches the threshold";
    report.witness = std::move(w);
  }
  return report;
}

PartitionInstance parse_partition(const std::string& text) {
  PartitionInstance p;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ',' || text[pos] == ' ')) ++pos;
    if (pos == text.size()) break;
    Money v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc{}) {
      throw InputError("partition: expected an integer at offset " + std::to_string(pos));
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && text[pos] != ',' && text[pos] != ' ') {
      throw InputError("partition: unexpected character '" + std::string(1, text[pos]) + "'");
    }
    p.items.push_back(v);
  }
  validate(p);
  return p;
}

}  // namespace dauction
