#include "dauction/properties.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dauction/instance_io.hpp"

namespace dauction {
namespace {

std::size_t idx(BuyerId i) { return static_cast<std::size_t>(i); }

std::vector<BuyerId> members(std::span<const BuyerId> pool, std::uint64_t mask) {
  std::vector<BuyerId> out;
  for (std::size_t b = 0; b < pool.size(); ++b) {
    if ((mask >> b) & 1U) out.push_back(pool[b]);
  }
  return out;
}

Money buyer_utility(MechanismKind mechanism, const AuctionInstance& instance,
                    const ReportProfile& profile, const std::optional<ReserveConfig>& reserve,
                    BuyerId buyer) {
  return utility(instance, run_mechanism(mechanism, instance, profile, reserve), buyer);
}

PropertyReport fail(PropertyReport report, Witness witness) {
  report.passed = false;
  report.witness = std::move(witness);
  return report;
}

Witness outcome_witness(const AuctionInstance& instance, const ReportProfile& report,
                        BuyerId buyer, Money before, Money after, std::string note) {
  Witness w;
  w.instance = instance;
  w.profile = report;
  w.buyer = buyer;
  w.before = before;
  w.after = after;
  w.note = std::move(note);
  return w;
}

// Deviations compared against `reference`, keeping the first strict gain.
PropertyReport compare_against_reference(PropertyReport report, const AuctionInstance& instance,
                                         MechanismKind mechanism,
                                         const std::optional<ReserveConfig>& reserve,
                                         const ReportProfile& opponents,
                                         bool reference_is_truthful, DeviationScope scope) {
  for (std::size_t i = 0; i < instance.buyers.size(); ++i) {
    const auto buyer = static_cast<BuyerId>(i);
    const auto& truth = instance.buyers[i];
    ReportProfile base = opponents;
    base[buyer] = reference_is_truthful ? Report{truth.value, truth.followers}
                                        : Report{truth.value, {}};
    const Money reference = buyer_utility(mechanism, instance, base, reserve, buyer);

    const auto space = enumerate_manipulations(instance, buyer);
    std::vector<Money> values = space.candidate_values;
    std::vector<std::vector<BuyerId>> forward_sets = space.candidate_forward_sets;
    if (scope == DeviationScope::kForwardingOnly) values = {truth.value};
    if (scope == DeviationScope::kValueOnly) forward_sets = {truth.followers};

    ReportProfile trial = base;
    for (Money v : values) {
      for (const auto& fw : forward_sets) {
        const Report dev{v, fw};
        if (dev == base[buyer]) continue;
        trial[buyer] = dev;
        const Money gained = buyer_utility(mechanism, instance, trial, reserve, buyer);
        ++report.cases;
        if (gained > reference) {
          Witness w;
          w.instance = instance;
          w.profile = base;
          w.reserve = reserve;
          w.buyer = buyer;
          w.deviation = dev;
          w.before = reference;
          w.after = gained;
          w.note = reference_is_truthful ? "profitable deviation from truthful report"
                                         : "deviation strictly beats hiding all followers";
          return fail(std::move(report), std::move(w));
        }
      }
    }
  }
  return report;
}

void write_report(std::ostringstream& os, std::string_view tag, const Report& r) {
  os << tag << " value " << r.value << " forwarded";
  for (BuyerId id : r.forwarded) os << ' ' << id;
  os << '\n';
}

void write_witness(std::ostringstream& os, std::string_view label, const Witness& w) {
  os << label << ".begin\n";
  if (w.buyer != kSeller) os << "buyer " << w.buyer << '\n';
  if (w.deviation) write_report(os, "deviation", *w.deviation);
  if (w.seller_subset) {
    os << "seller_subset";
    for (BuyerId id : *w.seller_subset) os << ' ' << id;
    os << '\n';
  }
  if (w.reserve) os << "reserve " << w.reserve->reserve_value << '\n';
  os << "before " << w.before << '\n' << "after " << w.after << '\n';
  if (!w.note.empty()) os << "note " << w.note << '\n';
  os << "instance.begin\n" << serialize_instance(w.instance) << "instance.end\n";
  os << "profile.begin\n";
  for (std::size_t i = 0; i < w.profile.size(); ++i) {
    write_report(os, "report " + std::to_string(i), w.profile.reports[i]);
  }
  os << "profile.end\n" << label << ".end\n";
}

}  // namespace

ManipulationSpace enumerate_manipulations(const AuctionInstance& instance, BuyerId buyer,
                                          std::size_t follower_cap) {
  if (buyer < 0 || idx(buyer) >= instance.buyers.size()) {
    throw DomainError("unknown buyer " + std::to_string(buyer));
  }
  const auto& followers = instance.buyers[idx(buyer)].followers;
  if (followers.size() > follower_cap) {
    throw EnumerationTooLarge("buyer " + std::to_string(buyer) + " has " +
                              std::to_string(followers.size()) + " followers (cap " +
                              std::to_string(follower_cap) + ")");
  }
  ManipulationSpace space;
  space.buyer = buyer;

  Money cap = 0;
  for (const auto& b : instance.buyers) cap = std::max(cap, b.value);
  if (instance.value_cap) cap = *instance.value_cap;
  std::set<Money> grid{0, cap};
  for (const auto& b : instance.buyers) {
    grid.insert(b.value);
    grid.insert(b.value + 1);
    if (b.value > 0) grid.insert(b.value - 1);
  }
  space.candidate_values.assign(grid.begin(), grid.end());

  const std::uint64_t subsets = std::uint64_t{1} << followers.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    space.candidate_forward_sets.push_back(members(followers, mask));
  }
  std::sort(space.candidate_forward_sets.begin(), space.candidate_forward_sets.end());
  return space;
}

PropertyReport check_strategy_proofness(const AuctionInstance& instance, MechanismKind mechanism,
                                        std::optional<ReserveConfig> reserve,
                                        DeviationScope scope, const ReportProfile* profile) {
  PropertyReport report;
  switch (scope) {
    case DeviationScope::kAll: report.property = "strategy-proofness"; break;
    case DeviationScope::kForwardingOnly: report.property = "forwarding-incentive"; break;
    case DeviationScope::kValueOnly: report.property = "value-incentive"; break;
  }
  const ReportProfile opponents = profile ? *profile : truthful_report(instance);
  validate(instance, opponents);
  return compare_against_reference(std::move(report), instance, mechanism, reserve, opponents,
                                   true, scope);
}

PropertyReport check_hiding_dominance(const AuctionInstance& instance, MechanismKind mechanism,
                                      const ReportProfile* profile) {
  PropertyReport report;
  report.property = "hiding-dominance";
  const ReportProfile opponents = profile ? *profile : truthful_report(instance);
  validate(instance, opponents);
  return compare_against_reference(std::move(report), instance, mechanism, std::nullopt,
                                   opponents, false, DeviationScope::kAll);
}

PropertyReport check_domination(std::span<const AuctionInstance> instances, MechanismKind a,
                                MechanismKind b, Metric metric) {
  PropertyReport report;
  report.property = std::string(metric == Metric::kSurplus ? "surplus" : "revenue") +
                    "-domination:" + std::string(mechanism_name(a)) + ">=" +
                    std::string(mechanism_name(b));
  for (const auto& inst : instances) {
    const auto profile = truthful_report(inst);
    const Outcome oa = run_mechanism(a, inst, profile);
    const Outcome ob = run_mechanism(b, inst, profile);
    const Money ma = metric == Metric::kSurplus ? oa.surplus : oa.revenue;
    const Money mb = metric == Metric::kSurplus ? ob.surplus : ob.revenue;
    ++report.cases;
    if (ma < mb) {
      return fail(std::move(report),
                  outcome_witness(inst, profile, kSeller, ma, mb, "dominated mechanism wins"));
    }
    if (ma > mb && !report.strict_example) {
      report.strict_example = outcome_witness(inst, profile, kSeller, ma, mb, "strict");
    }
  }
  return report;
}

PropertyReport check_follower_revenue_monotonicity(const AuctionInstance& instance,
                                                   std::size_t subset_cap) {
  PropertyReport report;
  report.property = "follower-revenue-monotonicity";
  const auto& direct = instance.seller_followers;
  if (direct.size() > subset_cap) {
    throw EnumerationTooLarge(std::to_string(direct.size()) + " seller followers (cap " +
                              std::to_string(subset_cap) + ")");
  }
  const auto profile = truthful_report(instance);
  const Money full = run_distance_based(instance, profile).revenue;

  std::optional<std::vector<BuyerId>> best_subset;
  Money best = full;
  const std::uint64_t subsets = std::uint64_t{1} << direct.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    const auto subset = members(direct, mask);
    const Money got = run_distance_based(with_seller_followers(instance, subset), profile).revenue;
    ++report.cases;
    if (got > best || (got == best && best_subset && got > full && subset < *best_subset)) {
      best = got;
      best_subset = subset;
    }
  }
  if (best_subset) {
    Witness w = outcome_witness(instance, profile, kSeller, full, best,
                                "informing fewer direct buyers earns more");
    w.seller_subset = *best_subset;
    return fail(std::move(report), std::move(w));
  }
  return report;
}

PropertyReport check_feasibility(const AuctionInstance& instance, const ReportProfile& report,
                                 const Outcome& outcome) {
  PropertyReport r;
  r.property = "feasibility";
  r.cases = 1;
  const auto view = connected_and_distances(instance, report);
  const auto count = static_cast<Money>(outcome.winner_count());
  if (count > instance.k) {
    return fail(std::move(r), outcome_witness(instance, report, kSeller, count, instance.k,
                                              "more winners than units"));
  }
  for (BuyerId w : outcome.winners()) {
    if (!view.is_connected(w)) {
      return fail(std::move(r),
                  outcome_witness(instance, report, w, 1, 0, "unconnected buyer allocated"));
    }
  }
  return r;
}

PropertyReport check_individual_rationality(const AuctionInstance& instance,
                                            const ReportProfile& report, const Outcome& outcome) {
  PropertyReport r;
  r.property = "individual-rationality";
  for (std::size_t i = 0; i < instance.buyers.size(); ++i) {
    const auto b = static_cast<BuyerId>(i);
    const Money u = utility(instance, outcome, b);
    ++r.cases;
    if (u < 0) {
      return fail(std::move(r), outcome_witness(instance, report, b, u, 0, "negative utility"));
    }
  }
  return r;
}

PropertyReport check_non_deficit(const AuctionInstance& instance, const ReportProfile& report,
                                 const Outcome& outcome) {
  PropertyReport r;
  r.property = "non-deficit";
  for (std::size_t i = 0; i < outcome.payment.size(); ++i) {
    ++r.cases;
    if (outcome.payment[i] < 0) {
      return fail(std::move(r), outcome_witness(instance, report, static_cast<BuyerId>(i),
                                                outcome.payment[i], 0, "negative payment"));
    }
  }
  if (revenue(outcome) < 0) {
    return fail(std::move(r),
                outcome_witness(instance, report, kSeller, revenue(outcome), 0, "deficit"));
  }
  return r;
}

PropertyReport check_non_wastefulness(const AuctionInstance& instance,
                                      const ReportProfile& report, const Outcome& outcome) {
  PropertyReport r;
  r.property = "non-wastefulness";
  r.cases = 1;
  const auto view = connected_and_distances(instance, report);
  const auto required = std::min<Money>(instance.k, static_cast<Money>(view.connected.size()));
  const auto count = static_cast<Money>(outcome.winner_count());
  r.detail = "winners " + std::to_string(count) + " required " + std::to_string(required);
  if (count < required) {
    return fail(std::move(r), outcome_witness(instance, report, kSeller, count, required,
                                              "units left unallocated"));
  }
  return r;
}

PropertyReport check_bounded_efficiency(const AuctionInstance& instance,
                                        const ReportProfile& report, const Outcome& outcome) {
  PropertyReport r;
  r.property = "bounded-efficiency";
  const auto graph = Digraph::from_report(instance, report);
  const auto view = connected_and_distances(graph);
  const DiffusionCriticalTree tree(graph, view);
  for (BuyerId w : outcome.winners()) {
    ++r.cases;
    if (!view.is_connected(w)) continue;  // feasibility reports this
    const Money bid = report[w].value;
    Money above = 0;
    for (BuyerId j : eligible_others(tree, view, w)) {
      if (report[j].value > bid) ++above;
    }
    if (above >= instance.k) {
      return fail(std::move(r), outcome_witness(instance, report, w, above, instance.k,
                                                "winner outbid by k buyers outside her subtree"));
    }
  }
  return r;
}

std::optional<Witness> search_hiding_penalty(MechanismKind mechanism, int k,
                                             std::uint64_t first_seed, std::uint64_t seed_count,
                                             int max_n, Money max_value) {
  for (std::uint64_t seed = first_seed; seed < first_seed + seed_count; ++seed) {
    GeneratorParams params = corpus_params(seed, max_n, k, max_value, 4);
    params.k = k;
    const auto inst = gen_random_instance(params);
    const auto sincere = truthful_report(inst);
    for (std::size_t i = 0; i < inst.buyers.size(); ++i) {
      if (inst.buyers[i].followers.empty()) continue;
      const auto buyer = static_cast<BuyerId>(i);
      ReportProfile hidden = sincere;
      hidden[buyer].forwarded.clear();
      const Money u_sincere = buyer_utility(mechanism, inst, sincere, std::nullopt, buyer);
      const Money u_hidden = buyer_utility(mechanism, inst, hidden, std::nullopt, buyer);
      if (u_sincere > u_hidden) {
        Witness w = outcome_witness(inst, hidden, buyer, u_hidden, u_sincere,
                                    "hiding earns strictly less than sincere forwarding");
        w.deviation = sincere[buyer];
        return w;
      }
    }
  }
  return std::nullopt;
}

std::pair<Money, Money> replay_deviation(MechanismKind mechanism, const Witness& witness) {
  if (!witness.deviation) throw InputError("witness carries no deviation");
  const Money before =
      buyer_utility(mechanism, witness.instance, witness.profile, witness.reserve, witness.buyer);
  ReportProfile deviated = witness.profile;
  deviated[witness.buyer] = *witness.deviation;
  const Money after =
      buyer_utility(mechanism, witness.instance, deviated, witness.reserve, witness.buyer);
  return {before, after};
}

std::pair<Money, Money> replay_seller_subset(const Witness& witness) {
  if (!witness.seller_subset) throw InputError("witness carries no seller subset");
  const Money full = run_distance_based(witness.instance, witness.profile).revenue;
  const Money sub =
      run_distance_based(with_seller_followers(witness.instance, *witness.seller_subset),
                         witness.profile)
          .revenue;
  return {full, sub};
}

SmallWorldReport check_small_worlds(MechanismKind mechanism, int max_n, Money max_value,
                                    bool check_truthful, bool check_hiding) {
  SmallWorldReport out;
  out.truthful_dominant.property = "strategy-proofness(small-worlds)";
  out.hiding_dominant.property = "hiding-dominance(small-worlds)";
  const auto bid_levels = static_cast<std::size_t>(max_value + 2);  // bids 0..max_value+1
  const auto value_levels = static_cast<std::size_t>(max_value + 1);

  for (int n = 1; n <= max_n; ++n) {
    const auto nb = static_cast<std::size_t>(n);
    const std::uint64_t other_masks = std::uint64_t{1} << (nb - 1);

    // others_of[j] lists buyers != j; a follower mask of j indexes into it.
    std::vector<std::vector<BuyerId>> others_of(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t t = 0; t < nb; ++t) {
        if (t != j) others_of[j].push_back(static_cast<BuyerId>(t));
      }
    }

    AuctionInstance inst;
    inst.k = 1;
    inst.buyers.resize(nb);
    for (std::size_t j = 0; j < nb; ++j) inst.buyers[j].followers = others_of[j];
    ReportProfile profile;
    profile.reports.resize(nb);
    std::vector<Money> bids(nb, 0);
    Outcome o;

    for (std::size_t dev = 0; dev < nb; ++dev) {
      const auto buyer = static_cast<BuyerId>(dev);
      std::vector<std::size_t> opponents;
      for (std::size_t j = 0; j < nb; ++j) {
        if (j != dev) opponents.push_back(j);
      }
      const std::size_t opp = opponents.size();
      std::uint64_t mask_combos = 1;
      std::uint64_t value_combos = 1;
      for (std::size_t t = 0; t < opp; ++t) {
        mask_combos *= other_masks;
        value_combos *= value_levels;
      }
      // (won, paid) indexed by [k-1][opponent values][bid][forward mask].
      const std::size_t per_values = bid_levels * other_masks;
      const std::size_t per_k = value_combos * per_values;
      std::vector<std::pair<bool, Money>> table(nb * per_k);

      for (std::uint64_t seller = 0; seller < (std::uint64_t{1} << nb); ++seller) {
        inst.seller_followers.clear();
        for (std::size_t j = 0; j < nb; ++j) {
          if ((seller >> j) & 1U) inst.seller_followers.push_back(static_cast<BuyerId>(j));
        }
        for (std::uint64_t mc = 0; mc < mask_combos; ++mc) {
          std::uint64_t rest = mc;
          for (std::size_t t = 0; t < opp; ++t) {
            const std::size_t j = opponents[t];
            profile.reports[j].forwarded = members(others_of[j], rest % other_masks);
            rest /= other_masks;
          }
          // An unconnected deviator is never allocated and never pays,
          // whatever she reports; her own edges cannot reach herself.
          profile.reports[dev].forwarded.clear();
          if (!connected_and_distances(inst, profile).is_connected(buyer)) continue;

          for (std::uint64_t fm = 0; fm < other_masks; ++fm) {
            profile.reports[dev].forwarded = members(others_of[dev], fm);
            const PreparedNetwork net(inst, profile);
            for (std::size_t k = 1; k <= nb; ++k) {
              for (std::uint64_t vc = 0; vc < value_combos; ++vc) {
                std::uint64_t vrest = vc;
                for (std::size_t t = 0; t < opp; ++t) {
                  bids[opponents[t]] = static_cast<Money>(vrest % value_levels);
                  vrest /= value_levels;
                }
                for (std::size_t bid = 0; bid < bid_levels; ++bid) {
                  bids[dev] = static_cast<Money>(bid);
                  run_prepared(mechanism, net, bids, static_cast<int>(k), std::nullopt, o);
                  ++out.mechanism_runs;
                  table[(k - 1) * per_k + vc * per_values + bid * other_masks + fm] = {
                      o.wins(buyer), o.paid(buyer)};
                }
              }
            }
          }

          for (std::size_t k = 1; k <= nb; ++k) {
            for (std::uint64_t vc = 0; vc < value_combos; ++vc) {
              ++out.contexts;
              const auto* row = &table[(k - 1) * per_k + vc * per_values];
              auto util = [&](Money true_value, std::size_t bid, std::uint64_t fm) {
                const auto& [won, paid] = row[bid * other_masks + fm];
                return (won ? true_value : 0) - paid;
              };
              auto record = [&](PropertyReport& rep, Money true_value, std::uint64_t true_mask,
                                std::uint64_t ref_mask, std::size_t bid, std::uint64_t fm,
                                Money before, Money after, const char* note) {
                Witness w;
                w.instance = inst;
                w.instance.k = static_cast<int>(k);
                std::uint64_t vrest = vc;
                for (std::size_t t = 0; t < opp; ++t) {
                  const std::size_t j = opponents[t];
                  w.instance.buyers[j] = {static_cast<Money>(vrest % value_levels),
                                          profile.reports[j].forwarded};
                  vrest /= value_levels;
                }
                w.instance.buyers[dev] = {true_value, members(others_of[dev], true_mask)};
                w.profile = truthful_report(w.instance);
                w.profile.reports[dev].forwarded = members(others_of[dev], ref_mask);
                w.buyer = buyer;
                w.deviation = Report{static_cast<Money>(bid), members(others_of[dev], fm)};
                w.before = before;
                w.after = after;
                w.note = note;
                rep.passed = false;
                rep.witness = std::move(w);
              };

              for (std::size_t tv = 0; tv < value_levels; ++tv) {
                const auto true_value = static_cast<Money>(tv);
                for (std::uint64_t tm = 0; tm < other_masks; ++tm) {
                  const Money u_truth = util(true_value, tv, tm);
                  const Money u_hide = util(true_value, tv, 0);
                  // every submask of the true follower mask, including tm and 0
                  for (std::uint64_t sub = tm;; sub = (sub - 1) & tm) {
                    for (std::size_t bid = 0; bid < bid_levels; ++bid) {
                      const Money u = util(true_value, bid, sub);
                      if (check_truthful) {
                        ++out.truthful_dominant.cases;
                        if (u > u_truth && out.truthful_dominant.passed) {
                          record(out.truthful_dominant, true_value, tm, tm, bid, sub, u_truth, u,
                                 "profitable deviation from truthful report");
                        }
                      }
                      if (check_hiding) {
                        ++out.hiding_dominant.cases;
                        if (u > u_hide && out.hiding_dominant.passed) {
                          record(out.hiding_dominant, true_value, tm, 0, bid, sub, u_hide, u,
                                 "deviation strictly beats hiding all followers");
                        }
                      }
                    }
                    if (sub == 0) break;
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

std::string serialize_property_report(const PropertyReport& report) {
  std::ostringstream os;
  os << "property " << report.property << '\n';
  os << "verdict " << (report.passed ? "PASS" : "FAIL") << '\n';
  os << "cases " << report.cases << '\n';
  if (!report.detail.empty()) os << "detail " << report.detail << '\n';
  if (report.witness) write_witness(os, "witness", *report.witness);
  if (report.strict_example) write_witness(os, "strict", *report.strict_example);
  return os.str();
}

}  // namespace dauction
