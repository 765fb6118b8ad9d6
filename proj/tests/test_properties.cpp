#include <vector>

#include "dauction/fixtures.hpp"
#include "dauction/generator.hpp"
#include "dauction/properties.hpp"
#include "doctest.h"

using namespace dauction;

namespace {

using Ids = std::vector<BuyerId>;

std::vector<AuctionInstance> corpus(std::uint64_t count, int max_n = 7) {
  std::vector<AuctionInstance> out;
  for (std::uint64_t seed = 0; seed < count; ++seed) {
    out.push_back(gen_random_instance(corpus_params(seed, max_n, 4, 40, 3)));
  }
  return out;
}

}  // namespace

TEST_CASE("manipulation space") {
  const auto inst = fixtures::revenue_drop_network();
  const auto space = enumerate_manipulations(inst, 0);
  CHECK(space.candidate_values == std::vector<Money>{0, 4, 5, 6, 7, 14, 15, 16, 19, 20, 21});
  CHECK(space.candidate_forward_sets == std::vector<Ids>{{}, {3}});
  CHECK(space.size() == 22);

  const auto seven = fixtures::seven_buyer_network();
  const auto sets = enumerate_manipulations(seven, 4).candidate_forward_sets;
  CHECK(sets == std::vector<Ids>{{}, {5}, {5, 6}, {6}});
  CHECK_THROWS_AS(enumerate_manipulations(seven, 1, 1), EnumerationTooLarge);
  CHECK_THROWS_AS(enumerate_manipulations(seven, 7), DomainError);
}

TEST_CASE("distance-based is strategy-proof on the worked networks") {
  for (const auto& inst : {fixtures::seven_buyer_network(), fixtures::revenue_drop_network(),
                           fixtures::hiding_network(2), fixtures::hiding_network(4)}) {
    for (auto scope : {DeviationScope::kAll, DeviationScope::kForwardingOnly,
                       DeviationScope::kValueOnly}) {
      const auto r = check_strategy_proofness(inst, MechanismKind::kDistanceBased, std::nullopt,
                                              scope);
      CHECK(r.passed);
      CHECK_FALSE(r.witness);
      CHECK(r.cases > 0);
    }
  }
  CHECK(check_strategy_proofness(fixtures::seven_buyer_network(), MechanismKind::kDistanceBased,
                                 ReserveConfig{40})
            .passed);
}

TEST_CASE("distance-based is strategy-proof on a random corpus, also against misreports") {
  const auto instances = corpus(300);
  for (std::size_t s = 0; s < instances.size(); ++s) {
    const auto& inst = instances[s];
    REQUIRE(check_strategy_proofness(inst, MechanismKind::kDistanceBased).passed);
    std::optional<ReserveConfig> reserve;
    if (s % 3 == 0) reserve = ReserveConfig{static_cast<Money>(s % 40)};
    auto opponents = truthful_report(inst);
    Rng rng(s);
    for (auto& r : opponents.reports) {
      r.value = rng.between(0, 40);
      if (!r.forwarded.empty() && rng.chance(0.5)) r.forwarded.pop_back();
    }
    REQUIRE(check_strategy_proofness(inst, MechanismKind::kDistanceBased, reserve,
                                     DeviationScope::kAll, &opponents)
                .passed);
  }
}

TEST_CASE("ND-VCG and FCFS-F are strategy-proof on the corpus") {
  // Buyer 0 (value 10) beats a 3 bid at price 3; nothing improves on utility 7.
  const auto inst = fixtures::star_network(1, 2, 10);
  auto opponents = truthful_report(inst);
  opponents.reports[1].value = 3;
  CHECK(check_strategy_proofness(inst, MechanismKind::kNdVcg, std::nullopt, DeviationScope::kAll,
                                 &opponents)
            .passed);
  for (const auto& c : corpus(200)) {
    REQUIRE(check_strategy_proofness(c, MechanismKind::kNdVcg).passed);
    REQUIRE(check_strategy_proofness(c, MechanismKind::kFcfsF).passed);
  }
}

TEST_CASE("hiding: the deciding buyer of the hiding network is indifferent") {
  for (int k : {2, 3, 5}) {
    const auto inst = fixtures::hiding_network(k);
    const BuyerId i = fixtures::hiding_network_buyer(k);
    const auto sincere = truthful_report(inst);
    auto hidden = sincere;
    hidden[i].forwarded.clear();
    const auto a = run_distance_based(inst, sincere);
    const auto b = run_distance_based(inst, hidden);
    CHECK(a.wins(i));
    CHECK(b.wins(i));
    CHECK(a.paid(i) == 9);
    CHECK(b.paid(i) == 9);
    CHECK(utility(inst, a, i) == utility(inst, b, i));
  }
}

TEST_CASE("hiding is not dominant under the distance mechanism") {
  const auto found = search_hiding_penalty(MechanismKind::kDistanceBased, 2, 0, 5000);
  REQUIRE(found);
  CHECK(found->after > found->before);
  const auto [hide, sincere] = replay_deviation(MechanismKind::kDistanceBased, *found);
  CHECK(hide == found->before);
  CHECK(sincere == found->after);
  const auto r = check_hiding_dominance(found->instance, MechanismKind::kDistanceBased);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness);
  const auto [before, after] = replay_deviation(MechanismKind::kDistanceBased, *r.witness);
  CHECK(after > before);
}

TEST_CASE("hiding is dominant under the baselines") {
  for (const auto& inst : corpus(300)) {
    REQUIRE(check_hiding_dominance(inst, MechanismKind::kNdVcg).passed);
    REQUIRE(check_hiding_dominance(inst, MechanismKind::kFcfsF).passed);
  }
  CHECK_FALSE(search_hiding_penalty(MechanismKind::kNdVcg, 2, 0, 300));
  CHECK_FALSE(search_hiding_penalty(MechanismKind::kFcfsF, 2, 0, 300));
}

TEST_CASE("domination over the baselines") {
  const auto instances = corpus(2000, 8);
  for (auto base : {MechanismKind::kNdVcg, MechanismKind::kFcfsF}) {
    for (auto metric : {Metric::kSurplus, Metric::kRevenue}) {
      const auto r = check_domination(instances, MechanismKind::kDistanceBased, base, metric);
      CHECK(r.passed);
      CHECK(r.cases == instances.size());
      if (!(base == MechanismKind::kFcfsF && metric == Metric::kRevenue)) {
        // FCFS-F revenue is always zero; every other pair has a strict case.
        REQUIRE(r.strict_example);
        CHECK(r.strict_example->before > r.strict_example->after);
      }
    }
  }
  // The domination check fails when the order is reversed.
  const std::vector<AuctionInstance> seven{fixtures::seven_buyer_network()};
  const auto reversed =
      check_domination(seven, MechanismKind::kNdVcg, MechanismKind::kDistanceBased,
                       Metric::kSurplus);
  CHECK_FALSE(reversed.passed);
  REQUIRE(reversed.witness);
  CHECK(reversed.witness->before == 102);
  CHECK(reversed.witness->after == 156);
}

TEST_CASE("informing fewer direct buyers can raise revenue") {
  const auto r = check_follower_revenue_monotonicity(fixtures::revenue_drop_network());
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness);
  CHECK(*r.witness->seller_subset == Ids{0, 1});
  CHECK(r.witness->before == 12);
  CHECK(r.witness->after == 15);
  CHECK(r.cases == 8);
  const auto [full, sub] = replay_seller_subset(*r.witness);
  CHECK(full == 12);
  CHECK(sub == 15);

  CHECK(check_follower_revenue_monotonicity(fixtures::star_network(2, 4, 5)).passed);
  CHECK_THROWS_AS(check_follower_revenue_monotonicity(fixtures::star_network(1, 4, 5), 3),
                  EnumerationTooLarge);
}

TEST_CASE("outcome predicates hold on the corpus") {
  for (const auto& inst : corpus(1000, 8)) {
    const auto rep = truthful_report(inst);
    const auto out = run_distance_based(inst, rep);
    REQUIRE(check_feasibility(inst, rep, out).passed);
    REQUIRE(check_individual_rationality(inst, rep, out).passed);
    REQUIRE(check_non_deficit(inst, rep, out).passed);
    REQUIRE(check_non_wastefulness(inst, rep, out).passed);
    REQUIRE(check_bounded_efficiency(inst, rep, out).passed);
  }
}

TEST_CASE("outcome predicates reject doctored outcomes") {
  const auto inst = fixtures::seven_buyer_network();
  const auto rep = truthful_report(inst);
  const auto good = run_distance_based(inst, rep);

  auto extra = good;
  extra.allocated[0] = 1;
  CHECK_FALSE(check_feasibility(inst, rep, extra).passed);

  auto four = fixtures::revenue_drop_network();
  four.seller_followers = {0, 1};
  const auto four_rep = truthful_report(four);
  auto stray = run_distance_based(four, four_rep);
  stray.allocated[2] = 1;
  stray.allocated[1] = 0;
  const auto r = check_feasibility(four, four_rep, stray);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness);
  CHECK(r.witness->buyer == 2);

  auto greedy = good;
  greedy.payment[1] = 73;
  CHECK_FALSE(check_individual_rationality(inst, rep, greedy).passed);

  auto subsidy = good;
  subsidy.payment[3] = -1;
  CHECK_FALSE(check_non_deficit(inst, rep, subsidy).passed);
  CHECK(check_individual_rationality(inst, rep, subsidy).passed);

  auto idle = good;
  idle.allocated[4] = 0;
  const auto w = check_non_wastefulness(inst, rep, idle);
  CHECK_FALSE(w.passed);
  CHECK(w.witness->before == 2);
  CHECK(w.witness->after == 3);

  // i1 (value 30) winning while 72, 66 and 50 sit outside her subtree.
  auto unfair = good;
  unfair.allocated.assign(7, 0);
  unfair.allocated[0] = 1;
  const auto b = check_bounded_efficiency(inst, rep, unfair);
  CHECK_FALSE(b.passed);
  CHECK(b.witness->buyer == 0);
}

TEST_CASE("small worlds") {
  const auto dist = check_small_worlds(MechanismKind::kDistanceBased, 3, 2, true, true);
  CHECK(dist.truthful_dominant.passed);
  CHECK(dist.contexts > 0);
  CHECK(dist.mechanism_runs > dist.contexts);
  if (!dist.hiding_dominant.passed) {
    const auto [before, after] =
        replay_deviation(MechanismKind::kDistanceBased, *dist.hiding_dominant.witness);
    CHECK(after > before);
  }
  for (auto base : {MechanismKind::kNdVcg, MechanismKind::kFcfsF}) {
    const auto r = check_small_worlds(base, 3, 2, true, true);
    CHECK(r.hiding_dominant.passed);
    CHECK(r.truthful_dominant.passed);
  }
}

TEST_CASE("small-world witnesses replay") {
  // Hiding is not dominant for the distance mechanism once a competitor can
  // sit below the hider; three buyers suffice.
  const auto dist = check_small_worlds(MechanismKind::kDistanceBased, 3, 3, false, true);
  REQUIRE_FALSE(dist.hiding_dominant.passed);
  const auto& w = *dist.hiding_dominant.witness;
  const auto [before, after] = replay_deviation(MechanismKind::kDistanceBased, w);
  CHECK(before == w.before);
  CHECK(after == w.after);
  CHECK(after > before);
}

TEST_CASE("report serialization") {
  const auto r = check_follower_revenue_monotonicity(fixtures::revenue_drop_network());
  const auto text = serialize_property_report(r);
  CHECK(text.rfind("property follower-revenue-monotonicity\nverdict FAIL\ncases 8\n", 0) == 0);
  CHECK(text.find("seller_subset 0 1\n") != std::string::npos);
  CHECK(text.find("before 12\nafter 15\n") != std::string::npos);
  CHECK(text.find("instance.begin\ndauction-instance 1\n") != std::string::npos);
  CHECK(text.find("witness.end\n") != std::string::npos);

  PropertyReport ok;
  ok.property = "x";
  ok.cases = 3;
  CHECK(serialize_property_report(ok) == "property x\nverdict PASS\ncases 3\n");
}

TEST_CASE("a reserve above every value leaves units unsold") {
  const auto inst = fixtures::seven_buyer_network();
  const auto rep = truthful_report(inst);
  const auto out = run_distance_based(inst, rep, ReserveConfig{100});
  CHECK(out.winner_count() == 0);
  CHECK_FALSE(check_non_wastefulness(inst, rep, out).passed);
  CHECK(check_feasibility(inst, rep, out).passed);
  CHECK(check_individual_rationality(inst, rep, out).passed);
  CHECK(check_non_deficit(inst, rep, out).passed);
  CHECK(check_bounded_efficiency(inst, rep, out).passed);

  const auto all = run_distance_based(inst, rep);
  CHECK(check_non_wastefulness(inst, rep, all).passed);
  auto roomy = inst;
  roomy.k = 9;
  const auto many = run_distance_based(roomy, rep);
  CHECK(many.winner_count() == 7);
  CHECK(check_non_wastefulness(roomy, rep, many).passed);
}
