// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dauction/cli.hpp"
#include "dauction/diffusion_opt.hpp"
#include "dauction/efficiency.hpp"
#include "dauction/fixtures.hpp"
#include "dauction/generator.hpp"
#include "dauction/mechanisms.hpp"
#include "dauction/properties.hpp"

using namespace dauction;

namespace {

// Pinned limits.
constexpr double kExampleSeconds = 1.0;
constexpr double kCorpusSeconds = 60.0;
constexpr double kIncentiveSeconds = 600.0;
constexpr double kReductionSeconds = 300.0;
constexpr std::uint64_t kCorpusSize = 10'000;
constexpr std::uint64_t kIncentiveInstances = 2'000;
constexpr int kSmallWorldBuyers = 4;
constexpr Money kSmallWorldMaxValue = 3;
constexpr Money kValueCap = 100;
constexpr Money kHalfReserve = kValueCap / 2;
constexpr std::uint64_t kHidingSearchSeeds = 20'000;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("violated: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds,
               const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v = body();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_seconds) {
    v.pass = false;
    v.note("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s");
  }
  if (!v.pass) ++failures;
  std::printf("criterion %2d: %s  %s [%.2f s] %s\n", number, v.pass ? "PASS" : "FAIL",
              title.c_str(), secs, v.detail.c_str());
  std::fflush(stdout);
}

std::string data(const std::string& name) { return std::string(DAUCTION_TEST_DATA) + "/" + name; }

std::pair<int, std::string> cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(args, out, err);
  return {code, out.str() + err.str()};
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

const std::vector<AuctionInstance>& corpus() {
  static const std::vector<AuctionInstance> instances = [] {
    std::vector<AuctionInstance> out;
    out.reserve(kCorpusSize);
    for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
      out.push_back(gen_random_instance(corpus_params(seed, 8, 4, kValueCap, 4)));
    }
    return out;
  }();
  return instances;
}

std::string ids(const std::vector<BuyerId>& v) {
  std::string s = "{";
  for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "," : "") + std::to_string(v[t]);
  return s + "}";
}

}  // namespace

int main() {
  criterion(1, "seven-buyer network: winners, payments, totals", kExampleSeconds, [] {
    Verdict v;
    const auto [code, text] =
        cli({"run", "--instance", data("seven_buyers.txt"), "--mechanism", "distance"});
    v.require(code == 0, "exit code 0");
    v.require(contains(text, "buyer 1 allocated 1 payment 40\n"), "buyer 1 pays 40");
    v.require(contains(text, "buyer 2 allocated 1 payment 30\n"), "buyer 2 pays 30");
    v.require(contains(text, "buyer 4 allocated 1 payment 45\n"), "buyer 4 pays 45");
    v.require(contains(text, "winners 1 2 4\n"), "winners {1,2,4}");
    v.require(contains(text, "revenue 115\n"), "revenue 115");
    v.require(contains(text, "surplus 156\n"), "surplus 156");
    v.note("winners {1,2,4} pay 40,30,45; revenue 115; surplus 156");
    return v;
  });

  criterion(2, "reserve 40 on the seven-buyer network", kExampleSeconds, [] {
    Verdict v;
    const auto [code, text] = cli({"run", "--instance", data("seven_buyers.txt"), "--mechanism",
                                   "distance", "--reserve", "40"});
    v.require(code == 0, "exit code 0");
    v.require(contains(text, "winners 1 4 5\n"), "winners {1,4,5}");
    v.require(contains(text, "buyer 1 allocated 1 payment 40\n"), "buyer 1 pays 40");
    v.require(contains(text, "buyer 4 allocated 1 payment 40\n"), "buyer 4 pays 40");
    v.require(contains(text, "buyer 5 allocated 1 payment 45\n"), "buyer 5 pays 45");
    v.note("winners {1,4,5} pay 40,40,45");
    return v;
  });

  criterion(3, "informing fewer direct buyers raises revenue", kExampleSeconds, [] {
    Verdict v;
    const auto inst = fixtures::revenue_drop_network();
    const Money full = run_distance_based(inst, truthful_report(inst)).revenue;
    const auto restricted = with_seller_followers(inst, std::vector<BuyerId>{0, 1});
    const Money sub = run_distance_based(restricted, truthful_report(restricted)).revenue;
    v.require(full == 12, "full revenue 12");
    v.require(sub == 15, "restricted revenue 15");
    const auto [code, text] = cli({"optdiff", "--instance", data("four_buyers.txt")});
    v.require(code == 0, "optdiff exit 0");
    v.require(contains(text, "best_subset 0 1\nbest_revenue 15\n"), "optdiff ({0,1}, 15)");
    v.note("full " + std::to_string(full) + ", {0,1} " + std::to_string(sub) +
           ", optdiff ({0,1}, 15)");
    return v;
  });

  criterion(4, "corpus: feasibility, IR, payments >= 0, winners = min(k, |reached|)",
            kCorpusSeconds, [] {
              Verdict v;
              std::uint64_t violations = 0;
              std::string first;
              for (std::size_t s = 0; s < corpus().size(); ++s) {
                const auto& inst = corpus()[s];
                const auto rep = truthful_report(inst);
                const auto out = run_distance_based(inst, rep);
                for (const auto& r :
                     {check_feasibility(inst, rep, out), check_individual_rationality(inst, rep, out),
                      check_non_deficit(inst, rep, out), check_non_wastefulness(inst, rep, out)}) {
                  if (!r.passed) {
                    if (violations++ == 0) first = "seed " + std::to_string(s) + " " + r.property;
                  }
                }
                const auto reached = connected_and_distances(inst, rep).connected.size();
                if (out.winner_count() !=
                    std::min(reached, static_cast<std::size_t>(inst.k))) {
                  if (violations++ == 0) first = "seed " + std::to_string(s) + " winner count";
                }
              }
              v.require(violations == 0, first);
              v.note(std::to_string(corpus().size()) + " instances, " +
                     std::to_string(violations) + " violations");
              return v;
            });

  criterion(5, "no profitable deviation (random suite + n <= 4 exhaustive)", kIncentiveSeconds,
            [] {
              Verdict v;
              std::uint64_t cases = 0;
              std::uint64_t violations = 0;
              for (std::uint64_t seed = 0; seed < kIncentiveInstances; ++seed) {
                const auto r = check_strategy_proofness(corpus()[seed],
                                                        MechanismKind::kDistanceBased);
                cases += r.cases;
                if (!r.passed && violations++ == 0) {
                  v.require(false, "seed " + std::to_string(seed) + "\n" +
                                       serialize_property_report(r));
                }
              }
              const auto small = check_small_worlds(MechanismKind::kDistanceBased,
                                                    kSmallWorldBuyers, kSmallWorldMaxValue, true,
                                                    false);
              if (!small.truthful_dominant.passed) {
                v.require(false, "small worlds\n" +
                                     serialize_property_report(small.truthful_dominant));
              }
              v.note(std::to_string(kIncentiveInstances) + " instances / " +
                     std::to_string(cases) + " deviations; small worlds " +
                     std::to_string(small.contexts) + " contexts / " +
                     std::to_string(small.truthful_dominant.cases) + " deviations");
              return v;
            });

  criterion(6, "bounded efficiency on the corpus", kCorpusSeconds, [] {
    Verdict v;
    std::uint64_t violations = 0;
    std::uint64_t winners = 0;
    for (std::size_t s = 0; s < corpus().size(); ++s) {
      const auto& inst = corpus()[s];
      const auto rep = truthful_report(inst);
      const auto out = run_distance_based(inst, rep);
      const auto r = check_bounded_efficiency(inst, rep, out);
      winners += r.cases;
      if (!r.passed && violations++ == 0) v.require(false, "seed " + std::to_string(s));
    }
    v.note(std::to_string(winners) + " winners checked, " + std::to_string(violations) +
           " violations");
    return v;
  });

  criterion(7, "surplus and revenue domination over ND-VCG and FCFS-F", kCorpusSeconds, [] {
    Verdict v;
    for (auto base : {MechanismKind::kNdVcg, MechanismKind::kFcfsF}) {
      for (auto metric : {Metric::kSurplus, Metric::kRevenue}) {
        const auto r = check_domination(corpus(), MechanismKind::kDistanceBased, base, metric);
        v.require(r.passed, r.property);
        v.require(r.strict_example.has_value(), r.property + " strict case");
      }
    }
    const auto seven = fixtures::seven_buyer_network();
    const auto rep = truthful_report(seven);
    const Money dist = run_distance_based(seven, rep).surplus;
    const Money nd = run_nd_vcg(seven, rep).surplus;
    const Money fc = run_fcfs_f(seven, rep).surplus;
    v.require(dist == 156 && nd == 102 && fc == 136, "seven-buyer surplus 156/102/136");
    v.note("seven-buyer surplus " + std::to_string(dist) + " > " + std::to_string(nd) + " (ndvcg), > " +
           std::to_string(fc) + " (fcfs); strict cases found for all four pairs");
    return v;
  });

  criterion(8, "reserve: winner count, 1/2 bound at v_h = v_bar/2, path family loss",
            kCorpusSeconds, [] {
              Verdict v;
              std::uint64_t violations = 0;
              Ratio worst{0};
              for (std::size_t s = 0; s < corpus().size(); ++s) {
                const auto& inst = corpus()[s];
                const auto rep = truthful_report(inst);
                for (Money v_h : {kHalfReserve, static_cast<Money>((s * 37) % (kValueCap + 1))}) {
                  const auto out = run_distance_based(inst, rep, ReserveConfig{v_h});
                  std::size_t ell = 0;
                  for (BuyerId i : connected_and_distances(inst, rep).connected) {
                    if (rep[i].value >= v_h) ++ell;
                  }
                  if (out.winner_count() != std::min(ell, static_cast<std::size_t>(inst.k))) {
                    if (violations++ == 0) v.require(false, "count at seed " + std::to_string(s));
                  }
                }
                const auto rec = efficiency_record(inst, rep, ReserveConfig{kHalfReserve});
                worst = std::max(worst, rec.normalized_loss);
                if (rec.normalized_loss > Ratio(1, 2) && violations++ == 0) {
                  v.require(false, "loss above 1/2 at seed " + std::to_string(s));
                }
              }
              AlphaFamily none{0, 0, 8, 4};
              for (int k = 1; k <= 4; ++k) {
                for (const auto& sample : efficiency_samples(none, k, kValueCap, kHalfReserve)) {
                  worst = std::max(worst, sample.record.normalized_loss);
                  v.require(sample.record.normalized_loss <= Ratio(1, 2),
                            sample.source + " loss <= 1/2 at k=" + std::to_string(k));
                }
                for (Money v_h : {Money{0}, Money{25}, kHalfReserve, Money{80}, kValueCap}) {
                  auto path = fixtures::path_network(k, v_h, kValueCap);
                  path.value_cap = kValueCap;
                  const auto rec = efficiency_record(path, truthful_report(path), ReserveConfig{v_h});
                  v.require(rec.loss == k * (kValueCap - v_h),
                            "path loss k(v_bar - v_h) at k=" + std::to_string(k) +
                                " v_h=" + std::to_string(v_h));
                }
              }
              v.note("max normalized loss " + to_string(worst) + " at v_h = 50; " +
                     std::to_string(violations) + " violations");
              return v;
            });

  criterion(9, "Partition reduction agrees with the subset-sum oracle", kReductionSeconds, [] {
    Verdict v;
    std::vector<std::vector<Money>> all;
    std::vector<Money> cur;
    std::function<void()> extend = [&] {
      if (!cur.empty()) all.push_back(cur);
      if (cur.size() == 5) return;
      for (Money x = cur.empty() ? 1 : cur.back(); x <= 4; ++x) {
        cur.push_back(x);
        extend();
        cur.pop_back();
      }
    };
    extend();
    std::size_t yes = 0;
    for (const auto& items : all) {
      const PartitionInstance p{items};
      const auto r = verify_reduction(p);
      v.require(r.passed, "multiset " + ids(std::vector<BuyerId>(items.begin(), items.end())));
      if (partition_oracle(p)) {
        ++yes;
        const auto red = reduce_partition(p);
        v.require(optimal_diffusion_exact(red.instance).best_revenue == red.threshold,
                  "yes-instance revenue exactly K");
      }
    }
    v.note(std::to_string(all.size()) + " multisets, " + std::to_string(yes) +
           " yes-instances reach exactly K");
    return v;
  });

  criterion(10, "hiding: dominant for the baselines, not for the distance mechanism",
            kIncentiveSeconds, [] {
              Verdict v;
              for (auto base : {MechanismKind::kNdVcg, MechanismKind::kFcfsF}) {
                const auto r = check_small_worlds(base, kSmallWorldBuyers, kSmallWorldMaxValue,
                                                  false, true);
                v.require(r.hiding_dominant.passed,
                          std::string(mechanism_name(base)) + " hiding dominance\n" +
                              serialize_property_report(r.hiding_dominant));
              }
              const auto found = search_hiding_penalty(MechanismKind::kDistanceBased, 2, 0,
                                                       kHidingSearchSeeds);
              v.require(found.has_value(), "strict hiding penalty found");
              if (found) {
                const auto [hide, sincere] =
                    replay_deviation(MechanismKind::kDistanceBased, *found);
                v.require(sincere > hide, "witness replays");
                v.note("strict case: buyer " + std::to_string(found->buyer) + " earns " +
                       std::to_string(sincere) + " forwarding vs " + std::to_string(hide) +
                       " hiding");
              }
              const auto inst = fixtures::hiding_network(2);
              const BuyerId i = fixtures::hiding_network_buyer(2);
              auto hidden = truthful_report(inst);
              hidden[i].forwarded.clear();
              const Money u_sincere =
                  utility(inst, run_distance_based(inst, truthful_report(inst)), i);
              const Money u_hidden = utility(inst, run_distance_based(inst, hidden), i);
              v.note(std::string("hiding instance: ") +
                     (u_sincere > u_hidden ? "strict" : (u_sincere == u_hidden ? "tie" : "reversed")) +
                     " (" + std::to_string(u_sincere) + " vs " + std::to_string(u_hidden) + ")");
              return v;
            });

  std::printf("acceptance: %s (%d failing)\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
