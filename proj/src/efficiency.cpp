#include "dauction/efficiency.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "dauction/fixtures.hpp"
#include "dauction/generator.hpp"

namespace dauction {

Money optimal_surplus(const AuctionInstance& instance, const ReportProfile& report) {
  const auto view = connected_and_distances(instance, report);
  std::vector<Money> values;
  values.reserve(view.connected.size());
  for (BuyerId i : view.connected) values.push_back(report[i].value);
  const auto take = std::min(values.size(), static_cast<std::size_t>(instance.k));
  std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(take),
                    values.end(), std::greater<>());
  Money total = 0;
  for (std::size_t t = 0; t < take; ++t) total += values[t];
  return total;
}

EfficiencyRecord efficiency_record(const AuctionInstance& instance, const ReportProfile& report,
                                   std::optional<ReserveConfig> reserve) {
  if (!instance.value_cap) throw InputError("efficiency needs a value cap");
  const Money cap = *instance.value_cap;
  for (std::size_t i = 0; i < report.size(); ++i) {
    if (report.reports[i].value > cap) {
      throw InputError("buyer " + std::to_string(i) + " reports " +
                       std::to_string(report.reports[i].value) + " above the value cap " +
                       std::to_string(cap));
    }
  }
  const Outcome out = run_distance_based(instance, report, reserve);
  EfficiencyRecord rec;
  rec.optimal = optimal_surplus(instance, report);
  for (BuyerId w : out.winners()) rec.achieved += report[w].value;
  rec.loss = rec.optimal - rec.achieved;
  const Money scale = static_cast<Money>(instance.k) * cap;
  if (scale > 0) rec.normalized_loss = Ratio(rec.loss, scale);
  return rec;
}

std::vector<EfficiencySample> efficiency_samples(const AlphaFamily& family, int k, Money v_bar,
                                                 Money v_h) {
  if (k < 1) throw InputError("k must be at least 1");
  if (v_bar < 0) throw InputError("value cap must be non-negative");
  if (v_h < 0 || v_h > v_bar) throw InputError("reserve must lie in [0, value cap]");
  const ReserveConfig reserve{v_h};
  std::vector<EfficiencySample> out;
  auto add = [&](std::string source, AuctionInstance inst) {
    inst.value_cap = v_bar;
    EfficiencySample s;
    s.source = std::move(source);
    s.n = static_cast<int>(inst.buyer_count());
    s.k = k;
    s.reserve = v_h;
    s.record = efficiency_record(inst, truthful_report(inst), reserve);
    out.push_back(std::move(s));
  };

  for (std::uint64_t seed = family.first_seed; seed < family.first_seed + family.count; ++seed) {
    GeneratorParams p = corpus_params(seed, family.max_n, k, v_bar, family.max_followers);
    p.k = k;
    add(std::to_string(seed), gen_random_instance(p));
  }
  add("path", fixtures::path_network(k, v_h, v_bar));
  if (v_h >= 1) add("below-reserve", fixtures::star_network(k, k, v_h - 1));
  return out;
}

AlphaEstimate alpha_estimate(const AlphaFamily& family, int k, Money v_bar, Money v_h) {
  AlphaEstimate est;
  est.samples = efficiency_samples(family, k, v_bar, v_h);
  for (std::size_t s = 0; s < est.samples.size(); ++s) {
    if (est.samples[s].record.normalized_loss > est.value || s == 0) {
      est.value = est.samples[s].record.normalized_loss;
      est.worst = s;
    }
  }
  return est;
}

std::string to_string(const Ratio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void write_efficiency_csv(std::ostream& os, const std::vector<EfficiencySample>& samples) {
  os << "seed,n,k,v_h,optimal,achieved,loss,normalized_loss\n";
  for (const auto& s : samples) {
    os << s.source << ',' << s.n << ',' << s.k << ',' << s.reserve << ',' << s.record.optimal
       << ',' << s.record.achieved << ',' << s.record.loss << ','
       << to_string(s.record.normalized_loss) << '\n';
  }
}

}  // namespace dauction
