#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "dauction/instance.hpp"
#include "dauction/mechanisms.hpp"

namespace dauction {

using Ratio = boost::rational<std::int64_t>;

/// Surplus loss of the distance-based mechanism on one profile, measured on
/// reported values in both terms.
struct EfficiencyRecord {
  Money optimal = 0;
  Money achieved = 0;
  Money loss = 0;
  /// loss / (k * value_cap); zero when value_cap is zero.
  Ratio normalized_loss{0};

  bool operator==(const EfficiencyRecord&) const = default;
};

/// Sum of the min(k, |connected|) largest reported values among connected
/// buyers.
Money optimal_surplus(const AuctionInstance& instance, const ReportProfile& report);

/// Runs the distance-based mechanism and compares it with optimal_surplus.
/// Throws InputError when the instance has no value_cap or a report exceeds it.
EfficiencyRecord efficiency_record(const AuctionInstance& instance, const ReportProfile& report,
                                   std::optional<ReserveConfig> reserve);

/// Random profiles drawn for the estimate: seeds [first_seed, first_seed +
/// count), each with n uniform on [1, max_n].
struct AlphaFamily {
  std::uint64_t first_seed = 0;
  std::uint64_t count = 1000;
  int max_n = 8;
  int max_followers = 4;
};

struct EfficiencySample {
  /// Seed for random profiles; "path" or "below-reserve" for the fixed
  /// worst-case constructions.
  std::string source;
  int n = 0;
  int k = 0;
  Money reserve = 0;
  EfficiencyRecord record;
};

/// Every profile behind an estimate: the random family (k units, values in
/// [0, v_bar], truthful reports) followed by the path construction (k buyers
/// at v_h ahead of k buyers at v_bar) and, when v_h >= 1, k direct buyers at
/// v_h - 1.
std::vector<EfficiencySample> efficiency_samples(const AlphaFamily& family, int k, Money v_bar,
                                                 Money v_h);

struct AlphaEstimate {
  /// Largest normalized loss seen: a lower bound on the true worst case.
  Ratio value{0};
  /// First sample attaining `value`.
  std::size_t worst = 0;
  std::vector<EfficiencySample> samples;
};

/// Throws InputError when k < 1, v_bar < 0 or v_h is outside [0, v_bar].
AlphaEstimate alpha_estimate(const AlphaFamily& family, int k, Money v_bar, Money v_h);

/// CSV with header `seed,n,k,v_h,optimal,achieved,loss,normalized_loss`;
/// normalized_loss is written as p/q in lowest terms.
void write_efficiency_csv(std::ostream& os, const std::vector<EfficiencySample>& samples);

std::string to_string(const Ratio& r);

}  // namespace dauction
