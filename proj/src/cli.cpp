#include "dauction/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dauction/diffusion_opt.hpp"
#include "dauction/efficiency.hpp"
#include "dauction/generator.hpp"
#include "dauction/instance_io.hpp"
#include "dauction/mechanisms.hpp"
#include "dauction/properties.hpp"

namespace dauction {
namespace {

const std::vector<std::string> kPropertyNames = {
    "strategy-proofness",
    "forwarding-incentive",
    "value-incentive",
    "hiding-dominance",
    "follower-revenue-monotonicity",
    "feasibility",
    "individual-rationality",
    "non-deficit",
    "non-wastefulness",
    "bounded-efficiency",
    "surplus-domination",
    "revenue-domination",
};

struct Options {
  std::string instance_path;
  std::string mechanism = "distance";
  std::optional<Money> reserve;
  std::string property;
  bool expect_fail = false;
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  std::optional<Money> threshold;
  std::string partition;
  std::string format = "text";
  std::string out_dir;
  // gen
  std::optional<int> n;
  std::optional<int> k;
  Money max_value = 100;
  int max_followers = 4;
  double edge_probability = 0.3;
  // efficiency
  Money v_bar = 100;
  std::optional<Money> v_h;
  int max_n = 8;
};

std::optional<ReserveConfig> reserve_for(MechanismKind kind, const Options& o,
                                         const InstanceDocument& doc) {
  if (o.reserve) return ReserveConfig{*o.reserve};  // run_mechanism rejects it for baselines
  if (doc.reserve && kind == MechanismKind::kDistanceBased) return ReserveConfig{*doc.reserve};
  return std::nullopt;
}

void print_ids(std::ostream& out, std::string_view label, const std::vector<BuyerId>& ids) {
  out << label;
  for (BuyerId id : ids) out << ' ' << id;
  out << '\n';
}

int cmd_run(const Options& o, std::ostream& out) {
  const auto doc = load_instance_file(o.instance_path);
  const auto kind = parse_mechanism(o.mechanism);
  const auto outcome =
      run_mechanism(kind, doc.instance, truthful_report(doc.instance), reserve_for(kind, o, doc));
  out << serialize_outcome(outcome, kind);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto doc = load_instance_file(o.instance_path);
  const auto profile = truthful_report(doc.instance);
  bool first = true;
  for (auto kind : {MechanismKind::kDistanceBased, MechanismKind::kNdVcg, MechanismKind::kFcfsF}) {
    const auto outcome = run_mechanism(kind, doc.instance, profile, reserve_for(kind, o, doc));
    if (!first) out << '\n';
    first = false;
    out << "mechanism " << mechanism_name(kind) << '\n';
    print_ids(out, "winners", outcome.winners());
    out << "payments";
    for (BuyerId w : outcome.winners()) out << ' ' << w << ':' << outcome.paid(w);
    out << '\n' << "surplus " << outcome.surplus << '\n' << "revenue " << outcome.revenue << '\n';
  }
  return kExitOk;
}

std::vector<PropertyReport> evaluate_property(const std::string& name, const Options& o,
                                              const InstanceDocument& doc) {
  const auto& inst = doc.instance;
  const auto kind = parse_mechanism(o.mechanism);
  const auto reserve = reserve_for(kind, o, doc);
  const auto profile = truthful_report(inst);
  if (name == "strategy-proofness") {
    return {check_strategy_proofness(inst, kind, reserve, DeviationScope::kAll)};
  }
  if (name == "forwarding-incentive") {
    return {check_strategy_proofness(inst, kind, reserve, DeviationScope::kForwardingOnly)};
  }
  if (name == "value-incentive") {
    return {check_strategy_proofness(inst, kind, reserve, DeviationScope::kValueOnly)};
  }
  if (name == "hiding-dominance") return {check_hiding_dominance(inst, kind)};
  if (name == "follower-revenue-monotonicity") return {check_follower_revenue_monotonicity(inst)};
  if (name == "surplus-domination" || name == "revenue-domination") {
    const auto metric = name == "surplus-domination" ? Metric::kSurplus : Metric::kRevenue;
    const std::vector<AuctionInstance> one{inst};
    return {check_domination(one, MechanismKind::kDistanceBased, MechanismKind::kNdVcg, metric),
            check_domination(one, MechanismKind::kDistanceBased, MechanismKind::kFcfsF, metric)};
  }
  const auto outcome = run_mechanism(kind, inst, profile, reserve);
  if (name == "feasibility") return {check_feasibility(inst, profile, outcome)};
  if (name == "individual-rationality") {
    return {check_individual_rationality(inst, profile, outcome)};
  }
  if (name == "non-deficit") return {check_non_deficit(inst, profile, outcome)};
  if (name == "non-wastefulness") return {check_non_wastefulness(inst, profile, outcome)};
  if (name == "bounded-efficiency") return {check_bounded_efficiency(inst, profile, outcome)};
  throw InputError("unknown property '" + name + "'");
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto doc = load_instance_file(o.instance_path);
  std::vector<std::string> names;
  if (o.property == "all") {
    names = kPropertyNames;
  } else {
    names = {o.property};
  }
  bool any_failed = false;
  bool first = true;
  for (const auto& name : names) {
    for (const auto& report : evaluate_property(name, o, doc)) {
      if (!first) out << '\n';
      first = false;
      out << serialize_property_report(report);
      any_failed = any_failed || !report.passed;
    }
  }
  const bool ok = o.expect_fail ? any_failed : !any_failed;
  if (o.expect_fail) out << "\nexpectation " << (ok ? "met" : "NOT met") << " (expected FAIL)\n";
  return ok ? kExitOk : kExitPropertyFail;
}

int cmd_optdiff(const Options& o, std::ostream& out) {
  const auto doc = load_instance_file(o.instance_path);
  const auto sol = optimal_diffusion_exact(doc.instance);
  for (const auto& [subset, revenue] : sol.table) {
    out << "subset";
    for (BuyerId id : subset) out << ' ' << id;
    out << " revenue " << revenue << '\n';
  }
  print_ids(out, "best_subset", sol.best_subset);
  out << "best_revenue " << sol.best_revenue << '\n';
  if (o.threshold) {
    out << "threshold " << *o.threshold << '\n'
        << "decision " << (sol.best_revenue >= *o.threshold ? "yes" : "no") << '\n';
  }
  return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const auto p = parse_partition(o.partition);
  const auto red = reduce_partition(p);
  out << "# partition";
  for (Money v : p.items) out << ' ' << v;
  out << '\n';
  if (red.doubled) out << "# items doubled (odd total)\n";
  out << "# m " << red.m << '\n';
  out << "# threshold " << red.threshold << '\n';
  out << serialize_instance(red.instance);
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.count == 0) throw InputError("--count must be positive");
  if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);
  for (std::uint64_t s = o.seed; s < o.seed + o.count; ++s) {
    GeneratorParams params = corpus_params(s);
    if (o.n) params.n = *o.n;
    if (o.k) params.k = *o.k;
    params.max_value = o.max_value;
    params.max_followers = o.max_followers;
    params.edge_probability = o.edge_probability;
    if (o.n || o.k) params.seed = s;
    const auto text = serialize_instance(gen_random_instance(params));
    if (o.out_dir.empty()) {
      if (s != o.seed) out << "---\n";
      out << text;
    } else {
      const auto path = std::filesystem::path(o.out_dir) / ("instance_" + std::to_string(s) + ".txt");
      std::ofstream file(path, std::ios::binary);
      if (!file) throw InputError("cannot write '" + path.string() + "'");
      file << text;
      out << path.string() << '\n';
    }
  }
  return kExitOk;
}

int cmd_efficiency(const Options& o, std::ostream& out) {
  if (o.format != "text" && o.format != "csv") {
    throw InputError("--format must be text or csv");
  }
  if (!o.instance_path.empty()) {
    const auto doc = load_instance_file(o.instance_path);
    std::optional<ReserveConfig> reserve;
    if (o.v_h) {
      reserve = ReserveConfig{*o.v_h};
    } else if (doc.reserve) {
      reserve = ReserveConfig{*doc.reserve};
    }
    const auto rec = efficiency_record(doc.instance, truthful_report(doc.instance), reserve);
    if (o.format == "csv") {
      EfficiencySample s{o.instance_path, static_cast<int>(doc.instance.buyer_count()),
                         doc.instance.k, reserve ? reserve->reserve_value : 0, rec};
      write_efficiency_csv(out, {s});
    } else {
      out << "optimal " << rec.optimal << '\n'
          << "achieved " << rec.achieved << '\n'
          << "loss " << rec.loss << '\n'
          << "normalized_loss " << to_string(rec.normalized_loss) << '\n';
    }
    return kExitOk;
  }
  const int k = o.k.value_or(2);
  const Money v_h = o.v_h.value_or(o.v_bar / 2);
  AlphaFamily family{o.seed, o.count, o.max_n, o.max_followers};
  const auto est = alpha_estimate(family, k, o.v_bar, v_h);
  if (o.format == "csv") {
    write_efficiency_csv(out, est.samples);
    return kExitOk;
  }
  const auto& worst = est.samples[est.worst];
  out << "k " << k << '\n'
      << "v_bar " << o.v_bar << '\n'
      << "v_h " << v_h << '\n'
      << "profiles " << est.samples.size() << '\n'
      << "alpha_estimate " << to_string(est.value) << '\n'
      << "worst_source " << worst.source << '\n'
      << "worst_loss " << worst.record.loss << '\n';
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-unit auctions over social networks", "dauction"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run one mechanism on an instance file");
  run->add_option("--instance", o.instance_path, "Instance file")->required();
  run->add_option("--mechanism", o.mechanism, "distance | ndvcg | fcfs");
  run->add_option("--reserve", o.reserve, "Reserve price (distance only)");

  auto* compare = app.add_subcommand("compare", "Run all three mechanisms side by side");
  compare->add_option("--instance", o.instance_path, "Instance file")->required();
  compare->add_option("--reserve", o.reserve, "Reserve price for the distance mechanism");

  auto* check = app.add_subcommand("check", "Check a property on an instance file");
  check->add_option("--instance", o.instance_path, "Instance file")->required();
  std::string property_help = "One of: all";
  for (const auto& name : kPropertyNames) property_help += ", " + name;
  check->add_option("--property", o.property, property_help)->required();
  check->add_option("--mechanism", o.mechanism, "distance | ndvcg | fcfs");
  check->add_option("--reserve", o.reserve, "Reserve price (distance only)");
  check->add_flag("--expect-fail", o.expect_fail, "Succeed only if the property fails");

  auto* optdiff = app.add_subcommand("optdiff", "Best subset of direct followers to inform");
  optdiff->add_option("--instance", o.instance_path, "Instance file")->required();
  optdiff->add_option("--threshold", o.threshold, "Answer the yes/no revenue question");

  auto* reduce = app.add_subcommand("reduce", "Build the gadget network for a Partition instance");
  reduce->add_option("--partition", o.partition, "Items, e.g. \"1,1,2\"")->required();

  auto* gen = app.add_subcommand("gen", "Generate seeded random instances");
  gen->add_option("--seed", o.seed, "First seed");
  gen->add_option("--count", o.count, "Number of instances");
  gen->add_option("--n", o.n, "Buyer count (default: drawn from the seed)");
  gen->add_option("--k", o.k, "Units (default: drawn from the seed)");
  gen->add_option("--max-value", o.max_value, "Largest value");
  gen->add_option("--max-followers", o.max_followers, "Largest follower count");
  gen->add_option("--edge-probability", o.edge_probability, "Probability of each edge")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--out", o.out_dir, "Write one file per instance into this directory");

  auto* eff = app.add_subcommand("efficiency", "Efficiency loss under a reserve price");
  eff->add_option("--instance", o.instance_path, "Single instance (needs value_cap)");
  eff->add_option("--k", o.k, "Units for the random family");
  eff->add_option("--vbar", o.v_bar, "Value cap for the random family");
  eff->add_option("--vh", o.v_h, "Reserve price (default vbar/2)");
  eff->add_option("--seed", o.seed, "First seed of the random family");
  eff->add_option("--count", o.count, "Random profiles in the family");
  eff->add_option("--max-n", o.max_n, "Largest buyer count in the family");
  eff->add_option("--format", o.format, "text | csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return kExitInputError;
  }
  if (gen->parsed() && o.count == 0) {
    err << "error: --count must be positive\n";
    return kExitInputError;
  }

  const std::map<const CLI::App*, std::function<int(const Options&, std::ostream&)>> handlers = {
      {run, cmd_run},         {compare, cmd_compare}, {check, cmd_check},
      {optdiff, cmd_optdiff}, {reduce, cmd_reduce},   {gen, cmd_gen},
      {eff, cmd_efficiency},
  };
  try {
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler(o, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const EnumerationTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  err << app.help();
  return kExitInputError;
}

}  // namespace dauction
