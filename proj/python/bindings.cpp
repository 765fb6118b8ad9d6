#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dauction/diffusion_opt.hpp"
#include "dauction/efficiency.hpp"
#include "dauction/fixtures.hpp"
#include "dauction/generator.hpp"
#include "dauction/instance_io.hpp"
#include "dauction/mechanisms.hpp"
#include "dauction/properties.hpp"

namespace py = pybind11;
using namespace dauction;

namespace {

py::object fraction(const Ratio& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

std::optional<ReserveConfig> reserve_of(std::optional<Money> v) {
  if (!v) return std::nullopt;
  return ReserveConfig{*v};
}

}  // namespace

PYBIND11_MODULE(dauction, m) {
  m.doc() = "Multi-unit diffusion auctions on social networks";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<EnumerationTooLarge>(m, "EnumerationTooLarge", PyExc_OverflowError);
  (void)input_error;

  py::class_<BuyerType>(m, "BuyerType")
      .def(py::init<>())
      .def(py::init([](Money value, std::vector<BuyerId> followers) {
             return BuyerType{value, std::move(followers)};
           }),
           py::arg("value"), py::arg("followers") = std::vector<BuyerId>{})
      .def_readwrite("value", &BuyerType::value)
      .def_readwrite("followers", &BuyerType::followers)
      .def(py::self == py::self);

  py::class_<AuctionInstance>(m, "AuctionInstance")
      .def(py::init<>())
      .def(py::init([](int k, std::vector<BuyerId> seller_followers,
                       std::vector<BuyerType> buyers, std::optional<Money> value_cap) {
             AuctionInstance inst{k, std::move(seller_followers), std::move(buyers), value_cap};
             normalize(inst);
             validate(inst);
             return inst;
           }),
           py::arg("k"), py::arg("seller_followers"), py::arg("buyers"),
           py::arg("value_cap") = py::none())
      .def_readwrite("k", &AuctionInstance::k)
      .def_readwrite("seller_followers", &AuctionInstance::seller_followers)
      .def_readwrite("buyers", &AuctionInstance::buyers)
      .def_readwrite("value_cap", &AuctionInstance::value_cap)
      .def_property_readonly("buyer_count", &AuctionInstance::buyer_count)
      .def(py::self == py::self)
      .def("__str__", [](const AuctionInstance& i) { return serialize_instance(i); });

  py::class_<Report>(m, "Report")
      .def(py::init([](Money value, std::vector<BuyerId> forwarded) {
             return Report{value, std::move(forwarded)};
           }),
           py::arg("value"), py::arg("forwarded") = std::vector<BuyerId>{})
      .def_readwrite("value", &Report::value)
      .def_readwrite("forwarded", &Report::forwarded);

  py::class_<ReportProfile>(m, "ReportProfile")
      .def(py::init([](std::vector<Report> reports) { return ReportProfile{std::move(reports)}; }),
           py::arg("reports"))
      .def_readwrite("reports", &ReportProfile::reports)
      .def("__len__", &ReportProfile::size);

  py::class_<InstanceDocument>(m, "InstanceDocument")
      .def_readwrite("instance", &InstanceDocument::instance)
      .def_readwrite("reserve", &InstanceDocument::reserve);

  py::enum_<MechanismKind>(m, "Mechanism")
      .value("DISTANCE", MechanismKind::kDistanceBased)
      .value("NDVCG", MechanismKind::kNdVcg)
      .value("FCFS", MechanismKind::kFcfsF);

  py::class_<Outcome>(m, "Outcome")
      .def_readonly("allocated", &Outcome::allocated)
      .def_readonly("payment", &Outcome::payment)
      .def_readonly("surplus", &Outcome::surplus)
      .def_readonly("revenue", &Outcome::revenue)
      .def_property_readonly("winners", &Outcome::winners);

  py::class_<Witness>(m, "Witness")
      .def_readonly("instance", &Witness::instance)
      .def_readonly("profile", &Witness::profile)
      .def_readonly("buyer", &Witness::buyer)
      .def_readonly("deviation", &Witness::deviation)
      .def_readonly("seller_subset", &Witness::seller_subset)
      .def_readonly("before", &Witness::before)
      .def_readonly("after", &Witness::after)
      .def_readonly("note", &Witness::note);

  py::class_<PropertyReport>(m, "PropertyReport")
      .def_readonly("property", &PropertyReport::property)
      .def_readonly("passed", &PropertyReport::passed)
      .def_readonly("witness", &PropertyReport::witness)
      .def_readonly("strict_example", &PropertyReport::strict_example)
      .def_readonly("cases", &PropertyReport::cases)
      .def_readonly("detail", &PropertyReport::detail)
      .def("__str__", &serialize_property_report);

  py::class_<DiffusionSolution>(m, "DiffusionSolution")
      .def_readonly("best_subset", &DiffusionSolution::best_subset)
      .def_readonly("best_revenue", &DiffusionSolution::best_revenue)
      .def_readonly("table", &DiffusionSolution::table);

  py::class_<Reduction>(m, "Reduction")
      .def_property_readonly("items", [](const Reduction& r) { return r.items.items; })
      .def_readonly("doubled", &Reduction::doubled)
      .def_readonly("m", &Reduction::m)
      .def_readonly("instance", &Reduction::instance)
      .def_readonly("threshold", &Reduction::threshold)
      .def_readonly("item_roots", &Reduction::item_roots)
      .def_readonly("b_chain", &Reduction::b_chain)
      .def_readonly("c_chain", &Reduction::c_chain);

  py::class_<EfficiencyRecord>(m, "EfficiencyRecord")
      .def_readonly("optimal", &EfficiencyRecord::optimal)
      .def_readonly("achieved", &EfficiencyRecord::achieved)
      .def_readonly("loss", &EfficiencyRecord::loss)
      .def_property_readonly("normalized_loss",
                             [](const EfficiencyRecord& r) { return fraction(r.normalized_loss); });

  m.def("parse_instance", &parse_instance, py::arg("text"));
  m.def("load_instance", &load_instance_file, py::arg("path"));
  m.def("serialize_instance",
        py::overload_cast<const AuctionInstance&>(&serialize_instance), py::arg("instance"));
  m.def("serialize_instance",
        py::overload_cast<const InstanceDocument&>(&serialize_instance), py::arg("document"));
  m.def("truthful_report", &truthful_report, py::arg("instance"));
  m.def("with_seller_followers",
        [](const AuctionInstance& i, std::vector<BuyerId> subset) {
          return with_seller_followers(i, subset);
        },
        py::arg("instance"), py::arg("subset"));

  m.def("run",
        [](const AuctionInstance& inst, MechanismKind kind, std::optional<ReportProfile> report,
           std::optional<Money> reserve) {
          return run_mechanism(kind, inst, report ? *report : truthful_report(inst),
                               reserve_of(reserve));
        },
        py::arg("instance"), py::arg("mechanism") = MechanismKind::kDistanceBased,
        py::arg("report") = py::none(), py::arg("reserve") = py::none());
  m.def("utility", &utility, py::arg("instance"), py::arg("outcome"), py::arg("buyer"));

  m.def("check_strategy_proofness",
        [](const AuctionInstance& inst, MechanismKind kind, std::optional<Money> reserve) {
          return check_strategy_proofness(inst, kind, reserve_of(reserve));
        },
        py::arg("instance"), py::arg("mechanism") = MechanismKind::kDistanceBased,
        py::arg("reserve") = py::none());
  m.def("check_hiding_dominance",
        [](const AuctionInstance& inst, MechanismKind kind) {
          return check_hiding_dominance(inst, kind);
        },
        py::arg("instance"), py::arg("mechanism"));
  m.def("check_domination",
        [](const std::vector<AuctionInstance>& instances, MechanismKind a, MechanismKind b,
           const std::string& metric) {
          if (metric != "surplus" && metric != "revenue") {
            throw InputError("metric must be 'surplus' or 'revenue'");
          }
          return check_domination(instances, a, b,
                                  metric == "surplus" ? Metric::kSurplus : Metric::kRevenue);
        },
        py::arg("instances"), py::arg("a"), py::arg("b"), py::arg("metric"));
  m.def("check_follower_revenue_monotonicity",
        [](const AuctionInstance& inst) { return check_follower_revenue_monotonicity(inst); },
        py::arg("instance"));

  m.def("optimal_diffusion",
        [](const AuctionInstance& inst) { return optimal_diffusion_exact(inst); },
        py::arg("instance"));
  m.def("partition_oracle",
        [](std::vector<Money> items) { return partition_oracle(PartitionInstance{items}); },
        py::arg("items"));
  m.def("reduce_partition",
        [](std::vector<Money> items) { return reduce_partition(PartitionInstance{items}); },
        py::arg("items"));
  m.def("verify_reduction",
        [](std::vector<Money> items) { return verify_reduction(PartitionInstance{items}); },
        py::arg("items"));

  m.def("efficiency_record",
        [](const AuctionInstance& inst, std::optional<Money> reserve) {
          return efficiency_record(inst, truthful_report(inst), reserve_of(reserve));
        },
        py::arg("instance"), py::arg("reserve") = py::none());
  m.def("alpha_estimate",
        [](int k, Money v_bar, Money v_h, std::uint64_t first_seed, std::uint64_t count,
           int max_n) {
          const auto est = alpha_estimate(AlphaFamily{first_seed, count, max_n, 4}, k, v_bar, v_h);
          return py::make_tuple(fraction(est.value), est.samples[est.worst].source);
        },
        py::arg("k"), py::arg("v_bar"), py::arg("v_h"), py::arg("first_seed") = 0,
        py::arg("count") = 1000, py::arg("max_n") = 8);

  m.def("generate",
        [](std::uint64_t seed, int n, int k, Money max_value, int max_followers,
           double edge_probability) {
          return gen_random_instance(
              GeneratorParams{n, k, max_value, max_followers, edge_probability, seed});
        },
        py::arg("seed"), py::arg("n") = 8, py::arg("k") = 2, py::arg("max_value") = 100,
        py::arg("max_followers") = 4, py::arg("edge_probability") = 0.3);
  m.def("corpus_instance",
        [](std::uint64_t seed) { return gen_random_instance(corpus_params(seed)); },
        py::arg("seed"));

  auto fx = m.def_submodule("fixtures", "Small hand-built networks");
  fx.def("seven_buyer_network", &fixtures::seven_buyer_network);
  fx.def("revenue_drop_network", &fixtures::revenue_drop_network);
  fx.def("hiding_network", &fixtures::hiding_network, py::arg("k"));
  fx.def("path_network", &fixtures::path_network, py::arg("k"), py::arg("near_value"),
         py::arg("far_value"));
}
