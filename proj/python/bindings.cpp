#include <sstream>
#include <string>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relaycci/analysis.hpp"
#include "relaycci/channel.hpp"
#include "relaycci/errors.hpp"
#include "relaycci/experiment.hpp"
#include "relaycci/montecarlo.hpp"
#include "relaycci/sir.hpp"

namespace py = pybind11;
using namespace relaycci;

namespace {

McConfig make_mc(std::uint64_t trials, std::uint64_t seed, std::uint64_t chunk,
                 unsigned workers) {
    return {trials, seed, chunk == 0 ? std::min<std::uint64_t>(65536, trials) : chunk,
            workers};
}

std::string report_csv(const OutageReport& report) {
    std::ostringstream out;
    write_csv(report, out);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Outage bounds and Monte-Carlo simulation for multi-hop AF relaying "
              "with Nakagami-m co-channel interference";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<HopParams>(m, "HopParams")
        .def(py::init<double, double, double, double>(), py::arg("alpha"), py::arg("beta"),
             py::arg("snr_desired"), py::arg("inr"))
        .def_readwrite("alpha", &HopParams::alpha)
        .def_readwrite("beta", &HopParams::beta)
        .def_readwrite("snr_desired", &HopParams::snr_desired)
        .def_readwrite("inr", &HopParams::inr)
        .def("__repr__", [](const HopParams& h) {
            std::ostringstream s;
            s << "HopParams(alpha=" << h.alpha << ", beta=" << h.beta
              << ", snr_desired=" << h.snr_desired << ", inr=" << h.inr << ")";
            return s.str();
        });

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](std::vector<HopParams> hops, double power, double mod_const) {
                 SystemConfig cfg{std::move(hops), power, mod_const};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("hops"), py::arg("power") = 1.0, py::arg("mod_const") = 2.0)
        .def_static("symmetric",
                    [](const HopParams& hop, std::size_t k, double power, double mod_const) {
                        auto cfg = SystemConfig::symmetric(hop, k, power, mod_const);
                        cfg.validate();
                        return cfg;
                    },
                    py::arg("hop"), py::arg("hops"), py::arg("power") = 1.0,
                    py::arg("mod_const") = 2.0)
        .def_readonly("hops", &SystemConfig::hops)
        .def_readonly("power", &SystemConfig::power)
        .def_readonly("mod_const", &SystemConfig::mod_const)
        .def_property_readonly("hop_count", &SystemConfig::hop_count)
        .def_property_readonly("is_symmetric", &SystemConfig::is_symmetric);

    py::class_<OutageBounds>(m, "OutageBounds")
        .def_readonly("low", &OutageBounds::low)
        .def_readonly("high", &OutageBounds::high);
    py::class_<GainReport>(m, "GainReport")
        .def_readonly("diversity", &GainReport::diversity)
        .def_readonly("coding", &GainReport::coding);
    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("trials", &McEstimate::trials);

    m.def("hop_sir_cdf", &hop_sir_cdf, py::arg("hop"), py::arg("power"), py::arg("x"));
    m.def("hop_sir_pdf", &hop_sir_pdf, py::arg("hop"), py::arg("power"), py::arg("x"));
    m.def("end_to_end_sir", [](std::vector<double> g) { return end_to_end_sir(g); },
          py::arg("hop_sirs"));

    m.def("upper_bound_cdf", &upper_bound_cdf_general, py::arg("config"), py::arg("x"));
    m.def("lower_bound_cdf", &lower_bound_cdf_general, py::arg("config"), py::arg("x"));
    m.def("upper_bound_cdf_worst_hop", &upper_bound_cdf_worst_hop, py::arg("config"),
          py::arg("x"));
    m.def("upper_bound_cdf_asymptote", &upper_bound_cdf_asymptote, py::arg("config"),
          py::arg("x"));
    m.def("outage_bounds",
          [](const SystemConfig& c, double th) { return outage_bounds(c, {th}); },
          py::arg("config"), py::arg("threshold"));
    m.def("gains",
          [](const SystemConfig& c) { return gains(worst_hop_chain(c), c.mod_const); },
          py::arg("config"),
          "Diversity and coding gain; non-symmetric configs use the worst-hop chain.");

    m.def("simulate_outage",
          [](const SystemConfig& c, double th, std::uint64_t trials, std::uint64_t seed,
             std::uint64_t chunk, unsigned workers) {
              const McConfig mc = make_mc(trials, seed, chunk, workers);
              py::gil_scoped_release release;
              return simulate_outage(c, {th}, mc);
          },
          py::arg("config"), py::arg("threshold"), py::arg("trials") = 1'000'000,
          py::arg("seed") = 1, py::arg("chunk") = 0, py::arg("workers") = 1);
    m.def("sample_e2e",
          [](const SystemConfig& c, std::uint64_t trials, std::uint64_t seed,
             std::uint64_t chunk, unsigned workers) {
              const McConfig mc = make_mc(trials, seed, chunk, workers);
              std::vector<E2eSample> batch;
              {
                  py::gil_scoped_release release;
                  batch = sample_e2e_batch(c, mc);
              }
              const auto n = static_cast<py::ssize_t>(batch.size());
              py::array_t<double> out({n, py::ssize_t{3}});
              auto v = out.mutable_unchecked<2>();
              for (py::ssize_t i = 0; i < n; ++i) {
                  v(i, 0) = batch[i].e2e;
                  v(i, 1) = batch[i].upper;
                  v(i, 2) = batch[i].lower;
              }
              return out;
          },
          py::arg("config"), py::arg("trials"), py::arg("seed") = 1, py::arg("chunk") = 0,
          py::arg("workers") = 1,
          "(trials, 3) array of end-to-end SIR, upper bound and lower bound per trial.");

    m.def("db_to_linear", &db_to_linear);
    m.def("linear_to_db", &linear_to_db);
    m.def("run_experiment_csv",
          [](const std::string& path, bool analysis_only, std::optional<std::uint64_t> seed,
             std::optional<std::uint64_t> trials, std::optional<unsigned> workers) {
              const Experiment ex =
                  apply_options(load_experiment(path), {analysis_only, seed, trials, workers});
              py::gil_scoped_release release;
              return report_csv(run_experiment(ex));
          },
          py::arg("config_path"), py::arg("analysis_only") = false, py::arg("seed") = py::none(),
          py::arg("trials") = py::none(), py::arg("workers") = py::none(),
          "Runs an experiment config and returns its CSV text.");
}
