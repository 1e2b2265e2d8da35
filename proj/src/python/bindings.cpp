/*
 * Copyright 2026 The fbgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fbgame/access_models.hpp"
#include "fbgame/centralized.hpp"
#include "fbgame/channel_model.hpp"
#include "fbgame/config_io.hpp"
#include "fbgame/errors.hpp"
#include "fbgame/experiments.hpp"
#include "fbgame/game_engine.hpp"
#include "fbgame/precoding.hpp"
#include "fbgame/price_controller.hpp"

namespace py = pybind11;
using namespace fbgame;

namespace {

RateProfile profile(const std::vector<double>& r) { return RateProfile(r); }

py::dict report_dict(const EquilibriumReport& rep) {
  py::dict d;
  d["rates"] = rep.rates.vector();
  d["utilities"] = rep.utilities;
  d["priced_utilities"] = rep.priced_utilities;
  d["rounds"] = rep.rounds;
  d["converged"] = rep.converged;
  d["nash_verified"] = rep.nash_verified;
  std::vector<std::vector<double>> trace;
  for (const auto& step : rep.trace) trace.push_back(step.vector());
  d["trace"] = trace;
  return d;
}

EquilibriumReport report_from(const py::dict& d) {
  EquilibriumReport rep;
  rep.rates = profile(d["rates"].cast<std::vector<double>>());
  rep.converged = d["converged"].cast<bool>();
  rep.rounds = d.contains("rounds") ? d["rounds"].cast<std::size_t>() : 0;
  return rep;
}

}  // namespace

PYBIND11_MODULE(_fbgame, m) {
  m.doc() = "feedback-rate control games over quantized CSI";

  // translators registered later are tried first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<InfeasibleProfile>(m, "InfeasibleProfile", PyExc_ValueError);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", PyExc_ArithmeticError);
  py::register_exception<SeriesDivergence>(m, "SeriesDivergence", PyExc_ArithmeticError);

  py::enum_<Protocol>(m, "Protocol")
      .value("FDMA", Protocol::Fdma)
      .value("CSMA", Protocol::Csma);

  py::class_<CsmaModel>(m, "CsmaModel")
      .def(py::init([](double p, double a_ratio, double eps) {
             return make_csma_model(p, a_ratio, eps);
           }),
           py::arg("p") = 1.0, py::arg("a_ratio") = 0.1, py::arg("truncation_eps") = 1e-12)
      .def_readwrite("p", &CsmaModel::p)
      .def_readwrite("a_ratio", &CsmaModel::a_ratio)
      .def_readwrite("g0", &CsmaModel::g0)
      .def_readwrite("truncation_eps", &CsmaModel::truncation_eps);

  py::class_<GameConfig>(m, "GameConfig")
      .def(py::init<>())
      .def_readwrite("n_t", &GameConfig::n_t)
      .def_readwrite("n_s", &GameConfig::n_s)
      .def_readwrite("b_total", &GameConfig::b_total)
      .def_readwrite("beta", &GameConfig::beta)
      .def_readwrite("n0", &GameConfig::n0)
      .def_readwrite("alpha_price", &GameConfig::alpha_price)
      .def_readwrite("protocol", &GameConfig::protocol)
      .def_readwrite("csma", &GameConfig::csma)
      .def_readwrite("r_max", &GameConfig::r_max)
      .def_readwrite("mc_trials", &GameConfig::mc_trials)
      .def_readwrite("master_seed", &GameConfig::master_seed)
      .def_readwrite("br_tolerance", &GameConfig::br_tolerance)
      .def_readwrite("max_rounds", &GameConfig::max_rounds)
      .def_readwrite("psi", &GameConfig::psi)
      .def_readwrite("initial_rate", &GameConfig::initial_rate)
      .def("validate", &GameConfig::validate)
      .def("to_json", [](const GameConfig& c) { return config_to_json(c).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return config_from_json(nlohmann::json::parse(text));
      });

  m.def("draw_channel", [](std::size_t n_s, std::size_t n_t, std::uint64_t seed) {
    auto r = draw_channel(n_s, n_t, seed);
    return py::make_tuple(r.h, r.nq);
  });
  m.def("distortion_from_rate", [](double r) { return distortion_from_rate(r).value(); });
  m.def("mu_nu", [](double d) {
    const auto v = mu_nu(Distortion(d));
    return py::make_tuple(v.mu, v.nu);
  });
  m.def("quantize_channel", [](const CMatrix& h, const CMatrix& nq, std::vector<double> rates) {
    return quantize_channel(ChannelRealization{h, nq, 0}, rates);
  });
  m.def("build_precoder", [](const CMatrix& hq, double psi) {
    const auto p = build_precoder(hq, psi);
    return py::make_tuple(p.w, p.k_norm);
  });
  m.def("sinr", [](const CMatrix& h, const CMatrix& hq, double psi, double n0) {
    return link_metrics(h, build_precoder(hq, psi), n0).gamma;
  });
  m.def("fdma_split", [](double b, double beta, const std::vector<double>& r) {
    const auto s = fdma_split(b, beta, profile(r));
    return py::make_tuple(s.b_ul, s.b_dl);
  });
  m.def("csma_throughput", &csma_throughput, py::arg("g"), py::arg("model"));
  m.def("calibrate_g0", &calibrate_g0, py::arg("p"), py::arg("a_ratio"),
        py::arg("truncation_eps") = 1e-12);
  m.def("csma_effective_rates", [](const std::vector<double>& r, const CsmaModel& model) {
    return csma_effective_rates(profile(r), model).vector();
  });

  py::class_<FeedbackGame>(m, "FeedbackGame")
      .def(py::init<GameConfig>())
      .def_property_readonly("config", &FeedbackGame::config)
      .def_property_readonly("psi", &FeedbackGame::psi)
      .def("with_price", &FeedbackGame::with_price)
      .def("is_feasible",
           [](const FeedbackGame& g, const std::vector<double>& r) { return g.is_feasible(profile(r)); })
      .def("expected_utilities",
           [](const FeedbackGame& g, const std::vector<double>& r) {
             return g.expected_utilities(profile(r));
           })
      .def("priced_utilities",
           [](const FeedbackGame& g, const std::vector<double>& r) {
             return g.priced_utilities(profile(r));
           })
      .def("sum_utility",
           [](const FeedbackGame& g, const std::vector<double>& r) { return g.sum_utility(profile(r)); })
      .def("mean_sinr",
           [](const FeedbackGame& g, const std::vector<double>& r) { return g.mean_sinr(profile(r)); })
      .def("best_response",
           [](const FeedbackGame& g, std::size_t k, const std::vector<double>& r) {
             return g.best_response(k, profile(r));
           })
      .def(
          "run_dynamics",
          [](const FeedbackGame& g, std::optional<std::vector<double>> r0) {
            return report_dict(r0 ? g.run_dynamics(profile(*r0)) : g.run_dynamics());
          },
          py::arg("r0") = py::none())
      .def(
          "verify_nash",
          [](const FeedbackGame& g, const py::dict& report, std::size_t grid) {
            auto rep = report_from(report);
            return g.verify_nash(rep, grid);
          },
          py::arg("report"), py::arg("check_grid") = 129);

  m.def(
      "sweep_price",
      [](const GameConfig& cfg, double delta, double alpha_max, bool curve) {
        const auto res =
            sweep_price(cfg, delta, alpha_max, curve ? SweepMode::Curve : SweepMode::StopRule);
        py::list records;
        for (const auto& rec : res.records) {
          py::dict d;
          d["alpha"] = rec.alpha_price;
          d["sum_rate"] = rec.sum_rate;
          d["sum_priced"] = rec.sum_priced;
          d["uplink_bw"] = rec.uplink_bw;
          d["equilibrium"] = report_dict(rec.equilibrium);
          records.append(d);
        }
        py::dict out;
        out["records"] = records;
        out["alpha_best"] = res.alpha_best;
        out["stop_reason"] = std::string(to_string(res.stop_reason));
        out["warnings"] = res.warnings;
        return out;
      },
      py::arg("cfg"), py::arg("delta_alpha") = 0.005, py::arg("alpha_max") = 0.2,
      py::arg("curve") = false);

  m.def("centralized_optimum", [](const GameConfig& cfg) {
    const auto res = centralized_optimum(cfg);
    return py::make_tuple(res.rates.vector(), res.sum_utility);
  });

  m.def("list_experiments", [] {
    std::vector<std::string> names;
    for (const auto& e : list_experiments()) names.push_back(e.name);
    return names;
  });
  m.def(
      "run_experiment",
      [](const std::string& name, const std::filesystem::path& output, bool quick,
         std::optional<GameConfig> cfg) {
        auto spec = default_experiment_spec(name, quick);
        if (cfg) spec.cfg = *cfg;
        spec.output = output;
        const auto outcome = run_experiment(spec);
        return py::make_tuple(outcome.summary, outcome.warnings);
      },
      py::arg("name"), py::arg("output"), py::arg("quick") = false, py::arg("cfg") = py::none());
}
