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
#include "fbgame/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <locale>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "fbgame/access_models.hpp"
#include "fbgame/centralized.hpp"
#include "fbgame/errors.hpp"
#include "fbgame/game_engine.hpp"
#include "fbgame/price_controller.hpp"

namespace fbgame {

namespace {

constexpr const char* kUtilityCurveColumns = "r_probe,utility,fixed_other_rate";
constexpr const char* kPriceSweepColumns =
    "alpha,sum_rate,sum_priced_utility,uplink_bw,converged,rounds,r_1..r_N,u_1..u_N";
constexpr const char* kOccupancyColumns = "alpha,uplink_bw,r_1..r_N";
constexpr const char* kCompareColumns =
    "alpha,nfcp_sum_utility,centralized_sum_utility,ratio,converged";
constexpr const char* kCsmaCurveColumns = "g,throughput";

class CsvWriter {
 public:
  void header(const std::vector<std::string>& names) { row_strings(names); }

  template <typename... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> out;
    (append(out, cells), ...);
    row_strings(out);
  }

  const std::string& str() const { return text_; }

 private:
  static void append(std::vector<std::string>& out, double v) { out.push_back(format_number(v)); }
  static void append(std::vector<std::string>& out, bool v) { out.push_back(v ? "1" : "0"); }
  static void append(std::vector<std::string>& out, std::size_t v) {
    out.push_back(std::to_string(v));
  }
  static void append(std::vector<std::string>& out, const std::vector<double>& v) {
    for (double x : v) out.push_back(format_number(x));
  }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }

  std::string text_;
};

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string utility_curve(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
  const FeedbackGame game(spec.cfg);
  const auto& cfg = game.config();
  CsvWriter csv;
  csv.header({"r_probe", "utility", "fixed_other_rate"});
  for (double other : spec.fixed_other_rates) {
    RateProfile profile(cfg.n_s, other);
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < spec.probe_points; ++i) {
      profile[0] = cfg.r_max * static_cast<double>(i) / static_cast<double>(spec.probe_points - 1);
      if (!game.is_feasible(profile)) {
        ++skipped;
        continue;
      }
      csv.row(profile[0], game.expected_utility(0, profile), other);
    }
    if (skipped) {
      outcome.warnings.push_back(std::to_string(skipped) + " infeasible probe points skipped at " +
                                 "fixed_other_rate=" + format_number(other));
    }
  }
  return csv.str();
}

void summarize_sweep(const PriceSweepResult& sweep, ExperimentOutcome& outcome) {
  outcome.summary.push_back("alpha_best=" + format_number(sweep.alpha_best) +
                            " stop_reason=" + std::string(to_string(sweep.stop_reason)));
  const auto& best = sweep.best();
  const auto& first = sweep.records.front();
  outcome.summary.push_back("sum_rate(alpha=0)=" + format_number(first.sum_rate) +
                            " sum_rate(alpha_best)=" + format_number(best.sum_rate));
  outcome.warnings.insert(outcome.warnings.end(), sweep.warnings.begin(), sweep.warnings.end());
}

std::string price_sweep(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
  const auto sweep = sweep_price(spec.cfg, spec.delta_alpha, spec.alpha_max, SweepMode::Curve);
  const std::size_t n = spec.cfg.n_s;
  CsvWriter csv;
  csv.header(concat(concat({"alpha", "sum_rate", "sum_priced_utility", "uplink_bw", "converged",
                            "rounds"},
                           numbered("r_", n)),
                    numbered("u_", n)));
  for (const auto& rec : sweep.records) {
    csv.row(rec.alpha_price, rec.sum_rate, rec.sum_priced, rec.uplink_bw,
            rec.equilibrium.converged, rec.equilibrium.rounds, rec.equilibrium.rates.vector(),
            rec.equilibrium.utilities);
  }
  summarize_sweep(sweep, outcome);
  return csv.str();
}

std::string uplink_occupancy(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
  const auto sweep = sweep_price(spec.cfg, spec.delta_alpha, spec.alpha_max, SweepMode::Curve);
  CsvWriter csv;
  csv.header(concat({"alpha", "uplink_bw"}, numbered("r_", spec.cfg.n_s)));
  for (const auto& point : uplink_occupancy_curve(sweep)) {
    csv.row(point.alpha_price, point.uplink_bw, point.rates.vector());
  }
  summarize_sweep(sweep, outcome);
  return csv.str();
}

std::string centralized_compare(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
  const FeedbackGame game(spec.cfg);
  const auto sweep = sweep_price(game, spec.delta_alpha, spec.alpha_max, SweepMode::Curve);
  const auto central = centralized_optimum(game);
  CsvWriter csv;
  csv.header({"alpha", "nfcp_sum_utility", "centralized_sum_utility", "ratio", "converged"});
  for (const auto& rec : sweep.records) {
    csv.row(rec.alpha_price, rec.sum_rate, central.sum_utility,
            rec.sum_rate / central.sum_utility, rec.equilibrium.converged);
  }
  summarize_sweep(sweep, outcome);
  outcome.summary.push_back("centralized_sum_utility=" + format_number(central.sum_utility) +
                            " nfcp_at_alpha_best_ratio=" +
                            format_number(sweep.best().sum_rate / central.sum_utility));
  return csv.str();
}

std::string csma_curve(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
  const CsmaModel& model = spec.cfg.csma;
  CsvWriter csv;
  csv.header({"g", "throughput"});
  for (std::size_t i = 1; i <= spec.load_points; ++i) {
    const double g = spec.load_max * static_cast<double>(i) / static_cast<double>(spec.load_points);
    csv.row(g, csma_throughput(g, model));
  }
  outcome.summary.push_back("g0=" + format_number(model.g0) +
                            " S(g0)=" + format_number(csma_throughput(model.g0, model)));
  return csv.str();
}

using Runner = std::function<std::string(const ExperimentSpec&, ExperimentOutcome&)>;

struct Registered {
  ExperimentInfo info;
  Runner run;
  int users;  // 0 means the full-scale default
  Protocol protocol;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> entries = {
      {{"utility-curve-fdma", "utility of user 1 against its own feedback rate, FDMA feedback",
        kUtilityCurveColumns},
       utility_curve, 2, Protocol::Fdma},
      {{"utility-curve-csma", "utility of user 1 against its own feedback rate, CSMA feedback",
        kUtilityCurveColumns},
       utility_curve, 2, Protocol::Csma},
      {{"price-sweep-fdma", "equilibrium sum utility and feedback against price, FDMA feedback",
        kPriceSweepColumns},
       price_sweep, 0, Protocol::Fdma},
      {{"price-sweep-csma", "equilibrium sum utility and feedback against price, CSMA feedback",
        kPriceSweepColumns},
       price_sweep, 0, Protocol::Csma},
      {{"uplink-occupancy", "uplink bandwidth and per-user rates against price, FDMA feedback",
        kOccupancyColumns},
       uplink_occupancy, 0, Protocol::Fdma},
      {{"centralized-compare-fdma", "priced equilibrium against the centralized optimum, FDMA",
        kCompareColumns},
       centralized_compare, 0, Protocol::Fdma},
      {{"centralized-compare-csma", "priced equilibrium against the centralized optimum, CSMA",
        kCompareColumns},
       centralized_compare, 0, Protocol::Csma},
      {{"csma-curve", "slotted CSMA network throughput against offered load", kCsmaCurveColumns},
       csma_curve, 0, Protocol::Csma},
  };
  return entries;
}

const Registered& find(std::string_view name) {
  for (const auto& entry : registry()) {
    if (entry.info.name == name) return entry;
  }
  throw InvalidArgument("unknown experiment '" + std::string(name) + "'");
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& entry : registry()) out.push_back(entry.info);
    return out;
  }();
  return infos;
}

bool is_registered_experiment(std::string_view name) {
  return std::any_of(registry().begin(), registry().end(),
                     [&](const Registered& e) { return e.info.name == name; });
}

void ExperimentSpec::validate() const {
  find(name);
  cfg.validate();
  if (probe_points < 2) throw InvalidArgument("experiment: probe_points must be at least 2");
  if (!(delta_alpha > 0.0)) throw InvalidArgument("experiment: delta_alpha must be positive");
  if (!(alpha_max >= 0.0)) throw InvalidArgument("experiment: alpha_max must be non-negative");
  if (load_points < 1 || !(load_max > 0.0)) {
    throw InvalidArgument("experiment: CSMA load grid must be non-empty");
  }
  if (output.empty()) throw InvalidArgument("experiment: output path is empty");
}

ExperimentSpec default_experiment_spec(std::string_view name, bool quick) {
  const auto& entry = find(name);
  ExperimentSpec spec;
  spec.name = entry.info.name;
  spec.cfg.protocol = entry.protocol;
  const std::size_t users = entry.users ? static_cast<std::size_t>(entry.users) : quick ? 4 : 10;
  spec.cfg.n_s = users;
  spec.cfg.n_t = users;
  spec.cfg.mc_trials = quick ? 100 : 500;
  spec.output = spec.name + ".csv";
  return spec;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentOutcome outcome;
  outcome.output = spec.output;
  const std::string content = find(spec.name).run(spec, outcome);
  write_file_atomic(spec.output, content);
  return outcome;
}

std::vector<PsiScanPoint> psi_scan(const GameConfig& cfg, double common_rate,
                                   const std::vector<double>& psi_values) {
  const FeedbackGame base(cfg);
  const RateProfile profile(cfg.n_s, common_rate);
  std::vector<PsiScanPoint> out;
  out.reserve(psi_values.size());
  for (double psi : psi_values) {
    GameConfig scan_cfg = cfg;
    scan_cfg.psi = psi;
    const auto per_user = FeedbackGame(scan_cfg, base.shared_bank()).mean_sinr(profile);
    double total = 0.0;
    for (double g : per_user) total += g;
    out.push_back({psi, total / static_cast<double>(per_user.size())});
  }
  return out;
}

std::string format_number(double value) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12) << value;
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write output file " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error("failed writing output file " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

}  // namespace fbgame
