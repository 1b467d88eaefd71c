// Copyright 2026 The qcool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Subcommands: simulate, optimize, limits, fig2a,
// fig2b. A JSON config file provides defaults; flags override file values.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#include "qcool/dynamics.hpp"
#include "qcool/io.hpp"
#include "qcool/limits.hpp"
#include "qcool/operators.hpp"
#include "qcool/optimizer.hpp"
#include "qcool/protocol.hpp"
#include "qcool/types.hpp"
#include "qcool/version.hpp"

namespace {

using nlohmann::json;
using namespace qcool;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::string protocol_source;  // "eq1", "zero", or a file path
  std::optional<double> horizon;
  std::optional<double> sample_dt;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_levels;
  std::optional<int> m_levels;
  std::optional<double> nbar;
  std::optional<double> gamma;
  std::optional<double> g;
  std::optional<double> kappa;
};

// Fully resolved run parameters: config-file values overridden by flags.
struct Resolved {
  SystemSpec spec;
  double horizon = 0.0;
  double sample_dt = 0.0;
  std::string protocol_source = "eq1";
  std::uint64_t seed = 0;
  OptimizationConfig opt;
  int restarts = 1;
  bool horizon_given = false;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return j;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field has wrong type: ") + key);
  }
}

Resolved resolve(const Options& opt, bool want_optimizer) {
  const json cfg = load_config(opt.config_path);
  const json sys = cfg.value("system", json::object());

  Resolved r;
  int n = get_or<int>(sys, "N", 2);
  if (opt.n_levels) n = *opt.n_levels;
  if (n < 2) throw ConfigError("N must be >= 2");
  std::string target = get_or<std::string>(sys, "target",
                                           n == 2 ? "qubit" : "oscillator");
  if (target == "qubit") {
    if (n != 2) throw ConfigError("target 'qubit' requires N = 2");
    r.spec.target_kind = SystemKind::qubit();
  } else if (target == "oscillator") {
    r.spec.target_kind = SystemKind::oscillator(n);
  } else {
    throw ConfigError("system.target must be 'qubit' or 'oscillator'");
  }
  r.spec.aux_dim = opt.m_levels ? *opt.m_levels : get_or<int>(sys, "M", 2);
  r.spec.g = opt.g ? *opt.g : get_or<double>(sys, "g", 1.0);
  r.spec.gamma = opt.gamma ? *opt.gamma : get_or<double>(sys, "gamma", 0.0);
  r.spec.nbar = opt.nbar ? *opt.nbar : get_or<double>(sys, "nbar", 0.0);
  r.spec.kappa = opt.kappa ? *opt.kappa : get_or<double>(sys, "kappa", 0.0);
  try {
    r.spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  r.horizon_given = opt.horizon.has_value() || cfg.contains("horizon");
  r.horizon = opt.horizon ? *opt.horizon
                          : get_or<double>(cfg, "horizon",
                                           tau_speed_limit(r.spec.g));
  if (!(r.horizon > 0.0)) throw ConfigError("horizon must be > 0");
  r.sample_dt = opt.sample_dt ? *opt.sample_dt
                              : get_or<double>(cfg, "sample_dt",
                                               r.horizon / 1000.0);
  if (!(r.sample_dt > 0.0)) throw ConfigError("sample_dt must be > 0");
  r.protocol_source = !opt.protocol_source.empty()
                          ? opt.protocol_source
                          : get_or<std::string>(cfg, "protocol", "eq1");
  r.seed = opt.seed ? *opt.seed : get_or<std::uint64_t>(cfg, "seed", 0);

  if (want_optimizer) {
    const json oc = cfg.value("optimizer", json::object());
    r.opt.num_segments = get_or<int>(oc, "num_segments", 16);
    r.opt.objective_time = r.horizon;
    r.opt.max_iterations = get_or<int>(oc, "max_iterations", 200);
    r.opt.gradient_step = get_or<double>(oc, "gradient_step", 1e-5);
    r.opt.convergence_tol = get_or<double>(oc, "convergence_tol", 1e-7);
    r.opt.integrator_dt = get_or<double>(oc, "integrator_dt", 0.0);
    r.opt.init_scale = get_or<double>(oc, "init_scale", 0.1);
    r.opt.seed = r.seed;
    const std::string grad = get_or<std::string>(oc, "gradient", "fd");
    if (grad == "fd") {
      r.opt.gradient = GradientMethod::kFiniteDifference;
    } else if (grad == "adjoint") {
      r.opt.gradient = GradientMethod::kAdjoint;
    } else {
      throw ConfigError("optimizer.gradient must be 'fd' or 'adjoint'");
    }
    r.restarts = get_or<int>(oc, "restarts", 1);
    if (r.restarts < 1) throw ConfigError("optimizer.restarts must be >= 1");
  }
  return r;
}

json spec_to_json(const SystemSpec& spec) {
  return json{{"target", spec.target_kind.is_qubit() ? "qubit" : "oscillator"},
              {"N", spec.target_dim()},
              {"M", spec.aux_dim},
              {"g", spec.g},
              {"gamma", spec.gamma},
              {"nbar", spec.nbar},
              {"kappa", spec.kappa}};
}

json versions_json() {
  return json{{"qcool", kVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)}};
}

// Closed-form limit for the resolved system, plus the truncation estimate.
// The truncation term applies to oscillator targets only; a qubit is exact.
json analytic_json(const SystemSpec& spec) {
  json a;
  CoolingLimitReport rep;
  if (spec.target_kind.is_qubit()) {
    const double p_t = spec.nbar / (1.0 + 2.0 * spec.nbar);
    rep = pmin_qubit(spec.gamma, spec.g, p_t);
    a["formula"] = "qubit";
    a["p_t"] = p_t;
  } else {
    rep = pmin_oscillator(spec.gamma, spec.g, spec.nbar);
    a["formula"] = "oscillator";
  }
  a["p_min"] = rep.p_min;
  a["cooling_factor"] = rep.cooling_factor;
  a["tau"] = rep.tau;
  a["validity_parameter"] = rep.validity_parameter;
  a["valid"] = rep.valid;
  const double trunc = spec.target_kind.is_oscillator()
                           ? thermal_truncation_error(spec.target_kind,
                                                      spec.nbar)
                           : 0.0;
  a["truncation_error"] = trunc;
  a["truncation_significant"] = rep.p_min > 0.0 && trunc > 0.01 * rep.p_min;
  return a;
}

void write_summary(const std::string& path, json summary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << summary.dump(2) << "\n";
}

ControlProtocol make_protocol(const Resolved& r) {
  if (r.protocol_source == "eq1") {
    return swap_protocol(r.spec, r.horizon);
  }
  if (r.protocol_source == "zero") {
    return zero_protocol(r.spec.composite_dim(), r.horizon, r.spec.g);
  }
  ControlProtocol p = read_protocol(r.protocol_source);
  if (r.horizon_given &&
      std::abs(p.horizon - r.horizon) > 1e-12 * std::max(1.0, r.horizon)) {
    throw ConfigError("horizon disagrees with the protocol file; drop the "
                      "horizon setting or fix the file");
  }
  try {
    p.validate(r.spec.target_dim(), r.spec.aux_dim);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("protocol file invalid: ") + e.what());
  }
  return p;
}

struct MinPoint {
  double value = 0.0;
  double time = 0.0;
};

MinPoint min_one_minus_pg(const Trajectory& traj) {
  MinPoint mp;
  mp.value = 2.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double v = 1.0 - traj.ground_pop[i];
    if (v < mp.value) {
      mp.value = v;
      mp.time = traj.times[i];
    }
  }
  return mp;
}

int run_simulate(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const Resolved r = resolve(opt, false);
  std::filesystem::create_directories(opt.out_dir);
  const auto dir = std::filesystem::path(opt.out_dir);

  const ControlProtocol protocol = make_protocol(r);
  const DensityMatrix rho0 = thermal_with_aux_ground(r.spec);
  const Trajectory traj = evolve(rho0, protocol, r.spec, r.sample_dt);

  const std::string csv = (dir / "trajectory.csv").string();
  write_trajectory_csv(csv, traj);

  const MinPoint mp = min_one_minus_pg(traj);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json summary{{"mode", "simulate"},
               {"results",
                {{"min_one_minus_pg", mp.value},
                 {"time_of_min", mp.time},
                 {"final_pg", traj.ground_pop.back()},
                 {"analytic", analytic_json(r.spec)}}},
               {"config",
                {{"system", spec_to_json(r.spec)},
                 {"horizon", r.horizon},
                 {"sample_dt", r.sample_dt},
                 {"protocol", r.protocol_source},
                 {"seed", r.seed}}},
               {"wall_clock_seconds", wall},
               {"versions", versions_json()}};
  const std::string sum = (dir / "summary.json").string();
  write_summary(sum, summary);

  RunManifest manifest;
  manifest.add(csv, "trajectory", "", spec_to_json(r.spec));
  manifest.add(sum, "summary", "summary");
  manifest.write((dir / "manifest.json").string());
  std::cout << "simulate: min(1-pg) = " << mp.value << " at t = " << mp.time
            << "\n";
  return kExitOk;
}

int run_optimize(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const Resolved r = resolve(opt, true);
  std::filesystem::create_directories(opt.out_dir);
  const auto dir = std::filesystem::path(opt.out_dir);

  const DensityMatrix rho0 = thermal_with_aux_ground(r.spec);
  const OptimizationResult res =
      optimize_multi(r.spec, rho0, r.opt, r.restarts);
  const ConjectureComparison cmp =
      compare_to_conjecture(res.best_protocol, r.spec, rho0);

  const std::string proto_path = (dir / "protocol.json").string();
  write_protocol(proto_path, res.best_protocol);

  std::string hist = "iter,pg,one_minus_pg\n";
  for (std::size_t i = 0; i < res.objective_history.size(); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i,
                  res.objective_history[i], 1.0 - res.objective_history[i]);
    hist += buf;
  }
  const std::string hist_path = (dir / "history.csv").string();
  {
    std::ofstream out(hist_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open: " + hist_path);
    out << hist;
  }

  const Trajectory traj =
      evolve(rho0, res.best_protocol, r.spec, r.sample_dt);
  const std::string csv = (dir / "trajectory.csv").string();
  write_trajectory_csv(csv, traj);

  const MinPoint mp = min_one_minus_pg(traj);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json summary{
      {"mode", "optimize"},
      {"results",
       {{"best_pg", res.best_pg},
        {"best_one_minus_pg", 1.0 - res.best_pg},
        {"min_one_minus_pg", mp.value},
        {"time_of_min", mp.time},
        {"iterations", res.iterations},
        {"converged", res.converged},
        {"parameter_count", res.parameter_count},
        {"final_gradient_norm", res.final_gradient_norm},
        {"comparison",
         {{"pg_protocol", cmp.pg_protocol},
          {"pg_reference", cmp.pg_reference},
          {"delta_pg", cmp.delta_pg},
          {"time_protocol", cmp.time_protocol},
          {"time_reference", cmp.time_reference},
          {"mean_distance", cmp.mean_distance},
          {"relative_mean_distance", cmp.relative_mean_distance}}},
        {"analytic", analytic_json(r.spec)}}},
      {"config",
       {{"system", spec_to_json(r.spec)},
        {"horizon", r.horizon},
        {"sample_dt", r.sample_dt},
        {"seed", r.seed},
        {"optimizer",
         {{"num_segments", r.opt.num_segments},
          {"max_iterations", r.opt.max_iterations},
          {"gradient_step", r.opt.gradient_step},
          {"convergence_tol", r.opt.convergence_tol},
          {"integrator_dt", r.opt.integrator_dt},
          {"init_scale", r.opt.init_scale},
          {"gradient",
           r.opt.gradient == GradientMethod::kAdjoint ? "adjoint" : "fd"},
          {"restarts", r.restarts}}}}},
      {"wall_clock_seconds", wall},
      {"versions", versions_json()}};
  const std::string sum = (dir / "summary.json").string();
  write_summary(sum, summary);

  RunManifest manifest;
  manifest.add(proto_path, "protocol", "best_protocol");
  manifest.add(hist_path, "history", "objective_history");
  manifest.add(csv, "trajectory", "best_trajectory", spec_to_json(r.spec));
  manifest.add(sum, "summary", "summary");
  manifest.write((dir / "manifest.json").string());
  std::cout << "optimize: best pg = " << res.best_pg
            << ", reference pg = " << cmp.pg_reference << "\n";
  return kExitOk;
}

int run_limits(const Options& opt) {
  const Resolved r = resolve(opt, false);
  std::filesystem::create_directories(opt.out_dir);
  const auto dir = std::filesystem::path(opt.out_dir);
  json j{{"mode", "limits"},
         {"system", spec_to_json(r.spec)},
         {"results", analytic_json(r.spec)},
         {"versions", versions_json()}};
  const std::string path = (dir / "limits.json").string();
  write_summary(path, j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct CurveSpec {
  std::string label;
  SystemSpec spec;
};

int run_fig2(const Options& opt, bool damped) {
  const auto t0 = std::chrono::steady_clock::now();
  const Resolved base = resolve(opt, false);
  std::filesystem::create_directories(opt.out_dir);
  const auto dir = std::filesystem::path(opt.out_dir);

  const double kappa = damped ? 1.0 : 0.0;
  std::vector<CurveSpec> curves;
  {
    SystemSpec a;
    a.target_kind = SystemKind::qubit();
    a.aux_dim = 3;
    a.g = 1.0;
    a.gamma = 0.01;
    a.nbar = 0.5;
    a.kappa = kappa;
    curves.push_back({"N2_M3_nbar0.5", a});
    SystemSpec b;
    b.target_kind = SystemKind::oscillator(4);
    b.aux_dim = 4;
    b.g = 1.0;
    b.gamma = 0.01;
    b.nbar = 0.5;
    b.kappa = kappa;
    curves.push_back({"N4_M4_nbar0.5", b});
    SystemSpec c = b;
    c.nbar = 0.1;
    curves.push_back({"N4_M4_nbar0.1", c});
  }
  // The damped optimum falls past tau, so give that figure more horizon.
  const double tau = tau_speed_limit(1.0);
  const double horizon = base.horizon_given
                             ? base.horizon
                             : (damped ? 1.5 * tau : tau);
  const double sample_dt =
      opt.sample_dt ? *opt.sample_dt : horizon / 1000.0;

  std::vector<Trajectory> results(curves.size());
  std::vector<std::string> errors(curves.size());
  // Curves are independent simulations; run them concurrently.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < static_cast<int>(curves.size()); ++i) {
    try {
      const ControlProtocol protocol = swap_protocol(curves[i].spec, horizon);
      const DensityMatrix rho0 = thermal_with_aux_ground(curves[i].spec);
      results[i] = evolve(rho0, protocol, curves[i].spec, sample_dt);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw IntegrationError(0.0, e);
  }

  RunManifest manifest;
  json curve_summaries = json::array();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string csv =
        (dir / ("curve_" + curves[i].label + ".csv")).string();
    write_trajectory_csv(csv, results[i]);
    manifest.add(csv, "trajectory", curves[i].label,
                 spec_to_json(curves[i].spec));
    const MinPoint mp = min_one_minus_pg(results[i]);
    curve_summaries.push_back({{"label", curves[i].label},
                               {"min_one_minus_pg", mp.value},
                               {"time_of_min", mp.time},
                               {"analytic", analytic_json(curves[i].spec)}});
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json summary{{"mode", damped ? "fig2b" : "fig2a"},
               {"results", {{"curves", curve_summaries}}},
               {"config", {{"horizon", horizon}, {"sample_dt", sample_dt}}},
               {"wall_clock_seconds", wall},
               {"versions", versions_json()}};
  const std::string sum = (dir / "summary.json").string();
  write_summary(sum, summary);
  manifest.add(sum, "summary", "summary");
  manifest.write((dir / "manifest.json").string());
  std::cout << (damped ? "fig2b" : "fig2a") << ": wrote "
            << curves.size() << " curves\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and optimizer for cooling a weakly coupled system "
               "through an auxiliary"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--protocol", opt.protocol_source,
                    "protocol source: eq1, zero, or a JSON file path");
    sub->add_option("--horizon", opt.horizon, "total evolution time");
    sub->add_option("--sample-dt", opt.sample_dt, "sampling interval");
    sub->add_option("--N", opt.n_levels, "target levels (2 = qubit)");
    sub->add_option("--M", opt.m_levels, "auxiliary dimension");
    sub->add_option("--nbar", opt.nbar, "bath occupancy");
    sub->add_option("--gamma", opt.gamma, "target thermalization rate");
    sub->add_option("--g", opt.g, "control rate bound");
    sub->add_option("--kappa", opt.kappa, "auxiliary damping rate");
  };

  CLI::App* sim = app.add_subcommand("simulate", "propagate one protocol");
  CLI::App* opti = app.add_subcommand("optimize", "search for a protocol");
  CLI::App* lim = app.add_subcommand("limits", "evaluate analytic limits");
  CLI::App* f2a = app.add_subcommand("fig2a", "undamped curve bundle");
  CLI::App* f2b = app.add_subcommand("fig2b", "damped-auxiliary bundle");
  for (CLI::App* sub : {sim, opti, lim, f2a, f2b}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return run_simulate(opt);
    if (opti->parsed()) return run_optimize(opt);
    if (lim->parsed()) return run_limits(opt);
    if (f2a->parsed()) return run_fig2(opt, false);
    if (f2b->parsed()) return run_fig2(opt, true);
    std::cerr << "no subcommand selected\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
