// Command-line driver: run a configured simulation, run a canned sweep, or
// print the bound evaluations for an instance.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wucb/bounds.hpp"
#include "wucb/config.hpp"
#include "wucb/env.hpp"
#include "wucb/errors.hpp"
#include "wucb/io.hpp"
#include "wucb/presets.hpp"
#include "wucb/sim.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wucb::IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string resolve(const std::string& out_dir, const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(out_dir) / p).string();
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const wucb::ExperimentConfig cfg = wucb::parse_config(read_file(config_path));
  const wucb::ProblemInstance instance = cfg.build();
  const wucb::InstanceSummary summary = wucb::summarize(instance);
  const wucb::ExperimentResult result = wucb::run_experiment(
      instance, cfg.policies, cfg.horizon, cfg.paths, cfg.base_seed, cfg.checkpoint_stride, true);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw wucb::IoError("cannot create output directory " + out_dir);

  const wucb::CurveMeta meta{instance.num_arms(), cfg.gamma(),
                             static_cast<int>(summary.s1.size())};
  const std::string curves_path = resolve(out_dir, cfg.curves_path);
  const std::string summary_path = resolve(out_dir, cfg.summary_path);
  wucb::emit_curves(result, meta, curves_path);
  std::optional<std::uint64_t> mix_seed;
  if (cfg.is_synthetic()) mix_seed = std::get<wucb::SyntheticSpec>(cfg.instance).mix_seed;
  wucb::emit_summary(wucb::summary_json(instance, summary, result, meta, cfg.horizon, cfg.paths,
                                        cfg.base_seed, cfg.checkpoint_stride, mix_seed,
                                        cfg.counters),
                     summary_path);
  std::printf("wrote %s\nwrote %s\n", curves_path.c_str(), summary_path.c_str());
  return 0;
}

int run_bounds(const std::string& config_path, double alpha, double c_alpha) {
  const wucb::ExperimentConfig cfg = wucb::parse_config(read_file(config_path));
  const wucb::ProblemInstance instance = cfg.build();
  const wucb::InstanceSummary summary = wucb::summarize(instance);
  const wucb::BoundInputs inputs = wucb::BoundInputs::from(
      instance, summary, static_cast<double>(cfg.horizon), alpha, c_alpha);

  nlohmann::json out = nlohmann::json::object();
  out["k"] = inputs.k;
  out["d"] = inputs.d;
  out["horizon"] = cfg.horizon;
  out["l"] = inputs.l;
  out["h"] = inputs.h;
  {
    nlohmann::json s1 = nlohmann::json::array(), s2 = nlohmann::json::array();
    for (int j : summary.s1) s1.push_back(j + 1);
    for (int j : summary.s2) s2.push_back(j + 1);
    out["s1"] = std::move(s1);
    out["s2"] = std::move(s2);
  }
  out["alpha"] = alpha;
  out["c_alpha"] = c_alpha;
  out["regret_upper_leading"] = wucb::regret_upper_leading(inputs);
  if (inputs.k >= 2) {
    out["rho"] = inputs.rho;
    out["s1_wrong_pull_bound"] = wucb::s1_wrong_pull_bound(inputs);
    out["s2_pull_bound"] = wucb::s2_pull_bound(inputs);
    const double threshold = wucb::optimal_share_threshold(inputs);
    out["optimal_pull_share_threshold"] = threshold;
    if (static_cast<double>(cfg.horizon) >= threshold)
      out["optimal_pull_share_tail_at_horizon"] =
          wucb::optimal_share_tail(inputs, static_cast<double>(cfg.horizon));
    else
      out["optimal_pull_share_tail_at_horizon"] = nullptr;
  }

  // The lower bound needs finite KL between arm families; it is reported
  // only when every strictly sub-optimal arm admits one against s1.
  if (!summary.s2.empty()) {
    std::vector<double> kl_min;
    bool available = true;
    for (int i : summary.s2) {
      double best = std::numeric_limits<double>::infinity();
      for (int j : summary.s1) {
        try {
          best = std::min(best, wucb::kl_product(instance.arms()[static_cast<std::size_t>(i)],
                                                 instance.arms()[static_cast<std::size_t>(j)]));
        } catch (const wucb::SupportMismatch&) {
        }
      }
      if (!std::isfinite(best) || !(best > 0.0)) {
        available = false;
        break;
      }
      kl_min.push_back(best);
    }
    if (available) {
      nlohmann::json kl = nlohmann::json::object();
      for (std::size_t idx = 0; idx < kl_min.size(); ++idx)
        kl[std::to_string(summary.s2[idx] + 1)] = kl_min[idx];
      out["kl_min_per_s2_arm"] = std::move(kl);
      out["regret_lower_alpha_consistent"] = wucb::regret_lower_alpha_consistent(inputs, kl_min);
      out["lower_bound_valid_from"] = wucb::lower_bound_valid_from(inputs);
    } else {
      out["regret_lower_alpha_consistent"] = nullptr;
      out["note"] = "lower bound unavailable: arm families do not admit a finite KL divergence";
    }
  } else {
    out["regret_lower_alpha_consistent"] = 0.0;
  }
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for linear bandits with diverse user preferences"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string preset_name;
  std::uint64_t seed = 0;
  std::int64_t horizon = 100000;
  double alpha = 0.99;
  double c_alpha = 1.0;

  CLI::App* simulate = app.add_subcommand("simulate", "Run the experiment described by a JSON config");
  simulate->add_option("--config", config_path, "JSON config file")->required();
  simulate->add_option("--out-dir", out_dir, "Directory for output files (default: .)");

  CLI::App* preset = app.add_subcommand("preset", "Run a canned sweep");
  preset->add_option("--name", preset_name, "fig1a | fig1b | fig1c")->required();
  preset->add_option("--seed", seed, "Base seed (default: 0)");
  preset->add_option("--out-dir", out_dir, "Directory for output files")->required();
  preset->add_option("--horizon", horizon, "Sweep horizon (default: 100000)");

  CLI::App* bounds = app.add_subcommand("bounds", "Print bound evaluations for a config as JSON");
  bounds->add_option("--config", config_path, "JSON config file")->required();
  bounds->add_option("--alpha", alpha, "Consistency exponent for the lower bound (default: 0.99)");
  bounds->add_option("--c", c_alpha, "Consistency constant for the lower bound (default: 1.0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(config_path, out_dir);
    if (preset->parsed()) {
      const wucb::PresetOutputs outputs = wucb::run_preset(preset_name, seed, out_dir, horizon);
      for (const std::string& f : outputs.files) std::printf("wrote %s\n", f.c_str());
      return 0;
    }
    return run_bounds(config_path, alpha, c_alpha);
  } catch (const wucb::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
