#pragma once
// Canned sweeps, each a pure function of (name, seed, horizon):
//   fig1a - arm-count sweep K in {5, 10, 15, 20}
//   fig1b - gap scaling gamma in {1.0, 0.7, 0.5} on K = 10, with paired
//           underlying draws (shared seeds regenerate identical pre-scaling
//           states, so only the scaling differs between runs)
//   fig1c - preference-diversity sweep |S1| in {2, 3, 4, 5} on K = 5
// Each configuration writes one curves CSV; the sweep writes one summary
// JSON covering all of its configurations.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wucb/env.hpp"
#include "wucb/errors.hpp"
#include "wucb/io.hpp"
#include "wucb/sim.hpp"

namespace wucb {

struct PresetOutputs {
  std::vector<std::string> files;
};

inline PresetOutputs run_preset(const std::string& name, std::uint64_t base_seed,
                                const std::string& out_dir, std::int64_t horizon = 100000,
                                bool parallel = true) {
  namespace fs = std::filesystem;
  if (name != "fig1a" && name != "fig1b" && name != "fig1c")
    throw ValidationError("preset: unknown name \"" + name + "\" (expected fig1a, fig1b or fig1c)");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("preset: cannot create output directory " + out_dir);

  const std::vector<std::string> policies = {"wucb"};
  const int paths = 20;
  const std::int64_t stride = 100;

  PresetOutputs outputs;
  nlohmann::json summaries = nlohmann::json::object();
  summaries["preset"] = name;
  summaries["seed"] = base_seed;
  summaries["horizon"] = horizon;

  auto run_one = [&](const ProblemInstance& instance, double gamma, const std::string& stem) {
    const InstanceSummary summary = summarize(instance);
    const ExperimentResult result =
        run_experiment(instance, policies, horizon, paths, base_seed, stride, parallel);
    const CurveMeta meta{instance.num_arms(), gamma, static_cast<int>(summary.s1.size())};
    const std::string curves = (fs::path(out_dir) / (stem + ".csv")).string();
    emit_curves(result, meta, curves);
    outputs.files.push_back(curves);
    summaries["runs"][stem] = summary_json(instance, summary, result, meta, horizon, paths,
                                           base_seed, stride, base_seed, true);
  };

  if (name == "fig1a") {
    for (int k : {5, 10, 15, 20})
      run_one(build_synthetic(k, 1.0, {1, 2, 3, 4, 5}, base_seed), 1.0,
              "fig1a_k" + std::to_string(k));
  } else if (name == "fig1b") {
    for (double gamma : {1.0, 0.7, 0.5}) {
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "%.1f", gamma);
      run_one(build_synthetic(10, gamma, {1, 2, 3, 4, 5}, base_seed), gamma,
              std::string("fig1b_gamma") + suffix);
    }
  } else {
    for (int m : {2, 3, 4, 5}) {
      std::vector<int> active;
      for (int i = 1; i <= m; ++i) active.push_back(i);
      run_one(build_synthetic(5, 1.0, active, base_seed), 1.0, "fig1c_s1_" + std::to_string(m));
    }
  }

  const std::string summary_path = (fs::path(out_dir) / (name + "_summary.json")).string();
  emit_summary(summaries, summary_path);
  outputs.files.push_back(summary_path);
  return outputs;
}

}  // namespace wucb
