#pragma once
// CSV and JSON emission. Curve files carry one row per (policy, checkpoint),
// sorted by (policy, t); the summary JSON records the instance facts, the
// bound evaluations at the horizon, seeds, and final counters.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wucb/bounds.hpp"
#include "wucb/env.hpp"
#include "wucb/errors.hpp"
#include "wucb/sim.hpp"

namespace wucb {

struct CurveMeta {
  int k = 0;
  double gamma = 1.0;
  int s1_size = 0;
};

namespace io_detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed while writing " + path);
}

}  // namespace io_detail

inline std::string curves_csv(const ExperimentResult& result, const CurveMeta& meta) {
  std::string out =
      "policy,K,gamma,s1_size,t,mean_pseudo_regret,std_pseudo_regret,"
      "mean_realized_regret,std_realized_regret\n";
  for (const auto& [name, run] : result.by_policy) {
    const AggregateCurve& c = run.curve;
    for (std::size_t idx = 0; idx < c.checkpoints.size(); ++idx) {
      out += name;
      out += ',';
      out += std::to_string(meta.k);
      out += ',';
      out += io_detail::fmt(meta.gamma);
      out += ',';
      out += std::to_string(meta.s1_size);
      out += ',';
      out += std::to_string(c.checkpoints[idx]);
      out += ',';
      out += io_detail::fmt(c.mean_pseudo[idx]);
      out += ',';
      out += io_detail::fmt(c.std_pseudo[idx]);
      out += ',';
      out += io_detail::fmt(c.mean_realized[idx]);
      out += ',';
      out += io_detail::fmt(c.std_realized[idx]);
      out += '\n';
    }
  }
  return out;
}

inline void emit_curves(const ExperimentResult& result, const CurveMeta& meta,
                        const std::string& path) {
  io_detail::write_file(path, curves_csv(result, meta));
}

// Summary of one experiment: instance facts, bound values at the horizon,
// seeds, and (optionally) across-path mean counters per policy.
inline nlohmann::json summary_json(const ProblemInstance& instance, const InstanceSummary& summary,
                                   const ExperimentResult& result, const CurveMeta& meta,
                                   std::int64_t horizon, int paths, std::uint64_t base_seed,
                                   std::int64_t checkpoint_stride,
                                   std::optional<std::uint64_t> mix_seed, bool include_counters) {
  using nlohmann::json;
  json root = json::object();
  root["k"] = instance.num_arms();
  root["d"] = instance.dim();
  root["gamma"] = meta.gamma;
  root["horizon"] = horizon;
  root["paths"] = paths;
  root["base_seed"] = base_seed;
  root["checkpoint_stride"] = checkpoint_stride;
  if (mix_seed) root["mix_seed"] = *mix_seed;
  {
    json seeds = json::array();
    for (int p = 0; p < paths; ++p) seeds.push_back(base_seed + static_cast<std::uint64_t>(p));
    root["path_seeds"] = std::move(seeds);
  }
  root["l"] = summary.l;
  root["h"] = summary.h;
  root["rho"] = summary.rho;
  {
    json s1 = json::array(), s2 = json::array();
    for (int j : summary.s1) s1.push_back(j + 1);
    for (int j : summary.s2) s2.push_back(j + 1);
    root["s1"] = std::move(s1);
    root["s2"] = std::move(s2);
  }

  json bounds = json::object();
  const BoundInputs inputs = BoundInputs::from(instance, summary, static_cast<double>(horizon));
  bounds["regret_upper_leading"] = regret_upper_leading(inputs);
  if (instance.num_arms() >= 2) {
    bounds["rho"] = inputs.rho;
    bounds["s1_wrong_pull_bound"] = s1_wrong_pull_bound(inputs);
    bounds["s2_pull_bound"] = s2_pull_bound(inputs);
    const double threshold = optimal_share_threshold(inputs);
    bounds["optimal_pull_share_threshold"] = threshold;
    if (static_cast<double>(horizon) >= threshold)
      bounds["optimal_pull_share_tail_at_horizon"] =
          optimal_share_tail(inputs, static_cast<double>(horizon));
    else
      bounds["optimal_pull_share_tail_at_horizon"] = nullptr;
  }
  root["bounds"] = std::move(bounds);

  json policies = json::object();
  for (const auto& [name, run] : result.by_policy) {
    json p = json::object();
    const AggregateCurve& c = run.curve;
    p["final_t"] = c.checkpoints.back();
    p["final_mean_pseudo_regret"] = c.mean_pseudo.back();
    p["final_std_pseudo_regret"] = c.std_pseudo.back();
    p["final_mean_realized_regret"] = c.mean_realized.back();
    p["final_std_realized_regret"] = c.std_realized.back();
    bool identities_ok = true;
    for (const PathTrace& trace : run.traces)
      identities_ok = identities_ok && verify_counters(trace, horizon).all_ok();
    p["counter_identities_ok"] = identities_ok;
    if (include_counters) {
      const int K = instance.num_arms();
      const double n = static_cast<double>(run.traces.size());
      Vec mean_pulls(static_cast<std::size_t>(K), 0.0);
      Vec mean_regions(static_cast<std::size_t>(K), 0.0);
      std::vector<Vec> mean_joint(static_cast<std::size_t>(K), Vec(static_cast<std::size_t>(K), 0.0));
      for (const PathTrace& trace : run.traces) {
        for (int i = 0; i < K; ++i) {
          const auto ii = static_cast<std::size_t>(i);
          mean_pulls[ii] += static_cast<double>(trace.n_i[ii]) / n;
          mean_regions[ii] += static_cast<double>(trace.n_super_j[ii]) / n;
          for (int j = 0; j < K; ++j)
            mean_joint[ii][static_cast<std::size_t>(j)] +=
                static_cast<double>(trace.n_i_j[ii][static_cast<std::size_t>(j)]) / n;
        }
      }
      p["mean_pulls"] = mean_pulls;
      p["mean_region_counts"] = mean_regions;
      p["mean_joint_counts"] = mean_joint;
    }
    policies[name] = std::move(p);
  }
  root["policies"] = std::move(policies);
  return root;
}

inline void emit_summary(const nlohmann::json& summary, const std::string& path) {
  io_detail::write_file(path, summary.dump(2) + "\n");
}

}  // namespace wucb
