#pragma once
// Path execution and multi-path aggregation. Every random quantity is drawn
// from a substream keyed by (seed, stream, time, arm), so a path is a pure
// function of its seed: results do not depend on worker count, on which
// other policies run, or on the checkpoint grid. Paths sharing a seed also
// share the underlying state draws, which is what makes paired gap-scaling
// comparisons possible.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wucb/env.hpp"
#include "wucb/errors.hpp"
#include "wucb/policy.hpp"
#include "wucb/rng.hpp"

namespace wucb {

// One simulation path: cumulative regrets at the checkpoint grid plus the
// final counting statistics N_i(T), N^j(T), N_i^j(T).
struct PathTrace {
  std::vector<std::int64_t> checkpoints;
  Vec cum_realized_regret;
  Vec cum_pseudo_regret;
  std::vector<std::int64_t> n_i;                 // pulls per arm
  std::vector<std::int64_t> n_super_j;           // preferences per region
  std::vector<std::vector<std::int64_t>> n_i_j;  // joint pull/region counts
  std::uint64_t seed = 0;
};

struct AggregateCurve {
  std::vector<std::int64_t> checkpoints;
  Vec mean_pseudo, std_pseudo;
  Vec mean_realized, std_realized;
  int paths = 0;
};

struct PolicyRun {
  AggregateCurve curve;
  std::vector<PathTrace> traces;
};

struct ExperimentResult {
  std::map<std::string, PolicyRun> by_policy;
};

struct CounterReport {
  bool pull_total_ok = false;            // sum_i N_i(T) == T
  bool region_total_ok = false;          // sum_j N^j(T) == T
  std::vector<bool> region_column_ok;    // sum_i N_i^j(T) == N^j(T) per j

  bool all_ok() const {
    if (!pull_total_ok || !region_total_ok) return false;
    for (bool ok : region_column_ok)
      if (!ok) return false;
    return true;
  }
};

namespace detail {

enum class PolicyKind { kWucb, kOracle, kUcb1, kRandom };

inline PolicyKind parse_policy(const std::string& name) {
  if (name == "wucb") return PolicyKind::kWucb;
  if (name == "oracle") return PolicyKind::kOracle;
  if (name == "ucb1") return PolicyKind::kUcb1;
  if (name == "random") return PolicyKind::kRandom;
  throw ValidationError("unknown policy \"" + name + "\" (expected wucb, oracle, ucb1 or random)");
}

}  // namespace detail

// Runs one path: observe the preference, select an arm, reveal only the
// pulled arm's state to the policy, and accumulate realized and pseudo
// regret. The optimal arm's state used for realized-regret accounting is an
// independent draw that the policy never sees.
inline PathTrace run_path(const ProblemInstance& instance, const std::string& policy_name,
                          std::int64_t horizon, std::uint64_t seed,
                          std::int64_t checkpoint_stride = 100) {
  const detail::PolicyKind kind = detail::parse_policy(policy_name);
  const int K = instance.num_arms();
  const int d = instance.dim();
  if (horizon < K) throw HorizonTooShort("run_path: horizon must be at least the number of arms");
  if (checkpoint_stride < 1) throw ValidationError("run_path: checkpoint_stride must be at least 1");

  const InstanceSummary summary = summarize(instance);
  const PreferenceModel& model = instance.preferences();
  const std::vector<ArmDistribution>& arms = instance.arms();

  WucbState wucb(K, d);
  Ucb1State ucb1(K);

  PathTrace trace;
  trace.seed = seed;
  trace.n_i.assign(static_cast<std::size_t>(K), 0);
  trace.n_super_j.assign(static_cast<std::size_t>(K), 0);
  trace.n_i_j.assign(static_cast<std::size_t>(K), std::vector<std::int64_t>(static_cast<std::size_t>(K), 0));
  const std::size_t reserve = static_cast<std::size_t>(horizon / checkpoint_stride + 2);
  trace.checkpoints.reserve(reserve);
  trace.cum_pseudo_regret.reserve(reserve);
  trace.cum_realized_regret.reserve(reserve);

  double cum_pseudo = 0.0;
  double cum_realized = 0.0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    Rng pref_rng = Rng::keyed(seed, stream_tag(Stream::kPreference), static_cast<std::uint64_t>(t));
    const int m = sample_preference_index(model, pref_rng);
    const Vec& lam = model.support()[static_cast<std::size_t>(m)];
    const int opt = summary.optimal_arm_of[static_cast<std::size_t>(m)];

    int arm = 0;
    switch (kind) {
      case detail::PolicyKind::kWucb:
        arm = wucb_select(wucb, lam);
        break;
      case detail::PolicyKind::kOracle:
        arm = oracle_select(model, summary, lam);
        break;
      case detail::PolicyKind::kUcb1:
        arm = ucb1_select(ucb1);
        break;
      case detail::PolicyKind::kRandom: {
        Rng policy_rng = Rng::keyed(seed, stream_tag(Stream::kPolicy), static_cast<std::uint64_t>(t));
        arm = random_select(K, policy_rng);
        break;
      }
    }

    Rng state_rng = Rng::keyed(seed, stream_tag(Stream::kArmState), static_cast<std::uint64_t>(t),
                               static_cast<std::uint64_t>(arm));
    const Vec observed = arms[static_cast<std::size_t>(arm)].sample(state_rng);

    if (kind == detail::PolicyKind::kWucb) {
      wucb_update(wucb, arm, observed);
    } else if (kind == detail::PolicyKind::kUcb1) {
      ucb1_update(ucb1, arm, dot(lam, observed));
    }

    if (arm != opt) {
      cum_pseudo += dot(lam, arms[static_cast<std::size_t>(opt)].mean()) -
                    dot(lam, arms[static_cast<std::size_t>(arm)].mean());
      Rng acct_rng = Rng::keyed(seed, stream_tag(Stream::kAccounting), static_cast<std::uint64_t>(t),
                                static_cast<std::uint64_t>(opt));
      cum_realized += dot(lam, arms[static_cast<std::size_t>(opt)].sample(acct_rng)) - dot(lam, observed);
    }

    ++trace.n_i[static_cast<std::size_t>(arm)];
    ++trace.n_super_j[static_cast<std::size_t>(opt)];
    ++trace.n_i_j[static_cast<std::size_t>(arm)][static_cast<std::size_t>(opt)];

    if (t % checkpoint_stride == 0 || t == horizon) {
      trace.checkpoints.push_back(t);
      trace.cum_pseudo_regret.push_back(cum_pseudo);
      trace.cum_realized_regret.push_back(cum_realized);
    }
  }
  return trace;
}

// Fold per-path curves into mean and sample standard deviation (divisor
// n-1; zero for a single path), always in path-index order.
inline AggregateCurve aggregate(const std::vector<PathTrace>& traces) {
  AggregateCurve curve;
  curve.paths = static_cast<int>(traces.size());
  curve.checkpoints = traces.front().checkpoints;
  const std::size_t n_points = curve.checkpoints.size();
  const double n = static_cast<double>(traces.size());
  curve.mean_pseudo.assign(n_points, 0.0);
  curve.std_pseudo.assign(n_points, 0.0);
  curve.mean_realized.assign(n_points, 0.0);
  curve.std_realized.assign(n_points, 0.0);
  for (std::size_t c = 0; c < n_points; ++c) {
    double sum_p = 0.0, sum_r = 0.0;
    for (const PathTrace& trace : traces) {
      sum_p += trace.cum_pseudo_regret[c];
      sum_r += trace.cum_realized_regret[c];
    }
    const double mean_p = sum_p / n;
    const double mean_r = sum_r / n;
    curve.mean_pseudo[c] = mean_p;
    curve.mean_realized[c] = mean_r;
    if (traces.size() > 1) {
      double ss_p = 0.0, ss_r = 0.0;
      for (const PathTrace& trace : traces) {
        const double dp = trace.cum_pseudo_regret[c] - mean_p;
        const double dr = trace.cum_realized_regret[c] - mean_r;
        ss_p += dp * dp;
        ss_r += dr * dr;
      }
      curve.std_pseudo[c] = std::sqrt(ss_p / (n - 1.0));
      curve.std_realized[c] = std::sqrt(ss_r / (n - 1.0));
    }
  }
  return curve;
}

// Runs n_paths paths per policy, path p seeded with base_seed + p, and
// aggregates in path-index order. Output is identical for any worker count.
inline ExperimentResult run_experiment(const ProblemInstance& instance,
                                       const std::vector<std::string>& policy_names,
                                       std::int64_t horizon, int n_paths, std::uint64_t base_seed,
                                       std::int64_t checkpoint_stride = 100, bool parallel = true) {
  if (n_paths < 1) throw ValidationError("run_experiment: paths must be at least 1");
  if (policy_names.empty()) throw ValidationError("run_experiment: needs at least one policy");
  for (const std::string& name : policy_names) (void)detail::parse_policy(name);
  if (horizon < instance.num_arms())
    throw HorizonTooShort("run_experiment: horizon must be at least the number of arms");

  ExperimentResult result;
  for (const std::string& name : policy_names) {
    if (result.by_policy.count(name))
      throw ValidationError("run_experiment: duplicate policy \"" + name + "\"");
    std::vector<PathTrace> traces(static_cast<std::size_t>(n_paths));
    auto run_one = [&](int p) {
      traces[static_cast<std::size_t>(p)] =
          run_path(instance, name, horizon, base_seed + static_cast<std::uint64_t>(p), checkpoint_stride);
    };
    if (parallel && n_paths > 1) {
      std::atomic<int> next{0};
      std::atomic<bool> failed{false};
      std::exception_ptr error;
      const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
      const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(n_paths)));
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (int p = next++; p < n_paths; p = next++) {
            try {
              run_one(p);
            } catch (...) {
              if (!failed.exchange(true)) error = std::current_exception();
              return;
            }
          }
        });
      }
      for (std::thread& th : pool) th.join();
      if (failed) std::rethrow_exception(error);
    } else {
      for (int p = 0; p < n_paths; ++p) run_one(p);
    }
    PolicyRun run;
    run.curve = aggregate(traces);
    run.traces = std::move(traces);
    result.by_policy.emplace(name, std::move(run));
  }
  return result;
}

// Itemized check of the counting identities of a completed trace.
inline CounterReport verify_counters(const PathTrace& trace, std::int64_t horizon) {
  CounterReport report;
  const std::size_t K = trace.n_i.size();
  std::int64_t pulls = 0;
  for (std::int64_t v : trace.n_i) pulls += v;
  report.pull_total_ok = pulls == horizon;
  std::int64_t regions = 0;
  for (std::int64_t v : trace.n_super_j) regions += v;
  report.region_total_ok = regions == horizon;
  report.region_column_ok.resize(K);
  for (std::size_t j = 0; j < K; ++j) {
    std::int64_t column = 0;
    for (std::size_t i = 0; i < K; ++i) column += trace.n_i_j[i][j];
    report.region_column_ok[j] = column == trace.n_super_j[j];
  }
  return report;
}

}  // namespace wucb
