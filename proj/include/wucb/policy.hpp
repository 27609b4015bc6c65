#pragma once
// Learner policies behind one select/update shape: the preference-weighted
// UCB learner, plus the oracle, scalar-UCB and uniform-random baselines used
// to calibrate regret curves.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "wucb/env.hpp"
#include "wucb/errors.hpp"
#include "wucb/vec.hpp"

namespace wucb {

// Confidence padding sqrt(2 ln(slot) / count) for the decision at 1-based
// slot `slot`, given `count` pulls strictly before it. Natural log: the
// concentration argument behind the regret bound needs exp(-4 ln t) = t^-4.
inline double ucb_padding(std::int64_t slot, std::int64_t count) {
  return std::sqrt(2.0 * std::log(static_cast<double>(slot)) / static_cast<double>(count));
}

// Running pull counts and coordinate-wise state sums of the weighted-UCB
// learner. t is the number of completed pulls.
struct WucbState {
  std::int64_t t = 0;
  std::vector<std::int64_t> counts;
  std::vector<Vec> sums;

  WucbState(int num_arms, int dim)
      : counts(static_cast<std::size_t>(num_arms), 0),
        sums(static_cast<std::size_t>(num_arms), Vec(static_cast<std::size_t>(dim), 0.0)) {}
  int num_arms() const { return static_cast<int>(counts.size()); }
  int dim() const { return static_cast<int>(sums.front().size()); }
};

// Decision for slot t+1. Round-robin until every arm has one pull, then
// arg max_i lam . xhat_i + sqrt(2 ln(t+1) / N_i). The padding enters as a
// scalar because preferences have unit L1 norm; ties go to the lowest index.
inline int wucb_select(const WucbState& state, const Vec& lam) {
  if (static_cast<int>(lam.size()) != state.dim())
    throw DimensionMismatch("wucb_select: preference dimension does not match the state");
  const int K = state.num_arms();
  if (state.t < K) return static_cast<int>(state.t);
  const std::int64_t slot = state.t + 1;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < K; ++i) {
    double acc = 0.0;
    const Vec& s = state.sums[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < s.size(); ++k) acc += lam[k] * s[k];
    const double value =
        acc / static_cast<double>(state.counts[static_cast<std::size_t>(i)]) +
        ucb_padding(slot, state.counts[static_cast<std::size_t>(i)]);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

inline void wucb_update(WucbState& state, int arm, const Vec& observed) {
  if (arm < 0 || arm >= state.num_arms())
    throw ValidationError("wucb_update: arm index out of range");
  if (static_cast<int>(observed.size()) != state.dim())
    throw DimensionMismatch("wucb_update: observation dimension does not match the state");
  for (double v : observed)
    if (!(v >= 0.0 && v <= 1.0))
      throw OutOfRangeObservation("wucb_update: observed state has a coordinate outside [0,1]");
  Vec& s = state.sums[static_cast<std::size_t>(arm)];
  for (std::size_t k = 0; k < s.size(); ++k) s[k] += observed[k];
  ++state.counts[static_cast<std::size_t>(arm)];
  ++state.t;
}

// Plays the true optimal arm for a known support vector.
inline int oracle_select(const PreferenceModel& model, const InstanceSummary& summary,
                         const Vec& lam) {
  for (int m = 0; m < model.size(); ++m) {
    const Vec& cand = model.support()[static_cast<std::size_t>(m)];
    if (cand.size() == lam.size() && max_abs_diff(cand, lam) <= kTieTolerance)
      return summary.optimal_arm_of[static_cast<std::size_t>(m)];
  }
  throw UnknownPreference("oracle_select: preference is not in the model support");
}

// Context-blind baseline: classic UCB on the realized scalar reward.
struct Ucb1State {
  std::int64_t t = 0;
  std::vector<std::int64_t> counts;
  Vec reward_sums;

  explicit Ucb1State(int num_arms)
      : counts(static_cast<std::size_t>(num_arms), 0),
        reward_sums(static_cast<std::size_t>(num_arms), 0.0) {}
  int num_arms() const { return static_cast<int>(counts.size()); }
};

inline int ucb1_select(const Ucb1State& state) {
  const int K = state.num_arms();
  if (state.t < K) return static_cast<int>(state.t);
  const std::int64_t slot = state.t + 1;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < K; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double value = state.reward_sums[idx] / static_cast<double>(state.counts[idx]) +
                         ucb_padding(slot, state.counts[idx]);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

inline void ucb1_update(Ucb1State& state, int arm, double reward) {
  if (arm < 0 || arm >= state.num_arms())
    throw ValidationError("ucb1_update: arm index out of range");
  state.reward_sums[static_cast<std::size_t>(arm)] += reward;
  ++state.counts[static_cast<std::size_t>(arm)];
  ++state.t;
}

template <class R>
int random_select(int num_arms, R& rng) {
  return static_cast<int>(rng.below(static_cast<std::uint64_t>(num_arms)));
}

}  // namespace wucb
