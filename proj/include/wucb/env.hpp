#pragma once
// Problem instances: arm state distributions over [0,1]^d, the finite-support
// user-preference model, and the derived facts (optimal-arm partition,
// region masses, gap constants) that policies and bound evaluators consume.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wucb/errors.hpp"
#include "wucb/rng.hpp"
#include "wucb/vec.hpp"

namespace wucb {

inline constexpr double kTieTolerance = 1e-12;  // optimal-arm uniqueness
inline constexpr double kSumTolerance = 1e-12;  // probability / weight sums

// Generative model of one arm's state vector. Means are always strictly
// inside (0,1)^d and every draw lands in [0,1]^d.
class ArmDistribution {
 public:
  enum class Kind { kShiftedUniform, kMixed, kProductCategorical, kScaled };

  // x = (1/5)1 + (1/5)e_b + n 1 with a single shared noise draw
  // n ~ U[1/5, 3/5] per state sample, so the mean is (3/5)1 + (1/5)e_b.
  static ArmDistribution shifted_uniform(int d, int base_index) {
    if (d < 1) throw ValidationError("shifted_uniform: dimension must be at least 1");
    if (base_index < 0 || base_index >= d)
      throw ValidationError("shifted_uniform: base_index out of range");
    ArmDistribution a;
    a.kind_ = Kind::kShiftedUniform;
    a.d_ = d;
    a.base_index_ = base_index;
    a.mean_.assign(d, 3.0 / 5.0);
    a.mean_[base_index] += 1.0 / 5.0;
    a.check_mean();
    return a;
  }

  // Convex combination of fresh independent draws from the d shifted-uniform
  // bases; the mean is the same combination of the base means.
  static ArmDistribution mixed(Vec weights) {
    const int d = static_cast<int>(weights.size());
    if (d < 1) throw ValidationError("mixed: weights must be nonempty");
    double sum = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw ValidationError("mixed: weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) throw ValidationError("mixed: weights must sum to 1");
    ArmDistribution a;
    a.kind_ = Kind::kMixed;
    a.d_ = d;
    a.weights_ = std::move(weights);
    a.mean_.assign(d, 0.0);
    for (int b = 0; b < d; ++b) {
      const ArmDistribution base = shifted_uniform(d, b);
      for (int k = 0; k < d; ++k) a.mean_[k] += a.weights_[b] * base.mean_[k];
    }
    a.check_mean();
    return a;
  }

  // Independent per-coordinate categorical draws over points in [0,1].
  static ArmDistribution product_categorical(std::vector<Vec> values, std::vector<Vec> probs) {
    const int d = static_cast<int>(values.size());
    if (d < 1 || probs.size() != values.size())
      throw ValidationError("product_categorical: values/probabilities shape mismatch");
    ArmDistribution a;
    a.kind_ = Kind::kProductCategorical;
    a.d_ = d;
    a.mean_.assign(d, 0.0);
    for (int k = 0; k < d; ++k) {
      if (values[k].empty() || values[k].size() != probs[k].size())
        throw ValidationError("product_categorical: coordinate " + std::to_string(k + 1) +
                              " has mismatched support/probability lengths");
      double psum = 0.0;
      for (std::size_t v = 0; v < values[k].size(); ++v) {
        if (values[k][v] < 0.0 || values[k][v] > 1.0)
          throw ValidationError("product_categorical: support points must lie in [0,1]");
        if (probs[k][v] < 0.0)
          throw ValidationError("product_categorical: probabilities must be nonnegative");
        psum += probs[k][v];
        a.mean_[k] += probs[k][v] * values[k][v];
      }
      if (std::abs(psum - 1.0) > kSumTolerance)
        throw ValidationError("product_categorical: probabilities must sum to 1");
    }
    a.cat_values_ = std::move(values);
    a.cat_probs_ = std::move(probs);
    a.check_mean();
    return a;
  }

  // gamma * x for a draw x of the inner distribution.
  static ArmDistribution scaled(ArmDistribution inner, double gamma) {
    return affine(std::move(inner), gamma, 0.0);
  }

  // scale * x + offset * 1; the lower-bound construction replaces an arm by
  // (1 - eps) x_j + eps 1.
  static ArmDistribution affine(ArmDistribution inner, double scale, double offset) {
    if (!(scale > 0.0) || scale > 1.0) throw InvalidGamma("scaled: factor must lie in (0, 1]");
    if (offset < 0.0 || scale + offset > 1.0 + kSumTolerance)
      throw ValidationError("scaled: offset must satisfy 0 <= offset <= 1 - scale");
    ArmDistribution a;
    a.kind_ = Kind::kScaled;
    a.d_ = inner.dim();
    a.scale_ = scale;
    a.offset_ = offset;
    a.mean_.resize(a.d_);
    for (int k = 0; k < a.d_; ++k) a.mean_[k] = scale * inner.mean_[k] + offset;
    a.inner_ = std::make_shared<const ArmDistribution>(std::move(inner));
    a.check_mean();
    return a;
  }

  Kind kind() const { return kind_; }
  int dim() const { return d_; }
  const Vec& mean() const { return mean_; }
  int base_index() const { return base_index_; }
  const Vec& mix_weights() const { return weights_; }
  const std::vector<Vec>& support_values() const { return cat_values_; }
  const std::vector<Vec>& support_probs() const { return cat_probs_; }
  double scale() const { return scale_; }
  double offset() const { return offset_; }
  const ArmDistribution& inner() const { return *inner_; }

  template <class R>
  Vec sample(R& rng) const {
    switch (kind_) {
      case Kind::kShiftedUniform: {
        const double n = 0.2 + 0.4 * rng.uniform01();
        Vec x(d_, 0.2 + n);
        x[base_index_] += 0.2;
        return x;
      }
      case Kind::kMixed: {
        // One fresh base draw per component, consumed even at weight zero so
        // the stream position does not depend on the weights.
        Vec x(d_, 0.0);
        for (int b = 0; b < d_; ++b) {
          const double n = 0.2 + 0.4 * rng.uniform01();
          const double w = weights_[b];
          for (int k = 0; k < d_; ++k) x[k] += w * (0.2 + n + (k == b ? 0.2 : 0.0));
        }
        return x;
      }
      case Kind::kProductCategorical: {
        Vec x(static_cast<std::size_t>(d_));
        for (int k = 0; k < d_; ++k) {
          const double u = rng.uniform01();
          double acc = 0.0;
          std::size_t pick = cat_probs_[k].size() - 1;
          for (std::size_t v = 0; v < cat_probs_[k].size(); ++v) {
            acc += cat_probs_[k][v];
            if (u < acc) {
              pick = v;
              break;
            }
          }
          x[k] = cat_values_[k][pick];
        }
        return x;
      }
      case Kind::kScaled: {
        Vec x = inner_->sample(rng);
        // clamp guards last-ulp rounding at the upper edge when offset > 0
        for (double& v : x) v = std::min(1.0, std::max(0.0, scale_ * v + offset_));
        return x;
      }
    }
    return {};
  }

 private:
  ArmDistribution() = default;

  void check_mean() const {
    for (double m : mean_)
      if (!(m > 0.0 && m < 1.0))
        throw ValidationError("arm mean must lie strictly inside (0,1) in every coordinate");
  }

  Kind kind_ = Kind::kShiftedUniform;
  int d_ = 0;
  Vec mean_;
  int base_index_ = -1;
  Vec weights_;
  std::vector<Vec> cat_values_, cat_probs_;
  std::shared_ptr<const ArmDistribution> inner_;
  double scale_ = 1.0, offset_ = 0.0;
};

template <class R>
Vec sample_state(const ArmDistribution& arm, R& rng) {
  return arm.sample(rng);
}

// Finite-support distribution of user preference vectors. Every support
// vector has unit L1 norm and strictly positive coordinates.
class PreferenceModel {
 public:
  PreferenceModel(std::vector<Vec> support, Vec probabilities)
      : support_(std::move(support)), probabilities_(std::move(probabilities)) {
    if (support_.empty()) throw ValidationError("preferences: support must be nonempty");
    if (probabilities_.size() != support_.size())
      throw ValidationError("preferences: probabilities length must match support");
    const std::size_t d = support_.front().size();
    for (const Vec& lam : support_) {
      if (lam.size() != d)
        throw DimensionMismatch("preferences: support vectors must share one dimension");
      double norm = 0.0;
      for (double v : lam) {
        if (!(v > 0.0))
          throw ValidationError("preferences: every preference coordinate must be positive");
        norm += v;
      }
      if (std::abs(norm - 1.0) > kSumTolerance)
        throw ValidationError("preferences: every preference must have L1 norm 1");
    }
    double psum = 0.0;
    for (double p : probabilities_) {
      if (p < 0.0) throw ValidationError("preferences: probabilities must be nonnegative");
      psum += p;
    }
    if (std::abs(psum - 1.0) > kSumTolerance)
      throw ValidationError("preferences: probabilities must sum to 1");
  }

  int dim() const { return static_cast<int>(support_.front().size()); }
  int size() const { return static_cast<int>(support_.size()); }
  const std::vector<Vec>& support() const { return support_; }
  const Vec& probabilities() const { return probabilities_; }

 private:
  std::vector<Vec> support_;
  Vec probabilities_;
};

template <class R>
int sample_preference_index(const PreferenceModel& model, R& rng) {
  const double u = rng.uniform01();
  const Vec& p = model.probabilities();
  double acc = 0.0;
  for (std::size_t m = 0; m + 1 < p.size(); ++m) {
    acc += p[m];
    if (u < acc) return static_cast<int>(m);
  }
  return static_cast<int>(p.size()) - 1;
}

template <class R>
const Vec& sample_preference(const PreferenceModel& model, R& rng) {
  return model.support()[sample_preference_index(model, rng)];
}

class ProblemInstance;
int optimal_arm(const ProblemInstance& instance, const Vec& lam);

// K arms sharing one dimension plus a preference model; immutable after
// construction and safe to share across concurrent simulation paths.
class ProblemInstance {
 public:
  ProblemInstance(std::vector<ArmDistribution> arms, PreferenceModel preferences)
      : arms_(std::move(arms)), preferences_(std::move(preferences)) {
    if (arms_.empty()) throw ValidationError("instance: needs at least one arm");
    const int d = arms_.front().dim();
    for (const ArmDistribution& a : arms_)
      if (a.dim() != d) throw DimensionMismatch("instance: arms must share one dimension");
    if (preferences_.dim() != d)
      throw DimensionMismatch("instance: preference dimension must match the arms");
    // every support vector must have a unique optimal arm
    for (const Vec& lam : preferences_.support()) (void)optimal_arm(*this, lam);
  }

  int num_arms() const { return static_cast<int>(arms_.size()); }
  int dim() const { return arms_.front().dim(); }
  const std::vector<ArmDistribution>& arms() const { return arms_; }
  const PreferenceModel& preferences() const { return preferences_; }

 private:
  std::vector<ArmDistribution> arms_;
  PreferenceModel preferences_;
};

// arg max_j lam . mu_j; the maximizer must be unique within the tie
// tolerance.
inline int optimal_arm(const ProblemInstance& instance, const Vec& lam) {
  if (static_cast<int>(lam.size()) != instance.dim())
    throw DimensionMismatch("optimal_arm: preference dimension does not match the instance");
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < instance.num_arms(); ++i) {
    const double value = dot(lam, instance.arms()[i].mean());
    if (value > best_value) {
      second = best_value;
      best_value = value;
      best = i;
    } else if (value > second) {
      second = value;
    }
  }
  if (instance.num_arms() > 1 && best_value - second <= kTieTolerance)
    throw AmbiguousOptimum("optimal_arm: two arms tie for the maximum expected reward");
  return best;
}

// Facts derived from an instance: which arm is optimal for each support
// vector, the mass rho_j of each arm's preference region, the split into
// arms optimal somewhere (s1) and strictly sub-optimal arms (s2), and the
// range [l, h] of expected-reward gaps over support x sub-optimal arm pairs.
struct InstanceSummary {
  std::vector<int> optimal_arm_of;  // support index -> arm index
  Vec rho;
  std::vector<int> s1, s2;
  double l = 0.0, h = 0.0;
};

inline InstanceSummary summarize(const ProblemInstance& instance) {
  const PreferenceModel& model = instance.preferences();
  const int K = instance.num_arms();
  InstanceSummary s;
  s.optimal_arm_of.resize(model.size());
  s.rho.assign(K, 0.0);
  for (int m = 0; m < model.size(); ++m) {
    const int j = optimal_arm(instance, model.support()[m]);
    s.optimal_arm_of[m] = j;
    s.rho[j] += model.probabilities()[m];
  }
  for (int j = 0; j < K; ++j) (s.rho[j] > 0.0 ? s.s1 : s.s2).push_back(j);
  if (K == 1) {
    // no sub-optimal arm exists; the gap range is vacuous
    s.l = s.h = std::numeric_limits<double>::infinity();
    return s;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < model.size(); ++m) {
    const Vec& lam = model.support()[m];
    const int j = s.optimal_arm_of[m];
    const double top = dot(lam, instance.arms()[j].mean());
    for (int i = 0; i < K; ++i) {
      if (i == j) continue;
      const double gap = top - dot(lam, instance.arms()[i].mean());
      lo = std::min(lo, gap);
      hi = std::max(hi, gap);
    }
  }
  s.l = lo;
  s.h = hi;
  return s;
}

// Synthetic family used by the canned sweeps: five shifted-uniform base arms,
// k_total - 5 mixed arms whose weights are seeded random permutations of
// pi0 = (0, 0.1, 0.2, 0.3, 0.4), optional uniform scaling of all states by
// gamma, and a uniform preference model over (1/8)1 + (3/8)e_i for the
// active i.
inline ProblemInstance build_synthetic(int k_total, double gamma,
                                       const std::vector<int>& active_preferences,
                                       std::uint64_t mix_seed) {
  constexpr int d = 5;
  if (k_total < d) throw ValidationError("build_synthetic: k_total must be at least 5");
  if (!(gamma > 0.0) || gamma > 1.0)
    throw InvalidGamma("build_synthetic: gamma must lie in (0, 1]");
  std::vector<int> active = active_preferences;
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  if (active.empty()) throw ValidationError("build_synthetic: active_preferences must be nonempty");
  for (int i : active)
    if (i < 1 || i > d)
      throw ValidationError("build_synthetic: active_preferences must be within 1..5");

  std::vector<ArmDistribution> arms;
  arms.reserve(static_cast<std::size_t>(k_total));
  for (int b = 0; b < d; ++b) arms.push_back(ArmDistribution::shifted_uniform(d, b));
  const Vec pi0 = {0.0, 0.1, 0.2, 0.3, 0.4};
  for (int j = d; j < k_total; ++j) {
    // permutation fixed at construction so the arm is stationary over time
    Vec w = pi0;
    Rng rng = Rng::keyed(mix_seed, stream_tag(Stream::kMixWeights), static_cast<std::uint64_t>(j));
    for (int k = d - 1; k > 0; --k)
      std::swap(w[static_cast<std::size_t>(k)], w[rng.below(static_cast<std::uint64_t>(k) + 1)]);
    arms.push_back(ArmDistribution::mixed(std::move(w)));
  }
  if (gamma < 1.0)
    for (ArmDistribution& a : arms) a = ArmDistribution::scaled(std::move(a), gamma);

  std::vector<Vec> support;
  support.reserve(active.size());
  for (int i : active) {
    Vec lam(d, 1.0 / 8.0);
    lam[i - 1] += 3.0 / 8.0;
    support.push_back(std::move(lam));
  }
  Vec probs(active.size(), 1.0 / static_cast<double>(active.size()));
  double head = 0.0;
  for (std::size_t m = 0; m + 1 < probs.size(); ++m) head += probs[m];
  probs.back() = 1.0 - head;  // exact unit total
  return ProblemInstance(std::move(arms), PreferenceModel(std::move(support), std::move(probs)));
}

}  // namespace wucb
