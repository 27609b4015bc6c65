#pragma once
// Closed-form performance bounds for the weighted-UCB learner, the
// alternative-environment construction behind the regret lower bound, and KL
// helpers for finite-support arms. All are pure functions over immutable
// inputs. The formulas assume uniform region masses rho_j = 1/|S1| on s1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wucb/env.hpp"
#include "wucb/errors.hpp"

namespace wucb {

// Shared symbols of the bound formulas. rho is the internal pull-share
// parameter 1/(4(K-1)|S1|), defined for K >= 2.
struct BoundInputs {
  int k = 0;
  int d = 0;
  int s1_size = 0;
  int s2_size = 0;
  double l = 0.0;
  double h = 0.0;
  double horizon = 0.0;
  double alpha = 0.99;   // consistency exponent of the policy class
  double c_alpha = 1.0;  // its multiplicative constant
  double rho = 0.0;

  static BoundInputs from(const ProblemInstance& instance, const InstanceSummary& summary,
                          double horizon, double alpha = 0.99, double c_alpha = 1.0) {
    BoundInputs in;
    in.k = instance.num_arms();
    in.d = instance.dim();
    in.s1_size = static_cast<int>(summary.s1.size());
    in.s2_size = static_cast<int>(summary.s2.size());
    in.l = summary.l;
    in.h = summary.h;
    in.horizon = horizon;
    in.alpha = alpha;
    in.c_alpha = c_alpha;
    in.rho = in.k >= 2 ? 1.0 / (4.0 * (in.k - 1) * in.s1_size) : 0.0;
    return in;
  }
};

// Log-term of the regret upper bound: 8 h |S1| |S2| ln(T) / l^2. Without
// strictly sub-optimal arms the term vanishes and the regret is bounded by a
// constant. The additive constant has no closed form here; where a concrete
// value is needed it is reported as a fitted intercept.
inline double regret_upper_leading(const BoundInputs& in) {
  if (in.s2_size == 0) return 0.0;
  if (!(in.horizon >= 1.0))
    throw ValidationError("regret_upper_leading: horizon must be at least 1");
  return 8.0 * in.h * in.s1_size * in.s2_size * std::log(in.horizon) / (in.l * in.l);
}

// Time from which the tail bound on the optimal arm's own-region pull share
// applies: (4(K-1)|S1|)^2 (8/l^2 + 1)^2.
inline double optimal_share_threshold(const BoundInputs& in) {
  if (in.k < 2) throw ValidationError("optimal_share_threshold: needs at least two arms");
  const double a = 4.0 * (in.k - 1) * in.s1_size;
  const double b = 8.0 / (in.l * in.l) + 1.0;
  return a * a * b * b;
}

// Bound on P[N_j^j(t) < t/(4|S1|)] for t above the threshold; the bound
// asserts nothing below it.
inline double optimal_share_tail(const BoundInputs& in, double t) {
  if (t < optimal_share_threshold(in))
    throw BelowThreshold("optimal_share_tail: t is below the validity threshold");
  const double s1 = in.s1_size;
  const double rho_t = in.rho * t;
  return std::exp(-t / (2.0 * s1 * s1)) +
         2.0 * in.d * in.k * ((1.0 - in.rho) * t + 1.0) / (rho_t * rho_t * rho_t);
}

// Bound on E[N_i^j(T)] for distinct i, j that are both optimal somewhere;
// constant in the horizon.
inline double s1_wrong_pull_bound(const BoundInputs& in) {
  if (in.k < 2) throw ValidationError("s1_wrong_pull_bound: needs at least two arms");
  const double s1 = in.s1_size;
  const double k1 = static_cast<double>(in.k - 1);
  const double l4 = in.l * in.l * in.l * in.l;
  const double rho3 = in.rho * in.rho * in.rho;
  return (1024.0 * k1 * k1 * s1 * s1 / l4 + 2.0 * s1 * s1 + 6.0 * in.d * in.k / rho3 +
          3.0 * in.d) / s1;
}

// Bound on E[sum_{j in S1} N_i^j(T)] for a strictly sub-optimal arm i:
// 8 ln(T)/l^2 + 3d.
inline double s2_pull_bound(const BoundInputs& in) {
  if (!(in.horizon >= 1.0)) throw ValidationError("s2_pull_bound: horizon must be at least 1");
  return 8.0 * std::log(in.horizon) / (in.l * in.l) + 3.0 * in.d;
}

// Replaces strictly sub-optimal arm i by a scaled/shifted copy of region j's
// optimum: a draw becomes (1-eps) x_j + eps 1, so the new mean is
// (1-eps) mu_j + eps 1. This promotes arm i to the unique optimum exactly on
// region j and leaves every other region's optimum unchanged; both facts are
// re-checked by enumeration before returning.
inline ProblemInstance alt_environment(const ProblemInstance& instance, int j, int i, double eps) {
  const InstanceSummary summary = summarize(instance);
  auto contains = [](const std::vector<int>& s, int v) {
    return std::find(s.begin(), s.end(), v) != s.end();
  };
  if (!contains(summary.s1, j))
    throw NotInS1("alt_environment: arm j must be optimal for some preference");
  if (!contains(summary.s2, i))
    throw NotInS2("alt_environment: arm i must be strictly sub-optimal");
  if (!(eps > 0.0 && eps < summary.l))
    throw EpsOutOfRange("alt_environment: eps must lie in (0, l)");

  std::vector<ArmDistribution> arms = instance.arms();
  arms[static_cast<std::size_t>(i)] =
      ArmDistribution::affine(instance.arms()[static_cast<std::size_t>(j)], 1.0 - eps, eps);
  ProblemInstance alt(std::move(arms), instance.preferences());

  const PreferenceModel& model = instance.preferences();
  for (int m = 0; m < model.size(); ++m) {
    const int before = summary.optimal_arm_of[static_cast<std::size_t>(m)];
    const int after = optimal_arm(alt, model.support()[static_cast<std::size_t>(m)]);
    const int expected = before == j ? i : before;
    if (after != expected)
      throw ValidationError("alt_environment: optimum swap failed on support vector " +
                            std::to_string(m + 1));
  }
  return alt;
}

// KL divergence between two product-categorical arms over a shared support:
// independent coordinates add, so this is sum_k sum_v p_k(v) ln(p_k(v)/q_k(v)).
inline double kl_product(const ArmDistribution& p, const ArmDistribution& q) {
  if (p.kind() != ArmDistribution::Kind::kProductCategorical ||
      q.kind() != ArmDistribution::Kind::kProductCategorical)
    throw SupportMismatch("kl_product: both arms must be product-categorical");
  if (p.dim() != q.dim()) throw SupportMismatch("kl_product: arm dimensions differ");
  double kl = 0.0;
  for (int k = 0; k < p.dim(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const Vec& pv = p.support_values()[idx];
    const Vec& qv = q.support_values()[idx];
    if (pv.size() != qv.size() || max_abs_diff(pv, qv) > kTieTolerance)
      throw SupportMismatch("kl_product: support points differ in coordinate " +
                            std::to_string(k + 1));
    for (std::size_t v = 0; v < pv.size(); ++v) {
      const double pp = p.support_probs()[idx][v];
      const double qq = q.support_probs()[idx][v];
      if (pp == 0.0) continue;
      if (qq <= 0.0)
        throw SupportMismatch("kl_product: q has zero mass where p is positive (infinite KL)");
      kl += pp * std::log(pp / qq);
    }
  }
  return kl;
}

// Lower bound on E[R(T)] over alpha-consistent policies:
// sum_{i in S2} [2(1-alpha) ln T + 2 ln(16 C |S1|)] / kl_min_i * l, where
// kl_min_i = min_{j in S1} KL(nu_i || nu_j) is supplied per arm (computable
// via kl_product for finite-support arms). Valid for large horizons; see
// lower_bound_valid_from.
inline double regret_lower_alpha_consistent(const BoundInputs& in,
                                            const std::vector<double>& kl_min_per_s2_arm) {
  if (!(in.alpha > 0.0 && in.alpha < 1.0))
    throw ValidationError("regret_lower_alpha_consistent: alpha must lie in (0,1)");
  if (!(in.c_alpha > 0.0))
    throw ValidationError("regret_lower_alpha_consistent: c_alpha must be positive");
  if (static_cast<int>(kl_min_per_s2_arm.size()) != in.s2_size)
    throw ValidationError("regret_lower_alpha_consistent: need one KL value per S2 arm");
  if (in.s2_size == 0) return 0.0;
  if (!(in.horizon >= 1.0))
    throw ValidationError("regret_lower_alpha_consistent: horizon must be at least 1");
  const double numerator =
      2.0 * (1.0 - in.alpha) * std::log(in.horizon) + 2.0 * std::log(16.0 * in.c_alpha * in.s1_size);
  double total = 0.0;
  for (double kl : kl_min_per_s2_arm) {
    if (!(kl > 0.0) || !std::isfinite(kl))
      throw NonpositiveKL("regret_lower_alpha_consistent: KL values must be positive and finite");
    total += numerator / kl * in.l;
  }
  return total;
}

// Smallest horizon from which the lower bound's large-T condition
// exp(-2T/(9 |S1|^2)) < 8 C |S1| T^(alpha-1) holds for every larger T. The
// gap g(T) between the two sides (in logs) is unimodal, so the last failure
// point can be bracketed and bisected.
inline double lower_bound_valid_from(const BoundInputs& in) {
  if (!(in.alpha > 0.0 && in.alpha < 1.0))
    throw ValidationError("lower_bound_valid_from: alpha must lie in (0,1)");
  if (!(in.c_alpha > 0.0)) throw ValidationError("lower_bound_valid_from: c_alpha must be positive");
  const double s1 = in.s1_size;
  const double a = 2.0 / (9.0 * s1 * s1);
  const double log_rhs = std::log(8.0 * in.c_alpha * s1);
  auto holds = [&](double t) { return -a * t < log_rhs + (in.alpha - 1.0) * std::log(t); };
  const double peak = std::max(1.0, (1.0 - in.alpha) / a);
  if (holds(peak)) return 1.0;
  double lo = peak;
  double hi = peak;
  while (!holds(hi)) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return std::ceil(hi);
}

}  // namespace wucb
