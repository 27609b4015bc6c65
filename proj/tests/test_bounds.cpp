#include "doctest.h"

#include <cmath>
#include <vector>

#include "wucb/bounds.hpp"
#include "wucb/env.hpp"

using namespace wucb;

namespace {

BoundInputs inputs_for(int k, int d, int s1, int s2, double l, double h, double horizon,
                       double alpha = 0.99, double c_alpha = 1.0) {
  BoundInputs in;
  in.k = k;
  in.d = d;
  in.s1_size = s1;
  in.s2_size = s2;
  in.l = l;
  in.h = h;
  in.horizon = horizon;
  in.alpha = alpha;
  in.c_alpha = c_alpha;
  in.rho = k >= 2 ? 1.0 / (4.0 * (k - 1) * s1) : 0.0;
  return in;
}

ArmDistribution bernoulli(const Vec& means) {
  std::vector<Vec> values, probs;
  for (double m : means) {
    values.push_back({0.0, 1.0});
    probs.push_back({1.0 - m, m});
  }
  return ArmDistribution::product_categorical(values, probs);
}

}  // namespace

TEST_CASE("regret upper bound log term") {
  CHECK(regret_upper_leading(inputs_for(3, 2, 2, 1, 0.1, 0.2, std::exp(1.0))) ==
        doctest::Approx(320.0).epsilon(1e-9));
  // synthetic-10 at T = 1e5
  CHECK(regret_upper_leading(inputs_for(10, 5, 5, 5, 0.045, 0.075, 1e5)) ==
        doctest::Approx(85280.92937014985).epsilon(1e-12));
  // no strictly sub-optimal arms: the term vanishes at any horizon
  for (double t : {2.0, 100.0, 1e6}) CHECK(regret_upper_leading(inputs_for(5, 5, 5, 0, 0.075, 0.075, t)) == 0.0);
}

TEST_CASE("own-region pull-share threshold and tail") {
  const BoundInputs in = inputs_for(2, 3, 2, 0, 1.0, 1.0, 1e5);
  CHECK(optimal_share_threshold(in) == doctest::Approx(5184.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)optimal_share_tail(in, 5000.0), BelowThreshold);

  double prev = optimal_share_tail(in, 5200.0);
  for (double t = 6000.0; t <= 1e6; t *= 1.5) {
    const double cur = optimal_share_tail(in, t);
    CHECK(cur <= prev);
    prev = cur;
  }
  CHECK(optimal_share_tail(in, 1e12) < 1e-9);
}

TEST_CASE("wrong-pull bound within s1 is constant in the horizon") {
  const double at_1e4 = s1_wrong_pull_bound(inputs_for(10, 5, 5, 5, 0.045, 0.075, 1e4));
  const double at_1e6 = s1_wrong_pull_bound(inputs_for(10, 5, 5, 5, 0.045, 0.075, 1e6));
  CHECK(at_1e4 == at_1e6);
  CHECK(at_1e4 > 0.0);
}

TEST_CASE("pull bound for strictly sub-optimal arms") {
  CHECK(s2_pull_bound(inputs_for(10, 5, 5, 5, 0.045, 0.075, 1.0)) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(s2_pull_bound(inputs_for(10, 5, 5, 5, 0.045, 0.075, 1e5)) ==
        doctest::Approx(45498.162330746585).epsilon(1e-12));
}

TEST_CASE("alternative environment swaps the optimum exactly on one region") {
  const ProblemInstance inst = build_synthetic(10, 1.0, {1, 2, 3, 4, 5}, 7);
  const InstanceSummary s = summarize(inst);

  SUBCASE("numeric example at eps = 0.01") {
    const ProblemInstance alt = alt_environment(inst, 0, 5, 0.01);
    const Vec& lam1 = inst.preferences().support()[0];
    const Vec& lam2 = inst.preferences().support()[1];
    CHECK(dot(lam1, alt.arms()[5].mean()) == doctest::Approx(0.703).epsilon(1e-12));
    CHECK(dot(lam2, alt.arms()[5].mean()) == doctest::Approx(0.62875).epsilon(1e-12));
    CHECK(optimal_arm(alt, lam1) == 5);
    CHECK(optimal_arm(alt, lam2) == 1);
  }

  SUBCASE("swap holds for every pair and eps grid") {
    for (int j : s.s1)
      for (int i : s.s2)
        for (double frac : {0.1, 0.5, 0.9}) {
          const ProblemInstance alt = alt_environment(inst, j, i, frac * s.l);
          const InstanceSummary sa = summarize(alt);
          for (int m = 0; m < inst.preferences().size(); ++m) {
            const int before = s.optimal_arm_of[static_cast<std::size_t>(m)];
            const int after = sa.optimal_arm_of[static_cast<std::size_t>(m)];
            CHECK(after == (before == j ? i : before));
          }
        }
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS((void)alt_environment(inst, 0, 5, 0.0), EpsOutOfRange);
    CHECK_THROWS_AS((void)alt_environment(inst, 0, 5, s.l), EpsOutOfRange);
    CHECK_THROWS_AS((void)alt_environment(inst, 7, 5, 0.01), NotInS1);
    CHECK_THROWS_AS((void)alt_environment(inst, 0, 2, 0.01), NotInS2);
  }

  SUBCASE("vanishing eps reproduces the copied mean") {
    const ProblemInstance alt = alt_environment(inst, 1, 6, 1e-9);
    for (int k = 0; k < 5; ++k)
      CHECK(alt.arms()[6].mean()[static_cast<std::size_t>(k)] ==
            doctest::Approx(inst.arms()[1].mean()[static_cast<std::size_t>(k)]).epsilon(1e-8));
  }
}

TEST_CASE("product KL divergence") {
  const ArmDistribution p = bernoulli({0.5});
  const ArmDistribution q = bernoulli({0.75});
  CHECK(kl_product(p, p) <= 1e-12);
  CHECK(kl_product(p, q) == doctest::Approx(0.14384103622589042).epsilon(1e-9));

  const ArmDistribution p2 = bernoulli({0.5, 0.5});
  const ArmDistribution q2 = bernoulli({0.75, 0.75});
  CHECK(std::abs(kl_product(p2, q2) - 2.0 * kl_product(p, q)) <= 1e-12);

  CHECK(kl_product(q, p) > 0.0);

  SUBCASE("support mismatches") {
    const ArmDistribution shifted = ArmDistribution::shifted_uniform(5, 0);
    CHECK_THROWS_AS((void)kl_product(shifted, shifted), SupportMismatch);
    const ArmDistribution other = ArmDistribution::product_categorical({{0.1, 0.9}}, {{0.5, 0.5}});
    CHECK_THROWS_AS((void)kl_product(p, other), SupportMismatch);
    const ArmDistribution wide = ArmDistribution::product_categorical({{0.0, 0.5, 1.0}}, {{0.25, 0.5, 0.25}});
    const ArmDistribution zero_mass = ArmDistribution::product_categorical({{0.0, 0.5, 1.0}}, {{0.0, 0.5, 0.5}});
    CHECK_THROWS_AS((void)kl_product(wide, zero_mass), SupportMismatch);
  }
}

TEST_CASE("alpha-consistent lower bound") {
  const BoundInputs in = inputs_for(6, 5, 5, 1, 0.4, 0.4, 1e5, 0.5, 1.0);
  CHECK(regret_lower_alpha_consistent(in, {0.1438}) == doctest::Approx(56.403278815905395).epsilon(1e-9));

  // empty s2: empty sum
  const BoundInputs none = inputs_for(5, 5, 5, 0, 0.075, 0.075, 1e5, 0.5, 1.0);
  CHECK(regret_lower_alpha_consistent(none, {}) == 0.0);

  // doubling every KL halves the bound
  const BoundInputs two = inputs_for(7, 5, 5, 2, 0.4, 0.4, 1e5, 0.5, 1.0);
  const double base = regret_lower_alpha_consistent(two, {0.1, 0.2});
  const double halved = regret_lower_alpha_consistent(two, {0.2, 0.4});
  CHECK(base == doctest::Approx(2.0 * halved).epsilon(1e-12));

  CHECK_THROWS_AS((void)regret_lower_alpha_consistent(in, {0.0}), NonpositiveKL);
  CHECK_THROWS_AS((void)regret_lower_alpha_consistent(in, {-1.0}), NonpositiveKL);
  CHECK_THROWS_AS((void)regret_lower_alpha_consistent(inputs_for(6, 5, 5, 1, 0.4, 0.4, 1e5, 1.5, 1.0), {0.1}),
                  ValidationError);
}

TEST_CASE("lower bound validity crossover") {
  // generous constant: the condition already holds at T = 1
  CHECK(lower_bound_valid_from(inputs_for(10, 5, 5, 5, 0.045, 0.075, 1e5, 0.99, 1.0)) == 1.0);

  // tiny constant: the condition fails in a window and recovers near T = 248
  const BoundInputs tight = inputs_for(3, 5, 2, 1, 0.1, 0.1, 1e5, 0.5, 1e-6);
  const double from = lower_bound_valid_from(tight);
  CHECK(from > 200.0);
  CHECK(from < 300.0);
  auto holds = [&](double t) {
    return std::exp(-2.0 * t / (9.0 * 4.0)) < 8.0 * 1e-6 * 2.0 * std::pow(t, 0.5 - 1.0);
  };
  CHECK(holds(from));
  CHECK(holds(from * 2.0));
  CHECK_FALSE(holds(from * 0.5));
}
