#include <algorithm>
#include <cmath>

#include "bongard/causal_bounds.hpp"
#include "bongard/error.hpp"
#include "bongard/rng.hpp"
#include "test_util.hpp"

using namespace bongard;

namespace {

JointDistribution random_joint(Rng& rng) {
  double e[4], s = 0;
  for (double& v : e) s += (v = rng.exponential());
  return {e[0] / s, e[1] / s, e[2] / s, e[3] / s};
}

// Each observed cell (x, y) is a mixture of two unit types that agree on
// Y(x) = y and disagree on the counterfactual Y(1 - x). E[Y | do(z)] is linear
// in the split fractions, so its extremes sit at the 2^4 all-or-nothing splits.
Interval split_oracle(const JointDistribution& p, int z) {
  double lo = 1e300, hi = -1e300;
  for (int mask = 0; mask < 16; ++mask) {
    double mean = 0.0;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const int cell = 2 * x + y;
        const int counterfactual = (mask >> cell) & 1;
        const int y_under_z = x == z ? y : counterfactual;
        mean += p.p(x, y) * y_under_z;
      }
    }
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("base bounds on a worked joint") {
  const JointDistribution p{0.1, 0.2, 0.3, 0.4};
  const BoundPair b = base_bounds(p);
  CHECK(b[0].lower == doctest::Approx(0.2));
  CHECK(b[0].upper == doctest::Approx(0.9));
  CHECK(b[1].lower == doctest::Approx(0.4));
  CHECK(b[1].upper == doctest::Approx(0.7));
  CHECK(b[0].width() == doctest::Approx(0.7));
}

TEST_CASE("base bounds, LP oracle and split oracle agree") {
  Rng rng(123);
  for (int t = 0; t < 2000; ++t) {
    const JointDistribution p = random_joint(rng);
    const BoundPair base = base_bounds(p);
    const BoundPair lp = lp_oracle_bounds(p);
    for (int z = 0; z < 2; ++z) {
      const Interval split = split_oracle(p, z);
      CHECK(std::abs(base[z].lower - split.lower) <= 1e-12);
      CHECK(std::abs(base[z].upper - split.upper) <= 1e-12);
      CHECK(std::abs(lp[z].lower - split.lower) <= 1e-9);
      CHECK(std::abs(lp[z].upper - split.upper) <= 1e-9);
      // Width equals the probability of not having taken z.
      CHECK(std::abs(base[z].width() - (p.p(1 - z, 0) + p.p(1 - z, 1))) <= 1e-12);
    }
  }
}

TEST_CASE("lp oracle handles degenerate joints") {
  for (const JointDistribution& p : {JointDistribution{1, 0, 0, 0}, JointDistribution{0, 0, 0, 1},
                                     JointDistribution{0.5, 0.5, 0, 0}, JointDistribution{0, 0.5, 0.5, 0}}) {
    const BoundPair base = base_bounds(p);
    const BoundPair lp = lp_oracle_bounds(p);
    for (int z = 0; z < 2; ++z) {
      CHECK(lp[z].lower == doctest::Approx(base[z].lower).epsilon(1e-12));
      CHECK(lp[z].upper == doctest::Approx(base[z].upper).epsilon(1e-12));
    }
  }
}

TEST_CASE("response-type models reproduce their joint and stay inside the bounds") {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    ResponseTypeDistribution q{};
    double s = 0;
    for (double& v : q) s += (v = rng.exponential());
    for (double& v : q) v /= s;
    const JointDistribution p = observational_joint(q);
    // Type 4x + r: r = 0 always 0, 1 y = x, 2 y = 1 - x, 3 always 1.
    CHECK(p.p00 == doctest::Approx(q[0] + q[1]));
    CHECK(p.p01 == doctest::Approx(q[2] + q[3]));
    CHECK(p.p10 == doctest::Approx(q[4] + q[6]));
    CHECK(p.p11 == doctest::Approx(q[5] + q[7]));
    const double do0 = q[2] + q[3] + q[6] + q[7];
    const double do1 = q[1] + q[3] + q[5] + q[7];
    CHECK(interventional_mean(q, 0) == doctest::Approx(do0));
    CHECK(interventional_mean(q, 1) == doctest::Approx(do1));
    const BoundPair b = base_bounds(p);
    CHECK(b[0].contains(do0, 1e-12));
    CHECK(b[1].contains(do1, 1e-12));
  }
}

TEST_CASE("extended bounds") {
  const JointDistribution p{0.1, 0.2, 0.3, 0.4};
  const BoundPair e = extended_bounds(p, 0.6, 0.4);
  CHECK(e[0].lower == doctest::Approx(std::max(0.2, 0.4)));
  CHECK(e[0].upper == doctest::Approx(std::min(0.9, 0.6)));
  CHECK(e[1].lower == doctest::Approx(std::max(0.4, 0.6)));
  CHECK(e[1].upper == doctest::Approx(std::min(0.7, 0.4)));
  CHECK(e[1].crossed());
  CHECK_FALSE(e[0].crossed());

  ExtendedBoundsOptions swapped;
  swapped.swap_history_in_lower = true;
  const BoundPair s = extended_bounds(p, 0.6, 0.4, swapped);
  CHECK(s[0].lower == doctest::Approx(std::max(0.2, 0.6)));
  CHECK(s[1].lower == doctest::Approx(std::max(0.4, 0.4)));

  CHECK_ERROR_CODE(extended_bounds(p, 1.5, 0.2), ErrorCode::InvalidArgument);
}

TEST_CASE("extended intervals nest inside the base interval") {
  Rng rng(99);
  for (int t = 0; t < 2000; ++t) {
    const JointDistribution p = random_joint(rng);
    const double h0 = rng.uniform01();
    const BoundPair base = base_bounds(p);
    const BoundPair ext = extended_bounds(p, h0, 1.0 - h0);
    for (int z = 0; z < 2; ++z) {
      if (ext[z].crossed()) continue;
      CHECK(ext[z].lower >= base[z].lower);
      CHECK(ext[z].upper <= base[z].upper);
    }
  }
}

TEST_CASE("estimation, history and clamping errors") {
  JointCounts c;
  for (int k = 0; k < 10; ++k) c.add(k % 2, (k / 2) % 2);
  CHECK(c.total() == 10);
  CHECK_ERROR_CODE(estimate_joint(c, 100), ErrorCode::InsufficientData);
  CHECK_ERROR_CODE(estimate_joint(JointCounts{}, 0), ErrorCode::InsufficientData);
  const JointDistribution p = estimate_joint(c, 10);
  CHECK(p.p00 + p.p01 + p.p10 + p.p11 == doctest::Approx(1.0));

  CHECK(history_prob({30, 10}, 0) == doctest::Approx(0.75));
  CHECK(history_prob({30, 10}, 1) == doctest::Approx(0.25));
  CHECK_ERROR_CODE(history_prob({0, 0}, 0), ErrorCode::EmptyHistoryDomain);

  CHECK(clamp_estimate(0.9, Interval{0.2, 0.5}) == 0.5);
  CHECK(clamp_estimate(0.1, Interval{0.2, 0.5}) == 0.2);
  CHECK(clamp_estimate(0.3, Interval{0.2, 0.5}) == 0.3);
  CHECK_ERROR_CODE(clamp_estimate(0.3, Interval{0.6, 0.5}), ErrorCode::CrossedInterval);

  CHECK_ERROR_CODE(validate(JointDistribution{0.5, 0.5, 0.5, 0.0}), ErrorCode::InfeasibleDistribution);
  CHECK_ERROR_CODE(validate(JointDistribution{-0.1, 0.5, 0.5, 0.1}), ErrorCode::InfeasibleDistribution);
  CHECK_ERROR_CODE(base_bounds(JointDistribution{0.5, 0.5, 0.5, 0.0}), ErrorCode::InfeasibleDistribution);
}

TEST_CASE("verify_bounds") {
  const BoundsVerificationReport r = verify_bounds(3000, 3);
  CHECK(r.containment_violations == 0);
  CHECK(r.max_endpoint_gap <= 1e-9);
  CHECK(r.passed());
  CHECK(verify_bounds(3000, 3).to_json() == r.to_json());
  const BoundsVerificationReport empty = verify_bounds(0, 3);
  CHECK(empty.trials == 0);
  CHECK(empty.passed());
}
