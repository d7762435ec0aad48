#pragma once

#include <array>
#include <cstdint>

#include "json.hpp"

namespace bongard {

/// Counts n_xy of (action X = x, reward Y = y).
struct JointCounts {
  std::array<std::array<std::uint64_t, 2>, 2> n{};

  void add(int action, int reward) { ++n[action][reward]; }
  void merge(const JointCounts& other);
  std::uint64_t total() const { return n[0][0] + n[0][1] + n[1][0] + n[1][1]; }
};

/// p_xy = P(X = x, Y = y).
struct JointDistribution {
  double p00 = 0.25, p01 = 0.25, p10 = 0.25, p11 = 0.25;

  double p(int x, int y) const;
  /// P(X = x).
  double marginal_x(int x) const { return p(x, 0) + p(x, 1); }
};

/// Throws InfeasibleDistribution unless every entry is in [0,1] and they sum
/// to 1 within 1e-12.
void validate(const JointDistribution& p);

struct Interval {
  double lower = 0.0;
  double upper = 1.0;

  bool crossed() const { return lower > upper; }
  double width() const { return upper - lower; }
  bool contains(double v, double tol = 0.0) const { return v >= lower - tol && v <= upper + tol; }
};

/// Bounds on E[Y | do(z)] for z = 0, 1. Crossed intervals are kept as-is.
struct BoundPair {
  std::array<Interval, 2> by_action{};

  const Interval& operator[](int z) const { return by_action[z]; }
  Interval& operator[](int z) { return by_action[z]; }
};

struct HistoryClassStats {
  int remaining_same = 0;
  int remaining_diff = 0;
};

inline constexpr std::uint64_t kDefaultMinSamples = 100;

/// p_xy = n_xy / N. Throws InsufficientData when N < min_samples.
JointDistribution estimate_joint(const JointCounts& counts, std::uint64_t min_samples = kDefaultMinSamples);

/// E[Y|do(0)] in [p01, p01 + p10 + p11]; E[Y|do(1)] in [p11, p11 + p00 + p01].
BoundPair base_bounds(const JointDistribution& p);

/// Probability that a uniformly random remaining pair calls for action z.
/// Throws EmptyHistoryDomain when nothing remains.
double history_prob(const HistoryClassStats& stats, int z);

struct ExtendedBoundsOptions {
  /// Use p(z|H) rather than p(1-z|H) in the lower bound of do(z).
  bool swap_history_in_lower = false;
};

/// History-tightened bounds, h0 = p(z=0|H_t), h1 = p(z=1|H_t):
///   do(0): [max(p01, h1), min(p01 + p10 + p11, h0)]
///   do(1): [max(p11, h0), min(p11 + p00 + p01, h1)]
/// Intervals may come back crossed.
BoundPair extended_bounds(const JointDistribution& p, double h0, double h1, ExtendedBoundsOptions options = {});

/// Exact extremes of E[Y|do(z)] over every confounded model U -> X, U -> Y,
/// X -> Y reproducing p, found by enumerating the vertices of the polytope of
/// response-type distributions. Independent of `base_bounds`.
BoundPair lp_oracle_bounds(const JointDistribution& p);

/// min(max(v, lower), upper). Throws CrossedInterval when lower > upper.
double clamp_estimate(double v, const Interval& interval);

/// A confounded binary model as a distribution over the 8 canonical response
/// types: index = 4 * x + r, where x is the action the confounder selects and
/// r is the reward function of the action (0: always 0, 1: y = x,
/// 2: y = 1 - x, 3: always 1).
using ResponseTypeDistribution = std::array<double, 8>;

JointDistribution observational_joint(const ResponseTypeDistribution& q);
double interventional_mean(const ResponseTypeDistribution& q, int z);

struct BoundsVerificationReport {
  std::uint64_t trials = 0;
  std::uint64_t containment_violations = 0;
  double max_endpoint_gap = 0.0;

  bool passed() const { return containment_violations == 0 && max_endpoint_gap <= 1e-9; }
  nlohmann::json to_json() const;
};

/// Samples `trials` random response-type models (containment of the true
/// interventional mean in base_bounds) and `trials` random joints (base vs
/// oracle endpoints).
BoundsVerificationReport verify_bounds(std::uint64_t trials, std::uint64_t seed);

}  // namespace bongard
