#include "bongard/causal_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bongard/error.hpp"
#include "bongard/rng.hpp"

namespace bongard {

void JointCounts::merge(const JointCounts& other) {
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) n[x][y] += other.n[x][y];
  }
}

double JointDistribution::p(int x, int y) const {
  if (x == 0) return y == 0 ? p00 : p01;
  return y == 0 ? p10 : p11;
}

void validate(const JointDistribution& p) {
  for (double v : {p.p00, p.p01, p.p10, p.p11}) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InfeasibleDistribution, "joint entry outside [0,1]");
  }
  if (std::abs(p.p00 + p.p01 + p.p10 + p.p11 - 1.0) > 1e-12) {
    throw Error(ErrorCode::InfeasibleDistribution, "joint entries do not sum to 1");
  }
}

JointDistribution estimate_joint(const JointCounts& counts, std::uint64_t min_samples) {
  const std::uint64_t total = counts.total();
  if (total < min_samples || total == 0) {
    throw Error(ErrorCode::InsufficientData,
                std::to_string(total) + " samples, need " + std::to_string(std::max<std::uint64_t>(min_samples, 1)));
  }
  const double n = static_cast<double>(total);
  return JointDistribution{counts.n[0][0] / n, counts.n[0][1] / n, counts.n[1][0] / n, counts.n[1][1] / n};
}

BoundPair base_bounds(const JointDistribution& p) {
  validate(p);
  BoundPair b;
  b[0] = Interval{p.p01, p.p01 + p.p10 + p.p11};
  b[1] = Interval{p.p11, p.p11 + p.p00 + p.p01};
  return b;
}

double history_prob(const HistoryClassStats& stats, int z) {
  if (stats.remaining_same < 0 || stats.remaining_diff < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative class count");
  }
  const int total = stats.remaining_same + stats.remaining_diff;
  if (total == 0) throw Error(ErrorCode::EmptyHistoryDomain, "no pairs remain in the episode");
  return static_cast<double>(z == 0 ? stats.remaining_same : stats.remaining_diff) / total;
}

BoundPair extended_bounds(const JointDistribution& p, double h0, double h1, ExtendedBoundsOptions options) {
  if (!(h0 >= 0.0 && h0 <= 1.0 && h1 >= 0.0 && h1 <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "history probabilities must lie in [0,1]");
  }
  const BoundPair base = base_bounds(p);
  const double lower_h0 = options.swap_history_in_lower ? h0 : h1;
  const double lower_h1 = options.swap_history_in_lower ? h1 : h0;
  BoundPair b;
  b[0] = Interval{std::max(base[0].lower, lower_h0), std::min(base[0].upper, h0)};
  b[1] = Interval{std::max(base[1].lower, lower_h1), std::min(base[1].upper, h1)};
  return b;
}

double clamp_estimate(double v, const Interval& interval) {
  if (interval.crossed()) throw Error(ErrorCode::CrossedInterval, "lower bound exceeds upper bound");
  return std::min(std::max(v, interval.lower), interval.upper);
}

// ---------------------------------------------------------------------------
// Response-type models

namespace {

/// Reward produced by response function r for action x.
int response(int r, int x) {
  switch (r) {
    case 0: return 0;
    case 1: return x;
    case 2: return 1 - x;
    default: return 1;
  }
}

/// Solves the 4x4 system a * sol = rhs in place; false when singular.
bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> rhs, std::array<double, 4>& sol) {
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int row = 0; row < 4; ++row) {
      if (row == col) continue;
      const double f = a[row][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[row][k] -= f * a[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  for (int i = 0; i < 4; ++i) sol[i] = rhs[i] / a[i][i];
  return true;
}

}  // namespace

JointDistribution observational_joint(const ResponseTypeDistribution& q) {
  std::array<double, 4> p{};
  for (int x = 0; x < 2; ++x) {
    for (int r = 0; r < 4; ++r) p[2 * x + response(r, x)] += q[4 * x + r];
  }
  return JointDistribution{p[0], p[1], p[2], p[3]};
}

double interventional_mean(const ResponseTypeDistribution& q, int z) {
  double mean = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int r = 0; r < 4; ++r) mean += q[4 * x + r] * response(r, z);
  }
  return mean;
}

BoundPair lp_oracle_bounds(const JointDistribution& p) {
  validate(p);
  // Constraint matrix: row 2x+y sums the response types with action x whose
  // reward at x is y.
  std::array<std::array<double, 8>, 4> constraint{};
  for (int x = 0; x < 2; ++x) {
    for (int r = 0; r < 4; ++r) constraint[2 * x + response(r, x)][4 * x + r] = 1.0;
  }
  const std::array<double, 4> rhs{p.p00, p.p01, p.p10, p.p11};

  BoundPair result;
  for (int z = 0; z < 2; ++z) {
    result[z] = Interval{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  }
  bool found = false;
  // Every vertex is a basic feasible solution supported on 4 columns.
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != 4) continue;
    std::array<int, 4> cols{};
    for (int c = 0, k = 0; c < 8; ++c) {
      if (mask & (1 << c)) cols[k++] = c;
    }
    std::array<std::array<double, 4>, 4> basis{};
    for (int row = 0; row < 4; ++row) {
      for (int k = 0; k < 4; ++k) basis[row][k] = constraint[row][cols[k]];
    }
    std::array<double, 4> sol{};
    if (!solve4(basis, rhs, sol)) continue;
    if (std::any_of(sol.begin(), sol.end(), [](double v) { return v < -1e-12; })) continue;
    ResponseTypeDistribution q{};
    for (int k = 0; k < 4; ++k) q[cols[k]] = std::max(0.0, sol[k]);
    found = true;
    for (int z = 0; z < 2; ++z) {
      const double value = interventional_mean(q, z);
      result[z].lower = std::min(result[z].lower, value);
      result[z].upper = std::max(result[z].upper, value);
    }
  }
  if (!found) throw Error(ErrorCode::InfeasibleDistribution, "no response-type model reproduces the joint");
  return result;
}

nlohmann::json BoundsVerificationReport::to_json() const {
  return nlohmann::json{{"trials", trials},
                        {"containment_violations", containment_violations},
                        {"max_endpoint_gap", max_endpoint_gap},
                        {"passed", passed()}};
}

BoundsVerificationReport verify_bounds(std::uint64_t trials, std::uint64_t seed) {
  BoundsVerificationReport report;
  report.trials = trials;
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    // Containment: a random confounded model and its own observational joint.
    ResponseTypeDistribution q{};
    double total = 0.0;
    for (double& v : q) total += (v = rng.exponential());
    for (double& v : q) v /= total;
    JointDistribution observed = observational_joint(q);
    // Renormalize against rounding so the joint validates.
    const double s = observed.p00 + observed.p01 + observed.p10 + observed.p11;
    observed = JointDistribution{observed.p00 / s, observed.p01 / s, observed.p10 / s, observed.p11 / s};
    const BoundPair bounds = base_bounds(observed);
    bool violated = false;
    for (int z = 0; z < 2; ++z) violated |= !bounds[z].contains(interventional_mean(q, z), 1e-12);
    report.containment_violations += violated ? 1 : 0;

    // Tightness: a random joint against the vertex-enumeration oracle.
    std::array<double, 4> e{};
    double sum = 0.0;
    for (double& v : e) sum += (v = rng.exponential());
    const JointDistribution p{e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum};
    const BoundPair base = base_bounds(p);
    const BoundPair oracle = lp_oracle_bounds(p);
    for (int z = 0; z < 2; ++z) {
      report.max_endpoint_gap = std::max({report.max_endpoint_gap, std::abs(base[z].lower - oracle[z].lower),
                                          std::abs(base[z].upper - oracle[z].upper)});
    }
  }
  return report;
}

}  // namespace bongard
