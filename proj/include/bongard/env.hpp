#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bongard/causal_bounds.hpp"
#include "bongard/image.hpp"

namespace bongard {

inline constexpr int kPairsPerProblem = kImagesPerProblem * kImagesPerProblem;

/// 0 = both images in the same group, 1 = different groups.
enum class Action : std::uint8_t { Same = 0, Different = 1 };

inline int to_int(Action a) { return static_cast<int>(a); }
inline Action action_from_int(int v) { return v == 0 ? Action::Same : Action::Different; }

struct EnvConfig {
  int episode_length = kPairsPerProblem;
  double gamma = 0.99;
  int image_side = 16;
  bool shuffle = true;
};

void validate(const EnvConfig& config);

struct LabeledPair {
  int i = 0;
  int j = 0;
  PairState state;
  bool same_group = false;
};

/// All 144 ordered pairs (i, j), row-major, self-pairs included.
std::vector<LabeledPair> compile_pairs(const BongardProblem& bp);

struct StepRecord {
  int pair_index = 0;
  Action action = Action::Same;
  int reward = 0;
};

struct StepResult {
  /// Next observation; null once the episode is done.
  const PairState* next = nullptr;
  int reward = 0;
  bool done = false;
};

/// One episode over one problem. Only `step` mutates it; the pair sequence is
/// fixed at reset and never depends on the actions taken.
class EpisodeState {
 public:
  const BongardProblem& problem() const { return *bp_; }
  const EnvConfig& config() const { return config_; }
  std::span<const int> order() const { return order_; }
  std::span<const LabeledPair> pairs() const { return pairs_; }
  int cursor() const { return cursor_; }
  bool done() const { return cursor_ >= config_.episode_length; }

  /// The pair awaiting a decision. Throws EpisodeFinished once done.
  const LabeledPair& current_pair() const;
  const PairState& observation() const { return current_pair().state; }

  StepResult step(Action action);

  std::span<const StepRecord> history() const { return records_; }
  /// Class counts of pairs not yet consumed, out of the full 144.
  HistoryClassStats class_stats() const;

 private:
  friend EpisodeState reset(std::shared_ptr<const BongardProblem>, const EnvConfig&, std::uint64_t);
  EpisodeState() = default;

  std::shared_ptr<const BongardProblem> bp_;
  EnvConfig config_;
  std::vector<LabeledPair> pairs_;
  std::vector<int> order_;
  int cursor_ = 0;
  int consumed_same_ = 0;
  int total_same_ = 0;
  std::vector<StepRecord> records_;
};

/// Downsamples the problem to image_side^2, compiles its pairs and draws the
/// seeded pair order (identity when shuffle is off).
EpisodeState reset(std::shared_ptr<const BongardProblem> bp, const EnvConfig& config, std::uint64_t seed);
EpisodeState reset(const BongardProblem& bp, const EnvConfig& config, std::uint64_t seed);

/// Sum of gamma^t r_t.
double episode_return(std::span<const StepRecord> records, double gamma);
/// Undiscounted reward total.
int raw_return(std::span<const StepRecord> records);

}  // namespace bongard
