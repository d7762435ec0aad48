#include "bongard/env.hpp"

#include <numeric>

#include "bongard/error.hpp"
#include "bongard/rng.hpp"

namespace bongard {

void validate(const EnvConfig& config) {
  if (config.episode_length < 1 || config.episode_length > kPairsPerProblem) {
    throw Error(ErrorCode::ConfigError, "episode length must be within 1..144");
  }
  if (!(config.gamma >= 0.0 && config.gamma <= 1.0)) throw Error(ErrorCode::ConfigError, "gamma must be in [0, 1]");
  if (config.image_side < 1) throw Error(ErrorCode::ConfigError, "image_side must be positive");
}

std::vector<LabeledPair> compile_pairs(const BongardProblem& bp) {
  std::vector<LabeledPair> pairs;
  pairs.reserve(kPairsPerProblem);
  for (int i = 0; i < kImagesPerProblem; ++i) {
    for (int j = 0; j < kImagesPerProblem; ++j) {
      pairs.push_back(LabeledPair{i, j, make_state(bp.image(i), bp.image(j)), bp.group_of(i) == bp.group_of(j)});
    }
  }
  return pairs;
}

const LabeledPair& EpisodeState::current_pair() const {
  if (done()) throw Error(ErrorCode::EpisodeFinished, "episode is over");
  return pairs_[order_[cursor_]];
}

StepResult EpisodeState::step(Action action) {
  const LabeledPair& pair = current_pair();
  const bool says_same = action == Action::Same;
  const int reward = says_same == pair.same_group ? 1 : 0;
  records_.push_back(StepRecord{order_[cursor_], action, reward});
  consumed_same_ += pair.same_group ? 1 : 0;
  ++cursor_;
  StepResult result;
  result.reward = reward;
  result.done = done();
  if (!result.done) result.next = &pairs_[order_[cursor_]].state;
  return result;
}

HistoryClassStats EpisodeState::class_stats() const {
  const int total = static_cast<int>(pairs_.size());
  const int consumed_diff = cursor_ - consumed_same_;
  return HistoryClassStats{total_same_ - consumed_same_, (total - total_same_) - consumed_diff};
}

EpisodeState reset(std::shared_ptr<const BongardProblem> bp, const EnvConfig& config, std::uint64_t seed) {
  validate(config);
  EpisodeState ep;
  ep.config_ = config;
  const int side = config.image_side;
  if (side > bp->width() || side > bp->height()) {
    throw Error(ErrorCode::InvalidTarget, "image_side exceeds the problem's image size");
  }
  if (side == bp->width() && side == bp->height()) {
    ep.bp_ = bp;
  } else {
    std::vector<Image> left;
    std::vector<Image> right;
    for (const Image& img : bp->left()) left.push_back(downsample(img, side, side));
    for (const Image& img : bp->right()) right.push_back(downsample(img, side, side));
    ep.bp_ = std::make_shared<const BongardProblem>(bp->id(), std::move(left), std::move(right), bp->solution());
  }
  ep.pairs_ = compile_pairs(*ep.bp_);
  for (const LabeledPair& p : ep.pairs_) ep.total_same_ += p.same_group ? 1 : 0;
  ep.order_.resize(ep.pairs_.size());
  std::iota(ep.order_.begin(), ep.order_.end(), 0);
  if (config.shuffle) {
    Rng rng(seed);
    rng.shuffle(std::span<int>(ep.order_));
  }
  ep.records_.reserve(static_cast<std::size_t>(config.episode_length));
  return ep;
}

EpisodeState reset(const BongardProblem& bp, const EnvConfig& config, std::uint64_t seed) {
  return reset(std::make_shared<const BongardProblem>(bp), config, seed);
}

double episode_return(std::span<const StepRecord> records, double gamma) {
  double total = 0.0;
  double discount = 1.0;
  for (const StepRecord& r : records) {
    total += discount * r.reward;
    discount *= gamma;
  }
  return total;
}

int raw_return(std::span<const StepRecord> records) {
  int total = 0;
  for (const StepRecord& r : records) total += r.reward;
  return total;
}

}  // namespace bongard
