#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bongard/causal_bounds.hpp"
#include "bongard/env.hpp"
#include "bongard/nn.hpp"
#include "bongard/rng.hpp"

namespace bongard {

enum class EncoderKind : std::uint8_t { Mlp, Snn };
enum class Algorithm : std::uint8_t { Ppo, A2c };
enum class BoundsMode : std::uint8_t { Off, Base, Extended };

std::string_view to_string(EncoderKind kind);
std::string_view to_string(Algorithm algorithm);
std::string_view to_string(BoundsMode mode);
EncoderKind encoder_from_string(std::string_view name);
Algorithm algorithm_from_string(std::string_view name);
BoundsMode bounds_mode_from_string(std::string_view name);

struct PolicyConfig {
  EncoderKind encoder = EncoderKind::Snn;
  int image_side = 16;
  int feature_dim = 64;
  int hidden_dim = 64;
  /// The value head's tanh output is multiplied by this (T / 2).
  double value_scale = 72.0;
};

/// Encoder plus separate policy and value heads.
///   MLP: flattened pair (2 s^2) -> feature_dim, tanh
///   SNN: shared s^2 -> feature_dim tanh encoder e, features |e(x1) - e(x2)|
///   policy head: features -> hidden tanh -> 2 logits
///   value head:  features -> hidden tanh -> 1, tanh, scaled
struct PolicyModel {
  PolicyConfig config;
  nn::Network encoder;
  nn::Network policy_head;
  nn::Network value_head;

  PolicyModel() = default;
  PolicyModel(const PolicyConfig& config, std::uint64_t seed);
};

/// Gradients laid out like the three networks of a PolicyModel.
struct ModelGradients {
  std::vector<double> encoder;
  std::vector<double> policy_head;
  std::vector<double> value_head;

  explicit ModelGradients(const PolicyModel& model);
  void scale(double factor);
};

/// Everything one forward pass produced, enough to backpropagate.
struct ModelPass {
  std::vector<nn::ForwardCache> encoder_caches;  // one (MLP) or two (SNN)
  std::vector<double> features;
  nn::ForwardCache policy_cache;
  nn::ForwardCache value_cache;
  std::array<double, 2> logits{};
  double value = 0.0;
};

/// Pixels of channel 0 then channel 1 as doubles.
std::vector<double> flatten_channels(const PairState& state);

/// Features alone (encode_mlp / encode_snn depending on the model).
std::vector<double> encode(const PolicyModel& model, const PairState& state);
ModelPass run_model(const PolicyModel& model, const PairState& state);

/// Backpropagates d(loss)/d(logits) and d(loss)/d(value) into `grads`.
void backprop_model(const PolicyModel& model, const ModelPass& pass, std::array<double, 2> dlogits, double dvalue,
                    ModelGradients& grads);

/// Per-action clamp interval for the value proxy sigmoid(logit_z); absent means
/// unclamped.
using ActiveBounds = std::array<std::optional<Interval>, 2>;

/// Resolves the bounds to apply: crossed intervals fall back to `fallback`'s
/// interval for that action, and to no clamping when that is crossed too.
ActiveBounds resolve_bounds(const std::optional<BoundPair>& bounds, const std::optional<BoundPair>& fallback);

struct ActionDistribution {
  std::array<double, 2> probs{};
  /// Logits after clamping sigmoid(logit_z) into its interval.
  std::array<double, 2> effective_logits{};
  /// True where the clamp was active (no gradient flows through that logit).
  std::array<bool, 2> clamped{};
  /// sigmoid(effective logit): the per-action expected-reward estimate.
  std::array<double, 2> value_estimates{};
};

/// softmax over logits whose value proxies sigmoid(logit_z) were first
/// clamped into the active interval for do(z). Full [0,1] intervals are a no-op.
ActionDistribution action_distribution(std::array<double, 2> logits, const ActiveBounds& bounds);

struct ActResult {
  Action action = Action::Same;
  double log_prob = 0.0;
  double value = 0.0;
  ActionDistribution dist;
  /// Set when dist.value_estimates honour the bounds handed to the policy.
  bool bounded = false;
};

ActResult act(const PolicyModel& model, const PairState& state, const std::optional<BoundPair>& bounds, Rng& rng,
              const std::optional<BoundPair>& fallback = std::nullopt);

/// Pools (action, reward) counts from completed episodes and produces the
/// bounds an agent applies at each step. The running episode's counts are
/// kept apart until `end_episode`.
class BoundsSource {
 public:
  explicit BoundsSource(BoundsMode mode = BoundsMode::Off, std::uint64_t min_samples = kDefaultMinSamples,
                        ExtendedBoundsOptions options = {});

  BoundsMode mode() const { return mode_; }
  /// Base bounds from the pooled joint, or nothing (Off, or too little data).
  std::optional<BoundPair> base() const;
  /// Bounds for the next step of `episode` under this source's mode.
  std::optional<BoundPair> bounds_for(const EpisodeState& episode) const;

  void record(Action action, int reward) { current_.add(to_int(action), reward); }
  void end_episode();

  const JointCounts& pooled() const { return pooled_; }
  const JointCounts& current() const { return current_; }

 private:
  BoundsMode mode_;
  std::uint64_t min_samples_;
  ExtendedBoundsOptions options_;
  JointCounts pooled_;
  JointCounts current_;
};

struct TrajectoryStep {
  PairState state;
  Action action = Action::Same;
  double log_prob = 0.0;
  int reward = 0;
  double value = 0.0;
  ActiveBounds bounds{};
};

struct Trajectory {
  int problem_id = 0;
  std::vector<TrajectoryStep> steps;
  int raw_return = 0;
  double discounted_return = 0.0;
  bool bounds_active = false;
};

/// Chooses an action for the current pair of an episode.
using PolicyFn = std::function<ActResult(const EpisodeState& episode, const std::optional<BoundPair>& bounds,
                                         const std::optional<BoundPair>& fallback, Rng& rng)>;

PolicyFn model_policy(const PolicyModel& model);
PolicyFn random_policy();
/// Answers from the true labels.
PolicyFn oracle_policy();

/// Plays `episode` to the end, feeding (action, reward) into `bounds` (which
/// may be null) after every step and closing its episode at the end.
Trajectory collect_episode(EpisodeState& episode, const PolicyFn& policy, BoundsSource* bounds, Rng& rng);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::Ppo;
  double clip_epsilon = 0.2;
  int epochs = 4;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double gamma = 0.99;
  BoundsMode bounds_mode = BoundsMode::Off;
  double learning_rate = 3e-4;
  int minibatch_size = 256;
  int episodes_per_batch = 8;
};

void validate(const LearnerConfig& config);

/// Model plus one optimizer per network.
struct TrainState {
  PolicyModel model;
  nn::OptimizerState encoder_opt;
  nn::OptimizerState policy_opt;
  nn::OptimizerState value_opt;

  TrainState() = default;
  TrainState(PolicyModel model, double learning_rate);
};

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  /// max |ratio - 1| over the first minibatch of the first epoch.
  double first_pass_ratio_error = 0.0;
  int minibatches = 0;
};

/// Discounted return-to-go for each step.
std::vector<double> discounted_returns(const Trajectory& trajectory, double gamma);

/// Clipped-surrogate update over config.epochs shuffled passes.
UpdateStats ppo_update(TrainState& state, std::span<const Trajectory> batch, const LearnerConfig& config, Rng& rng);
/// One unclipped pass of advantage actor-critic.
UpdateStats a2c_update(TrainState& state, std::span<const Trajectory> batch, const LearnerConfig& config, Rng& rng);

struct TrainingOptions {
  EnvConfig env;
  LearnerConfig learner;
  PolicyConfig policy;
  int episodes = 2000;
  std::uint64_t min_samples = kDefaultMinSamples;
  ExtendedBoundsOptions extended;
};

struct EpisodeMetrics {
  int episode = 0;
  int problem_id = 0;
  int steps = 0;
  int raw_return = 0;
  double discounted_return = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  bool bounds_active = false;
};

struct TrainingResult {
  TrainState state;
  std::vector<EpisodeMetrics> metrics;
};

using BatchCallback = std::function<void(std::span<const EpisodeMetrics>)>;

/// Seeded training loop: each episode draws one problem, batches of
/// episodes_per_batch feed one update. Bit-reproducible for a given seed.
TrainingResult train(const TrainingOptions& options, std::span<const std::shared_ptr<const BongardProblem>> problems,
                     std::uint64_t seed, const BatchCallback& on_batch = {});

/// Greedy (argmax, ties to Same) action.
Action greedy_action(const PolicyModel& model, const PairState& state);

inline constexpr int kCheckpointFormatVersion = 1;

nlohmann::json checkpoint_to_json(const TrainState& state);
/// Throws CheckpointVersionMismatch for a different format_version.
TrainState checkpoint_from_json(const nlohmann::json& j);

}  // namespace bongard
