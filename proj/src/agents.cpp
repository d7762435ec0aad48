#include "bongard/agents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bongard/error.hpp"

namespace bongard {

std::string_view to_string(EncoderKind kind) { return kind == EncoderKind::Mlp ? "mlp" : "snn"; }
std::string_view to_string(Algorithm algorithm) { return algorithm == Algorithm::Ppo ? "ppo" : "a2c"; }

std::string_view to_string(BoundsMode mode) {
  switch (mode) {
    case BoundsMode::Off: return "off";
    case BoundsMode::Base: return "base";
    case BoundsMode::Extended: return "extended";
  }
  return "off";
}

EncoderKind encoder_from_string(std::string_view name) {
  if (name == "mlp") return EncoderKind::Mlp;
  if (name == "snn") return EncoderKind::Snn;
  throw Error(ErrorCode::ConfigError, "unknown model '" + std::string(name) + "' (mlp|snn)");
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "ppo") return Algorithm::Ppo;
  if (name == "a2c") return Algorithm::A2c;
  throw Error(ErrorCode::ConfigError, "unknown algorithm '" + std::string(name) + "' (ppo|a2c)");
}

BoundsMode bounds_mode_from_string(std::string_view name) {
  if (name == "off") return BoundsMode::Off;
  if (name == "base") return BoundsMode::Base;
  if (name == "extended") return BoundsMode::Extended;
  throw Error(ErrorCode::ConfigError, "unknown bounds mode '" + std::string(name) + "' (off|base|extended)");
}

// ---------------------------------------------------------------------------
// Model

PolicyModel::PolicyModel(const PolicyConfig& cfg, std::uint64_t seed) : config(cfg) {
  if (cfg.image_side < 1 || cfg.feature_dim < 1 || cfg.hidden_dim < 1 || !(cfg.value_scale > 0.0)) {
    throw Error(ErrorCode::ConfigError, "invalid policy dimensions");
  }
  const int pixels = cfg.image_side * cfg.image_side;
  const int encoder_in = cfg.encoder == EncoderKind::Mlp ? 2 * pixels : pixels;
  using nn::Activation;
  encoder = nn::Network({{encoder_in, cfg.feature_dim, Activation::Tanh}}, derive_seed(seed, 1));
  policy_head = nn::Network({{cfg.feature_dim, cfg.hidden_dim, Activation::Tanh}, {cfg.hidden_dim, 2, Activation::Identity}},
                            derive_seed(seed, 2));
  value_head = nn::Network({{cfg.feature_dim, cfg.hidden_dim, Activation::Tanh}, {cfg.hidden_dim, 1, Activation::Tanh}},
                           derive_seed(seed, 3));
}

ModelGradients::ModelGradients(const PolicyModel& model)
    : encoder(model.encoder.param_count(), 0.0),
      policy_head(model.policy_head.param_count(), 0.0),
      value_head(model.value_head.param_count(), 0.0) {}

void ModelGradients::scale(double factor) {
  for (auto* v : {&encoder, &policy_head, &value_head}) {
    for (double& g : *v) g *= factor;
  }
}

std::vector<double> flatten_channels(const PairState& state) {
  std::vector<double> out;
  out.reserve(2 * state.first().pixels().size());
  for (int c = 0; c < 2; ++c) {
    for (auto p : state.channel(c).pixels()) out.push_back(p);
  }
  return out;
}

namespace {

std::vector<double> channel_input(const Image& img) { return {img.pixels().begin(), img.pixels().end()}; }

void check_state(const PolicyModel& model, const PairState& state) {
  if (state.width() != model.config.image_side || state.height() != model.config.image_side) {
    throw Error(ErrorCode::DimensionMismatch, "state is not image_side x image_side");
  }
}

}  // namespace

ModelPass run_model(const PolicyModel& model, const PairState& state) {
  check_state(model, state);
  ModelPass pass;
  if (model.config.encoder == EncoderKind::Mlp) {
    pass.encoder_caches.push_back(nn::forward(model.encoder, flatten_channels(state)));
    const auto out = pass.encoder_caches[0].output();
    pass.features.assign(out.begin(), out.end());
  } else {
    pass.encoder_caches.push_back(nn::forward(model.encoder, channel_input(state.first())));
    pass.encoder_caches.push_back(nn::forward(model.encoder, channel_input(state.second())));
    const auto a = pass.encoder_caches[0].output();
    const auto b = pass.encoder_caches[1].output();
    pass.features.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) pass.features[k] = std::abs(a[k] - b[k]);
  }
  pass.policy_cache = nn::forward(model.policy_head, pass.features);
  pass.value_cache = nn::forward(model.value_head, pass.features);
  pass.logits = {pass.policy_cache.output()[0], pass.policy_cache.output()[1]};
  pass.value = model.config.value_scale * pass.value_cache.output()[0];
  return pass;
}

std::vector<double> encode(const PolicyModel& model, const PairState& state) { return run_model(model, state).features; }

void backprop_model(const PolicyModel& model, const ModelPass& pass, std::array<double, 2> dlogits, double dvalue,
                    ModelGradients& grads) {
  std::vector<double> dfeat = nn::backward(model.policy_head, pass.policy_cache, dlogits, grads.policy_head);
  const double dhead = dvalue * model.config.value_scale;
  const std::vector<double> dfeat_v =
      nn::backward(model.value_head, pass.value_cache, std::span<const double>(&dhead, 1), grads.value_head);
  for (std::size_t k = 0; k < dfeat.size(); ++k) dfeat[k] += dfeat_v[k];

  if (model.config.encoder == EncoderKind::Mlp) {
    nn::backward(model.encoder, pass.encoder_caches[0], dfeat, grads.encoder, false);
    return;
  }
  const auto a = pass.encoder_caches[0].output();
  const auto b = pass.encoder_caches[1].output();
  std::vector<double> da(dfeat.size());
  std::vector<double> db(dfeat.size());
  for (std::size_t k = 0; k < dfeat.size(); ++k) {
    const double sign = a[k] > b[k] ? 1.0 : (a[k] < b[k] ? -1.0 : 0.0);
    da[k] = sign * dfeat[k];
    db[k] = -sign * dfeat[k];
  }
  nn::backward(model.encoder, pass.encoder_caches[0], da, grads.encoder, false);
  nn::backward(model.encoder, pass.encoder_caches[1], db, grads.encoder, false);
}

// ---------------------------------------------------------------------------
// Action selection

ActiveBounds resolve_bounds(const std::optional<BoundPair>& bounds, const std::optional<BoundPair>& fallback) {
  ActiveBounds active{};
  if (!bounds) return active;
  for (int z = 0; z < 2; ++z) {
    if (!(*bounds)[z].crossed()) {
      active[z] = (*bounds)[z];
    } else if (fallback && !(*fallback)[z].crossed()) {
      active[z] = (*fallback)[z];
    }
  }
  return active;
}

namespace {

double sigmoid(double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

double logit(double p) {
  p = std::clamp(p, 1e-12, 1.0 - 1e-12);
  return std::log(p) - std::log1p(-p);
}

}  // namespace

ActionDistribution action_distribution(std::array<double, 2> logits, const ActiveBounds& bounds) {
  ActionDistribution d;
  for (int z = 0; z < 2; ++z) {
    d.effective_logits[z] = logits[z];
    d.value_estimates[z] = sigmoid(logits[z]);
    if (!bounds[z]) continue;
    double clamped = d.value_estimates[z];
    try {
      clamped = clamp_estimate(d.value_estimates[z], *bounds[z]);
    } catch (const Error&) {
      continue;  // crossed: leave this action unclamped
    }
    if (clamped != d.value_estimates[z]) {
      d.clamped[z] = true;
      d.value_estimates[z] = clamped;
      d.effective_logits[z] = logit(clamped);
    }
  }
  const double peak = std::max(d.effective_logits[0], d.effective_logits[1]);
  const double e0 = std::exp(d.effective_logits[0] - peak);
  const double e1 = std::exp(d.effective_logits[1] - peak);
  d.probs = {e0 / (e0 + e1), e1 / (e0 + e1)};
  return d;
}

namespace {

double log_prob_of(const ActionDistribution& d, int a) {
  const double peak = std::max(d.effective_logits[0], d.effective_logits[1]);
  const double lse = peak + std::log(std::exp(d.effective_logits[0] - peak) + std::exp(d.effective_logits[1] - peak));
  return d.effective_logits[a] - lse;
}

}  // namespace

ActResult act(const PolicyModel& model, const PairState& state, const std::optional<BoundPair>& bounds, Rng& rng,
              const std::optional<BoundPair>& fallback) {
  const ModelPass pass = run_model(model, state);
  ActResult r;
  r.dist = action_distribution(pass.logits, resolve_bounds(bounds, fallback));
  r.action = rng.uniform01() < r.dist.probs[0] ? Action::Same : Action::Different;
  r.log_prob = log_prob_of(r.dist, to_int(r.action));
  r.value = pass.value;
  r.bounded = true;
  return r;
}

// ---------------------------------------------------------------------------
// Bounds source

BoundsSource::BoundsSource(BoundsMode mode, std::uint64_t min_samples, ExtendedBoundsOptions options)
    : mode_(mode), min_samples_(min_samples), options_(options) {}

std::optional<BoundPair> BoundsSource::base() const {
  if (mode_ == BoundsMode::Off || pooled_.total() < std::max<std::uint64_t>(min_samples_, 1)) return std::nullopt;
  return base_bounds(estimate_joint(pooled_, min_samples_));
}

std::optional<BoundPair> BoundsSource::bounds_for(const EpisodeState& episode) const {
  std::optional<BoundPair> b = base();
  if (!b || mode_ != BoundsMode::Extended) return b;
  const HistoryClassStats stats = episode.class_stats();
  if (stats.remaining_same + stats.remaining_diff == 0) return b;
  const JointDistribution p = estimate_joint(pooled_, min_samples_);
  return extended_bounds(p, history_prob(stats, 0), history_prob(stats, 1), options_);
}

void BoundsSource::end_episode() {
  pooled_.merge(current_);
  current_ = JointCounts{};
}

// ---------------------------------------------------------------------------
// Rollouts

PolicyFn model_policy(const PolicyModel& model) {
  return [&model](const EpisodeState& ep, const std::optional<BoundPair>& bounds,
                  const std::optional<BoundPair>& fallback, Rng& rng) {
    return act(model, ep.observation(), bounds, rng, fallback);
  };
}

PolicyFn random_policy() {
  return [](const EpisodeState&, const std::optional<BoundPair>&, const std::optional<BoundPair>&, Rng& rng) {
    ActResult r;
    r.action = rng.bernoulli(0.5) ? Action::Different : Action::Same;
    r.log_prob = std::log(0.5);
    r.dist.probs = {0.5, 0.5};
    return r;
  };
}

PolicyFn oracle_policy() {
  return [](const EpisodeState& ep, const std::optional<BoundPair>&, const std::optional<BoundPair>&, Rng&) {
    ActResult r;
    r.action = ep.current_pair().same_group ? Action::Same : Action::Different;
    r.dist.probs = r.action == Action::Same ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
    return r;
  };
}

Trajectory collect_episode(EpisodeState& episode, const PolicyFn& policy, BoundsSource* bounds, Rng& rng) {
  Trajectory traj;
  traj.problem_id = episode.problem().id();
  traj.steps.reserve(static_cast<std::size_t>(episode.config().episode_length));
  while (!episode.done()) {
    std::optional<BoundPair> active;
    std::optional<BoundPair> fallback;
    if (bounds != nullptr) {
      active = bounds->bounds_for(episode);
      if (bounds->mode() == BoundsMode::Extended) fallback = bounds->base();
    }
    const ActResult r = policy(episode, active, fallback, rng);
    const ActiveBounds resolved = resolve_bounds(active, fallback);
    for (int z = 0; z < 2; ++z) {
      if (r.bounded && resolved[z] && !resolved[z]->contains(r.dist.value_estimates[z], 1e-9)) {
        throw std::logic_error("clamped action value escaped its bound interval");
      }
      traj.bounds_active |= resolved[z].has_value();
    }
    TrajectoryStep step{episode.observation(), r.action, r.log_prob, 0, r.value, resolved};
    const StepResult result = episode.step(r.action);
    step.reward = result.reward;
    if (bounds != nullptr) bounds->record(r.action, result.reward);
    traj.steps.push_back(std::move(step));
  }
  if (bounds != nullptr) bounds->end_episode();
  traj.raw_return = raw_return(episode.history());
  traj.discounted_return = episode_return(episode.history(), episode.config().gamma);
  return traj;
}

// ---------------------------------------------------------------------------
// Learning

void validate(const LearnerConfig& config) {
  if (!(config.clip_epsilon > 0.0)) throw Error(ErrorCode::ConfigError, "clip epsilon must be positive");
  if (config.entropy_coef < 0.0 || config.value_coef < 0.0) {
    throw Error(ErrorCode::ConfigError, "loss coefficients must be non-negative");
  }
  if (config.epochs < 1 || config.minibatch_size < 1 || config.episodes_per_batch < 1) {
    throw Error(ErrorCode::ConfigError, "epochs, minibatch size and batch size must be positive");
  }
  if (!(config.gamma >= 0.0 && config.gamma <= 1.0)) throw Error(ErrorCode::ConfigError, "gamma must be in [0, 1]");
  if (!(config.learning_rate > 0.0)) throw Error(ErrorCode::ConfigError, "learning rate must be positive");
}

TrainState::TrainState(PolicyModel m, double learning_rate)
    : model(std::move(m)),
      encoder_opt(nn::make_optimizer(model.encoder.param_count(), nn::OptimizerKind::Adam, learning_rate)),
      policy_opt(nn::make_optimizer(model.policy_head.param_count(), nn::OptimizerKind::Adam, learning_rate)),
      value_opt(nn::make_optimizer(model.value_head.param_count(), nn::OptimizerKind::Adam, learning_rate)) {}

std::vector<double> discounted_returns(const Trajectory& trajectory, double gamma) {
  std::vector<double> out(trajectory.steps.size());
  double running = 0.0;
  for (std::size_t t = trajectory.steps.size(); t-- > 0;) {
    running = trajectory.steps[t].reward + gamma * running;
    out[t] = running;
  }
  return out;
}

namespace {

struct Sample {
  const TrajectoryStep* step;
  double ret;
  double advantage;
};

std::vector<Sample> build_samples(std::span<const Trajectory> batch, double gamma) {
  std::vector<Sample> samples;
  for (const Trajectory& traj : batch) {
    const std::vector<double> returns = discounted_returns(traj, gamma);
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      samples.push_back(Sample{&traj.steps[t], returns[t], returns[t] - traj.steps[t].value});
    }
  }
  if (samples.empty()) throw Error(ErrorCode::EmptyBatch, "no steps to learn from");
  double mean = 0.0;
  for (const Sample& s : samples) mean += s.advantage;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (const Sample& s : samples) var += (s.advantage - mean) * (s.advantage - mean);
  const double std_dev = std::sqrt(var / static_cast<double>(samples.size()));
  for (Sample& s : samples) s.advantage = (s.advantage - mean) / (std_dev + 1e-8);
  return samples;
}

UpdateStats policy_gradient_update(TrainState& state, std::span<const Trajectory> batch, const LearnerConfig& config,
                                   Rng& rng, bool clipped, int epochs) {
  validate(config);
  if (batch.empty()) throw Error(ErrorCode::EmptyBatch, "empty trajectory batch");
  const std::vector<Sample> samples = build_samples(batch, config.gamma);
  PolicyModel& model = state.model;
  const double scale = model.config.value_scale;
  const double eps = config.clip_epsilon;

  UpdateStats stats;
  std::size_t seen = 0;
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto mb = static_cast<std::size_t>(config.minibatch_size);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += mb) {
      const std::size_t end = std::min(order.size(), start + mb);
      const bool first_pass = epoch == 0 && start == 0;
      ModelGradients grads(model);
      for (std::size_t k = start; k < end; ++k) {
        const Sample& s = samples[order[k]];
        const TrajectoryStep& step = *s.step;
        const ModelPass pass = run_model(model, step.state);
        const ActionDistribution dist = action_distribution(pass.logits, step.bounds);
        const int a = to_int(step.action);
        const double logp = log_prob_of(dist, a);
        const double ratio = std::exp(logp - step.log_prob);
        if (first_pass) stats.first_pass_ratio_error = std::max(stats.first_pass_ratio_error, std::abs(ratio - 1.0));

        double dlogp = 0.0;
        if (clipped) {
          const double clipped_ratio = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
          stats.policy_loss += -std::min(ratio * s.advantage, clipped_ratio * s.advantage);
          const bool flat = (s.advantage >= 0.0 && ratio > 1.0 + eps) || (s.advantage < 0.0 && ratio < 1.0 - eps);
          dlogp = flat ? 0.0 : -s.advantage * ratio;
        } else {
          stats.policy_loss += -s.advantage * logp;
          dlogp = -s.advantage;
        }

        double entropy = 0.0;
        std::array<double, 2> logpi{};
        for (int z = 0; z < 2; ++z) {
          logpi[z] = log_prob_of(dist, z);
          entropy -= dist.probs[z] * logpi[z];
        }
        stats.entropy += entropy;

        std::array<double, 2> dlogits{};
        for (int z = 0; z < 2; ++z) {
          const double g = dlogp * ((z == a ? 1.0 : 0.0) - dist.probs[z]) +
                           config.entropy_coef * dist.probs[z] * (logpi[z] + entropy);
          dlogits[z] = dist.clamped[z] ? 0.0 : g;
        }
        const double verr = (pass.value - s.ret) / scale;
        stats.value_loss += verr * verr;
        const double dvalue = 2.0 * config.value_coef * verr / scale;
        backprop_model(model, pass, dlogits, dvalue, grads);
      }
      grads.scale(1.0 / static_cast<double>(end - start));
      nn::optimize_step(state.encoder_opt, model.encoder, grads.encoder);
      nn::optimize_step(state.policy_opt, model.policy_head, grads.policy_head);
      nn::optimize_step(state.value_opt, model.value_head, grads.value_head);
      seen += end - start;
      ++stats.minibatches;
    }
  }
  const double n = static_cast<double>(seen);
  stats.policy_loss /= n;
  stats.value_loss /= n;
  stats.entropy /= n;
  return stats;
}

}  // namespace

UpdateStats ppo_update(TrainState& state, std::span<const Trajectory> batch, const LearnerConfig& config, Rng& rng) {
  return policy_gradient_update(state, batch, config, rng, true, config.epochs);
}

UpdateStats a2c_update(TrainState& state, std::span<const Trajectory> batch, const LearnerConfig& config, Rng& rng) {
  return policy_gradient_update(state, batch, config, rng, false, 1);
}

TrainingResult train(const TrainingOptions& options, std::span<const std::shared_ptr<const BongardProblem>> problems,
                     std::uint64_t seed, const BatchCallback& on_batch) {
  validate(options.env);
  LearnerConfig learner = options.learner;
  learner.gamma = options.env.gamma;
  validate(learner);
  if (problems.empty()) throw Error(ErrorCode::ConfigError, "no training problems");
  if (options.episodes < 0) throw Error(ErrorCode::ConfigError, "episode count must be non-negative");

  PolicyConfig policy = options.policy;
  policy.image_side = options.env.image_side;
  policy.value_scale = options.env.episode_length / 2.0;

  TrainingResult result;
  result.state = TrainState(PolicyModel(policy, derive_seed(seed, 10)), learner.learning_rate);
  BoundsSource bounds(learner.bounds_mode, options.min_samples, options.extended);
  Rng episode_rng(derive_seed(seed, 11));
  Rng action_rng(derive_seed(seed, 12));
  Rng update_rng(derive_seed(seed, 13));
  const PolicyFn policy_fn = model_policy(result.state.model);

  std::vector<Trajectory> batch;
  for (int episode = 0; episode < options.episodes; ++episode) {
    const auto index = static_cast<std::size_t>(episode_rng.uniform_int(0, static_cast<std::int64_t>(problems.size()) - 1));
    const std::uint64_t env_seed = episode_rng.next_u64();
    EpisodeState ep = reset(problems[index], options.env, env_seed);
    batch.push_back(collect_episode(ep, policy_fn, &bounds, action_rng));

    if (static_cast<int>(batch.size()) == learner.episodes_per_batch || episode + 1 == options.episodes) {
      const UpdateStats stats = learner.algorithm == Algorithm::Ppo
                                    ? ppo_update(result.state, batch, learner, update_rng)
                                    : a2c_update(result.state, batch, learner, update_rng);
      const std::size_t first = result.metrics.size();
      for (std::size_t b = 0; b < batch.size(); ++b) {
        EpisodeMetrics m;
        m.episode = episode - static_cast<int>(batch.size()) + 1 + static_cast<int>(b);
        m.problem_id = batch[b].problem_id;
        m.steps = static_cast<int>(batch[b].steps.size());
        m.raw_return = batch[b].raw_return;
        m.discounted_return = batch[b].discounted_return;
        m.policy_loss = stats.policy_loss;
        m.value_loss = stats.value_loss;
        m.entropy = stats.entropy;
        m.bounds_active = batch[b].bounds_active;
        result.metrics.push_back(m);
      }
      if (on_batch) on_batch(std::span<const EpisodeMetrics>(result.metrics).subspan(first));
      batch.clear();
    }
  }
  return result;
}

Action greedy_action(const PolicyModel& model, const PairState& state) {
  const ModelPass pass = run_model(model, state);
  return pass.logits[1] > pass.logits[0] ? Action::Different : Action::Same;
}

nlohmann::json checkpoint_to_json(const TrainState& state) {
  const PolicyConfig& c = state.model.config;
  return nlohmann::json{
      {"format_version", kCheckpointFormatVersion},
      {"policy",
       {{"encoder", std::string(to_string(c.encoder))},
        {"image_side", c.image_side},
        {"feature_dim", c.feature_dim},
        {"hidden_dim", c.hidden_dim},
        {"value_scale", c.value_scale}}},
      {"encoder", nn::to_json(state.model.encoder)},
      {"policy_head", nn::to_json(state.model.policy_head)},
      {"value_head", nn::to_json(state.model.value_head)},
      {"optimizers",
       {{"encoder", nn::to_json(state.encoder_opt)},
        {"policy_head", nn::to_json(state.policy_opt)},
        {"value_head", nn::to_json(state.value_opt)}}},
  };
}

TrainState checkpoint_from_json(const nlohmann::json& j) {
  if (!j.contains("format_version") || j.at("format_version").get<int>() != kCheckpointFormatVersion) {
    throw Error(ErrorCode::CheckpointVersionMismatch,
                "expected checkpoint format_version " + std::to_string(kCheckpointFormatVersion));
  }
  try {
    const auto& p = j.at("policy");
    PolicyConfig c;
    c.encoder = encoder_from_string(p.at("encoder").get<std::string>());
    c.image_side = p.at("image_side").get<int>();
    c.feature_dim = p.at("feature_dim").get<int>();
    c.hidden_dim = p.at("hidden_dim").get<int>();
    c.value_scale = p.at("value_scale").get<double>();
    TrainState state;
    state.model.config = c;
    state.model.encoder = nn::network_from_json(j.at("encoder"));
    state.model.policy_head = nn::network_from_json(j.at("policy_head"));
    state.model.value_head = nn::network_from_json(j.at("value_head"));
    const auto& o = j.at("optimizers");
    state.encoder_opt = nn::optimizer_from_json(o.at("encoder"));
    state.policy_opt = nn::optimizer_from_json(o.at("policy_head"));
    state.value_opt = nn::optimizer_from_json(o.at("value_head"));
    const int pixels = c.image_side * c.image_side;
    const int expected_in = c.encoder == EncoderKind::Mlp ? 2 * pixels : pixels;
    if (state.model.encoder.input_dim() != expected_in || state.model.encoder.output_dim() != c.feature_dim ||
        state.model.policy_head.output_dim() != 2 || state.model.value_head.output_dim() != 1) {
      throw Error(ErrorCode::MalformedFormat, "checkpoint networks do not match the policy description");
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFormat, std::string("checkpoint: ") + e.what());
  }
}

}  // namespace bongard
