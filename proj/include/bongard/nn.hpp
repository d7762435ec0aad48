#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bongard::nn {

enum class Activation : std::uint8_t { Identity, Tanh, Relu, Softmax };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);

struct LayerSpec {
  int in_dim = 0;
  int out_dim = 0;
  Activation activation = Activation::Identity;
};

/// A dense layer's slice of the network's flat parameter vector: in_dim x
/// out_dim row-major weights followed by out_dim biases.
struct DenseLayer {
  int in_dim = 0;
  int out_dim = 0;
  Activation activation = Activation::Identity;
  std::size_t offset = 0;

  std::size_t weight_count() const { return static_cast<std::size_t>(in_dim) * static_cast<std::size_t>(out_dim); }
  std::size_t param_count() const { return weight_count() + static_cast<std::size_t>(out_dim); }
};

/// Sequential stack of dense layers over one contiguous parameter vector.
/// Every mutable access bumps `version`, which invalidates older caches.
class Network {
 public:
  Network() = default;
  /// Fan-in uniform init in [-1/sqrt(in), 1/sqrt(in)] for weights and biases.
  Network(const std::vector<LayerSpec>& specs, std::uint64_t seed);

  int input_dim() const { return layers_.front().in_dim; }
  int output_dim() const { return layers_.back().out_dim; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<LayerSpec> specs() const;

  std::size_t param_count() const { return params_.size(); }
  std::span<const double> params() const { return params_; }
  std::span<double> mutable_params() {
    ++version_;
    return params_;
  }
  std::span<const double> weights(std::size_t layer) const;
  std::span<const double> biases(std::size_t layer) const;
  std::uint64_t version() const { return version_; }

 private:
  std::vector<DenseLayer> layers_;
  std::vector<double> params_;
  std::uint64_t version_ = 0;
};

/// activations[0] is the input, activations[l + 1] the output of layer l.
struct ForwardCache {
  std::uint64_t version = 0;
  std::vector<std::vector<double>> activations;

  std::span<const double> output() const { return activations.back(); }
};

ForwardCache forward(const Network& net, std::span<const double> input);

/// Accumulates d(loss)/d(params) into `param_grad` given d(loss)/d(output),
/// and returns d(loss)/d(input) (empty when `want_input_grad` is false).
/// Throws StaleCache when the network changed since `cache` was built.
std::vector<double> backward(const Network& net, const ForwardCache& cache, std::span<const double> output_grad,
                             std::span<double> param_grad, bool want_input_grad = true);

/// Convenience form returning fresh parameter gradients.
std::vector<double> backward(const Network& net, const ForwardCache& cache, std::span<const double> output_grad);

enum class OptimizerKind : std::uint8_t { Adam, Sgd };

struct OptimizerState {
  OptimizerKind kind = OptimizerKind::Adam;
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t step = 0;
  std::vector<double> m;
  std::vector<double> v;
};

OptimizerState make_optimizer(std::size_t param_count, OptimizerKind kind = OptimizerKind::Adam, double lr = 3e-4);

/// In-place update. Throws ShapeMismatch when sizes disagree.
void optimize_step(OptimizerState& state, std::span<double> params, std::span<const double> grads);
void optimize_step(OptimizerState& state, Network& net, std::span<const double> grads);

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t coordinates_checked = 0;
};

struct GradCheckOptions {
  double step = 1e-5;
  /// Below this many parameters every coordinate is checked; above, a seeded
  /// sample of `sample_size` coordinates.
  std::size_t exhaustive_limit = 4096;
  std::size_t sample_size = 256;
  std::uint64_t seed = 0;
  /// |a - n| / max(|a|, |n|, floor).
  double floor = 1e-6;
};

/// Central-difference check of `analytic` against `loss`, perturbing `params`
/// in place (values restored afterwards).
GradCheckReport grad_check(std::span<double> params, const std::function<double()>& loss,
                           std::span<const double> analytic, const GradCheckOptions& options = {});

/// Loss of a network output; writes d(loss)/d(output) into `grad`.
using LossFn = std::function<double(std::span<const double> output, std::span<double> grad)>;

GradCheckReport grad_check(Network& net, std::span<const double> input, const LossFn& loss,
                           const GradCheckOptions& options = {});

nlohmann::json to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OptimizerState& state);
OptimizerState optimizer_from_json(const nlohmann::json& j);

}  // namespace bongard::nn
