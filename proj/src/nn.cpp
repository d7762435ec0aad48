#include "bongard/nn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bongard/error.hpp"
#include "bongard/kernels.hpp"
#include "bongard/rng.hpp"

namespace bongard::nn {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Identity: return "identity";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
    case Activation::Softmax: return "softmax";
  }
  return "identity";
}

Activation activation_from_string(std::string_view name) {
  if (name == "identity") return Activation::Identity;
  if (name == "tanh") return Activation::Tanh;
  if (name == "relu") return Activation::Relu;
  if (name == "softmax") return Activation::Softmax;
  throw Error(ErrorCode::MalformedFormat, "unknown activation '" + std::string(name) + "'");
}

Network::Network(const std::vector<LayerSpec>& specs, std::uint64_t seed) {
  if (specs.empty()) throw Error(ErrorCode::InvalidArgument, "network needs at least one layer");
  std::size_t offset = 0;
  for (std::size_t l = 0; l < specs.size(); ++l) {
    const LayerSpec& s = specs[l];
    if (s.in_dim <= 0 || s.out_dim <= 0) throw Error(ErrorCode::InvalidArgument, "layer dimensions must be positive");
    if (l > 0 && specs[l - 1].out_dim != s.in_dim) {
      throw Error(ErrorCode::DimensionMismatch, "adjacent layer dimensions do not chain");
    }
    if (s.activation == Activation::Softmax && l + 1 != specs.size()) {
      throw Error(ErrorCode::InvalidArgument, "softmax is only allowed on the final layer");
    }
    DenseLayer layer{s.in_dim, s.out_dim, s.activation, offset};
    offset += layer.param_count();
    layers_.push_back(layer);
  }
  params_.resize(offset);
  Rng rng(seed);
  for (const DenseLayer& layer : layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in_dim));
    for (std::size_t k = 0; k < layer.param_count(); ++k) params_[layer.offset + k] = rng.uniform(-bound, bound);
  }
}

std::vector<LayerSpec> Network::specs() const {
  std::vector<LayerSpec> out;
  for (const DenseLayer& l : layers_) out.push_back(LayerSpec{l.in_dim, l.out_dim, l.activation});
  return out;
}

std::span<const double> Network::weights(std::size_t layer) const {
  const DenseLayer& l = layers_.at(layer);
  return std::span<const double>(params_).subspan(l.offset, l.weight_count());
}

std::span<const double> Network::biases(std::size_t layer) const {
  const DenseLayer& l = layers_.at(layer);
  return std::span<const double>(params_).subspan(l.offset + l.weight_count(), static_cast<std::size_t>(l.out_dim));
}

namespace {

void apply_activation(Activation act, std::span<double> y) {
  switch (act) {
    case Activation::Identity: break;
    case Activation::Tanh:
      for (double& v : y) v = std::tanh(v);
      break;
    case Activation::Relu:
      for (double& v : y) v = std::max(0.0, v);
      break;
    case Activation::Softmax: {
      const double peak = *std::max_element(y.begin(), y.end());
      double total = 0.0;
      for (double& v : y) total += (v = std::exp(v - peak));
      for (double& v : y) v /= total;
      break;
    }
  }
}

/// Gradient with respect to pre-activations, given the activated output y.
void activation_backward(Activation act, std::span<const double> y, std::span<double> g) {
  switch (act) {
    case Activation::Identity: break;
    case Activation::Tanh:
      for (std::size_t k = 0; k < g.size(); ++k) g[k] *= 1.0 - y[k] * y[k];
      break;
    case Activation::Relu:
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = y[k] > 0.0 ? g[k] : 0.0;
      break;
    case Activation::Softmax: {
      double gy = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k) gy += g[k] * y[k];
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = y[k] * (g[k] - gy);
      break;
    }
  }
}

}  // namespace

ForwardCache forward(const Network& net, std::span<const double> input) {
  if (static_cast<int>(input.size()) != net.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "input length " + std::to_string(input.size()) + " != " +
                                                  std::to_string(net.input_dim()));
  }
  ForwardCache cache;
  cache.version = net.version();
  cache.activations.reserve(net.layers().size() + 1);
  cache.activations.emplace_back(input.begin(), input.end());
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    const DenseLayer& layer = net.layers()[l];
    const std::span<const double> w = net.weights(l);
    const std::span<const double> b = net.biases(l);
    std::vector<double> y(b.begin(), b.end());
    const std::vector<double>& x = cache.activations.back();
    const auto out = static_cast<std::size_t>(layer.out_dim);
    for (std::size_t i = 0; i < x.size(); ++i) {
      // Binary image inputs are mostly zero.
      if (x[i] != 0.0) kernels::axpy(x[i], w.subspan(i * out, out), y);
    }
    apply_activation(layer.activation, y);
    cache.activations.push_back(std::move(y));
  }
  return cache;
}

std::vector<double> backward(const Network& net, const ForwardCache& cache, std::span<const double> output_grad,
                             std::span<double> param_grad, bool want_input_grad) {
  if (cache.version != net.version() || cache.activations.size() != net.layers().size() + 1) {
    throw Error(ErrorCode::StaleCache, "cache was built for a different parameter version");
  }
  if (static_cast<int>(output_grad.size()) != net.output_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "output gradient has the wrong length");
  }
  if (param_grad.size() != net.param_count()) throw Error(ErrorCode::ShapeMismatch, "gradient buffer size");
  std::vector<double> g(output_grad.begin(), output_grad.end());
  for (std::size_t l = net.layers().size(); l-- > 0;) {
    const DenseLayer& layer = net.layers()[l];
    const std::vector<double>& x = cache.activations[l];
    activation_backward(layer.activation, cache.activations[l + 1], g);
    const auto out = static_cast<std::size_t>(layer.out_dim);
    std::span<double> dw = param_grad.subspan(layer.offset, layer.weight_count());
    std::span<double> db = param_grad.subspan(layer.offset + layer.weight_count(), out);
    for (std::size_t k = 0; k < out; ++k) db[k] += g[k];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) kernels::axpy(x[i], g, dw.subspan(i * out, out));
    }
    if (l == 0 && !want_input_grad) return {};
    const std::span<const double> w = net.weights(l);
    std::vector<double> dx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dx[i] = kernels::dot(w.subspan(i * out, out), g);
    g = std::move(dx);
  }
  return g;
}

std::vector<double> backward(const Network& net, const ForwardCache& cache, std::span<const double> output_grad) {
  std::vector<double> grads(net.param_count(), 0.0);
  backward(net, cache, output_grad, grads, false);
  return grads;
}

OptimizerState make_optimizer(std::size_t param_count, OptimizerKind kind, double lr) {
  OptimizerState s;
  s.kind = kind;
  s.lr = lr;
  if (kind == OptimizerKind::Adam) {
    s.m.assign(param_count, 0.0);
    s.v.assign(param_count, 0.0);
  }
  return s;
}

void optimize_step(OptimizerState& state, std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size()) throw Error(ErrorCode::ShapeMismatch, "parameter and gradient sizes differ");
  if (state.kind == OptimizerKind::Sgd) {
    kernels::axpy(-state.lr, grads, params);
    ++state.step;
    return;
  }
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw Error(ErrorCode::ShapeMismatch, "optimizer moments do not match parameters");
  }
  ++state.step;
  kernels::AdamCoefficients c;
  c.lr = state.lr;
  c.beta1 = state.beta1;
  c.beta2 = state.beta2;
  c.eps = state.eps;
  c.bias_correction1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  c.bias_correction2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  kernels::active().adam(params.data(), state.m.data(), state.v.data(), grads.data(), params.size(), c);
}

void optimize_step(OptimizerState& state, Network& net, std::span<const double> grads) {
  optimize_step(state, net.mutable_params(), grads);
}

GradCheckReport grad_check(std::span<double> params, const std::function<double()>& loss,
                           std::span<const double> analytic, const GradCheckOptions& options) {
  if (params.size() != analytic.size()) throw Error(ErrorCode::ShapeMismatch, "analytic gradient size");
  std::vector<std::size_t> coords(params.size());
  std::iota(coords.begin(), coords.end(), std::size_t{0});
  if (params.size() > options.exhaustive_limit) {
    Rng rng(options.seed);
    rng.shuffle(std::span<std::size_t>(coords));
    coords.resize(std::min(coords.size(), options.sample_size));
    std::sort(coords.begin(), coords.end());
  }
  GradCheckReport report;
  for (std::size_t idx : coords) {
    const double saved = params[idx];
    params[idx] = saved + options.step;
    const double plus = loss();
    params[idx] = saved - options.step;
    const double minus = loss();
    params[idx] = saved;
    const double numeric = (plus - minus) / (2.0 * options.step);
    const double a = analytic[idx];
    const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), options.floor});
    if (report.coordinates_checked == 0 || rel > report.max_relative_error) {
      report.max_relative_error = rel;
      report.worst_index = idx;
    }
    ++report.coordinates_checked;
  }
  return report;
}

GradCheckReport grad_check(Network& net, std::span<const double> input, const LossFn& loss,
                           const GradCheckOptions& options) {
  const auto evaluate = [&](std::vector<double>* grad_out) {
    const ForwardCache cache = forward(net, input);
    std::vector<double> g(cache.output().size(), 0.0);
    const double value = loss(cache.output(), g);
    if (grad_out != nullptr) *grad_out = backward(net, cache, g);
    return value;
  };
  std::vector<double> analytic;
  evaluate(&analytic);
  std::span<double> params = net.mutable_params();
  return grad_check(params, [&] { return evaluate(nullptr); }, analytic, options);
}

nlohmann::json to_json(const Network& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const DenseLayer& l : net.layers()) {
    layers.push_back({{"in", l.in_dim}, {"out", l.out_dim}, {"activation", std::string(to_string(l.activation))}});
  }
  return nlohmann::json{{"layers", layers}, {"params", std::vector<double>(net.params().begin(), net.params().end())}};
}

Network network_from_json(const nlohmann::json& j) {
  std::vector<LayerSpec> specs;
  for (const auto& l : j.at("layers")) {
    specs.push_back(LayerSpec{l.at("in").get<int>(), l.at("out").get<int>(),
                              activation_from_string(l.at("activation").get<std::string>())});
  }
  Network net(specs, 0);
  const auto params = j.at("params").get<std::vector<double>>();
  if (params.size() != net.param_count()) throw Error(ErrorCode::MalformedFormat, "parameter count mismatch");
  std::span<double> dst = net.mutable_params();
  std::copy(params.begin(), params.end(), dst.begin());
  return net;
}

nlohmann::json to_json(const OptimizerState& s) {
  return nlohmann::json{{"kind", s.kind == OptimizerKind::Adam ? "adam" : "sgd"},
                        {"lr", s.lr},
                        {"beta1", s.beta1},
                        {"beta2", s.beta2},
                        {"eps", s.eps},
                        {"step", s.step},
                        {"m", s.m},
                        {"v", s.v}};
}

OptimizerState optimizer_from_json(const nlohmann::json& j) {
  OptimizerState s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "adam" && kind != "sgd") throw Error(ErrorCode::MalformedFormat, "unknown optimizer kind");
  s.kind = kind == "adam" ? OptimizerKind::Adam : OptimizerKind::Sgd;
  s.lr = j.at("lr").get<double>();
  s.beta1 = j.at("beta1").get<double>();
  s.beta2 = j.at("beta2").get<double>();
  s.eps = j.at("eps").get<double>();
  s.step = j.at("step").get<std::uint64_t>();
  s.m = j.at("m").get<std::vector<double>>();
  s.v = j.at("v").get<std::vector<double>>();
  return s;
}

}  // namespace bongard::nn
