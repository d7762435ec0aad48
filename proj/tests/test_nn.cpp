#include <cmath>

#include "bongard/error.hpp"
#include "bongard/nn.hpp"
#include "bongard/rng.hpp"
#include "test_util.hpp"

using namespace bongard;
using namespace bongard::nn;

namespace {

std::vector<double> random_input(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  return x;
}

// 0.5 * |y - t|^2 with t = 0.1 * k.
double squared_error(std::span<const double> y, std::span<double> grad) {
  double loss = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double d = y[k] - 0.1 * static_cast<double>(k);
    loss += 0.5 * d * d;
    grad[k] = d;
  }
  return loss;
}

}  // namespace

TEST_CASE("forward of a single identity layer is an affine map") {
  Network net({{3, 2, Activation::Identity}}, 4);
  const auto w = net.weights(0);
  const auto b = net.biases(0);
  const std::vector<double> x{0.5, -1.0, 2.0};
  const ForwardCache cache = forward(net, x);
  for (int o = 0; o < 2; ++o) {
    // Row-major in x out: weight (i, o) at i * out + o.
    double expect = b[static_cast<std::size_t>(o)];
    for (int i = 0; i < 3; ++i) expect += x[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i * 2 + o)];
    CHECK(cache.output()[static_cast<std::size_t>(o)] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("initialization stays within the fan-in range") {
  Network net({{25, 10, Activation::Tanh}, {10, 4, Activation::Identity}}, 9);
  for (std::size_t l = 0; l < 2; ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(net.layers()[l].in_dim));
    for (double v : net.weights(l)) CHECK(std::abs(v) <= bound);
    for (double v : net.biases(l)) CHECK(std::abs(v) <= bound);
  }
  Network same({{25, 10, Activation::Tanh}, {10, 4, Activation::Identity}}, 9);
  CHECK(std::equal(net.params().begin(), net.params().end(), same.params().begin()));
}

TEST_CASE("gradients match central differences for every activation") {
  for (Activation hidden : {Activation::Tanh, Activation::Relu, Activation::Identity}) {
    CAPTURE(to_string(hidden));
    Network net({{6, 5, hidden}, {5, 3, Activation::Tanh}}, 21);
    const auto x = random_input(6, 3);
    const GradCheckReport r = grad_check(net, x, squared_error);
    CHECK(r.coordinates_checked == net.param_count());
    CHECK(r.max_relative_error <= 1e-6);
  }
}

TEST_CASE("softmax output layer with cross-entropy") {
  Network net({{4, 6, Activation::Tanh}, {6, 3, Activation::Softmax}}, 5);
  const auto x = random_input(4, 8);
  auto ce = [](std::span<const double> y, std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    grad[1] = -1.0 / y[1];
    return -std::log(y[1]);
  };
  const GradCheckReport r = grad_check(net, x, ce);
  CHECK(r.max_relative_error <= 1e-6);
  const ForwardCache cache = forward(net, x);
  double total = 0;
  for (double p : cache.output()) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("input gradients and sparse inputs") {
  Network net({{8, 4, Activation::Tanh}, {4, 2, Activation::Identity}}, 2);
  std::vector<double> x(8, 0.0);
  x[1] = 1.0;
  x[6] = 1.0;
  const ForwardCache cache = forward(net, x);
  std::vector<double> grad_out(2);
  squared_error(cache.output(), grad_out);
  std::vector<double> param_grad(net.param_count(), 0.0);
  const auto dx = backward(net, cache, grad_out, param_grad);
  REQUIRE(dx.size() == 8);
  const double h = 1e-6;
  for (std::size_t i = 0; i < 8; ++i) {
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    std::vector<double> g(2);
    const double numeric = (squared_error(forward(net, xp).output(), g) - squared_error(forward(net, xm).output(), g)) /
                           (2 * h);
    CHECK(dx[i] == doctest::Approx(numeric).epsilon(1e-6));
  }
}

TEST_CASE("stale caches and shape errors") {
  Network net({{3, 2, Activation::Tanh}}, 1);
  const ForwardCache cache = forward(net, std::vector<double>{1, 2, 3});
  net.mutable_params()[0] += 0.1;
  const std::vector<double> g{1.0, 1.0};
  CHECK_ERROR_CODE(backward(net, cache, g), ErrorCode::StaleCache);
  CHECK_ERROR_CODE(forward(net, std::vector<double>{1, 2}), ErrorCode::DimensionMismatch);
  CHECK_ERROR_CODE(Network({{3, 2, Activation::Softmax}, {2, 2, Activation::Identity}}, 0), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(Network({{3, 2, Activation::Tanh}, {3, 2, Activation::Identity}}, 0), ErrorCode::DimensionMismatch);
  OptimizerState opt = make_optimizer(net.param_count());
  CHECK_ERROR_CODE(optimize_step(opt, net, std::vector<double>(3, 0.0)), ErrorCode::ShapeMismatch);
}

TEST_CASE("sgd on a quadratic decays geometrically") {
  // f(w) = 0.5 w^2, lr 0.2: w_t = 0.8^t w_0.
  std::vector<double> w{3.0, -1.5};
  OptimizerState opt = make_optimizer(2, OptimizerKind::Sgd, 0.2);
  for (int t = 1; t <= 25; ++t) {
    const std::vector<double> g = w;
    optimize_step(opt, w, g);
    CHECK(w[0] == doctest::Approx(3.0 * std::pow(0.8, t)).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(-1.5 * std::pow(0.8, t)).epsilon(1e-12));
  }
  CHECK(opt.step == 25);
}

TEST_CASE("adam minimizes a quadratic") {
  std::vector<double> w{2.0, -3.0, 0.5};
  OptimizerState opt = make_optimizer(3, OptimizerKind::Adam, 0.05);
  for (int t = 0; t < 2000; ++t) {
    const std::vector<double> g = w;
    optimize_step(opt, w, g);
  }
  for (double v : w) CHECK(std::abs(v) < 1e-2);
}

TEST_CASE("network and optimizer json round trip") {
  Network net({{5, 3, Activation::Relu}, {3, 2, Activation::Softmax}}, 12);
  const Network back = network_from_json(to_json(net));
  CHECK(std::equal(net.params().begin(), net.params().end(), back.params().begin(), back.params().end()));
  CHECK(back.layers()[1].activation == Activation::Softmax);

  OptimizerState opt = make_optimizer(net.param_count(), OptimizerKind::Adam, 1e-3);
  optimize_step(opt, net, std::vector<double>(net.param_count(), 0.5));
  const OptimizerState o2 = optimizer_from_json(to_json(opt));
  CHECK(o2.step == 1);
  CHECK(o2.m == opt.m);
  CHECK(o2.v == opt.v);
  CHECK(o2.lr == opt.lr);

  nlohmann::json bad = to_json(net);
  bad["params"].erase(0);
  CHECK_ERROR_CODE(network_from_json(bad), ErrorCode::MalformedFormat);
}

TEST_CASE("grad_check samples large parameter vectors") {
  Network net({{80, 64, Activation::Tanh}, {64, 2, Activation::Identity}}, 3);
  const auto x = random_input(80, 4);
  GradCheckOptions opt;
  opt.exhaustive_limit = 1000;
  opt.sample_size = 100;
  const GradCheckReport r = grad_check(net, x, squared_error, opt);
  CHECK(r.coordinates_checked == 100);
  CHECK(r.max_relative_error <= 1e-6);
}
