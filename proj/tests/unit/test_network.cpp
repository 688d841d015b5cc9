#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gridlab/network.hpp"
#include "oracles.hpp"

using namespace gridlab;

namespace {

ShallowNet single_neuron(double gamma) {
  // (nu, eta, rho, gamma)
  Vector theta(4);
  theta << 1.0, 0.0, 1.0, gamma;
  return {NetLayout{1, {1}}, theta};
}

ShallowNet random_net(const NetLayout& layout, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> U(-scale, scale);
  Vector theta(layout.param_count());
  for (auto& t : theta) t = U(rng);
  return {layout, theta};
}

}  // namespace

TEST_CASE("parameter counting") {
  CHECK(NetLayout{2, {50, 50}}.param_count() == 2751);
  CHECK(NetLayout{1, {100}}.param_count() == 301);
  CHECK(NetLayout{1, {5}}.param_count() == 16);
}

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(NetLayout({3, {10}}).validate(), ConfigError);
  CHECK_THROWS_AS(NetLayout({1, {}}).validate(), ConfigError);
  CHECK_THROWS_AS(NetLayout({1, {1, 2, 3}}).validate(), ConfigError);
  CHECK_THROWS_AS(NetLayout({1, {0}}).validate(), ConfigError);
  CHECK(NetLayout::parse(2, "50x50") == NetLayout{2, {50, 50}});
  CHECK(NetLayout::parse(1, "100").widths_string() == "100");
  CHECK_THROWS_AS(NetLayout::parse(1, "50y"), ConfigError);
  CHECK_THROWS_AS(ShallowNet(NetLayout{1, {2}}, Vector::Zero(3)), ConfigError);
}

TEST_CASE("glorot initialisation") {
  const NetLayout layout{1, {100}};
  const ShallowNet a = init_glorot(layout, 42);
  const ShallowNet b = init_glorot(layout, 42);
  CHECK(a.theta == b.theta);
  CHECK(a.theta != init_glorot(layout, 43).theta);

  const double hidden_limit = std::sqrt(6.0 / 101.0);
  const double out_limit = std::sqrt(6.0 / 101.0);
  for (int j = 0; j < 100; ++j) {
    CHECK(std::abs(a.theta[2 * j]) <= hidden_limit);
    CHECK(a.theta[2 * j + 1] == 0.0);
  }
  for (int j = 0; j < 100; ++j) CHECK(std::abs(a.theta[200 + j]) <= out_limit);
  CHECK(a.theta[300] == 0.0);

  const NetLayout deep{2, {50, 50}};
  const ShallowNet d = init_glorot(deep, 7);
  for (const auto& blk : layer_blocks(deep)) {
    const double limit = std::sqrt(6.0 / (blk.fan_in + blk.fan_out));
    const auto m = d.block(blk);
    CHECK(m.leftCols(blk.fan_in).cwiseAbs().maxCoeff() <= limit);
    CHECK(m.col(blk.fan_in).isZero(0.0));
  }
}

TEST_CASE("forward examples") {
  const double x0[] = {0.3};
  CHECK(forward(ShallowNet::zeros({1, {100}}), x0) == 0.0);
  const double xy[] = {0.3, -0.7};
  CHECK(forward(ShallowNet::zeros({2, {50, 50}}), xy) == 0.0);

  const double t0[] = {0.0};
  volatile double eight_tenths = 0.8;
  const double t1[] = {eight_tenths};
  CHECK(forward(single_neuron(0.0), t0) == 0.0);
  CHECK(forward(single_neuron(0.0), t1) == std::tanh(t1[0]));
  CHECK(forward(single_neuron(2.0), t0) == 2.0);
  CHECK_THROWS_AS(forward(single_neuron(0.0), xy), ConfigError);
}

TEST_CASE("forward equals a direct summation of the one-layer formula") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int h = 1 + trial % 17;
    const ShallowNet net = random_net({1, {h}}, rng);
    const double t = U(rng);
    const double* th = net.theta.data();
    double sum = 0.0;
    for (int j = 0; j < h; ++j) sum += th[2 * h + j] * std::tanh(th[2 * j] * t + th[2 * j + 1]);
    sum += th[3 * h];
    const double x[] = {t};
    CHECK(std::abs(forward(net, x) - sum) < 1e-12);
  }
}

TEST_CASE("forward_jet") {
  const double t0[] = {0.0};
  CHECK(forward_jet(single_neuron(0.0), t0, 0) == Jet(0.0, 1.0, 0.0));
  CHECK(forward_jet(ShallowNet::zeros({1, {8}}), t0, 0) == Jet(0.0, 0.0, 0.0));
  CHECK_THROWS_AS(forward_jet(single_neuron(0.0), t0, 1), ConfigError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (const NetLayout& layout : {NetLayout{1, {8}}, NetLayout{2, {8}}, NetLayout{2, {6, 6}}}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ShallowNet net = random_net(layout, rng);
      std::vector<double> x(static_cast<std::size_t>(layout.input_dim));
      for (auto& xi : x) xi = U(rng);
      for (int axis = 0; axis < layout.input_dim; ++axis) {
        const Jet j = forward_jet(net, x, axis);
        CHECK(j.v == forward(net, x));  // bit-identical
        const auto fd = testing::finite_difference_derivatives(net, x, axis);
        CHECK(testing::relative_error(j.d1, fd.d1) < 1e-6);
        CHECK(testing::relative_error(j.d2, fd.d2) < 1e-6);
      }
    }
  }
}

TEST_CASE("output layer homogeneity") {
  std::mt19937_64 rng(5);
  const NetLayout layout{2, {6, 6}};
  const ShallowNet net = random_net(layout, rng);
  ShallowNet scaled = net;
  const auto out = layer_blocks(layout).back();
  scaled.theta.segment(out.offset, out.size()) *= 4.0;
  const double x[] = {0.2, -0.4};
  CHECK(forward(scaled, x) == 4.0 * forward(net, x));
}

TEST_CASE("batched forward is bit-identical to single-point forward") {
  std::mt19937_64 rng(9);
  const ShallowNet net = random_net({2, {7, 5}}, rng);
  Matrix pts = Matrix::Random(2, 30);
  const Vector u = forward(net, pts);
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    const double x[] = {pts(0, i), pts(1, i)};
    CHECK(u[i] == forward(net, x));
  }
}

TEST_CASE("checkpoint round trip") {
  const ShallowNet net = init_glorot({2, {50, 50}}, 42);
  std::stringstream ss;
  save_checkpoint(ss, net);
  CHECK(ss.str().rfind("2;50,50\n", 0) == 0);
  const ShallowNet back = load_checkpoint(ss);
  CHECK(back.layout == net.layout);
  CHECK(back.theta == net.theta);

  std::stringstream bad("1;100\n0.5\n");
  CHECK_THROWS_AS(load_checkpoint(bad), ConfigError);
}
