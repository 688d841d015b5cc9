#pragma once

/**
 * @file network.hpp
 * @brief Shallow tanh feed-forward networks with a flat parameter vector.
 *
 * Parameters are stored layer by layer. Every layer (hidden or output) is a
 * fan_out x (fan_in + 1) row-major block: each neuron's input weights
 * followed by its bias. For the single-hidden-layer case this is
 * (nu_1, eta_1, ..., nu_H, eta_H, rho_1, ..., rho_H, gamma).
 */

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gridlab/errors.hpp"
#include "gridlab/jet.hpp"

namespace gridlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct NetLayout {
  int input_dim = 1;
  std::vector<int> hidden_widths{100};

  /// Throws ConfigError unless input_dim is 1 or 2 and there are 1-2 positive widths.
  void validate() const;
  int depth() const { return static_cast<int>(hidden_widths.size()); }
  Eigen::Index param_count() const;

  /// "100" or "50x50".
  std::string widths_string() const;
  static NetLayout parse(int input_dim, const std::string& widths);

  bool operator==(const NetLayout&) const = default;
};

/// Offset and shape of one layer's parameter block inside theta.
struct LayerBlock {
  Eigen::Index offset;
  int fan_in;
  int fan_out;
  Eigen::Index size() const { return static_cast<Eigen::Index>(fan_out) * (fan_in + 1); }
};

/// Hidden layers first, output layer last.
std::vector<LayerBlock> layer_blocks(const NetLayout& layout);

struct ShallowNet {
  NetLayout layout;
  Vector theta;

  ShallowNet() = default;
  ShallowNet(NetLayout layout, Vector theta);

  static ShallowNet zeros(const NetLayout& layout);

  using BlockMap = Eigen::Map<const RowMatrix>;
  /// fan_out x (fan_in + 1) view of a layer; the last column holds the biases.
  BlockMap block(const LayerBlock& b) const { return {theta.data() + b.offset, b.fan_out, b.fan_in + 1}; }
};

/// Glorot-uniform weights on [-sqrt(6/(fan_in+fan_out)), +...], zero biases.
ShallowNet init_glorot(const NetLayout& layout, std::uint64_t seed);

/// Single-point evaluation generic over the scalar (double or Jet2).
template <class Scalar>
Scalar forward_generic(const ShallowNet& net, std::span<const Scalar> x) {
  if (static_cast<int>(x.size()) != net.layout.input_dim)
    throw ConfigError("forward: input has " + std::to_string(x.size()) + " components, network expects " +
                      std::to_string(net.layout.input_dim));
  const auto blocks = layer_blocks(net.layout);
  std::vector<Scalar> in(x.begin(), x.end());
  std::vector<Scalar> out;
  for (std::size_t l = 0; l + 1 < blocks.size(); ++l) {
    const auto& b = blocks[l];
    const double* p = net.theta.data() + b.offset;
    out.assign(static_cast<std::size_t>(b.fan_out), Scalar{});
    for (int j = 0; j < b.fan_out; ++j, p += b.fan_in + 1) {
      Scalar z = Scalar(p[b.fan_in]);
      for (int i = 0; i < b.fan_in; ++i) z += p[i] * in[static_cast<std::size_t>(i)];
      using std::tanh;
      out[static_cast<std::size_t>(j)] = tanh(z);
    }
    in.swap(out);
  }
  const auto& ob = blocks.back();
  const double* p = net.theta.data() + ob.offset;
  Scalar u = Scalar(p[ob.fan_in]);
  for (int i = 0; i < ob.fan_in; ++i) u += p[i] * in[static_cast<std::size_t>(i)];
  return u;
}

double forward(const ShallowNet& net, std::span<const double> x);

/// Value, first and second partial derivative along `axis` at x.
Jet forward_jet(const ShallowNet& net, std::span<const double> x, int axis);

/// Batched value-only evaluation; one column of `points` per input.
Vector forward(const ShallowNet& net, const Matrix& points);

// Checkpoint: "input_dim;w1[,w2]" then one theta component per line, 17 significant digits.
void save_checkpoint(std::ostream& os, const ShallowNet& net);
ShallowNet load_checkpoint(std::istream& is);

}  // namespace gridlab
