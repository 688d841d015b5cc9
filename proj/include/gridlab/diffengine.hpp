#pragma once

/**
 * @file diffengine.hpp
 * @brief Batched jets through the network and reverse accumulation over them.
 *
 * record_forward pushes a batch of points through the network carrying, for
 * every activation, its value and its first and second derivatives along
 * each input axis. The record keeps what the reverse pass needs, so
 * accumulate_gradient can pull adjoints of (u, u_k, u_kk) back to theta.
 * This makes loss terms containing u_t, u_tt, u_xx, u_yy differentiable in theta.
 */

#include <utility>
#include <vector>

#include "gridlab/network.hpp"

namespace gridlab {

/// Values and per-axis derivatives of a layer's activations, one column per point.
struct JetBlock {
  Matrix v;
  std::vector<Matrix> d1;
  std::vector<Matrix> d2;
};

struct HiddenTrace {
  JetBlock input;
  Matrix f;  // tanh(z)
  Matrix s;  // 1 - tanh(z)^2
  std::vector<Matrix> z_d1;
  std::vector<Matrix> z_d2;
};

struct ForwardRecord {
  int n_axes = 0;
  std::vector<HiddenTrace> hidden;
  JetBlock last_hidden;
  JetBlock output;  // 1 x N blocks: u, u_k, u_kk

  Eigen::Index n_points() const { return output.v.cols(); }
};

/// Forward pass over `points` (input_dim x N) with derivatives along the
/// first `n_axes` input axes.
ForwardRecord record_forward(const ShallowNet& net, const Matrix& points, int n_axes);

/// Adjoints dL/du, dL/du_k, dL/du_kk per point (1 x N each).
struct OutputSeeds {
  Eigen::RowVectorXd v;
  std::vector<Eigen::RowVectorXd> d1;
  std::vector<Eigen::RowVectorXd> d2;

  static OutputSeeds zeros(Eigen::Index n_points, int n_axes);
};

/// Adds the parameter gradient implied by `seeds` to `grad` (canonical theta order).
void accumulate_gradient(const ShallowNet& net, const ForwardRecord& rec, const OutputSeeds& seeds, Vector& grad);

struct ProblemSpec;
struct TrainingData;

struct LossGradient {
  double loss = 0.0;
  Vector grad;
};

/// Total loss and its gradient with respect to theta.
/// Throws NonFiniteError if either contains NaN or Inf.
LossGradient loss_gradient(const ProblemSpec& problem, const ShallowNet& net, const TrainingData& data);

}  // namespace gridlab
