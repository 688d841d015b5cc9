#pragma once

/**
 * @file optimizer.hpp
 * @brief Full-batch Adam over the composite loss.
 */

#include <vector>

#include "gridlab/network.hpp"

namespace gridlab {

struct ProblemSpec;
struct TrainingData;

struct AdamHyper {
  double alpha = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  Vector m;
  Vector v;
  long k = 0;
  AdamHyper hyper;

  static AdamState zeros(Eigen::Index n, AdamHyper hyper = {});
};

/// One Adam update of theta in place. The step counter is incremented
/// before bias correction, so the first call divides by 1 - beta^1.
/// Throws NonFiniteError on a non-finite gradient, leaving state and theta untouched.
void adam_step(AdamState& state, Vector& theta, const Vector& grad);

struct TrainReport {
  Vector final_theta;
  std::vector<double> loss_history;  // loss before each step
  long epochs_run = 0;
  double final_loss = 0.0;           // loss at final_theta
  double wall_time_seconds = 0.0;
};

/// Runs exactly `epochs` full-batch steps from net0.
/// Throws NonFiniteError carrying the failing epoch index.
TrainReport train(const ProblemSpec& problem, const ShallowNet& net0, const TrainingData& data, long epochs,
                  AdamHyper hyper = {});

}  // namespace gridlab
