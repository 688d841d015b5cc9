#pragma once

/**
 * @file metrics.hpp
 * @brief MAE against exact solutions and its mean / population SD over runs.
 *
 * Sums here are compensated so results do not depend on grid ordering
 * beyond the last few ulps.
 */

#include <functional>
#include <span>
#include <vector>

#include "gridlab/network.hpp"

namespace gridlab {

struct ProblemSpec;

/// (1/N) sum |pred_i - exact_i|. Throws std::invalid_argument on empty or mismatched input.
double mae(std::span<const double> pred, std::span<const double> exact);

struct EvalResult {
  double mae = 0.0;
  Eigen::Index n_eval_points = 0;
  std::vector<double> per_point_abs_errors;  // filled only on request
};

using ExactFn = std::function<double(std::span<const double>)>;

/// MAE of the network over `grid` (one point per column) against `exact`.
EvalResult evaluate(const ShallowNet& net, const Matrix& grid, const ExactFn& exact, bool keep_errors = false);
EvalResult evaluate(const ProblemSpec& p, const ShallowNet& net, const Matrix& grid, bool keep_errors = false);

struct Aggregate {
  double mean_mae = 0.0;
  double sd = 0.0;  // population: divisor is the number of runs
  int runs = 0;
};

/// Throws std::invalid_argument on an empty list.
Aggregate aggregate(std::span<const double> maes);

}  // namespace gridlab
