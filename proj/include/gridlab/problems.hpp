#pragma once

/**
 * @file problems.hpp
 * @brief The four benchmark equations and their composite losses.
 *
 *   decay       x_t + lambda x = 0 on [0, 20],         x(0) = x0
 *   oscillator  x_tt + omega^2 x = 0 on [0, 10],       x(0) = x0, x_t(0) = v0
 *   laplace     u_xx + u_yy = 0 on [-1, 1]^2,          u = x^2 - y^2 on the boundary
 *   poisson     u_xx + u_yy = (x^2 + y^2) e^{xy} on [0, 1]^2, u = e^{xy} on the boundary
 *
 * All four residuals are linear in (u, u_k, u_kk), so each problem is
 * described by a LinearOperator plus a source term.
 */

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridlab/diffengine.hpp"
#include "gridlab/jet.hpp"
#include "gridlab/network.hpp"
#include "gridlab/sampler.hpp"

namespace gridlab {

enum class ProblemKind { decay, oscillator, laplace, poisson };

std::string_view to_string(ProblemKind k);
/// Throws ConfigError on unknown names.
ProblemKind parse_problem_kind(std::string_view name);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::oscillator;
  Interval time;      // ODE domain
  Rectangle square;   // PDE domain
  double lambda = 0.25;
  double x0 = 1.0;
  double omega = 1.0;
  double v0 = 0.0;
  long default_epochs = 100000;

  int dimension() const { return is_ode() ? 1 : 2; }
  bool is_ode() const { return kind == ProblemKind::decay || kind == ProblemKind::oscillator; }
  /// Throws ConfigError on non-positive lambda or omega.
  void validate() const;
};

/// Benchmark with its standard parameters (decay uses lambda = 0.25, x0 = 100).
ProblemSpec make_problem(ProblemKind kind);

/// residual = c_value u + sum_k (c_d1[k] u_k + c_d2[k] u_kk) - source(point)
struct LinearOperator {
  double c_value = 0.0;
  std::array<double, 2> c_d1{};
  std::array<double, 2> c_d2{};
};

LinearOperator residual_operator(const ProblemSpec& p);
double source_term(const ProblemSpec& p, std::span<const double> point);

/// Residual from per-axis jets of the candidate solution (jets[k] along axis k).
double residual_from_jets(const ProblemSpec& p, std::span<const Jet> jets, std::span<const double> point);

/// Residual of the network at a point; zero iff it satisfies the equation there.
double residual(const ProblemSpec& p, const ShallowNet& net, std::span<const double> point);

double exact_solution(const ProblemSpec& p, std::span<const double> point);

/// Closed-form solution evaluated in jet arithmetic along `axis`.
template <class T>
Jet2<T> exact_solution_jet(const ProblemSpec& p, std::span<const double> point, int axis) {
  const auto lift = [&](int k) { return k == axis ? Jet2<T>::variable(point[k]) : Jet2<T>::constant(point[k]); };
  switch (p.kind) {
    case ProblemKind::decay:
      return p.x0 * exp(-p.lambda * lift(0));
    case ProblemKind::oscillator: {
      const Jet2<T> wt = p.omega * lift(0);
      return p.x0 * cos(wt) + (p.v0 / p.omega) * sin(wt);
    }
    case ProblemKind::laplace:
      return square(lift(0)) - square(lift(1));
    case ProblemKind::poisson:
      return exp(lift(0) * lift(1));
  }
  return {};
}

/// Prescribed boundary value from the boundary formulas (not the exact solution).
double boundary_value(const ProblemSpec& p, double x, double y);

/// Points are stored one per column.
struct TrainingData {
  Matrix residual_points;
  Matrix ic_points;  // ODEs: the single point t = 0
  Matrix bc_points;  // PDEs: points on the boundary
  Vector bc_values;
};

/// Residual points from `strategy`; ODEs get the IC point, PDEs get
/// `boundary_per_edge` points on each edge with targets from boundary_value.
/// Random strategies use sub-seeds of `seed` ("points-x", "points-y", "boundary-eK").
TrainingData make_training_data(const ProblemSpec& p, Strategy strategy, int n, int boundary_per_edge,
                                std::uint64_t seed);

struct LossTerms {
  double residual = 0.0;
  double initial = 0.0;
  double boundary = 0.0;
  double total() const { return residual + initial + boundary; }
};

/// Shared by total_loss and loss_gradient so both see identical arithmetic.
struct LossEvaluation {
  LossTerms terms;
  ForwardRecord residual;
  ForwardRecord initial;
  ForwardRecord boundary;
  Vector residual_values;
};

LossEvaluation evaluate_loss(const ProblemSpec& p, const ShallowNet& net, const TrainingData& data);

LossTerms loss_terms(const ProblemSpec& p, const ShallowNet& net, const TrainingData& data);
double total_loss(const ProblemSpec& p, const ShallowNet& net, const TrainingData& data);

struct DefaultConfig {
  long epochs;
  std::vector<int> training_sizes;  // ODE: point counts, PDE: points per axis
  int eval_points_per_axis;
  int boundary_per_edge;
};

DefaultConfig default_config(ProblemKind kind);

/// Closed equidistant evaluation grid: 500 points (ODE) or 100 x 100 (PDE).
Matrix eval_grid(const ProblemSpec& p);

}  // namespace gridlab
