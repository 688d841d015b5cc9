#include "gridlab/optimizer.hpp"

#include <chrono>
#include <cmath>

#include "gridlab/diffengine.hpp"
#include "gridlab/problems.hpp"

namespace gridlab {

AdamState AdamState::zeros(Eigen::Index n, AdamHyper hyper) {
  return {Vector::Zero(n), Vector::Zero(n), 0, hyper};
}

void adam_step(AdamState& state, Vector& theta, const Vector& grad) {
  const Eigen::Index n = theta.size();
  if (grad.size() != n || state.m.size() != n || state.v.size() != n)
    throw ConfigError("adam_step: state, theta and gradient lengths differ");
  if (!grad.allFinite()) throw NonFiniteError("non-finite gradient in adam_step");

  const AdamHyper& h = state.hyper;
  const long k = ++state.k;
  const double c1 = 1.0 - std::pow(h.beta1, static_cast<double>(k));
  const double c2 = 1.0 - std::pow(h.beta2, static_cast<double>(k));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double g = grad[i];
    const double m = h.beta1 * state.m[i] + (1.0 - h.beta1) * g;
    const double v = h.beta2 * state.v[i] + (1.0 - h.beta2) * (g * g);
    state.m[i] = m;
    state.v[i] = v;
    const double m_hat = m / c1;
    const double v_hat = v / c2;
    theta[i] -= h.alpha * m_hat / (std::sqrt(v_hat) + h.eps);
  }
}

TrainReport train(const ProblemSpec& problem, const ShallowNet& net0, const TrainingData& data, long epochs,
                  AdamHyper hyper) {
  if (epochs < 1) throw ConfigError("train: epochs must be at least 1");
  const auto start = std::chrono::steady_clock::now();

  ShallowNet net = net0;
  AdamState state = AdamState::zeros(net.theta.size(), hyper);
  TrainReport report;
  report.loss_history.reserve(static_cast<std::size_t>(epochs));
  for (long epoch = 0; epoch < epochs; ++epoch) {
    LossGradient lg;
    try {
      lg = loss_gradient(problem, net, data);
      adam_step(state, net.theta, lg.grad);
    } catch (const NonFiniteError&) {
      throw NonFiniteError("training diverged", epoch);
    }
    report.loss_history.push_back(lg.loss);
  }
  report.epochs_run = epochs;
  report.final_loss = total_loss(problem, net, data);
  if (!std::isfinite(report.final_loss)) throw NonFiniteError("training diverged", epochs);
  report.final_theta = std::move(net.theta);
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace gridlab
