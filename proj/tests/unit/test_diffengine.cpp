#include <doctest.h>

#include <random>

#include "gridlab/diffengine.hpp"
#include "gridlab/problems.hpp"
#include "oracles.hpp"

using namespace gridlab;
using namespace gridlab::testing;

namespace {

TrainingData small_data(const ProblemSpec& p, Strategy s, std::uint64_t seed) {
  return make_training_data(p, s, p.is_ode() ? 25 : 5, 4, seed);
}

}  // namespace

TEST_CASE("record_forward jets match single-point forward_jet") {
  std::mt19937_64 rng(4);
  for (const NetLayout& layout : {NetLayout{1, {8}}, NetLayout{2, {8}}, NetLayout{2, {6, 6}}}) {
    const ShallowNet net = random_parameters(layout, rng);
    const Matrix pts = Matrix::Random(layout.input_dim, 12);
    const ForwardRecord rec = record_forward(net, pts, layout.input_dim);
    CHECK(rec.n_points() == 12);
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
      std::vector<double> x(pts.col(i).data(), pts.col(i).data() + pts.rows());
      for (int k = 0; k < layout.input_dim; ++k) {
        const Jet j = forward_jet(net, x, k);
        CHECK(rec.output.v(0, i) == doctest::Approx(j.v).epsilon(1e-13));
        CHECK(rec.output.d1[k](0, i) == doctest::Approx(j.d1).epsilon(1e-12));
        CHECK(rec.output.d2[k](0, i) == doctest::Approx(j.d2).epsilon(1e-11));
      }
    }
  }
  CHECK_THROWS_AS(record_forward(ShallowNet::zeros({1, {3}}), Matrix::Zero(2, 3), 1), ConfigError);
}

TEST_CASE("loss_gradient agrees with central finite differences") {
  std::mt19937_64 rng(8);
  for (auto kind : {ProblemKind::decay, ProblemKind::oscillator, ProblemKind::laplace, ProblemKind::poisson}) {
    const ProblemSpec p = make_problem(kind);
    for (const auto& widths : {std::vector<int>{8}, std::vector<int>{6, 6}}) {
      for (int draw = 0; draw < 3; ++draw) {
        const ShallowNet net = random_parameters({p.dimension(), widths}, rng);
        const TrainingData data = small_data(p, Strategy::random, rng());
        const LossGradient lg = loss_gradient(p, net, data);
        CHECK(lg.grad.size() == net.layout.param_count());
        const double err = max_relative_error(lg.grad, finite_difference_gradient(p, net, data));
        INFO(to_string(kind), " depth ", widths.size(), " draw ", draw);
        CHECK(err < 1e-5);
      }
    }
  }
}

TEST_CASE("loss agrees with an extended-precision evaluation") {
  std::mt19937_64 rng(10);
  for (auto kind : {ProblemKind::decay, ProblemKind::oscillator, ProblemKind::laplace, ProblemKind::poisson}) {
    const ProblemSpec p = make_problem(kind);
    const ShallowNet net = random_parameters({p.dimension(), {6, 6}}, rng);
    const TrainingData data = small_data(p, Strategy::random, rng());
    const std::vector<Wide> theta(net.theta.begin(), net.theta.end());
    const double wide = static_cast<double>(wide_loss(p, net.layout, theta, data));
    CHECK(total_loss(p, net, data) == doctest::Approx(wide).epsilon(1e-14));
  }
}

TEST_CASE("loss from loss_gradient is bit-identical to total_loss") {
  std::mt19937_64 rng(12);
  for (auto kind : {ProblemKind::decay, ProblemKind::oscillator, ProblemKind::laplace, ProblemKind::poisson}) {
    const ProblemSpec p = make_problem(kind);
    const ShallowNet net = init_glorot({p.dimension(), {8}}, rng());
    const TrainingData data = small_data(p, Strategy::sine_based, 0);
    const LossGradient a = loss_gradient(p, net, data);
    const LossGradient b = loss_gradient(p, net, data);
    CHECK(a.loss == total_loss(p, net, data));
    CHECK(a.loss == b.loss);
    CHECK(a.grad == b.grad);
  }
}

TEST_CASE("gradient vanishes at a stationary point") {
  // Zero net on Laplace with zero boundary data: loss = 0 is a global minimum.
  const ProblemSpec p = make_problem(ProblemKind::laplace);
  TrainingData data = small_data(p, Strategy::equidistant, 0);
  data.bc_values.setZero();
  const LossGradient lg = loss_gradient(p, ShallowNet::zeros({2, {8}}), data);
  CHECK(lg.loss == 0.0);
  CHECK(lg.grad.cwiseAbs().maxCoeff() == 0.0);

  // Constant net equal to the oscillator's x0 with v0 = 0: residual omega^2 x0 != 0, so not stationary.
  const ProblemSpec osc = make_problem(ProblemKind::oscillator);
  ShallowNet c = ShallowNet::zeros({1, {4}});
  c.theta[c.theta.size() - 1] = 1.0;
  CHECK(loss_gradient(osc, c, small_data(osc, Strategy::equidistant, 0)).grad.norm() > 0.0);
}

TEST_CASE("duplicating every training point leaves loss and gradient unchanged") {
  std::mt19937_64 rng(14);
  for (auto kind : {ProblemKind::decay, ProblemKind::oscillator, ProblemKind::laplace, ProblemKind::poisson}) {
    const ProblemSpec p = make_problem(kind);
    const ShallowNet net = random_parameters({p.dimension(), {8}}, rng);
    const TrainingData data = small_data(p, Strategy::chebyshev, 0);
    TrainingData twice = data;
    const auto dup = [](const Matrix& m) {
      Matrix out(m.rows(), 2 * m.cols());
      out << m, m;
      return out;
    };
    twice.residual_points = dup(data.residual_points);
    twice.ic_points = dup(data.ic_points);
    if (!p.is_ode()) {
      twice.bc_points = dup(data.bc_points);
      twice.bc_values.resize(2 * data.bc_values.size());
      twice.bc_values << data.bc_values, data.bc_values;
    }
    const LossGradient a = loss_gradient(p, net, data);
    const LossGradient b = loss_gradient(p, net, twice);
    CHECK(b.loss == doctest::Approx(a.loss).epsilon(1e-12));
    CHECK((a.grad - b.grad).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.grad.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("non-finite loss is reported") {
  const ProblemSpec p = make_problem(ProblemKind::decay);
  ShallowNet net = ShallowNet::zeros({1, {2}});
  net.theta[net.theta.size() - 1] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(loss_gradient(p, net, small_data(p, Strategy::equidistant, 0)), NonFiniteError);
}
