#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gridlab/problems.hpp"

using namespace gridlab;

namespace {

const ProblemKind kAll[] = {ProblemKind::decay, ProblemKind::oscillator, ProblemKind::laplace, ProblemKind::poisson};

std::vector<double> random_interior(const ProblemSpec& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  if (p.is_ode()) return {p.time.a + p.time.width() * U(rng)};
  return {p.square.x.a + p.square.x.width() * U(rng), p.square.y.a + p.square.y.width() * U(rng)};
}

}  // namespace

TEST_CASE("benchmark parameters") {
  const auto decay = make_problem(ProblemKind::decay);
  CHECK(decay.time == Interval{0, 20});
  CHECK(decay.x0 == 100.0);
  CHECK(decay.lambda == 0.25);
  const auto osc = make_problem(ProblemKind::oscillator);
  CHECK(osc.time == Interval{0, 10});
  CHECK(osc.omega == 1.0);
  CHECK(osc.x0 == 1.0);
  CHECK(osc.v0 == 0.0);
  CHECK(make_problem(ProblemKind::laplace).square.x == Interval{-1, 1});
  CHECK(make_problem(ProblemKind::poisson).square.y == Interval{0, 1});
  for (auto k : kAll) CHECK(parse_problem_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_problem_kind("heat"), ConfigError);

  auto bad = decay;
  bad.lambda = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("default configuration") {
  CHECK(default_config(ProblemKind::oscillator).epochs == 100000);
  CHECK(default_config(ProblemKind::decay).epochs == 50000);
  CHECK(default_config(ProblemKind::laplace).epochs == 50000);
  CHECK(default_config(ProblemKind::poisson).epochs == 50000);
  CHECK(default_config(ProblemKind::decay).training_sizes == std::vector<int>{100, 200, 400});
  CHECK(default_config(ProblemKind::poisson).training_sizes == std::vector<int>{20, 40, 80});
  CHECK(default_config(ProblemKind::laplace).boundary_per_edge == 30);

  const Matrix ode = eval_grid(make_problem(ProblemKind::oscillator));
  CHECK(ode.cols() == 500);
  CHECK(ode(0, 0) == 0.0);
  CHECK(ode(0, 499) == 10.0);
  const Matrix pde = eval_grid(make_problem(ProblemKind::laplace));
  CHECK(pde.rows() == 2);
  CHECK(pde.cols() == 10000);
  CHECK(pde.row(0).minCoeff() == -1.0);
  CHECK(pde.row(1).maxCoeff() == 1.0);
}

TEST_CASE("exact solutions") {
  const double t0[] = {0.0};
  CHECK(exact_solution(make_problem(ProblemKind::decay), t0) == 100.0);
  const double tpi[] = {std::numbers::pi};
  CHECK(exact_solution(make_problem(ProblemKind::oscillator), tpi) == doctest::Approx(-1.0).epsilon(1e-15));
  const double half[] = {0.5, 0.5};
  CHECK(exact_solution(make_problem(ProblemKind::laplace), half) == 0.0);
  const double one[] = {1.0, 1.0};
  CHECK(exact_solution(make_problem(ProblemKind::poisson), one) == doctest::Approx(std::numbers::e).epsilon(1e-15));
}

TEST_CASE("residual of the closed-form solution vanishes") {
  std::mt19937_64 rng(21);
  for (auto kind : kAll) {
    ProblemSpec p = make_problem(kind);
    if (kind == ProblemKind::oscillator) {
      p.omega = 1.7;
      p.v0 = 0.4;
    }
    for (int i = 0; i < 100; ++i) {
      const auto x = random_interior(p, rng);
      std::vector<Jet> jets;
      for (int k = 0; k < p.dimension(); ++k) {
        jets.push_back(exact_solution_jet<double>(p, x, k));
        CHECK(jets.back().v == doctest::Approx(exact_solution(p, x)).epsilon(1e-14));
      }
      CHECK(std::abs(residual_from_jets(p, jets, x)) < 1e-8);
    }
  }
}

TEST_CASE("residual of the zero network") {
  const double any[] = {0.3, 0.6};
  CHECK(residual(make_problem(ProblemKind::laplace), ShallowNet::zeros({2, {5}}), any) == 0.0);
  const double one[] = {1.0, 1.0};
  CHECK(residual(make_problem(ProblemKind::poisson), ShallowNet::zeros({2, {5}}), one) ==
        doctest::Approx(-2.0 * std::numbers::e).epsilon(1e-15));
  const double t[] = {3.0};
  CHECK(residual(make_problem(ProblemKind::decay), ShallowNet::zeros({1, {5}}), t) == 0.0);
  CHECK_THROWS_AS(residual(make_problem(ProblemKind::decay), ShallowNet::zeros({2, {5}}), any), ConfigError);
}

TEST_CASE("boundary data agrees with the exact solution") {
  for (auto kind : {ProblemKind::laplace, ProblemKind::poisson}) {
    const ProblemSpec p = make_problem(kind);
    for (Strategy s : all_strategies()) {
      const auto pts = boundary_points(p.square, 30, s, 4);
      for (const auto& q : pts) {
        const double x[] = {q[0], q[1]};
        CHECK(std::abs(boundary_value(p, q[0], q[1]) - exact_solution(p, x)) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(boundary_value(make_problem(ProblemKind::laplace), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("training data layout") {
  const auto ode = make_training_data(make_problem(ProblemKind::oscillator), Strategy::sine_based, 400, 0, 42);
  CHECK(ode.residual_points.rows() == 1);
  CHECK(ode.residual_points.cols() == 400);
  CHECK(ode.ic_points.cols() == 1);
  CHECK(ode.ic_points(0, 0) == 0.0);
  CHECK(ode.bc_points.cols() == 0);

  const auto pde = make_training_data(make_problem(ProblemKind::poisson), Strategy::random, 20, 30, 42);
  CHECK(pde.residual_points.rows() == 2);
  CHECK(pde.residual_points.cols() == 400);
  CHECK(pde.bc_points.cols() == 120);
  CHECK(pde.bc_values.size() == 120);
  const auto again = make_training_data(make_problem(ProblemKind::poisson), Strategy::random, 20, 30, 42);
  CHECK(pde.residual_points == again.residual_points);
  CHECK(pde.bc_points == again.bc_points);
}

TEST_CASE("loss examples") {
  const auto decay = make_problem(ProblemKind::decay);
  const auto dd = make_training_data(decay, Strategy::chebyshev, 50, 0, 1);
  const auto terms = loss_terms(decay, ShallowNet::zeros({1, {10}}), dd);
  CHECK(terms.residual == 0.0);
  CHECK(terms.initial == 10000.0);
  CHECK(terms.boundary == 0.0);
  CHECK(total_loss(decay, ShallowNet::zeros({1, {10}}), dd) == 10000.0);

  const auto osc = make_problem(ProblemKind::oscillator);
  const auto od = make_training_data(osc, Strategy::equidistant, 30, 0, 1);
  CHECK(total_loss(osc, ShallowNet::zeros({1, {10}}), od) == 1.0);

  // Zero net on Laplace: residual 0, boundary mean of g^2.
  const auto lap = make_problem(ProblemKind::laplace);
  const auto ld = make_training_data(lap, Strategy::equidistant, 5, 4, 1);
  double want = 0.0;
  for (Eigen::Index i = 0; i < ld.bc_values.size(); ++i) want += ld.bc_values[i] * ld.bc_values[i];
  want /= static_cast<double>(ld.bc_values.size());
  const auto lt = loss_terms(lap, ShallowNet::zeros({2, {4}}), ld);
  CHECK(lt.residual == 0.0);
  CHECK(lt.boundary == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("loss decomposition and mismatched inputs") {
  std::mt19937_64 rng(2);
  for (auto kind : kAll) {
    const auto p = make_problem(kind);
    const auto data = make_training_data(p, Strategy::random, p.is_ode() ? 40 : 6, 5, 3);
    const ShallowNet net = init_glorot({p.dimension(), {8}}, rng());
    const auto t = loss_terms(p, net, data);
    CHECK(t.residual >= 0.0);
    CHECK(t.initial >= 0.0);
    CHECK(t.boundary >= 0.0);
    CHECK(t.total() == total_loss(p, net, data));
    CHECK((p.is_ode() ? t.boundary : t.initial) == 0.0);
    CHECK_THROWS_AS(total_loss(p, init_glorot({3 - p.dimension(), {4}}, 1), data), ConfigError);
  }
  TrainingData empty;
  empty.residual_points.resize(1, 0);
  empty.ic_points = Matrix::Zero(1, 1);
  CHECK_THROWS_AS(total_loss(make_problem(ProblemKind::decay), ShallowNet::zeros({1, {3}}), empty),
                  std::invalid_argument);
  TrainingData no_bc;
  no_bc.residual_points = Matrix::Zero(2, 3);
  CHECK_THROWS_AS(total_loss(make_problem(ProblemKind::laplace), ShallowNet::zeros({2, {3}}), no_bc),
                  std::invalid_argument);
}

TEST_CASE("boundary term vanishes for a net matching the boundary data") {
  // u = x^2 - y^2 is not representable, but the constant 1 matches Poisson's data on x = 0 and y = 0.
  const auto p = make_problem(ProblemKind::poisson);
  TrainingData d;
  d.residual_points = Matrix::Constant(2, 1, 0.5);
  d.bc_points.resize(2, 4);
  d.bc_points << 0.0, 0.0, 0.3, 0.9, 0.2, 0.7, 0.0, 0.0;
  d.bc_values.resize(4);
  for (int i = 0; i < 4; ++i) d.bc_values[i] = boundary_value(p, d.bc_points(0, i), d.bc_points(1, i));
  ShallowNet one = ShallowNet::zeros({2, {3}});
  one.theta[one.theta.size() - 1] = 1.0;
  CHECK(loss_terms(p, one, d).boundary == 0.0);
}
