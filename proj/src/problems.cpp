#include "gridlab/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "gridlab/random.hpp"

namespace gridlab {

namespace {

constexpr std::array<std::string_view, 4> kProblemNames = {"decay", "oscillator", "laplace", "poisson"};

// Fixed evaluation order shared by the single-point and batched paths.
double residual_at(const LinearOperator& op, double value, std::span<const double> d1, std::span<const double> d2,
                   double source) {
  double r = op.c_value * value;
  for (std::size_t k = 0; k < d1.size(); ++k) {
    r += op.c_d1[k] * d1[k];
    r += op.c_d2[k] * d2[k];
  }
  return r - source;
}

void check_dimension(const ProblemSpec& p, const ShallowNet& net) {
  if (net.layout.input_dim != p.dimension())
    throw ConfigError(std::string(to_string(p.kind)) + " needs a network with " + std::to_string(p.dimension()) +
                      " input(s), got " + std::to_string(net.layout.input_dim));
}

Matrix as_columns(const std::vector<double>& pts) {
  return Eigen::Map<const Eigen::RowVectorXd>(pts.data(), static_cast<Eigen::Index>(pts.size()));
}

Matrix as_columns(const std::vector<Point2>& pts) {
  Matrix m(2, static_cast<Eigen::Index>(pts.size()));
  for (Eigen::Index i = 0; i < m.cols(); ++i) {
    m(0, i) = pts[static_cast<std::size_t>(i)][0];
    m(1, i) = pts[static_cast<std::size_t>(i)][1];
  }
  return m;
}

}  // namespace

std::string_view to_string(ProblemKind k) { return kProblemNames[static_cast<std::size_t>(k)]; }

ProblemKind parse_problem_kind(std::string_view name) {
  for (std::size_t i = 0; i < kProblemNames.size(); ++i)
    if (kProblemNames[i] == name) return static_cast<ProblemKind>(i);
  throw ConfigError("unknown problem '" + std::string(name) + "' (expected decay|oscillator|laplace|poisson)");
}

void ProblemSpec::validate() const {
  if (kind == ProblemKind::decay && !(lambda > 0.0)) throw ConfigError("decay rate lambda must be positive");
  if (kind == ProblemKind::oscillator && !(omega != 0.0 && std::isfinite(omega)))
    throw ConfigError("oscillator omega must be nonzero");
  if (!std::isfinite(x0) || !std::isfinite(v0) || !std::isfinite(lambda)) throw ConfigError("non-finite parameter");
}

ProblemSpec make_problem(ProblemKind kind) {
  ProblemSpec p;
  p.kind = kind;
  p.default_epochs = default_config(kind).epochs;
  switch (kind) {
    case ProblemKind::decay:
      p.time = {0.0, 20.0};
      p.x0 = 100.0;
      break;
    case ProblemKind::oscillator:
      p.time = {0.0, 10.0};
      break;
    case ProblemKind::laplace:
      p.square = {{-1.0, 1.0}, {-1.0, 1.0}};
      break;
    case ProblemKind::poisson:
      p.square = {{0.0, 1.0}, {0.0, 1.0}};
      break;
  }
  return p;
}

LinearOperator residual_operator(const ProblemSpec& p) {
  LinearOperator op;
  switch (p.kind) {
    case ProblemKind::decay:
      op.c_value = p.lambda;
      op.c_d1[0] = 1.0;
      break;
    case ProblemKind::oscillator:
      op.c_value = p.omega * p.omega;
      op.c_d2[0] = 1.0;
      break;
    case ProblemKind::laplace:
    case ProblemKind::poisson:
      op.c_d2 = {1.0, 1.0};
      break;
  }
  return op;
}

double source_term(const ProblemSpec& p, std::span<const double> point) {
  if (p.kind != ProblemKind::poisson) return 0.0;
  const double x = point[0];
  const double y = point[1];
  return (x * x + y * y) * std::exp(x * y);
}

double residual_from_jets(const ProblemSpec& p, std::span<const Jet> jets, std::span<const double> point) {
  if (static_cast<int>(jets.size()) != p.dimension() || static_cast<int>(point.size()) != p.dimension())
    throw ConfigError("residual: expected one jet per input axis");
  std::array<double, 2> d1{};
  std::array<double, 2> d2{};
  for (std::size_t k = 0; k < jets.size(); ++k) {
    d1[k] = jets[k].d1;
    d2[k] = jets[k].d2;
  }
  const auto n = jets.size();
  return residual_at(residual_operator(p), jets[0].v, std::span(d1).first(n), std::span(d2).first(n),
                     source_term(p, point));
}

double residual(const ProblemSpec& p, const ShallowNet& net, std::span<const double> point) {
  check_dimension(p, net);
  std::array<Jet, 2> jets;
  for (int k = 0; k < p.dimension(); ++k) jets[static_cast<std::size_t>(k)] = forward_jet(net, point, k);
  return residual_from_jets(p, std::span(jets).first(static_cast<std::size_t>(p.dimension())), point);
}

double exact_solution(const ProblemSpec& p, std::span<const double> point) {
  switch (p.kind) {
    case ProblemKind::decay:
      return p.x0 * std::exp(-p.lambda * point[0]);
    case ProblemKind::oscillator:
      return p.x0 * std::cos(p.omega * point[0]) + p.v0 / p.omega * std::sin(p.omega * point[0]);
    case ProblemKind::laplace:
      return point[0] * point[0] - point[1] * point[1];
    case ProblemKind::poisson:
      return std::exp(point[0] * point[1]);
  }
  return 0.0;
}

double boundary_value(const ProblemSpec& p, double x, double y) {
  const Rectangle& d = p.square;
  switch (p.kind) {
    case ProblemKind::laplace:
      if (x == d.x.a || x == d.x.b) return 1.0 - y * y;
      if (y == d.y.a || y == d.y.b) return x * x - 1.0;
      break;
    case ProblemKind::poisson:
      if (x == d.x.a) return 1.0;
      if (x == d.x.b) return std::exp(y);
      if (y == d.y.a) return 1.0;
      if (y == d.y.b) return std::exp(x);
      break;
    default:
      throw ConfigError("boundary values are defined for laplace and poisson only");
  }
  throw std::invalid_argument("boundary_value: point is not on the boundary");
}

TrainingData make_training_data(const ProblemSpec& p, Strategy strategy, int n, int boundary_per_edge,
                                std::uint64_t seed) {
  TrainingData data;
  if (p.is_ode()) {
    data.residual_points = as_columns(sample(strategy, p.time, n, derive_seed(seed, "points-x")).points);
    data.ic_points = Matrix::Constant(1, 1, p.time.a);
    return data;
  }
  const auto xs = sample(strategy, p.square.x, n, derive_seed(seed, "points-x"));
  const auto ys = sample(strategy, p.square.y, n, derive_seed(seed, "points-y"));
  data.residual_points = as_columns(tensor_grid(xs, ys).points);
  const auto edge = boundary_points(p.square, boundary_per_edge, strategy, seed);
  data.bc_points = as_columns(edge);
  data.bc_values.resize(data.bc_points.cols());
  for (Eigen::Index i = 0; i < data.bc_points.cols(); ++i)
    data.bc_values[i] = boundary_value(p, data.bc_points(0, i), data.bc_points(1, i));
  return data;
}

LossEvaluation evaluate_loss(const ProblemSpec& p, const ShallowNet& net, const TrainingData& data) {
  check_dimension(p, net);
  const int dim = p.dimension();
  if (data.residual_points.cols() == 0) throw std::invalid_argument("loss: residual point set is empty");
  if (data.residual_points.rows() != dim) throw ConfigError("loss: residual points have the wrong dimension");
  if (p.is_ode() && data.ic_points.cols() == 0) throw std::invalid_argument("loss: ODE needs an initial-condition point");
  if (!p.is_ode()) {
    if (data.bc_points.cols() == 0) throw std::invalid_argument("loss: PDE needs boundary points");
    if (data.bc_values.size() != data.bc_points.cols()) throw ConfigError("loss: boundary values/points mismatch");
  }

  LossEvaluation ev;
  const LinearOperator op = residual_operator(p);

  ev.residual = record_forward(net, data.residual_points, dim);
  const Eigen::Index n = ev.residual.n_points();
  ev.residual_values.resize(n);
  std::array<double, 2> d1{};
  std::array<double, 2> d2{};
  const auto nd = static_cast<std::size_t>(dim);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < nd; ++k) {
      d1[k] = ev.residual.output.d1[k](0, i);
      d2[k] = ev.residual.output.d2[k](0, i);
    }
    const double* pt = data.residual_points.col(i).data();
    const double r = residual_at(op, ev.residual.output.v(0, i), std::span(d1).first(nd), std::span(d2).first(nd),
                                 source_term(p, std::span(pt, nd)));
    ev.residual_values[i] = r;
    sum += r * r;
  }
  ev.terms.residual = sum / static_cast<double>(n);

  if (p.is_ode()) {
    const bool slope = p.kind == ProblemKind::oscillator;
    ev.initial = record_forward(net, data.ic_points, slope ? 1 : 0);
    double ic = 0.0;
    for (Eigen::Index i = 0; i < ev.initial.n_points(); ++i) {
      const double e = ev.initial.output.v(0, i) - p.x0;
      ic += e * e;
      if (slope) {
        const double es = ev.initial.output.d1[0](0, i) - p.v0;
        ic += es * es;
      }
    }
    ev.terms.initial = ic / static_cast<double>(ev.initial.n_points());
  } else {
    ev.boundary = record_forward(net, data.bc_points, 0);
    double bc = 0.0;
    for (Eigen::Index i = 0; i < ev.boundary.n_points(); ++i) {
      const double e = ev.boundary.output.v(0, i) - data.bc_values[i];
      bc += e * e;
    }
    ev.terms.boundary = bc / static_cast<double>(ev.boundary.n_points());
  }
  return ev;
}

LossTerms loss_terms(const ProblemSpec& p, const ShallowNet& net, const TrainingData& data) {
  return evaluate_loss(p, net, data).terms;
}

double total_loss(const ProblemSpec& p, const ShallowNet& net, const TrainingData& data) {
  return loss_terms(p, net, data).total();
}

DefaultConfig default_config(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::decay:
      return {50000, {100, 200, 400}, 500, 0};
    case ProblemKind::oscillator:
      return {100000, {100, 200, 400}, 500, 0};
    case ProblemKind::laplace:
    case ProblemKind::poisson:
      return {50000, {20, 40, 80}, 100, 30};
  }
  return {};
}

Matrix eval_grid(const ProblemSpec& p) {
  const int n = default_config(p.kind).eval_points_per_axis;
  if (p.is_ode()) return as_columns(equidistant(p.time, n).points);
  return as_columns(tensor_grid(equidistant(p.square.x, n), equidistant(p.square.y, n)).points);
}

}  // namespace gridlab
