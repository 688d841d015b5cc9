#include "gridlab/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "gridlab/problems.hpp"

namespace gridlab {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace

double mae(std::span<const double> pred, std::span<const double> exact) {
  if (pred.size() != exact.size()) throw std::invalid_argument("mae: length mismatch");
  if (pred.empty()) throw std::invalid_argument("mae: empty input");
  CompensatedSum s;
  for (std::size_t i = 0; i < pred.size(); ++i) s.add(std::abs(pred[i] - exact[i]));
  return s.value() / static_cast<double>(pred.size());
}

EvalResult evaluate(const ShallowNet& net, const Matrix& grid, const ExactFn& exact, bool keep_errors) {
  const Vector pred = forward(net, grid);
  std::vector<double> want(static_cast<std::size_t>(grid.cols()));
  for (Eigen::Index i = 0; i < grid.cols(); ++i)
    want[static_cast<std::size_t>(i)] = exact(std::span<const double>(grid.col(i).data(), static_cast<std::size_t>(grid.rows())));

  EvalResult r;
  r.n_eval_points = grid.cols();
  r.mae = mae(std::span<const double>(pred.data(), want.size()), want);
  if (keep_errors) {
    r.per_point_abs_errors.resize(want.size());
    for (std::size_t i = 0; i < want.size(); ++i) r.per_point_abs_errors[i] = std::abs(pred[static_cast<Eigen::Index>(i)] - want[i]);
  }
  return r;
}

EvalResult evaluate(const ProblemSpec& p, const ShallowNet& net, const Matrix& grid, bool keep_errors) {
  if (grid.rows() != p.dimension()) throw ConfigError("evaluate: grid dimension does not match the problem");
  return evaluate(net, grid, [&p](std::span<const double> x) { return exact_solution(p, x); }, keep_errors);
}

Aggregate aggregate(std::span<const double> maes) {
  if (maes.empty()) throw std::invalid_argument("aggregate: no runs");
  const double n = static_cast<double>(maes.size());
  CompensatedSum s;
  for (double m : maes) s.add(m);
  const double mean = s.value() / n;
  CompensatedSum sq;
  for (double m : maes) sq.add((m - mean) * (m - mean));
  return {mean, std::sqrt(sq.value() / n), static_cast<int>(maes.size())};
}

}  // namespace gridlab
