#include "gridlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gridlab/random.hpp"

namespace gridlab {

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
  if (!(lo < hi)) throw std::invalid_argument("interval requires a < b");
}

namespace {

constexpr std::array<std::string_view, 5> kStrategyNames = {"equidistant", "random", "random_sorted", "chebyshev",
                                                            "sine_based"};

void require_count(int n, int minimum, const char* what) {
  if (n < minimum)
    throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(minimum) + " points");
}

}  // namespace

std::string_view to_string(Strategy s) { return kStrategyNames[static_cast<std::size_t>(s)]; }

Strategy parse_strategy(std::string_view name) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i)
    if (kStrategyNames[i] == name) return static_cast<Strategy>(i);
  if (name == "random-sorted") return Strategy::random_sorted;
  if (name == "sine" || name == "sine-based") return Strategy::sine_based;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::vector<Strategy> all_strategies() {
  return {Strategy::equidistant, Strategy::random, Strategy::random_sorted, Strategy::chebyshev, Strategy::sine_based};
}

bool is_random(Strategy s) { return s == Strategy::random || s == Strategy::random_sorted; }

PointSet1D equidistant(Interval iv, int n) {
  require_count(n, 2, "equidistant grid");
  PointSet1D out{std::vector<double>(static_cast<std::size_t>(n)), Strategy::equidistant, std::nullopt};
  const double h = iv.width() / (n - 1);
  for (int i = 0; i < n; ++i) out.points[static_cast<std::size_t>(i)] = iv.a + i * h;
  out.points.back() = iv.b;
  return out;
}

PointSet1D random_uniform(Interval iv, int n, std::uint64_t seed) {
  require_count(n, 1, "random grid");
  PointSet1D out{{}, Strategy::random, seed};
  out.points.reserve(static_cast<std::size_t>(n));
  Xoshiro256 rng(seed);
  for (int i = 0; i < n; ++i) out.points.push_back(rng.uniform(iv.a, iv.b));
  return out;
}

PointSet1D random_sorted(Interval iv, int n, std::uint64_t seed) {
  PointSet1D out = random_uniform(iv, n, seed);
  std::sort(out.points.begin(), out.points.end());
  out.strategy = Strategy::random_sorted;
  return out;
}

PointSet1D chebyshev(Interval iv, int n, bool sort_ascending) {
  require_count(n, 1, "Chebyshev grid");
  PointSet1D out{std::vector<double>(static_cast<std::size_t>(n)), Strategy::chebyshev, std::nullopt};
  const double mid = 0.5 * (iv.a + iv.b);
  const double half = 0.5 * iv.width();
  for (int i = 0; i < n; ++i)
    out.points[static_cast<std::size_t>(i)] = mid + half * std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n));
  if (sort_ascending) std::sort(out.points.begin(), out.points.end());
  return out;
}

double sine_arc_integrand(Interval iv, double s) {
  // d/ds of ((b-a)/2) sin(2 pi (s-a)/(b-a)) is pi cos(...), independent of the width.
  const double slope = std::numbers::pi * std::cos(2.0 * std::numbers::pi * (s - iv.a) / iv.width());
  return std::sqrt(1.0 + slope * slope);
}

double sine_arc_length(Interval iv, double t) {
  if (t <= iv.a) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [iv](double s) { return sine_arc_integrand(iv, s); };
  // Boost's tolerance is relative to the integral; the integral is at most
  // about 2.31 (b - a), so 1e-14 keeps the absolute error below 1e-12 for widths up to ~40.
  return gauss_kronrod<double, 31>::integrate(f, iv.a, t, 15, 1e-14);
}

double arc_length_sine(Interval iv) { return sine_arc_length(iv, iv.b); }

namespace {

// Solves sine_arc_length(iv, t) == target by bracketing plus Newton steps.
double invert_arc_length(Interval iv, double target, double total) {
  double lo = iv.a;
  double hi = iv.b;
  double t = iv.a + target / total * iv.width();
  const double stop = 1e-13 * iv.width();
  for (int iter = 0; iter < 200; ++iter) {
    const double g = sine_arc_length(iv, t) - target;
    if (g == 0.0) return t;
    (g > 0.0 ? hi : lo) = t;
    double next = t - g / sine_arc_integrand(iv, t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step < stop || hi - lo < stop) break;
  }
  return t;
}

}  // namespace

PointSet1D sine_based(Interval iv, int n) {
  require_count(n, 2, "sine-based grid");
  const double total = arc_length_sine(iv);
  PointSet1D out{std::vector<double>(static_cast<std::size_t>(n)), Strategy::sine_based, std::nullopt};
  out.points.front() = iv.a;
  out.points.back() = iv.b;
  for (int i = 1; i + 1 < n; ++i)
    out.points[static_cast<std::size_t>(i)] = invert_arc_length(iv, total * i / (n - 1), total);
  return out;
}

PointSet1D sample(Strategy s, Interval iv, int n, std::uint64_t seed) {
  switch (s) {
    case Strategy::equidistant:
      return equidistant(iv, n);
    case Strategy::random:
      return random_uniform(iv, n, seed);
    case Strategy::random_sorted:
      return random_sorted(iv, n, seed);
    case Strategy::chebyshev:
      return chebyshev(iv, n);
    case Strategy::sine_based:
      return sine_based(iv, n);
  }
  throw std::invalid_argument("unknown strategy");
}

PointSet2D tensor_grid(const PointSet1D& xs, const PointSet1D& ys) {
  if (xs.points.empty() || ys.points.empty()) throw std::invalid_argument("tensor_grid needs nonempty axes");
  PointSet2D out;
  out.nx = static_cast<int>(xs.size());
  out.ny = static_cast<int>(ys.size());
  out.strategy = xs.strategy;
  out.seed_x = xs.seed;
  out.seed_y = ys.seed;
  out.points.reserve(xs.size() * ys.size());
  for (double x : xs.points)
    for (double y : ys.points) out.points.push_back({x, y});
  return out;
}

std::vector<Point2> boundary_points(const Rectangle& domain, int n_per_edge, Strategy s, std::uint64_t seed) {
  std::vector<Point2> out;
  out.reserve(4 * static_cast<std::size_t>(std::max(n_per_edge, 0)));
  for (int edge = 0; edge < 4; ++edge) {
    const bool horizontal = edge < 2;
    const auto pts =
        sample(s, horizontal ? domain.x : domain.y, n_per_edge, derive_seed(seed, "boundary-e" + std::to_string(edge)));
    for (double p : pts.points) {
      switch (edge) {
        case 0:
          out.push_back({p, domain.y.a});
          break;
        case 1:
          out.push_back({p, domain.y.b});
          break;
        case 2:
          out.push_back({domain.x.a, p});
          break;
        default:
          out.push_back({domain.x.b, p});
      }
    }
  }
  return out;
}

}  // namespace gridlab
