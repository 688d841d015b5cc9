#pragma once

/**
 * @file sampler.hpp
 * @brief Training-point generators on intervals and rectangles.
 *
 * Five 1D strategies are provided. Point order is part of the result:
 * random keeps draw order, chebyshev keeps node-index order (decreasing in
 * t), and the rest are increasing. 2D sets are tensor products of
 * per-axis 1D sets.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridlab {

struct Interval {
  double a = 0.0;
  double b = 1.0;

  Interval() = default;
  /// Throws std::invalid_argument unless a < b.
  Interval(double lo, double hi);
  double width() const { return b - a; }
  bool contains(double t) const { return a <= t && t <= b; }
  bool operator==(const Interval&) const = default;
};

struct Rectangle {
  Interval x;
  Interval y;
  bool contains(double px, double py) const { return x.contains(px) && y.contains(py); }
};

enum class Strategy { equidistant, random, random_sorted, chebyshev, sine_based };

std::string_view to_string(Strategy s);
/// Throws std::invalid_argument on unknown names.
Strategy parse_strategy(std::string_view name);
std::vector<Strategy> all_strategies();
bool is_random(Strategy s);

struct PointSet1D {
  std::vector<double> points;
  Strategy strategy = Strategy::equidistant;
  std::optional<std::uint64_t> seed;
  std::size_t size() const { return points.size(); }
};

using Point2 = std::array<double, 2>;

struct PointSet2D {
  std::vector<Point2> points;  // row-major: x outer, y inner
  int nx = 0;
  int ny = 0;
  Strategy strategy = Strategy::equidistant;
  std::optional<std::uint64_t> seed_x;
  std::optional<std::uint64_t> seed_y;
  std::size_t size() const { return points.size(); }
};

PointSet1D equidistant(Interval iv, int n);
PointSet1D random_uniform(Interval iv, int n, std::uint64_t seed);
PointSet1D random_sorted(Interval iv, int n, std::uint64_t seed);
/// Nodes a+b/2 + (b-a)/2 cos((2i+1)pi/(2n)) in index order unless `sort_ascending`.
PointSet1D chebyshev(Interval iv, int n, bool sort_ascending = false);

/// Integrand of the sine-wave arc length: sqrt(1 + pi^2 cos^2(2 pi (s-a)/(b-a))).
double sine_arc_integrand(Interval iv, double s);
/// Arc length of one full sine period of amplitude (b-a)/2 drawn over [a, t].
double sine_arc_length(Interval iv, double t);
/// Arc length over the whole interval.
double arc_length_sine(Interval iv);
/// Points equally spaced in arc length along the sine wave; endpoints included.
PointSet1D sine_based(Interval iv, int n);

/// Dispatches to one of the strategies above; `seed` is ignored by deterministic ones.
PointSet1D sample(Strategy s, Interval iv, int n, std::uint64_t seed);

PointSet2D tensor_grid(const PointSet1D& xs, const PointSet1D& ys);

/// Edges in the order bottom, top, left, right; random strategies draw each
/// edge from its own sub-seed ("boundary-e0".."boundary-e3").
std::vector<Point2> boundary_points(const Rectangle& domain, int n_per_edge, Strategy s, std::uint64_t seed);

}  // namespace gridlab
