#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "epilim/gamma.hpp"
#include "epilim/grid_fn.hpp"
#include "epilim/verdict.hpp"

namespace epilim {

struct Breakpoint {
  double x = 0.0;
  ExtReal slope_lo;
  ExtReal slope_hi;
};

/// Closed interval of slopes, possibly empty.
struct Interval {
  ExtReal lo = ExtReal::pos_inf();
  ExtReal hi = ExtReal::neg_inf();
  bool empty() const { return hi < lo; }
  bool contains(double s, double tol = 0.0) const {
    return !empty() && lo.to_double() - tol <= s && s <= hi.to_double() + tol;
  }
};

/// Axis-aligned box in the (x, slope) plane.
struct Box {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
};

/// Monotone staircase over a contiguous run of grid points: a vertical
/// segment [slope_lo, slope_hi] at every breakpoint, joined by horizontal
/// edges at the mean of the adjacent one-sided slopes. For graphs produced by
/// subdiff_graph the two one-sided slopes coincide and the staircase is the
/// exact subdifferential of the piecewise-linear interpolant.
class MonotoneGraph {
 public:
  /// `first` is the grid index of the first breakpoint; breakpoints must sit
  /// on consecutive grid points and be monotone.
  MonotoneGraph(Grid1D grid, std::size_t first, std::vector<Breakpoint> breakpoints);

  const Grid1D& grid() const { return grid_; }
  std::size_t first_index() const { return first_; }
  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  double domain_lo() const { return points_.front().x; }
  double domain_hi() const { return points_.back().x; }
  /// Height of the horizontal edge between breakpoints i and i + 1.
  double edge_slope(std::size_t i) const;
  /// Slice of the planar graph at x (a grid point or an edge interior).
  Interval slice(double x) const;
  bool contains(double x, double s, double tol) const;
  /// Euclidean distance from (x, s) to the staircase.
  double distance(double x, double s) const;
  /// Closest staircase point to (x, s).
  Point2 nearest(double x, double s) const;

 private:
  Grid1D grid_;
  std::size_t first_;
  std::vector<Breakpoint> points_;
  std::vector<double> edge_;  // horizontal edge heights
  std::vector<double> vlo_;   // vertical segment extent per breakpoint
  std::vector<double> vhi_;
};

/// One-sided difference quotients; the outer side of each domain end is the
/// normal cone (-inf at the left end, +inf at the right end).
MonotoneGraph subdiff_graph(const GridFn& f);

/// All s with g(u) >= g(x) + s (u - x) for every grid u; x must be a grid
/// point. Empty if g(x) is not finite or g takes the value -inf.
Interval fenchel_subdiff(const GridFn& g, double x);

/// sup over points of a inside the window of dist(point, b). Points are
/// sampled along a at `density` (default: the larger grid spacing of a, b).
double graph_excess(const MonotoneGraph& a, const MonotoneGraph& b, const Box& window,
                    double density = 0.0);

using GraphSeq = std::function<MonotoneGraph(int)>;

/// Graphical convergence on the tail [tail_start, horizon] of p: both excess
/// directions at most tol for every tail member.
Verdict graphical_convergence_verdict(const GraphSeq& gs, const MonotoneGraph& g,
                                      const Box& window, const GammaParams& p, double tol,
                                      double density = 0.0);

/// (x, s) with Fenchel-Young gap eps = f(x) + f*(s) - s x.
struct SubgradPair {
  double x = 0.0;
  double s = 0.0;
  double eps = 0.0;
};

/// Fenchel-Young gap of (x, s) for the grid function (f* over the grid).
double fenchel_young_gap(const GridFn& f, double x, double s);

/// Exact pair on subdiff_graph(f) within sqrt(eps) + spacing of p, from the
/// unit-step proximal point of the piecewise-linear interpolant at x + s.
SubgradPair br_repair(const GridFn& f, const SubgradPair& p);

/// Convex function whose staircase is g, with value anchor_val at the grid
/// point nearest anchor_x; +inf outside the graph domain.
GridFn integrate_graph(const MonotoneGraph& g, double anchor_x, double anchor_val);

/// CSV rows `x,slope_lo,slope_hi` with inf/-inf sentinels.
void write_csv(std::ostream& out, const MonotoneGraph& g);

}  // namespace epilim
