#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "epilim/ext_real.hpp"
#include "epilim/grid.hpp"

namespace epilim {

enum class NegInfPolicy { Reject, Allow };

/// Extended-real function sampled on a uniform grid. Immutable.
class GridFn {
 public:
  /// NegInf samples are rejected unless `policy` is Allow (only conjugates of
  /// improper functions legitimately take that value).
  GridFn(Grid1D grid, std::vector<ExtReal> values,
         NegInfPolicy policy = NegInfPolicy::Reject);

  /// Samples a closed-form rule; +/-infinity returned by the rule maps onto
  /// the sentinels.
  static GridFn sample(const Grid1D& grid, const std::function<double(double)>& rule);
  static GridFn constant(const Grid1D& grid, ExtReal value);

  const Grid1D& grid() const { return grid_; }
  const std::vector<ExtReal>& values() const { return values_; }
  const ExtReal& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  bool is_proper() const;
  bool has_neg_inf() const;
  /// First and last index holding a finite value.
  std::optional<std::pair<std::size_t, std::size_t>> finite_range() const;

  /// Pointwise sum with a finite rule sampled on the same grid.
  GridFn plus(const std::function<double(double)>& rule) const;

 private:
  Grid1D grid_;
  std::vector<ExtReal> values_;
};

/// Piecewise-linear interpolation; PosInf if either bracketing sample is PosInf.
ExtReal eval(const GridFn& f, double x);

/// Minimum of f over grid points in the closed ball |y - x| <= eps, clipped to
/// the window. Falls back to eval(f, x) if the ball holds no grid point.
ExtReal inf_over_ball(const GridFn& f, double x, double eps);

/// Discrete convexity: contiguous finite region and second differences
/// >= -tol on it.
bool is_convex(const GridFn& f, double tol);

GridFn resample(const GridFn& f, const Grid1D& target);

/// Indexed family n -> f_n (n = 1..horizon) sharing one grid.
class FnSeq {
 public:
  using Provider = std::function<GridFn(int)>;

  FnSeq(Grid1D grid, Provider provider, int horizon);
  /// Family built from a closed-form rule (n, x) -> f_n(x).
  static FnSeq from_rule(const Grid1D& grid, std::function<double(int, double)> rule,
                         int horizon);

  const Grid1D& grid() const { return grid_; }
  int horizon() const { return horizon_; }
  GridFn at(int n) const;
  FnSeq with_horizon(int horizon) const { return {grid_, provider_, horizon}; }
  /// f_n for n in [first, last], materialized once.
  std::vector<GridFn> materialize(int first, int last) const;

 private:
  Grid1D grid_;
  Provider provider_;
  int horizon_;
};

}  // namespace epilim
