#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "epilim/grid_fn.hpp"
#include "epilim/verdict.hpp"

namespace epilim {

/// Finite-horizon realization of the sequential Gamma-limits
///   Gamma-liminf f_n(x) = sup_eps liminf_n inf_{B(x, eps)} f_n
/// with liminf/limsup over n replaced by min/max over the tail window
/// [tail_start, horizon].
struct GammaParams {
  /// Strictly decreasing radii; the last one must be >= the grid spacing.
  std::vector<double> eps_schedule;
  int tail_start = 0;
  int horizon = 0;
  /// A point diverges when the tail sequence is monotone across the two tail
  /// halves and its level moves by more than max(floor, ratio * |level|).
  double divergence_floor = 0.5;
  double divergence_ratio = 0.25;
  /// Sub-window on which verdict residuals are measured (whole grid if empty).
  std::optional<std::pair<double, double>> trust_window;

  /// eps = {4h, 2h, h}, tail_start = horizon / 2.
  static GammaParams defaults(const Grid1D& grid, int horizon);
  void validate(const Grid1D& grid) const;
};

/// Result of a Gamma-limit estimate.
struct GammaEstimate {
  /// min (or max) over the tail of the ball infima, before divergence handling.
  GridFn raw;
  /// raw with diverging points replaced by +inf / -inf.
  GridFn limit;
  std::vector<int> divergence;  // per point: +1 up, -1 down, 0 settled
  /// max |estimate(eps_K) - estimate(eps_{K-1})| over commonly finite points.
  double eps_sensitivity = 0.0;
  /// max |estimate(tail_start) - estimate(min(2 tail_start, N - 1))|.
  double tail_sensitivity = 0.0;

  bool any_diverging() const;
  bool all_diverging() const;
};

GammaEstimate gamma_liminf(const FnSeq& seq, const GammaParams& p);
GammaEstimate gamma_limsup(const FnSeq& seq, const GammaParams& p);

/// Residual between two extended-real grid functions on a window: the larger
/// of the sup-distance at commonly finite points and the Hausdorff distance
/// between their finite domains. Infinite when exactly one side is proper or
/// the -inf sets differ.
struct Residual {
  double value = 0.0;
  double argmax = 0.0;
};
Residual epi_residual(const GridFn& a, const GridFn& b,
                      const std::optional<std::pair<double, double>>& window = std::nullopt);

/// Gamma-convergence to `candidate`: both estimator residuals <= tol.
Verdict gamma_limit_verdict(const FnSeq& seq, const GridFn& candidate, const GammaParams& p,
                            double tol);

/// Sequence of finite sets n -> S_n (n = 1..horizon).
template <class Point>
struct SetSeqOf {
  std::function<std::vector<Point>(int)> provider;
  int horizon = 0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

using SetSeq = SetSeqOf<double>;
using PlanarSetSeq = SetSeqOf<Point2>;

struct SetLimitParams {
  int tail_start = 0;
  /// "Infinitely many" is realized as at least ceil(fraction * tail length).
  double fraction = 0.25;
};

/// Inner limit: candidates y with dist(y, S_n) <= tol for every tail n, for
/// every tol in the schedule.
std::vector<double> set_li(const SetSeq& s, const std::vector<double>& candidates,
                           const std::vector<double>& tol_schedule, const SetLimitParams& p);
/// Outer limit: dist(y, S_n) <= tol for at least the configured fraction of
/// tail indices, for every tol.
std::vector<double> set_ls(const SetSeq& s, const std::vector<double>& candidates,
                           const std::vector<double>& tol_schedule, const SetLimitParams& p);
std::vector<Point2> set_li(const PlanarSetSeq& s, const std::vector<Point2>& candidates,
                           const std::vector<double>& tol_schedule, const SetLimitParams& p);
std::vector<Point2> set_ls(const PlanarSetSeq& s, const std::vector<Point2>& candidates,
                           const std::vector<double>& tol_schedule, const SetLimitParams& p);

/// Rectangular array alpha[k][n] of extended reals.
class DoubleSeq {
 public:
  DoubleSeq(std::size_t rows, std::size_t cols, ExtReal fill = ExtReal(0.0));
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ExtReal& at(std::size_t k, std::size_t n) { return data_[k * cols_ + n]; }
  const ExtReal& at(std::size_t k, std::size_t n) const { return data_[k * cols_ + n]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ExtReal> data_;
};

/// Diagonal selection for interchanging upper limits. Tails are the last
/// quarter of rows and of columns; `bound` is the truncated iterated limsup
/// sup_{n in tail} sup_{k in tail} alpha[k][n] and `achieved` is
/// sup_{k in tail} alpha[k][n_k].
struct DiagonalPath {
  std::vector<std::size_t> columns;  // n_k for every row k
  std::size_t row_tail_start = 0;
  std::size_t col_tail_start = 0;
  ExtReal achieved;
  ExtReal bound;
};

/// Greedy choice: n_k is the smallest column >= max(n_{k-1}, floor(k N / K))
/// (>= the column tail for tail rows) whose tail-sup is within tol of bound.
DiagonalPath diagonal_index(const DoubleSeq& a, double tol = 1e-12);

}  // namespace epilim
