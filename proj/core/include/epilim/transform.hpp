#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "epilim/grid_fn.hpp"

namespace epilim {

/// Grid on the dual (slope) axis. A distinct type so primal and dual grids
/// cannot be swapped by accident.
struct SlopeGrid {
  explicit SlopeGrid(Grid1D g) : axis(std::move(g)) {}
  Grid1D axis;
};

/// Symmetric slope window [-S, S] with S = 1.25 * max |difference quotient|
/// of f (S = 1 for constant f). Same sample count as f unless overridden.
SlopeGrid default_slope_grid(const GridFn& f, std::optional<std::size_t> count = std::nullopt);

/// Slopes at which the conjugate of the window-truncated function agrees with
/// the conjugate of the function itself. A side whose finite region stops
/// inside the window is unbounded.
struct TrustInterval {
  double lo;
  double hi;
  bool contains(double s) const { return s >= lo && s <= hi; }
};
TrustInterval trust_interval(const GridFn& f);
/// min(-lo, hi) of trust_interval, clamped at 0.
double trust_radius(const GridFn& f);

/// Indices of the lower convex hull of the finite samples, left to right.
/// Points within relative 1e-13 of a hull edge are treated as collinear.
std::vector<std::size_t> lower_hull(const GridFn& f);

/// Discrete Legendre-Fenchel transform max_i (s x_i - f(x_i)), computed by a
/// linear-time merge of the sorted slopes against the lower hull.
GridFn conjugate(const GridFn& f, const SlopeGrid& s);
GridFn conjugate(const GridFn& f);  // default slope grid

/// Direct O(n m) maximization; ties resolved toward the smaller index.
GridFn conjugate_oracle(const GridFn& f, const SlopeGrid& s);

/// Conjugate that also accepts improper inputs: f == +inf gives -inf
/// everywhere, any -inf sample gives +inf everywhere.
GridFn conjugate_extended(const GridFn& f, const SlopeGrid& s);

/// Closed convex hull of f on its window (the double conjugate), evaluated on
/// f's own grid. Hull vertices keep their sample values bit-for-bit.
GridFn biconjugate(const GridFn& f);

/// Inf-convolution min_{x1 + x2 = x} f(x1) + g(x2) over grid splits. Both
/// inputs must share a grid; the split index offset is round(lo / spacing).
GridFn inf_conv(const GridFn& f, const GridFn& g);

/// sigma_[lo,hi](s) = max(s lo, s hi).
GridFn support_fn(double lo, double hi, const SlopeGrid& s);

}  // namespace epilim
