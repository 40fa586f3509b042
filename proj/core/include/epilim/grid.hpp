#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace epilim {

/// Uniform 1-D grid on [lo, hi].
///
/// The sample count is always odd: an even request is bumped to the next odd
/// number so that the midpoint of the window is a grid point (0 on symmetric
/// windows). Points are computed from the midpoint outward, which makes the
/// midpoint exact and the endpoints bit-identical to lo and hi.
class Grid1D {
 public:
  Grid1D(double lo, double hi, std::size_t count);

  /// Parses "lo:hi:count".
  static Grid1D parse(const std::string& spec);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t count() const { return count_; }
  double spacing() const { return spacing_; }
  double point(std::size_t i) const { return (*points_)[i]; }
  const std::vector<double>& points() const { return *points_; }

  bool contains(double x) const;
  /// Index of the grid point closest to x (x is clamped to the window).
  std::size_t nearest_index(double x) const;
  /// Largest index i with point(i) <= x, clamped to [0, count-2].
  std::size_t bracket_index(double x) const;

  std::string to_string() const;

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.count_ == b.count_;
  }

 private:
  double lo_;
  double hi_;
  std::size_t count_;
  double spacing_;
  std::shared_ptr<const std::vector<double>> points_;
};

}  // namespace epilim
