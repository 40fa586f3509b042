#include "epilim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epilim/error.hpp"

namespace epilim {

Grid1D::Grid1D(double lo, double hi, std::size_t count) : lo_(lo), hi_(hi), count_(count) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::BadParameter, "grid requires finite lo < hi");
  }
  if (count < 3) throw Error(ErrorCode::BadParameter, "grid requires at least 3 points");
  if (count % 2 == 0) ++count_;
  const std::size_t m = count_ - 1;
  spacing_ = (hi - lo) / static_cast<double>(m);
  const double center = 0.5 * lo + 0.5 * hi;
  const double half = 0.5 * hi - 0.5 * lo;
  std::vector<double> pts(count_);
  for (std::size_t i = 0; i <= m; ++i) {
    const double t = (2.0 * static_cast<double>(i) - static_cast<double>(m)) / static_cast<double>(m);
    pts[i] = center + half * t;
  }
  pts.front() = lo;
  pts.back() = hi;
  for (std::size_t i = 1; i <= m; ++i) {
    if (!(pts[i] > pts[i - 1])) {
      throw Error(ErrorCode::BadParameter, "grid too fine for double precision");
    }
  }
  points_ = std::make_shared<const std::vector<double>>(std::move(pts));
}

Grid1D Grid1D::parse(const std::string& spec) {
  std::istringstream in(spec);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
    throw Error(ErrorCode::Usage, "grid must be lo:hi:count, got '" + spec + "'");
  }
  try {
    std::size_t used = 0;
    const long long n = std::stoll(c, &used);
    if (used != c.size() || n < 3) throw Error(ErrorCode::Usage, "bad grid count '" + c + "'");
    return Grid1D(std::stod(a), std::stod(b), static_cast<std::size_t>(n));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::Usage, "grid must be lo:hi:count, got '" + spec + "'");
  }
}

bool Grid1D::contains(double x) const { return x >= lo_ && x <= hi_; }

std::size_t Grid1D::bracket_index(double x) const {
  const auto& pts = *points_;
  if (x <= lo_) return 0;
  if (x >= hi_) return count_ - 2;
  auto guess = static_cast<std::ptrdiff_t>(std::floor((x - lo_) / spacing_));
  guess = std::clamp<std::ptrdiff_t>(guess, 0, static_cast<std::ptrdiff_t>(count_) - 2);
  auto i = static_cast<std::size_t>(guess);
  while (i > 0 && pts[i] > x) --i;
  while (i + 2 < count_ && pts[i + 1] <= x) ++i;
  return i;
}

std::size_t Grid1D::nearest_index(double x) const {
  const std::size_t i = bracket_index(x);
  const auto& pts = *points_;
  return (std::abs(pts[i + 1] - x) < std::abs(x - pts[i])) ? i + 1 : i;
}

std::string Grid1D::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << lo_ << ':' << hi_ << ':' << count_;
  return out.str();
}

}  // namespace epilim
