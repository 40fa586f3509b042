#include "epilim/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epilim/error.hpp"

namespace epilim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_proper(const GridFn& f, const char* op) {
  if (!f.is_proper()) throw Error(ErrorCode::ImproperInput, std::string(op) + " needs a proper function");
}

}  // namespace

SlopeGrid default_slope_grid(const GridFn& f, std::optional<std::size_t> count) {
  double steepest = 0.0;
  const Grid1D& g = f.grid();
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (!f[i].is_finite() || !f[i + 1].is_finite()) continue;
    const double q = (f[i + 1].value() - f[i].value()) / (g.point(i + 1) - g.point(i));
    steepest = std::max(steepest, std::abs(q));
  }
  const double half = steepest > 0.0 ? 1.25 * steepest : 1.0;
  return SlopeGrid(Grid1D(-half, half, count.value_or(g.count())));
}

std::vector<std::size_t> lower_hull(const GridFn& f) {
  const Grid1D& g = f.grid();
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_finite()) continue;
    const double px = g.point(i);
    const double py = f[i].value();
    while (hull.size() >= 2) {
      const std::size_t o = hull[hull.size() - 2];
      const std::size_t a = hull.back();
      const double ax = g.point(a) - g.point(o);
      const double ay = f[a].value() - f[o].value();
      const double bx = px - g.point(o);
      const double by = py - f[o].value();
      const double cross = ax * by - ay * bx;
      const double scale = std::abs(ax * by) + std::abs(ay * bx);
      if (cross > 1e-13 * scale) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return hull;
}

TrustInterval trust_interval(const GridFn& f) {
  require_proper(f, "trust_interval");
  const auto [first, last] = *f.finite_range();
  const bool touches_lo = first == 0;
  const bool touches_hi = last + 1 == f.size();
  const auto hull = lower_hull(f);
  if (hull.size() < 2) return {touches_lo ? 0.0 : -kInf, touches_hi ? 0.0 : kInf};
  const Grid1D& g = f.grid();
  auto edge = [&](std::size_t a, std::size_t b) {
    return (f[b].value() - f[a].value()) / (g.point(b) - g.point(a));
  };
  const double lo = touches_lo ? edge(hull[0], hull[1]) : -kInf;
  const double hi = touches_hi ? edge(hull[hull.size() - 2], hull.back()) : kInf;
  return {lo, hi};
}

double trust_radius(const GridFn& f) {
  const TrustInterval t = trust_interval(f);
  return std::max(0.0, std::min(-t.lo, t.hi));
}

GridFn conjugate(const GridFn& f, const SlopeGrid& s) {
  require_proper(f, "conjugate");
  const Grid1D& g = f.grid();
  const auto hull = lower_hull(f);
  auto value_at = [&](double slope, std::size_t k) {
    const std::size_t i = hull[k];
    return slope * g.point(i) - f[i].value();
  };
  std::vector<ExtReal> out;
  out.reserve(s.axis.count());
  std::size_t k = 0;
  for (double slope : s.axis.points()) {
    double best = value_at(slope, k);
    while (k + 1 < hull.size()) {
      const double next = value_at(slope, k + 1);
      if (!(next > best)) break;
      best = next;
      ++k;
    }
    out.emplace_back(best);
  }
  return GridFn(s.axis, std::move(out));
}

GridFn conjugate(const GridFn& f) { return conjugate(f, default_slope_grid(f)); }

GridFn conjugate_oracle(const GridFn& f, const SlopeGrid& s) {
  require_proper(f, "conjugate_oracle");
  const Grid1D& g = f.grid();
  std::vector<ExtReal> out;
  out.reserve(s.axis.count());
  for (double slope : s.axis.points()) {
    double best = -kInf;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!f[i].is_finite()) continue;
      const double v = slope * g.point(i) - f[i].value();
      if (v > best) best = v;
    }
    out.emplace_back(best);
  }
  return GridFn(s.axis, std::move(out));
}

GridFn conjugate_extended(const GridFn& f, const SlopeGrid& s) {
  if (f.has_neg_inf()) return GridFn::constant(s.axis, ExtReal::pos_inf());
  if (!f.is_proper()) return GridFn::constant(s.axis, ExtReal::neg_inf());
  return conjugate(f, s);
}

GridFn biconjugate(const GridFn& f) {
  require_proper(f, "biconjugate");
  const Grid1D& g = f.grid();
  const auto hull = lower_hull(f);
  std::vector<ExtReal> out(f.size(), ExtReal::pos_inf());
  out[hull.front()] = f[hull.front()];
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const std::size_t a = hull[k];
    const std::size_t b = hull[k + 1];
    const double fa = f[a].value();
    const double fb = f[b].value();
    const double span = g.point(b) - g.point(a);
    for (std::size_t i = a + 1; i < b; ++i) {
      out[i] = ExtReal(fa + (fb - fa) * ((g.point(i) - g.point(a)) / span));
    }
    out[b] = f[b];
  }
  return GridFn(g, std::move(out));
}

GridFn inf_conv(const GridFn& f, const GridFn& g) {
  require_proper(f, "inf_conv");
  require_proper(g, "inf_conv");
  if (!(f.grid() == g.grid())) throw Error(ErrorCode::BadParameter, "inf_conv needs a shared grid");
  const Grid1D& grid = f.grid();
  const auto n = static_cast<std::ptrdiff_t>(grid.count());
  const auto offset = static_cast<std::ptrdiff_t>(std::llround(grid.lo() / grid.spacing()));
  std::vector<double> fv(f.size());
  std::vector<double> gv(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    fv[i] = f[i].to_double();
    gv[i] = g[i].to_double();
  }
  std::vector<ExtReal> out(f.size(), ExtReal::pos_inf());
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    double best = kInf;
    // x_i + x_j = x_k  <=>  j = k - i - offset
    const std::ptrdiff_t i_lo = std::max<std::ptrdiff_t>(0, k - offset - (n - 1));
    const std::ptrdiff_t i_hi = std::min<std::ptrdiff_t>(n - 1, k - offset);
    for (std::ptrdiff_t i = i_lo; i <= i_hi; ++i) {
      const double a = fv[static_cast<std::size_t>(i)];
      if (a == kInf) continue;
      const double b = gv[static_cast<std::size_t>(k - i - offset)];
      if (b == kInf) continue;
      if (a + b < best) best = a + b;
    }
    out[static_cast<std::size_t>(k)] = ExtReal(best);
  }
  return GridFn(grid, std::move(out));
}

GridFn support_fn(double lo, double hi, const SlopeGrid& s) {
  if (lo > hi) throw Error(ErrorCode::EmptySet, "support function of an empty interval");
  std::vector<ExtReal> out;
  out.reserve(s.axis.count());
  for (double slope : s.axis.points()) out.emplace_back(std::max(slope * lo, slope * hi));
  return GridFn(s.axis, std::move(out));
}

}  // namespace epilim
