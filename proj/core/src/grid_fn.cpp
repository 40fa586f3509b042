#include "epilim/grid_fn.hpp"

#include <algorithm>
#include <cmath>

#include "epilim/error.hpp"

namespace epilim {

GridFn::GridFn(Grid1D grid, std::vector<ExtReal> values, NegInfPolicy policy)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.count()) {
    throw Error(ErrorCode::BadParameter, "value count does not match grid");
  }
  if (policy == NegInfPolicy::Reject && has_neg_inf()) {
    throw Error(ErrorCode::ImproperInput, "-inf sample in a function that does not allow it");
  }
}

GridFn GridFn::sample(const Grid1D& grid, const std::function<double(double)>& rule) {
  std::vector<ExtReal> vals;
  vals.reserve(grid.count());
  for (double x : grid.points()) vals.emplace_back(rule(x));
  return GridFn(grid, std::move(vals), NegInfPolicy::Allow);
}

GridFn GridFn::constant(const Grid1D& grid, ExtReal value) {
  return GridFn(grid, std::vector<ExtReal>(grid.count(), value), NegInfPolicy::Allow);
}

bool GridFn::is_proper() const {
  return !has_neg_inf() &&
         std::any_of(values_.begin(), values_.end(), [](const ExtReal& v) { return v.is_finite(); });
}

bool GridFn::has_neg_inf() const {
  return std::any_of(values_.begin(), values_.end(), [](const ExtReal& v) { return v.is_neg_inf(); });
}

std::optional<std::pair<std::size_t, std::size_t>> GridFn::finite_range() const {
  std::optional<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i].is_finite()) continue;
    if (!out) out.emplace(i, i);
    out->second = i;
  }
  return out;
}

GridFn GridFn::plus(const std::function<double(double)>& rule) const {
  std::vector<ExtReal> vals(values_.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = values_[i] + ExtReal(rule(grid_.point(i)));
  return GridFn(grid_, std::move(vals), NegInfPolicy::Allow);
}

ExtReal eval(const GridFn& f, double x) {
  const Grid1D& g = f.grid();
  if (!(x >= g.lo() && x <= g.hi())) {
    throw Error(ErrorCode::OutOfDomain, "eval outside [" + g.to_string() + "]");
  }
  const std::size_t i = g.bracket_index(x);
  const double x0 = g.point(i);
  const double x1 = g.point(i + 1);
  if (x == x0) return f[i];
  if (x == x1) return f[i + 1];
  const ExtReal& v0 = f[i];
  const ExtReal& v1 = f[i + 1];
  if (v0.is_pos_inf() || v1.is_pos_inf()) return ExtReal::pos_inf();
  if (v0.is_neg_inf() || v1.is_neg_inf()) return ExtReal::neg_inf();
  const double t = (x - x0) / (x1 - x0);
  return ExtReal(v0.value() + t * (v1.value() - v0.value()));
}

ExtReal inf_over_ball(const GridFn& f, double x, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::BadParameter, "ball radius must be positive");
  const Grid1D& g = f.grid();
  const double slack = 1e-9 * g.spacing();
  const double xc = std::clamp(x, g.lo(), g.hi());
  const std::size_t c = g.nearest_index(xc);
  ExtReal best = ExtReal::pos_inf();
  bool any = false;
  for (std::size_t i = c + 1; i-- > 0;) {
    if (std::abs(g.point(i) - x) > eps + slack) {
      if (g.point(i) < x) break;
      continue;
    }
    best = min(best, f[i]);
    any = true;
  }
  for (std::size_t i = c + 1; i < g.count(); ++i) {
    if (std::abs(g.point(i) - x) > eps + slack) {
      if (g.point(i) > x) break;
      continue;
    }
    best = min(best, f[i]);
    any = true;
  }
  if (!any) return eval(f, xc);
  return best;
}

bool is_convex(const GridFn& f, double tol) {
  if (f.has_neg_inf()) return false;
  const auto range = f.finite_range();
  if (!range) return false;
  const auto [first, last] = *range;
  for (std::size_t i = first; i <= last; ++i) {
    if (!f[i].is_finite()) return false;
  }
  for (std::size_t i = first + 1; i + 1 <= last; ++i) {
    const double d2 = f[i - 1].value() - 2.0 * f[i].value() + f[i + 1].value();
    if (d2 < -tol) return false;
  }
  return true;
}

GridFn resample(const GridFn& f, const Grid1D& target) {
  if (target == f.grid()) return f;
  const Grid1D& g = f.grid();
  const double slack = 1e-12 * (g.hi() - g.lo());
  if (target.lo() < g.lo() - slack || target.hi() > g.hi() + slack) {
    throw Error(ErrorCode::OutOfDomain, "resample target exceeds source window");
  }
  std::vector<ExtReal> vals;
  vals.reserve(target.count());
  for (double x : target.points()) vals.push_back(eval(f, std::clamp(x, g.lo(), g.hi())));
  return GridFn(target, std::move(vals), NegInfPolicy::Allow);
}

FnSeq::FnSeq(Grid1D grid, Provider provider, int horizon)
    : grid_(std::move(grid)), provider_(std::move(provider)), horizon_(horizon) {
  if (horizon_ < 1) throw Error(ErrorCode::BadParameter, "horizon must be positive");
}

FnSeq FnSeq::from_rule(const Grid1D& grid, std::function<double(int, double)> rule, int horizon) {
  return FnSeq(
      grid,
      [grid, rule = std::move(rule)](int n) {
        return GridFn::sample(grid, [&](double x) { return rule(n, x); });
      },
      horizon);
}

GridFn FnSeq::at(int n) const {
  if (n < 1) throw Error(ErrorCode::BadParameter, "sequence index must be >= 1");
  GridFn f = provider_(n);
  if (!(f.grid() == grid_)) throw Error(ErrorCode::BadParameter, "family member on a foreign grid");
  return f;
}

std::vector<GridFn> FnSeq::materialize(int first, int last) const {
  std::vector<GridFn> out;
  out.reserve(static_cast<std::size_t>(std::max(0, last - first + 1)));
  for (int n = first; n <= last; ++n) out.push_back(at(n));
  return out;
}

}  // namespace epilim
