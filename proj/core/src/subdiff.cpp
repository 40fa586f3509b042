#include "epilim/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "epilim/error.hpp"
#include "epilim/io.hpp"

namespace epilim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t grid_index(const Grid1D& g, double x) {
  if (x < g.lo() - 1e-9 * g.spacing() || x > g.hi() + 1e-9 * g.spacing())
    throw Error(ErrorCode::OutOfDomain, "point outside the grid window");
  const std::size_t i = g.nearest_index(x);
  if (std::abs(g.point(i) - x) > 1e-9 * g.spacing())
    throw Error(ErrorCode::BadParameter, "expected a grid point");
  return i;
}

}  // namespace

MonotoneGraph::MonotoneGraph(Grid1D grid, std::size_t first, std::vector<Breakpoint> breakpoints)
    : grid_(std::move(grid)), first_(first), points_(std::move(breakpoints)) {
  if (points_.empty()) throw Error(ErrorCode::EmptySet, "graph without breakpoints");
  if (first_ + points_.size() > grid_.count())
    throw Error(ErrorCode::OutOfDomain, "breakpoints run past the grid");
  const std::size_t last = points_.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    Breakpoint& b = points_[i];
    b.x = grid_.point(first_ + i);
    if (b.slope_hi < b.slope_lo) throw Error(ErrorCode::NotConvex, "slope_lo > slope_hi");
    if ((i > 0 && !b.slope_lo.is_finite()) || (i < last && !b.slope_hi.is_finite()))
      throw Error(ErrorCode::BadParameter, "infinite slope inside the graph domain");
    if (i < last && points_[i + 1].slope_lo < b.slope_hi)
      throw Error(ErrorCode::NotConvex, "graph is not monotone");
  }
  for (std::size_t i = 0; i < last; ++i)
    edge_.push_back(0.5 * (points_[i].slope_hi.value() + points_[i + 1].slope_lo.value()));
  for (std::size_t i = 0; i <= last; ++i) {
    const double lo = points_[i].slope_lo.to_double();
    const double hi = points_[i].slope_hi.to_double();
    vlo_.push_back(i > 0 ? std::min(lo, edge_[i - 1]) : lo);
    vhi_.push_back(i < last ? std::max(hi, edge_[i]) : hi);
  }
}

double MonotoneGraph::edge_slope(std::size_t i) const { return edge_[i]; }

Interval MonotoneGraph::slice(double x) const {
  const std::size_t last = points_.size() - 1;
  const double tol = 1e-9 * grid_.spacing();
  if (x < domain_lo() - tol || x > domain_hi() + tol) return {};
  const std::size_t i = std::min(last, static_cast<std::size_t>(std::max(
                                           0.0, std::round((x - domain_lo()) / grid_.spacing()))));
  if (std::abs(points_[i].x - x) <= tol) return {ExtReal(vlo_[i]), ExtReal(vhi_[i])};
  const std::size_t e = points_[i].x < x ? i : i - 1;
  const double m = edge_slope(e);
  return {ExtReal(m), ExtReal(m)};
}

bool MonotoneGraph::contains(double x, double s, double tol) const {
  return distance(x, s) <= tol;
}

double MonotoneGraph::distance(double x, double s) const {
  const Point2 q = nearest(x, s);
  return std::hypot(x - q.x, s - q.y);
}

Point2 MonotoneGraph::nearest(double x, double s) const {
  const std::size_t last = points_.size() - 1;
  // The graph is monotone: a point above it can only be closest to pieces at
  // or right of x, a point below it only to pieces at or left of x.
  bool look_left = true;
  bool look_right = true;
  if (x >= domain_lo() && x <= domain_hi()) {
    const Interval here = slice(x);
    if (s >= here.lo.to_double() && s <= here.hi.to_double()) return {x, s};
    look_left = s < here.lo.to_double();
    look_right = !look_left;
  }
  double best = kInf;  // squared distance
  Point2 arg{points_.front().x, 0.0};
  auto offer = [&](double px, double ps) {
    const double d = (x - px) * (x - px) + (s - ps) * (s - ps);
    if (d < best) {
      best = d;
      arg = {px, ps};
    }
  };
  auto vertical = [&](std::size_t j) { offer(points_[j].x, std::clamp(s, vlo_[j], vhi_[j])); };
  auto horizontal = [&](std::size_t j) {
    offer(std::clamp(x, points_[j].x, points_[j + 1].x), edge_[j]);
  };
  auto too_far = [&](double gap) { return gap > 0.0 && gap * gap > best; };
  const auto it = std::upper_bound(points_.begin(), points_.end(), x,
                                   [](double v, const Breakpoint& b) { return v < b.x; });
  const std::size_t k = it == points_.begin() ? 0 : static_cast<std::size_t>(it - points_.begin()) - 1;
  vertical(k);
  if (k < last) horizontal(k);
  if (look_left) {
    for (std::size_t j = k; j-- > 0;) {
      if (too_far(x - points_[j + 1].x)) break;
      horizontal(j);
      vertical(j);
    }
  }
  if (look_right) {
    for (std::size_t j = k + 1; j <= last; ++j) {
      if (too_far(points_[j].x - x)) break;
      vertical(j);
      if (j < last) horizontal(j);
    }
  }
  return arg;
}

MonotoneGraph subdiff_graph(const GridFn& f) {
  if (!f.is_proper()) throw Error(ErrorCode::ImproperInput, "subdiff_graph needs a proper function");
  if (!is_convex(f, 1e-9)) throw Error(ErrorCode::NotConvex, "subdiff_graph needs a convex function");
  const Grid1D& g = f.grid();
  const auto [a, b] = *f.finite_range();
  // Edge quotients, forced monotone to absorb roundoff.
  std::vector<double> edge;
  for (std::size_t i = a; i < b; ++i) {
    double q = (f[i + 1].value() - f[i].value()) / (g.point(i + 1) - g.point(i));
    if (!edge.empty()) q = std::max(q, edge.back());
    edge.push_back(q);
  }
  std::vector<Breakpoint> pts;
  for (std::size_t i = a; i <= b; ++i) {
    const std::size_t k = i - a;
    const ExtReal lo = k == 0 ? ExtReal::neg_inf() : ExtReal(edge[k - 1]);
    const ExtReal hi = i == b ? ExtReal::pos_inf() : ExtReal(edge[k]);
    pts.push_back({g.point(i), lo, hi});
  }
  return MonotoneGraph(g, a, std::move(pts));
}

Interval fenchel_subdiff(const GridFn& g, double x) {
  const Grid1D& grid = g.grid();
  const std::size_t i = grid_index(grid, x);
  if (!g[i].is_finite() || g.has_neg_inf()) return {};
  const double gx = g[i].value();
  const double xi = grid.point(i);
  double lo = -kInf;
  double hi = kInf;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (u == i || !g[u].is_finite()) continue;
    const double q = (g[u].value() - gx) / (grid.point(u) - xi);
    if (u < i)
      lo = std::max(lo, q);
    else
      hi = std::min(hi, q);
  }
  if (lo > hi) return {};
  return {ExtReal(lo), ExtReal(hi)};
}

double graph_excess(const MonotoneGraph& a, const MonotoneGraph& b, const Box& w, double density) {
  if (!(w.x_lo < w.x_hi) || !(w.s_lo < w.s_hi))
    throw Error(ErrorCode::BadParameter, "degenerate window");
  const double d =
      density > 0.0 ? density : std::max(a.grid().spacing(), b.grid().spacing());
  double worst = 0.0;
  bool any = false;
  auto visit = [&](double x, double s) {
    any = true;
    worst = std::max(worst, b.distance(x, s));
  };
  // Samples [lo, hi] at step <= d, both ends included.
  auto sweep = [d](double lo, double hi, auto&& fn) {
    const double len = hi - lo;
    const auto steps = static_cast<std::size_t>(std::ceil(len / d - 1e-9));
    if (steps == 0) {
      fn(lo);
      return;
    }
    for (std::size_t j = 0; j <= steps; ++j)
      fn(j == steps ? hi : lo + len * static_cast<double>(j) / static_cast<double>(steps));
  };
  const auto& pts = a.breakpoints();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i].x;
    if (x >= w.x_lo && x <= w.x_hi) {
      const Interval iv = a.slice(x);
      const double lo = std::max(iv.lo.to_double(), w.s_lo);
      const double hi = std::min(iv.hi.to_double(), w.s_hi);
      if (lo <= hi) sweep(lo, hi, [&](double s) { visit(x, s); });
    }
    if (i + 1 < pts.size()) {
      const double s = a.edge_slope(i);
      const double lo = std::max(x, w.x_lo);
      const double hi = std::min(pts[i + 1].x, w.x_hi);
      if (s >= w.s_lo && s <= w.s_hi && lo <= hi) sweep(lo, hi, [&](double t) { visit(t, s); });
    }
  }
  if (!any) throw Error(ErrorCode::EmptyWindow, "graph does not meet the window");
  return worst;
}

Verdict graphical_convergence_verdict(const GraphSeq& gs, const MonotoneGraph& g, const Box& window,
                                      const GammaParams& p, double tol, double density) {
  if (p.tail_start < 1 || p.tail_start >= p.horizon)
    throw Error(ErrorCode::BadParameter, "need 1 <= tail_start < horizon");
  const double d = density > 0.0 ? density : g.grid().spacing();
  Verdict v;
  std::vector<double> ns, ls, li;
  double worst = 0.0;
  double worst_n = p.tail_start;
  bool vacuous = false;
  for (int n = p.tail_start; n <= p.horizon; ++n) {
    const MonotoneGraph gn = gs(n);
    double e_ls = 0.0;
    try {
      e_ls = graph_excess(gn, g, window, std::max(d, gn.grid().spacing()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyWindow) throw;
      vacuous = true;
    }
    const double e_li = graph_excess(g, gn, window, std::max(d, gn.grid().spacing()));
    ns.push_back(n);
    ls.push_back(e_ls);
    li.push_back(e_li);
    if (std::max(e_ls, e_li) > worst) {
      worst = std::max(e_ls, e_li);
      worst_n = n;
    }
  }
  v.residual_max = worst;
  v.residual_argmax = worst_n;
  v.outcome = worst <= tol ? Outcome::Pass : Outcome::Fail;
  const double max_ls = *std::max_element(ls.begin(), ls.end());
  const double max_li = *std::max_element(li.begin(), li.end());
  v.diagnostics.push_back("Ls-side excess " + format_double(max_ls));
  v.diagnostics.push_back("Li-side excess " + format_double(max_li));
  if (max_li > tol) v.diagnostics.emplace_back("Li side fails");
  if (max_ls > tol) v.diagnostics.emplace_back("Ls side fails");
  if (vacuous) v.diagnostics.emplace_back("some members miss the window");
  v.truncation_params = {{"horizon", p.horizon},
                         {"tail_start", p.tail_start},
                         {"sampling_density", d},
                         {"tol", tol},
                         {"window_x_lo", window.x_lo},
                         {"window_x_hi", window.x_hi},
                         {"window_s_lo", window.s_lo},
                         {"window_s_hi", window.s_hi}};
  v.witness["n"] = std::move(ns);
  v.witness["ls_excess"] = std::move(ls);
  v.witness["li_excess"] = std::move(li);
  return v;
}

double fenchel_young_gap(const GridFn& f, double x, double s) {
  const ExtReal fx = eval(f, x);
  if (!fx.is_finite()) return kInf;
  const Grid1D& g = f.grid();
  double conj = -kInf;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].is_finite()) conj = std::max(conj, s * g.point(i) - f[i].value());
  return fx.value() + conj - s * x;
}

SubgradPair br_repair(const GridFn& f, const SubgradPair& p) {
  const MonotoneGraph graph = subdiff_graph(f);
  const auto& pts = graph.breakpoints();
  const double h = f.grid().spacing();
  // The proximal point of the interpolant at z is where the line
  // s = z - x meets the staircase.
  const double z = p.x + p.s;
  double xr = pts.back().x;
  double sr = z - xr;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Interval iv = graph.slice(pts[i].x);
    const double t = z - pts[i].x;
    if (t <= iv.hi.to_double()) {
      if (t >= iv.lo.to_double()) {
        xr = pts[i].x;
        sr = t;
      } else {
        // Crossing lies inside edge i - 1; snap to its nearer end.
        const double m = graph.edge_slope(i - 1);
        const double xe = z - m;
        xr = (xe - pts[i - 1].x <= pts[i].x - xe) ? pts[i - 1].x : pts[i].x;
        sr = m;
      }
      break;
    }
  }
  const double root = std::sqrt(std::max(0.0, p.eps));
  const double slack = 1e-9 * (1.0 + std::abs(p.x) + std::abs(p.s));
  if (std::abs(xr - p.x) > root + h + slack || std::abs(sr - p.s) > root + h + slack)
    throw Error(ErrorCode::WindowTooSmall, "no exact pair within the sqrt(eps) bounds");
  return {xr, sr, fenchel_young_gap(f, xr, sr)};
}

GridFn integrate_graph(const MonotoneGraph& g, double anchor_x, double anchor_val) {
  const Grid1D& grid = g.grid();
  const auto& pts = g.breakpoints();
  const std::size_t ai = grid.nearest_index(std::clamp(anchor_x, grid.lo(), grid.hi()));
  if (ai < g.first_index() || ai >= g.first_index() + pts.size())
    throw Error(ErrorCode::OutOfDomain, "anchor outside the graph domain");
  std::vector<ExtReal> vals(grid.count(), ExtReal::pos_inf());
  const std::size_t k0 = ai - g.first_index();
  std::vector<double> acc(pts.size());
  acc[k0] = anchor_val;
  for (std::size_t k = k0; k + 1 < pts.size(); ++k)
    acc[k + 1] = acc[k] + (pts[k + 1].x - pts[k].x) * g.edge_slope(k);
  for (std::size_t k = k0; k-- > 0;) acc[k] = acc[k + 1] - (pts[k + 1].x - pts[k].x) * g.edge_slope(k);
  for (std::size_t k = 0; k < pts.size(); ++k) vals[g.first_index() + k] = acc[k];
  return GridFn(grid, std::move(vals));
}

void write_csv(std::ostream& out, const MonotoneGraph& g) {
  out << "x,slope_lo,slope_hi\n";
  for (const Breakpoint& b : g.breakpoints())
    out << format_double(b.x) << ',' << b.slope_lo.to_string() << ',' << b.slope_hi.to_string()
        << '\n';
}

}  // namespace epilim
