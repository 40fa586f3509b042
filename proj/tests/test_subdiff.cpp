#include <cmath>
#include <random>
#include <sstream>

#include "check.hpp"
#include "epilim/subdiff.hpp"
#include "oracles.hpp"

using namespace epilim;

namespace {

// Distance to the staircase by scanning every vertical and horizontal piece.
double brute_distance(const MonotoneGraph& g, double x, double s) {
  const auto& b = g.breakpoints();
  double best = oracle::kInf;
  for (std::size_t j = 0; j < b.size(); ++j) {
    double lo = b[j].slope_lo.to_double(), hi = b[j].slope_hi.to_double();
    if (j > 0) lo = std::min(lo, g.edge_slope(j - 1));
    if (j + 1 < b.size()) hi = std::max(hi, g.edge_slope(j));
    best = std::min(best, std::hypot(x - b[j].x, s - std::clamp(s, lo, hi)));
    if (j + 1 < b.size())
      best = std::min(best, std::hypot(x - std::clamp(x, b[j].x, b[j + 1].x), s - g.edge_slope(j)));
  }
  return best;
}

}  // namespace

TEST_SUITE("subdiff") {

TEST_CASE("staircase of |x|") {
  const GridFn f = GridFn::sample(Grid1D(-1.0, 1.0, 5), [](double x) { return std::abs(x); });
  const MonotoneGraph g = subdiff_graph(f);
  const auto& b = g.breakpoints();
  REQUIRE(b.size() == 5);
  CHECK(b[0].slope_lo.is_neg_inf());
  CHECK(b[0].slope_hi == ExtReal(-1.0));
  CHECK(b[2].slope_lo == ExtReal(-1.0));
  CHECK(b[2].slope_hi == ExtReal(1.0));
  CHECK(b[4].slope_hi.is_pos_inf());
  CHECK(g.edge_slope(1) == -1.0);
  CHECK(g.slice(0.0).contains(0.3));
  CHECK(g.slice(0.25).lo == ExtReal(1.0));
  CHECK(g.slice(-0.25).hi == ExtReal(-1.0));
  CHECK(g.slice(3.0).empty());
  CHECK(g.contains(1.0, 50.0, 0.0));
  CHECK(g.distance(0.25, 0.0) == 0.25);
  std::ostringstream os;
  write_csv(os, g);
  CHECK(os.str().rfind("x,slope_lo,slope_hi\n-1,-inf,-1\n", 0) == 0);
}

TEST_CASE("domain restricted functions get normal-cone ends") {
  const GridFn f = GridFn::sample(Grid1D(-2.0, 2.0, 9), [](double x) { return std::abs(x) <= 1.0 ? x * x : oracle::kInf; });
  const MonotoneGraph g = subdiff_graph(f);
  CHECK(g.domain_lo() == -1.0);
  CHECK(g.domain_hi() == 1.0);
  CHECK(g.first_index() == 2);
  CHECK(g.breakpoints().front().slope_lo.is_neg_inf());
}

TEST_CASE("invalid graphs") {
  const Grid1D grid(0.0, 1.0, 5);
  CHECK_ERROR_CODE(MonotoneGraph(grid, 0, {}), ErrorCode::EmptySet);
  CHECK_ERROR_CODE(MonotoneGraph(grid, 0, {{0, 1.0, 0.0}}), ErrorCode::NotConvex);
  CHECK_ERROR_CODE(MonotoneGraph(grid, 0, {{0, 0.0, 1.0}, {0, 0.5, 0.5}}), ErrorCode::NotConvex);
  CHECK_ERROR_CODE(MonotoneGraph(grid, 4, {{0, 0.0, 1.0}, {0, 1.0, 1.0}}), ErrorCode::OutOfDomain);
  CHECK_ERROR_CODE(subdiff_graph(GridFn::sample(grid, [](double x) { return -x * x; })), ErrorCode::NotConvex);
}

TEST_CASE("nearest point agrees with a full scan") {
  std::mt19937_64 rng(21);
  const Grid1D grid(-2.0, 2.0, 65);
  std::uniform_real_distribution<double> ux(-2.5, 2.5), us(-4.0, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const MonotoneGraph g = subdiff_graph(oracle::random_convex_pl(rng, grid));
    for (int q = 0; q < 200; ++q) {
      const double x = ux(rng), s = us(rng);
      const Point2 p = g.nearest(x, s);
      const double d = g.distance(x, s);
      CHECK(d == doctest::Approx(brute_distance(g, x, s)).epsilon(1e-12));
      CHECK(std::hypot(p.x - x, p.y - s) == doctest::Approx(d).epsilon(1e-12));
      CHECK(g.contains(p.x, p.y, 1e-9));
    }
  }
}

TEST_CASE("Fenchel subdifferential on the grid") {
  const Grid1D grid(-1.0, 1.0, 9);
  const GridFn f = GridFn::sample(grid, [](double x) { return std::abs(x); });
  const Interval at0 = fenchel_subdiff(f, 0.0);
  CHECK(at0.lo == ExtReal(-1.0));
  CHECK(at0.hi == ExtReal(1.0));
  const Interval end = fenchel_subdiff(f, 1.0);
  CHECK(end.lo == ExtReal(1.0));
  CHECK(end.hi.is_pos_inf());
  CHECK_ERROR_CODE(fenchel_subdiff(f, 0.1), ErrorCode::BadParameter);
  const GridFn hole = GridFn::sample(grid, [](double x) { return x > 0.5 ? oracle::kInf : 0.0; });
  CHECK(fenchel_subdiff(hole, 1.0).empty());
}

TEST_CASE("graph excess") {
  const Grid1D grid(-2.0, 2.0, 129);
  const MonotoneGraph a = subdiff_graph(GridFn::sample(grid, [](double x) { return std::abs(x); }));
  const MonotoneGraph b = subdiff_graph(GridFn::sample(grid, [](double x) { return std::abs(x - 0.25); }));
  const Box box{-1.0, 1.0, -2.0, 2.0};
  CHECK(graph_excess(a, a, box) == 0.0);
  const double e = graph_excess(a, b, box);
  CHECK(e == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(graph_excess(b, a, box) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_ERROR_CODE(graph_excess(a, b, Box{5.0, 6.0, -1.0, 1.0}), ErrorCode::EmptyWindow);
  CHECK_ERROR_CODE(graph_excess(a, b, Box{1.0, 1.0, -1.0, 1.0}), ErrorCode::BadParameter);
}

TEST_CASE("graphical convergence of translations") {
  const Grid1D grid(-2.0, 2.0, 257);
  const GraphSeq gs = [&grid](int n) {
    return subdiff_graph(GridFn::sample(grid, [n](double x) { return std::abs(x - 1.0 / n); }));
  };
  const MonotoneGraph lim = subdiff_graph(GridFn::sample(grid, [](double x) { return std::abs(x); }));
  GammaParams p = GammaParams::defaults(grid, 128);
  const Verdict v = graphical_convergence_verdict(gs, lim, Box{-1.5, 1.5, -2.0, 2.0}, p, 2.0 / 64 + grid.spacing());
  CHECK(v.outcome == Outcome::Pass);
  CHECK(v.residual_max <= 1.0 / 64 + 1e-12);
  CHECK(v.witness.at("n").size() == 65);
}

TEST_CASE("Brondsted-Rockafellar repair") {
  std::mt19937_64 rng(42);
  const Grid1D grid(-2.0, 2.0, 257);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), us(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const GridFn f = oracle::random_convex_pl(rng, grid, 6, 2.0);
    const MonotoneGraph g = subdiff_graph(f);
    for (int q = 0; q < 20; ++q) {
      const double x = grid.point(grid.nearest_index(ux(rng)));
      const double s = us(rng);
      const double eps = fenchel_young_gap(f, x, s);
      CHECK(eps >= -1e-12);
      CHECK(eps == doctest::Approx(oracle::fy_gap(f, x, s)).epsilon(1e-12));
      const SubgradPair r = br_repair(f, {x, s, eps});
      CHECK(std::abs(fenchel_young_gap(f, r.x, r.s)) <= 1e-9);
      CHECK(g.contains(r.x, r.s, 1e-9));
      CHECK(std::abs(r.x - x) <= std::sqrt(eps) + grid.spacing() + 1e-9);
      CHECK(std::abs(r.s - s) <= std::sqrt(eps) + grid.spacing() + 1e-9);
    }
  }
}

TEST_CASE("integration inverts the staircase") {
  std::mt19937_64 rng(6);
  const Grid1D grid(-1.0, 1.0, 129);
  for (int trial = 0; trial < 10; ++trial) {
    const GridFn f = oracle::random_convex_pl(rng, grid);
    const GridFn back = integrate_graph(subdiff_graph(f), 0.0, f[grid.nearest_index(0.0)].value());
    for (std::size_t i = 0; i < grid.count(); ++i) CHECK(back[i].value() == doctest::Approx(f[i].value()).epsilon(1e-9));
  }
  const MonotoneGraph g = subdiff_graph(GridFn::sample(grid, [](double x) { return std::abs(x) <= 0.5 ? x : oracle::kInf; }));
  CHECK(integrate_graph(g, 0.0, 0.0)[0].is_pos_inf());
  CHECK_ERROR_CODE(integrate_graph(g, 0.9, 0.0), ErrorCode::OutOfDomain);
}

}  // TEST_SUITE
