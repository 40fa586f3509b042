#include <cmath>
#include <random>

#include "check.hpp"
#include "epilim/families.hpp"
#include "epilim/gamma.hpp"
#include "oracles.hpp"

using namespace epilim;

namespace {

FnSeq noisy_family(const Grid1D& g, int horizon, std::uint64_t seed) {
  return FnSeq::from_rule(g, [seed](int n, double x) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    return x * x + u(rng) * std::cos(7.0 * x + n);
  }, horizon);
}

}  // namespace

TEST_SUITE("gamma") {

TEST_CASE("estimators agree with the open-ball definition") {
  const Grid1D g(-1.0, 1.0, 33);
  const FnSeq s = noisy_family(g, 24, 4);
  const GammaParams p = GammaParams::defaults(g, 24);
  const GammaEstimate lo = gamma_liminf(s, p), up = gamma_limsup(s, p);
  const auto want_lo = oracle::gamma_raw(s, p, false), want_up = oracle::gamma_raw(s, p, true);
  for (std::size_t i = 0; i < g.count(); ++i) {
    CHECK(lo.raw[i].value() == want_lo[i]);
    CHECK(up.raw[i].value() == want_up[i]);
    CHECK(lo.raw[i].value() <= up.raw[i].value());
  }
}

TEST_CASE("constant sequences are their own limit") {
  const Grid1D g(-2.0, 2.0, 129);
  const FnSeq s = FnSeq::from_rule(g, [](int, double x) { return std::abs(x); }, 64);
  const GammaParams p = GammaParams::defaults(g, 64);
  const GammaEstimate lo = gamma_liminf(s, p);
  const GridFn f = GridFn::sample(g, [](double x) { return std::abs(x); });
  CHECK(epi_residual(lo.limit, f).value == 0.0);
  CHECK_FALSE(lo.any_diverging());
}

TEST_CASE("frozen residuals on the default grid") {
  // Quadratic family at N = 512, T = 256; values are exact binary fractions.
  const FamilySpec& q = find_family("quadratic");
  const Grid1D g = q.default_grid();
  const GammaParams p = q.params(g, 512);
  const Verdict v = gamma_limit_verdict(q.sequence(g, 512), q.candidate_on(g), p, default_tolerance(g, 256));
  CHECK(v.outcome == Outcome::Pass);
  CHECK(v.residual_max == 0.00439453125);
  const FamilySpec& t = find_family("translation");
  const Verdict vt = gamma_limit_verdict(t.sequence(g, 512), t.candidate_on(g), t.params(g, 512), default_tolerance(g, 256));
  CHECK(vt.residual_max == 0.00390625);
}

TEST_CASE("upward divergence is reported as +inf") {
  const FamilySpec& b = find_family("blowup");
  const Grid1D g(-2.0, 2.0, 65);
  const GammaEstimate lo = gamma_liminf(b.sequence(g, 128), GammaParams::defaults(g, 128));
  CHECK(lo.all_diverging());
  for (const ExtReal& v : lo.limit.values()) CHECK(v.is_pos_inf());
  for (int d : lo.divergence) CHECK(d == 1);
}

TEST_CASE("oscillation is not divergence") {
  const FamilySpec& a = find_family("alternating");
  const Grid1D g(-2.0, 2.0, 65);
  const GammaParams p = GammaParams::defaults(g, 128);
  const GammaEstimate lo = gamma_liminf(a.sequence(g, 128), p), up = gamma_limsup(a.sequence(g, 128), p);
  CHECK_FALSE(lo.any_diverging());
  CHECK_FALSE(up.any_diverging());
  const GridFn abs1 = GridFn::sample(g, [](double x) { return std::abs(x) + 1.0; });
  CHECK(epi_residual(up.limit, abs1).value <= 4 * g.spacing());
}

TEST_CASE("epi residual") {
  const Grid1D g(-1.0, 1.0, 9);
  const GridFn a = GridFn::sample(g, [](double x) { return x; });
  const GridFn b = GridFn::sample(g, [](double x) { return x + 0.125; });
  const Residual r = epi_residual(a, b);
  CHECK(r.value == 0.125);
  // Finite domains [-0.5, 0.5] vs [-1, 1]: Hausdorff distance 0.5.
  const GridFn c = GridFn::sample(g, [](double x) { return std::abs(x) <= 0.5 ? x : oracle::kInf; });
  CHECK(epi_residual(a, c).value == 0.5);
  CHECK(epi_residual(a, c, std::make_pair(-0.5, 0.5)).value == 0.0);
  CHECK(std::isinf(epi_residual(a, GridFn::constant(g, ExtReal::pos_inf())).value));
  CHECK(epi_residual(GridFn::constant(g, ExtReal::pos_inf()), GridFn::constant(g, ExtReal::pos_inf())).value == 0.0);
  const GridFn n1(g, std::vector<ExtReal>(9, ExtReal::neg_inf()), NegInfPolicy::Allow);
  CHECK(std::isinf(epi_residual(a, GridFn(g, {ExtReal::neg_inf(), 0, 0, 0, 0, 0, 0, 0, 0}, NegInfPolicy::Allow)).value));
  CHECK(epi_residual(n1, n1).value == 0.0);
}

TEST_CASE("parameter validation") {
  const Grid1D g(-1.0, 1.0, 33);
  GammaParams p = GammaParams::defaults(g, 16);
  CHECK(p.tail_start == 8);
  CHECK(p.eps_schedule == std::vector<double>{4 * g.spacing(), 2 * g.spacing(), g.spacing()});
  p.eps_schedule = {g.spacing(), 2 * g.spacing()};
  CHECK_ERROR_CODE(p.validate(g), ErrorCode::BadParameter);
  p = GammaParams::defaults(g, 16);
  p.eps_schedule = {g.spacing() / 2};
  CHECK_ERROR_CODE(p.validate(g), ErrorCode::BadParameter);
  p = GammaParams::defaults(g, 16);
  p.tail_start = 16;
  CHECK_ERROR_CODE(p.validate(g), ErrorCode::BadParameter);
}

TEST_CASE("set limits agree with the definition") {
  const SetSeq s{[](int n) {
                   std::mt19937_64 r(100 + n);
                   std::uniform_real_distribution<double> w(-1.0, 1.0);
                   std::vector<double> pts{0.5, n % 3 == 0 ? -0.5 : 0.9};
                   for (int k = 0; k < 4; ++k) pts.push_back(w(r));
                   return pts;
                 },
                 60};
  std::vector<double> cand;
  for (int i = -40; i <= 40; ++i) cand.push_back(i / 40.0);
  for (const SetLimitParams p : {SetLimitParams{}, SetLimitParams{10, 0.2}, SetLimitParams{40, 0.5}}) {
    const std::vector<double> tols{0.1, 0.05};
    CHECK(set_li(s, cand, tols, p) == oracle::set_li(s, cand, tols, p));
    CHECK(set_ls(s, cand, tols, p) == oracle::set_ls(s, cand, tols, p));
    const auto li = set_li(s, cand, tols, p);
    for (double y : li) CHECK(std::find(cand.begin(), cand.end(), y) != cand.end());
  }
}

TEST_CASE("alternating sets: inner limit is the common part") {
  const SetSeq s{[](int n) { return n % 2 == 0 ? std::vector<double>{0.0, 1.0} : std::vector<double>{0.0, -1.0}; }, 40};
  const std::vector<double> cand{-1.0, 0.0, 1.0};
  CHECK(set_li(s, cand, {1e-9}, {}) == std::vector<double>{0.0});
  CHECK(set_ls(s, cand, {1e-9}, {}) == cand);
  CHECK_ERROR_CODE(set_li(s, cand, {}, {}), ErrorCode::BadParameter);
}

TEST_CASE("planar set limits") {
  const PlanarSetSeq s{[](int n) { return std::vector<Point2>{{1.0 / n, 0.0}, {0.0, n % 2 == 0 ? 1.0 : -1.0}}; }, 64};
  const std::vector<Point2> cand{{0.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {1.0, 1.0}};
  CHECK(set_li(s, cand, {0.05}, {}) == std::vector<Point2>{{0.0, 0.0}});
  CHECK(set_ls(s, cand, {0.05}, {}) == std::vector<Point2>{{0.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}});
}

TEST_CASE("diagonal index on closed-form arrays") {
  DoubleSeq a(40, 40);
  for (std::size_t k = 0; k < 40; ++k)
    for (std::size_t n = 0; n < 40; ++n) a.at(k, n) = 1.0 / (k + 1) + 1.0 / (n + 1);
  const DiagonalPath p = diagonal_index(a);
  CHECK(p.achieved <= p.bound);
  CHECK(p.bound.value() == doctest::Approx(1.0 / 31 + 1.0 / 31));
  for (std::size_t k = 1; k < 40; ++k) CHECK(p.columns[k] >= p.columns[k - 1]);
  for (std::size_t k = p.row_tail_start; k < 40; ++k) CHECK(p.columns[k] >= p.col_tail_start);

  DoubleSeq alt(20, 20);
  for (std::size_t k = 0; k < 20; ++k)
    for (std::size_t n = 0; n < 20; ++n) alt.at(k, n) = k % 2 == 0 ? 1.0 : -1.0;
  const DiagonalPath q = diagonal_index(alt);
  CHECK(q.achieved == ExtReal(1.0));
  CHECK(q.bound == ExtReal(1.0));
  CHECK_ERROR_CODE(diagonal_index(DoubleSeq(3, 10)), ErrorCode::HorizonExceeded);
}

TEST_CASE("diagonal index never beats the iterated bound") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    DoubleSeq a(50, 50);
    for (std::size_t k = 0; k < 50; ++k)
      for (std::size_t n = 0; n < 50; ++n) a.at(k, n) = u(rng) + (trial % 3 == 0 && n == 7 ? oracle::kInf : 0.0);
    const DiagonalPath p = diagonal_index(a);
    CHECK(p.bound.to_double() == oracle::iterated_limsup(a));
    double achieved = -oracle::kInf;
    for (std::size_t k = p.row_tail_start; k < 50; ++k) achieved = std::max(achieved, a.at(k, p.columns[k]).to_double());
    CHECK(achieved == p.achieved.to_double());
    CHECK(achieved <= p.bound.to_double() + 1e-12);
  }
}

}  // TEST_SUITE
