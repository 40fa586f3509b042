#include <cmath>
#include <random>

#include "check.hpp"
#include "epilim/transform.hpp"
#include "oracles.hpp"

using namespace epilim;

namespace {

double lipschitz(const GridFn& f) {
  double L = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i].is_finite() && f[i - 1].is_finite())
      L = std::max(L, std::abs(f[i].value() - f[i - 1].value()) / f.grid().spacing());
  return L;
}

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("frozen conjugates") {
  const Grid1D g(-2.0, 2.0, 513);
  const GridFn sq = GridFn::sample(g, [](double x) { return x * x; });
  const SlopeGrid s(Grid1D(-2.0, 2.0, 9));
  const GridFn c = conjugate(sq, s);
  // s^2 / 4 exactly, since s / 2 is a grid point for every slope here.
  const double want[] = {1.0, 0.5625, 0.25, 0.0625, 0.0, 0.0625, 0.25, 0.5625, 1.0};
  for (std::size_t j = 0; j < 9; ++j) CHECK(c[j].value() == want[j]);

  const GridFn abs1 = GridFn::sample(Grid1D(-1.0, 1.0, 5), [](double x) { return std::abs(x); });
  const GridFn ca = conjugate(abs1, SlopeGrid(Grid1D(-2.0, 2.0, 9)));
  const double want_abs[] = {1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0};
  for (std::size_t j = 0; j < 9; ++j) CHECK(ca[j].value() == doctest::Approx(want_abs[j]).epsilon(1e-15));
}

TEST_CASE("default slope window") {
  const GridFn f = GridFn::sample(Grid1D(-1.0, 1.0, 9), [](double x) { return 2.0 * x; });
  const SlopeGrid s = default_slope_grid(f);
  CHECK(s.axis.hi() == doctest::Approx(2.5));
  CHECK(s.axis.lo() == doctest::Approx(-2.5));
  CHECK(s.axis.count() == 9);
  CHECK(default_slope_grid(GridFn::constant(Grid1D(0.0, 1.0, 5), 3.0)).axis.hi() == 1.0);
}

TEST_CASE("hull merge agrees with the definition") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const Grid1D g(-1.5, 2.0, 129 + 2 * (trial % 5));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // Non-convex input with a +inf hole: the hull must still reproduce the sup.
    std::vector<ExtReal> vals;
    for (std::size_t i = 0; i < g.count(); ++i) vals.emplace_back(i % 17 == 5 ? ExtReal::pos_inf() : ExtReal(u(rng)));
    const GridFn f(g, vals);
    const SlopeGrid s(Grid1D(-4.0, 4.0, 257));
    const GridFn fast = conjugate(f, s);
    const auto brute = oracle::conjugate(f, s.axis.points());
    const GridFn slow = conjugate_oracle(f, s);
    for (std::size_t j = 0; j < brute.size(); ++j) {
      CHECK(fast[j].value() == doctest::Approx(brute[j]).epsilon(1e-12));
      CHECK(slow[j].value() == brute[j]);
    }
  }
}

TEST_CASE("Fenchel-Young inequality at every grid pair") {
  std::mt19937_64 rng(5);
  const Grid1D g(-1.0, 1.0, 65);
  const GridFn f = oracle::random_convex_pl(rng, g);
  const SlopeGrid s = default_slope_grid(f);
  const GridFn c = conjugate(f, s);
  for (std::size_t i = 0; i < g.count(); ++i)
    for (std::size_t j = 0; j < s.axis.count(); ++j)
      CHECK(f[i].value() + c[j].value() >= g.point(i) * s.axis.point(j) - 1e-12);
}

TEST_CASE("biconjugate reproduces convex inputs and convexifies others") {
  std::mt19937_64 rng(17);
  const Grid1D g(-2.0, 2.0, 257);
  for (int trial = 0; trial < 10; ++trial) {
    const GridFn f = oracle::random_convex_pl(rng, g);
    const GridFn bb = biconjugate(f);
    const double bound = 2.0 * g.spacing() * lipschitz(f);
    for (std::size_t i = 0; i < g.count(); ++i) CHECK(std::abs(bb[i].value() - f[i].value()) <= bound);
  }
  const GridFn w = GridFn::sample(g, [](double x) { return (x * x - 1.0) * (x * x - 1.0); });
  const GridFn bw = biconjugate(w);
  CHECK(is_convex(bw, 1e-9));
  for (std::size_t i = 0; i < g.count(); ++i) CHECK(bw[i].value() <= w[i].value() + 1e-12);
  CHECK(bw[g.nearest_index(0.0)].value() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conjugation reverses order") {
  std::mt19937_64 rng(99);
  const Grid1D g(-1.0, 1.0, 65);
  std::uniform_real_distribution<double> bump(0.0, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const GridFn f = oracle::random_convex_pl(rng, g);
    const double b = bump(rng);
    const GridFn h = f.plus([b](double x) { return b * (1.0 + x * x); });
    const SlopeGrid s(Grid1D(-5.0, 5.0, 101));
    const GridFn cf = conjugate(f, s), ch = conjugate(h, s);
    for (std::size_t j = 0; j < s.axis.count(); ++j) CHECK(ch[j].value() <= cf[j].value() + 1e-12);
  }
}

TEST_CASE("trust interval of a window-truncated function") {
  const Grid1D g(-2.0, 2.0, 513);
  for (int n : {1, 2, 8, 64}) {
    const GridFn f = GridFn::sample(g, [n](double x) { return std::abs(x) / n + n; });
    const TrustInterval t = trust_interval(f);
    CHECK(t.lo == doctest::Approx(-1.0 / n).epsilon(1e-12));
    CHECK(t.hi == doctest::Approx(1.0 / n).epsilon(1e-12));
    CHECK(trust_radius(f) == doctest::Approx(1.0 / n).epsilon(1e-12));
  }
  // A finite region that stops inside the window trusts every slope.
  const GridFn ind = GridFn::sample(g, [](double x) { return std::abs(x) <= 1.0 ? 0.0 : oracle::kInf; });
  CHECK(std::isinf(trust_interval(ind).hi));
}

TEST_CASE("improper inputs") {
  const Grid1D g(-1.0, 1.0, 5);
  const SlopeGrid s(g);
  CHECK_ERROR_CODE(conjugate(GridFn::constant(g, ExtReal::pos_inf()), s), ErrorCode::ImproperInput);
  const GridFn top = conjugate_extended(GridFn::constant(g, ExtReal::pos_inf()), s);
  for (const ExtReal& v : top.values()) CHECK(v.is_neg_inf());
  const GridFn bottom = conjugate_extended(GridFn(g, {0.0, ExtReal::neg_inf(), 0.0, 0.0, 0.0}, NegInfPolicy::Allow), s);
  for (const ExtReal& v : bottom.values()) CHECK(v.is_pos_inf());
}

TEST_CASE("lower hull") {
  const Grid1D g(0.0, 4.0, 5);
  const GridFn f(g, {0.0, 2.0, 1.0, 2.0, 0.0});
  CHECK(lower_hull(f) == std::vector<std::size_t>{0, 4});
  const GridFn v(g, {4.0, 1.0, 0.0, 1.0, 4.0});
  CHECK(lower_hull(v) == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("inf-convolution matches the split search") {
  std::mt19937_64 rng(3);
  const Grid1D g(-2.0, 2.0, 81);
  for (int trial = 0; trial < 5; ++trial) {
    const GridFn f = oracle::random_convex_pl(rng, g);
    const GridFn q = GridFn::sample(g, [](double x) { return std::abs(x) <= 0.5 ? 2.0 * x * x : oracle::kInf; });
    const GridFn fast = inf_conv(f, q);
    const auto brute = oracle::inf_conv(f, q);
    for (std::size_t i = 0; i < g.count(); ++i) CHECK(fast[i].to_double() == doctest::Approx(brute[i]).epsilon(1e-12));
  }
  CHECK_ERROR_CODE(inf_conv(GridFn::constant(g, 0.0), GridFn::constant(Grid1D(-1.0, 1.0, 5), 0.0)),
                   ErrorCode::BadParameter);
}

TEST_CASE("support functions") {
  const SlopeGrid s(Grid1D(-1.0, 1.0, 5));
  const GridFn sig = support_fn(-0.5, 2.0, s);
  const double want[] = {0.5, 0.25, 0.0, 1.0, 2.0};
  for (std::size_t j = 0; j < 5; ++j) CHECK(sig[j].value() == want[j]);
  CHECK_ERROR_CODE(support_fn(1.0, 0.0, s), ErrorCode::EmptySet);
}

}  // TEST_SUITE
