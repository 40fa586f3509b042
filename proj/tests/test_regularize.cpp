#include <cmath>
#include <random>

#include "check.hpp"
#include "epilim/regularize.hpp"
#include "epilim/transform.hpp"
#include "oracles.hpp"

using namespace epilim;

TEST_SUITE("regularize") {

TEST_CASE("frozen envelope of |x| is the Huber function") {
  const Grid1D g(-2.0, 2.0, 17);
  const GridFn f = GridFn::sample(g, [](double x) { return std::abs(x); });
  const GridFn e = moreau_envelope(f, 1.0);
  const double want[] = {1.5, 1.25, 1.0, 0.75, 0.5, 0.28125, 0.125, 0.03125, 0.0,
                         0.03125, 0.125, 0.28125, 0.5, 0.75, 1.0, 1.25, 1.5};
  for (std::size_t i = 0; i < g.count(); ++i) CHECK(e[i].value() == want[i]);
  CHECK(prox(f, 1.0, 1.5) == 0.5);
  CHECK(prox(f, 1.0, 0.75) == 0.0);
}

TEST_CASE("lower envelope agrees with the quadratic scan") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid1D g(-1.0, 3.0, 101);
  for (double lambda : {4.0, 1.0, 0.25, 1.0 / 64}) {
    std::vector<ExtReal> vals;
    for (std::size_t i = 0; i < g.count(); ++i) vals.emplace_back(i % 7 == 3 ? ExtReal::pos_inf() : ExtReal(u(rng)));
    const GridFn f(g, vals);
    const GridFn fast = moreau_envelope(f, lambda);
    const auto brute = oracle::moreau(f, lambda);
    for (std::size_t i = 0; i < g.count(); ++i) {
      CHECK(fast[i].value() == doctest::Approx(brute[i]).epsilon(1e-12));
      const double y = prox(f, lambda, g.point(i));
      const std::size_t j = g.nearest_index(y);
      CHECK(f[j].value() + (g.point(i) - y) * (g.point(i) - y) / (2 * lambda) ==
            doctest::Approx(brute[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("envelopes increase as lambda decreases and stay below f") {
  std::mt19937_64 rng(8);
  const Grid1D g(-2.0, 2.0, 257);
  const GridFn f = oracle::random_convex_pl(rng, g);
  const auto env = moreau_schedule(f, LambdaSchedule::dyadic(0, 6));
  REQUIRE(env.size() == 7);
  for (std::size_t k = 0; k < env.size(); ++k)
    for (std::size_t i = 0; i < g.count(); ++i) {
      CHECK(env[k][i].value() <= f[i].value() + 1e-12);
      if (k > 0) CHECK(env[k][i].value() >= env[k - 1][i].value() - 1e-12);
    }
}

TEST_CASE("conjugate of f plus a quadratic is the envelope of the conjugate") {
  const Grid1D g(-1.0, 1.0, 65);
  const double h = g.spacing();
  const GridFn f = GridFn::sample(g, [](double x) { return std::abs(x - 0.25) + 0.5 * x; });
  for (double lambda : {1.0, 0.25}) {
    // Slope spacing lambda * h keeps every minimizer s - lambda x_i on the grid.
    const double S = 4.0;
    const auto count = static_cast<std::size_t>(std::llround(2 * S / (lambda * h))) + 1;
    const SlopeGrid s(Grid1D(-S, S, count));
    const GridFn lhs = conjugate(f.plus([lambda](double x) { return 0.5 * lambda * x * x; }), s);
    const GridFn rhs = moreau_envelope(conjugate(f, s), lambda);
    for (std::size_t j = 0; j < count; ++j)
      if (std::abs(s.axis.point(j)) <= S - 2.0 * lambda)
        CHECK(lhs[j].value() == doctest::Approx(rhs[j].value()).epsilon(1e-12));
  }
}

TEST_CASE("Lipschitz regularization") {
  const Grid1D g(-1.0, 1.0, 9);
  const GridFn f = GridFn::sample(g, [](double x) { return std::abs(x) <= 0.5 ? 0.0 : oracle::kInf; });
  const GridFn r = lipschitz_reg(f, 2);
  CHECK(r[0].value() == 1.0);
  CHECK(r[4].value() == 0.0);
  for (std::size_t i = 1; i < g.count(); ++i) CHECK(std::abs(r[i].value() - r[i - 1].value()) <= 2 * g.spacing() + 1e-12);
  CHECK_ERROR_CODE(lipschitz_reg(f, 0), ErrorCode::BadParameter);
}

TEST_CASE("Lipschitz regularizations increase toward the function") {
  std::mt19937_64 rng(13);
  const Grid1D g(-2.0, 2.0, 129);
  const GridFn f = oracle::random_convex_pl(rng, g, 6, 5.0);
  double prev_gap = oracle::kInf;
  for (int n = 1; n <= 64; n *= 2) {
    const GridFn r = lipschitz_reg(f, n);
    double gap = 0.0;
    for (std::size_t i = 0; i < g.count(); ++i) {
      CHECK(r[i].value() <= f[i].value() + 1e-12);
      gap = std::max(gap, f[i].value() - r[i].value());
    }
    CHECK(gap <= prev_gap + 1e-12);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 1e-12);  // n exceeds every slope of f
}

TEST_CASE("parameter validation") {
  const GridFn f = GridFn::constant(Grid1D(0.0, 1.0, 5), 0.0);
  CHECK_ERROR_CODE(moreau_envelope(f, 0.0), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(moreau_envelope(f, oracle::kInf), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(LambdaSchedule({1.0, 1.0}), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(LambdaSchedule({}), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(moreau_envelope(GridFn::constant(f.grid(), ExtReal::pos_inf()), 1.0), ErrorCode::ImproperInput);
}

}  // TEST_SUITE
