#include <cmath>
#include <random>
#include <sstream>

#include "check.hpp"
#include "epilim/grid_fn.hpp"
#include "epilim/io.hpp"
#include "oracles.hpp"

using namespace epilim;

TEST_SUITE("extgrid") {

TEST_CASE("extended arithmetic") {
  const ExtReal inf = ExtReal::pos_inf(), ninf = ExtReal::neg_inf();
  CHECK((ExtReal(1.5) + ExtReal(2.0)) == ExtReal(3.5));
  CHECK((inf + ExtReal(-1e300)).is_pos_inf());
  CHECK((ninf + ExtReal(7.0)).is_neg_inf());
  CHECK((-inf).is_neg_inf());
  CHECK_ERROR_CODE(inf + ninf, ErrorCode::ExtendedArithmetic);
  CHECK_ERROR_CODE(ExtReal(std::nan("")), ErrorCode::ExtendedArithmetic);
  CHECK_ERROR_CODE(inf.value(), ErrorCode::ExtendedArithmetic);
  CHECK(scale(0.0, inf) == ExtReal(0.0));
  CHECK(scale(2.0, ExtReal(-1.25)) == ExtReal(-2.5));
  CHECK_ERROR_CODE(scale(-1.0, ExtReal(1.0)), ErrorCode::BadParameter);
  CHECK(ninf < ExtReal(-1e308));
  CHECK(ExtReal(1e308) < inf);
}

TEST_CASE("extended reals round-trip through text") {
  for (const ExtReal v : {ExtReal(0.1), ExtReal(-3.0), ExtReal(1e-300), ExtReal::pos_inf(), ExtReal::neg_inf()})
    CHECK(ExtReal::parse(v.to_string()) == v);
  CHECK_ERROR_CODE(ExtReal::parse("banana"), ErrorCode::Io);
}

TEST_CASE("grid construction") {
  const Grid1D g(-1.0, 1.0, 5);
  CHECK(g.count() == 5);
  CHECK(g.spacing() == 0.5);
  CHECK(g.point(2) == 0.0);
  CHECK(g.point(0) == -1.0);
  CHECK(g.point(4) == 1.0);
  CHECK(Grid1D(-1.0, 1.0, 4).count() == 5);  // even counts round up to odd
  CHECK_ERROR_CODE(Grid1D(1.0, -1.0, 5), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(Grid1D(0.0, 1.0, 2), ErrorCode::BadParameter);
  const Grid1D p = Grid1D::parse("-2:2:513");
  CHECK(p.count() == 513);
  CHECK(p.spacing() == 1.0 / 128);
  CHECK_ERROR_CODE(Grid1D::parse("-2:2"), ErrorCode::Usage);
  CHECK_ERROR_CODE(Grid1D::parse("a:b:c"), ErrorCode::Usage);
}

TEST_CASE("grid points are symmetric about the center") {
  const Grid1D g(-3.0, 3.0, 1025);
  for (std::size_t i = 0; i < g.count(); ++i) CHECK(g.point(i) == -g.point(g.count() - 1 - i));
}

TEST_CASE("nearest and bracket indices") {
  const Grid1D g(0.0, 1.0, 11);
  CHECK(g.nearest_index(0.26) == 3);
  CHECK(g.nearest_index(-5.0) == 0);
  CHECK(g.nearest_index(5.0) == 10);
  CHECK(g.bracket_index(0.25) == 2);
}

TEST_CASE("grid functions reject -inf unless allowed") {
  const Grid1D g(-1.0, 1.0, 3);
  CHECK_ERROR_CODE(GridFn(g, {1.0, ExtReal::neg_inf(), 1.0}), ErrorCode::ImproperInput);
  CHECK(GridFn(g, {1.0, ExtReal::neg_inf(), 1.0}, NegInfPolicy::Allow).has_neg_inf());
  CHECK_ERROR_CODE(GridFn(g, {1.0, 2.0}), ErrorCode::BadParameter);
  CHECK_FALSE(GridFn::constant(g, ExtReal::pos_inf()).is_proper());
}

TEST_CASE("eval interpolates linearly and propagates +inf") {
  const Grid1D g(0.0, 2.0, 3);
  const GridFn f(g, {0.0, 2.0, ExtReal::pos_inf()});
  CHECK(eval(f, 0.5) == ExtReal(1.0));
  CHECK(eval(f, 1.0) == ExtReal(2.0));
  CHECK(eval(f, 1.5).is_pos_inf());
  CHECK_ERROR_CODE(eval(f, 2.5), ErrorCode::OutOfDomain);
}

TEST_CASE("inf over a closed ball matches brute force") {
  std::mt19937_64 rng(7);
  const Grid1D g(-1.0, 1.0, 41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GridFn f = GridFn::sample(g, [&](double) { return u(rng); });
  for (double eps : {0.05, 0.1, 0.35}) {
    for (std::size_t i = 0; i < g.count(); ++i) {
      double want = oracle::kInf;
      for (std::size_t j = 0; j < g.count(); ++j)
        if (std::abs(g.point(j) - g.point(i)) <= eps + 1e-12) want = std::min(want, f[j].value());
      CHECK(inf_over_ball(f, g.point(i), eps).value() == want);
    }
  }
}

TEST_CASE("discrete convexity") {
  const Grid1D g(-1.0, 1.0, 21);
  CHECK(is_convex(GridFn::sample(g, [](double x) { return x * x; }), 1e-12));
  CHECK_FALSE(is_convex(GridFn::sample(g, [](double x) { return -x * x; }), 1e-12));
  CHECK_FALSE(is_convex(GridFn::sample(g, [](double x) { return std::abs(x) > 0.5 && std::abs(x) < 0.8 ? oracle::kInf : 0.0; }), 1e-12));
}

TEST_CASE("CSV and JSON round trips are exact") {
  std::mt19937_64 rng(11);
  const Grid1D g(-2.0, 2.0, 33);
  const GridFn f = oracle::random_convex_pl(rng, g);
  std::vector<ExtReal> vals = f.values();
  vals.front() = ExtReal::pos_inf();
  const GridFn h(g, vals);
  std::ostringstream os;
  write_csv(os, h);
  std::istringstream is(os.str());
  const GridFn back = read_csv(is);
  CHECK(back.grid() == g);
  CHECK(back.values() == h.values());
  CHECK(grid_fn_from_json(to_json(h)).values() == h.values());
  std::istringstream bad("x,value\n0,1\n1,2\n3,3\n");
  CHECK_ERROR_CODE(read_csv(bad), ErrorCode::Io);
}

TEST_CASE("sequences evaluate members lazily on one grid") {
  const Grid1D g(-1.0, 1.0, 9);
  const FnSeq s = FnSeq::from_rule(g, [](int n, double x) { return x / n; }, 8);
  CHECK(s.at(4)[8] == ExtReal(0.25));
  CHECK(s.materialize(2, 5).size() == 4);
  CHECK_ERROR_CODE(s.at(0), ErrorCode::BadParameter);
  const FnSeq foreign(g, [](int) { return GridFn::constant(Grid1D(0.0, 1.0, 3), 0.0); }, 2);
  CHECK_ERROR_CODE(foreign.at(1), ErrorCode::BadParameter);
}

}  // TEST_SUITE
