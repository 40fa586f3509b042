#include "epilim/regularize.hpp"

#include <cmath>
#include <limits>

#include "epilim/error.hpp"
#include "epilim/transform.hpp"

namespace epilim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(const GridFn& f, double lambda) {
  if (!(lambda > 0.0) || std::isinf(lambda)) {
    throw Error(ErrorCode::BadParameter, "lambda must be positive and finite");
  }
  if (!f.is_proper()) throw Error(ErrorCode::ImproperInput, "Moreau envelope needs a proper function");
}

}  // namespace

LambdaSchedule::LambdaSchedule(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw Error(ErrorCode::BadParameter, "empty lambda schedule");
  for (std::size_t k = 0; k < lambdas_.size(); ++k) {
    if (!(lambdas_[k] > 0.0)) throw Error(ErrorCode::BadParameter, "lambda must be positive");
    if (k > 0 && !(lambdas_[k] < lambdas_[k - 1])) {
      throw Error(ErrorCode::BadParameter, "lambda schedule must be strictly decreasing");
    }
  }
}

LambdaSchedule LambdaSchedule::dyadic(int first, int last) {
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(std::ldexp(1.0, -k));
  return LambdaSchedule(std::move(out));
}

GridFn moreau_envelope(const GridFn& f, double lambda) {
  check_inputs(f, lambda);
  const Grid1D& g = f.grid();
  // Parabola rooted at y: (x - y)^2 / (2 lambda) + f(y). Two roots q < p
  // cross where x = ((2 lambda f_p + p^2) - (2 lambda f_q + q^2)) / (2 (p - q)).
  std::vector<std::size_t> roots;
  std::vector<double> from;  // left end of the region where roots[k] is lowest
  auto lifted = [&](std::size_t i) {
    const double y = g.point(i);
    return 2.0 * lambda * f[i].value() + y * y;
  };
  auto crossing = [&](std::size_t q, std::size_t p) {
    return (lifted(p) - lifted(q)) / (2.0 * (g.point(p) - g.point(q)));
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_finite()) continue;
    double x = -kInf;
    while (!roots.empty()) {
      x = crossing(roots.back(), i);
      if (x > from.back()) break;
      roots.pop_back();
      from.pop_back();
      x = -kInf;
    }
    roots.push_back(i);
    from.push_back(x);
  }
  std::vector<ExtReal> out;
  out.reserve(f.size());
  std::size_t k = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g.point(j);
    while (k + 1 < roots.size() && from[k + 1] < x) ++k;
    // Near a crossing both neighbours are candidates; keep the smaller value.
    double best = kInf;
    for (std::size_t c = (k > 0 ? k - 1 : 0); c <= std::min(k + 1, roots.size() - 1); ++c) {
      const double y = g.point(roots[c]);
      const double v = f[roots[c]].value() + (x - y) * (x - y) / (2.0 * lambda);
      if (v < best) best = v;
    }
    out.emplace_back(best);
  }
  return GridFn(g, std::move(out));
}

double prox(const GridFn& f, double lambda, double x) {
  check_inputs(f, lambda);
  const Grid1D& g = f.grid();
  double best = kInf;
  double arg = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_finite()) continue;
    const double y = g.point(i);
    const double v = f[i].value() + (x - y) * (x - y) / (2.0 * lambda);
    if (v < best) {
      best = v;
      arg = y;
    }
  }
  return arg;
}

std::vector<GridFn> moreau_schedule(const GridFn& f, const LambdaSchedule& schedule) {
  std::vector<GridFn> out;
  out.reserve(schedule.size());
  for (double lambda : schedule.values()) out.push_back(moreau_envelope(f, lambda));
  return out;
}

GridFn lipschitz_reg(const GridFn& g, int n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "Lipschitz constant must be positive");
  if (!g.is_proper()) throw Error(ErrorCode::ImproperInput, "lipschitz_reg needs a proper function");
  const auto cone = GridFn::sample(g.grid(), [n](double s) { return n * std::abs(s); });
  return inf_conv(g, cone);
}

}  // namespace epilim
