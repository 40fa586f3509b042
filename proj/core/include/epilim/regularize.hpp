#pragma once

#include <vector>

#include "epilim/grid_fn.hpp"

namespace epilim {

/// Strictly decreasing positive step sizes lambda_1 > ... > lambda_K.
class LambdaSchedule {
 public:
  explicit LambdaSchedule(std::vector<double> lambdas);
  /// 2^-first, ..., 2^-last.
  static LambdaSchedule dyadic(int first, int last);

  const std::vector<double>& values() const { return lambdas_; }
  std::size_t size() const { return lambdas_.size(); }

 private:
  std::vector<double> lambdas_;
};

/// f_lambda(x) = min over grid y of f(y) + (x - y)^2 / (2 lambda), at every
/// grid x. Exact over the grid; computed as the lower envelope of the
/// parabolas rooted at the finite samples (linear time).
GridFn moreau_envelope(const GridFn& f, double lambda);

/// Grid point attaining f_lambda(x); ties go to the smaller y.
double prox(const GridFn& f, double lambda, double x);

/// Envelopes for each step of the schedule, in schedule order.
std::vector<GridFn> moreau_schedule(const GridFn& f, const LambdaSchedule& schedule);

/// Pasch-Hausdorff envelope g [] n|.|, the largest n-Lipschitz minorant of g.
GridFn lipschitz_reg(const GridFn& g, int n);

}  // namespace epilim
