#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "epilim/gamma.hpp"
#include "epilim/grid_fn.hpp"
#include "epilim/verdict.hpp"

namespace epilim {

/// Where an expected outcome comes from: a worked example of the theory, a
/// hand or oracle derivation, or a trivially forced value.
enum class Origin { Paper, Derived, Trivial };
std::string_view to_string(Origin o);

struct Expectation {
  Outcome outcome;
  Origin origin;
};

/// Closed-form family f_n(x) = rule(n, x) with a candidate limit.
struct FamilySpec {
  std::string name;
  std::string description;
  Origin origin = Origin::Derived;
  double lo = -2.0;
  double hi = 2.0;
  std::size_t count = 513;
  int horizon = 512;
  bool convex = true;
  std::function<double(int, double)> rule;
  std::function<double(double)> candidate;
  /// Expected outcome per check ("gamma-check", "dual-check", "attouch-check").
  std::map<std::string, Expectation> expected;

  Grid1D default_grid() const { return Grid1D(lo, hi, count); }
  FnSeq sequence(const Grid1D& grid, int horizon) const;
  GridFn candidate_on(const Grid1D& grid) const;
  /// eps {4h, 2h, h}, tail_start = N / 2, residuals measured on the central
  /// 75% of the window.
  GammaParams params(const Grid1D& grid, int horizon, int tail_start = 0) const;
};

/// Registry sorted by name. The random piecewise-linear family reads its seed
/// from EPILIM_SEED (default 12345) when the registry is built.
const std::vector<FamilySpec>& registry();
/// Throws ErrorCode::Usage for unknown names.
const FamilySpec& find_family(std::string_view name);

/// Default tolerance of the checks: grid spacing + 2 / tail_start.
double default_tolerance(const Grid1D& grid, int tail_start);

}  // namespace epilim
