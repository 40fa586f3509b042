#include "epilim/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <random>

#include "epilim/error.hpp"

namespace epilim {

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::Paper: return "paper";
    case Origin::Derived: return "derived";
    case Origin::Trivial: return "trivial";
  }
  return "derived";
}

FnSeq FamilySpec::sequence(const Grid1D& grid, int horizon) const {
  return FnSeq::from_rule(grid, rule, horizon);
}

GridFn FamilySpec::candidate_on(const Grid1D& grid) const { return GridFn::sample(grid, candidate); }

GammaParams FamilySpec::params(const Grid1D& grid, int horizon, int tail_start) const {
  GammaParams p = GammaParams::defaults(grid, horizon);
  if (tail_start > 0) p.tail_start = tail_start;
  const double c = 0.5 * (grid.lo() + grid.hi());
  const double r = 0.375 * (grid.hi() - grid.lo());
  p.trust_window = std::make_pair(c - r, c + r);
  return p;
}

double default_tolerance(const Grid1D& grid, int tail_start) {
  return grid.spacing() + 2.0 / tail_start;
}

namespace {

std::uint64_t seed_from_env() {
  const char* env = std::getenv("EPILIM_SEED");
  if (env == nullptr || *env == '\0') return 12345;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw Error(ErrorCode::Usage, "EPILIM_SEED must be an unsigned integer");
  return v;
}

// Max of five affine pieces with sorted slopes in [-1.5, 1.5]; the bits of a
// 64-bit Mersenne twister are mapped to [0, 1) by hand so the family is the
// same on every standard library.
std::function<double(double)> random_max_affine(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<double> slope(5), offset(5);
  for (double& s : slope) s = -1.5 + 3.0 * unit();
  std::sort(slope.begin(), slope.end());
  slope.front() = std::min(slope.front(), -0.25);
  slope.back() = std::max(slope.back(), 0.25);
  for (double& b : offset) b = unit();
  return [slope, offset](double x) {
    double v = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < slope.size(); ++k) v = std::max(v, slope[k] * x + offset[k]);
    return v;
  };
}

std::map<std::string, Expectation> all(Outcome o, Origin src) {
  return {{"gamma-check", {o, src}}, {"dual-check", {o, src}}, {"attouch-check", {o, src}}};
}

std::vector<FamilySpec> build() {
  std::vector<FamilySpec> r;
  {
    FamilySpec f;
    f.name = "alternating";
    f.description = "|x| + (n odd ? 1 : 0); liminf |x|, limsup |x| + 1";
    f.rule = [](int n, double x) { return std::abs(x) + (n % 2 == 1 ? 1.0 : 0.0); };
    f.candidate = [](double x) { return std::abs(x); };
    f.expected = {{"gamma-check", {Outcome::Fail, Origin::Derived}},
                  {"dual-check", {Outcome::Pass, Origin::Derived}},
                  {"attouch-check", {Outcome::Fail, Origin::Derived}}};
    r.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.name = "blowup";
    f.description = "|x|/n + n; Γ-limit +inf, conjugates indicator of [-1/n, 1/n] minus n";
    f.origin = Origin::Paper;
    f.rule = [](int n, double x) { return std::abs(x) / n + n; };
    f.candidate = [](double x) { return std::abs(x); };
    f.expected = {{"gamma-check", {Outcome::Fail, Origin::Paper}},
                  {"dual-check", {Outcome::HypothesisFailure, Origin::Paper}},
                  {"attouch-check", {Outcome::HypothesisFailure, Origin::Paper}}};
    r.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.name = "constant";
    f.description = "|x| for every n";
    f.origin = Origin::Trivial;
    f.rule = [](int, double x) { return std::abs(x); };
    f.candidate = [](double x) { return std::abs(x); };
    f.expected = all(Outcome::Pass, Origin::Trivial);
    r.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.name = "nested-intervals";
    f.description = "(1 - 1/n)|x|, support functions of [-1 + 1/n, 1 - 1/n]; limit |x|";
    f.rule = [](int n, double x) { return (1.0 - 1.0 / n) * std::abs(x); };
    f.candidate = [](double x) { return std::abs(x); };
    f.expected = all(Outcome::Pass, Origin::Derived);
    r.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.name = "quadratic";
    f.description = "(1 + 1/n) x^2 / 2; limit x^2 / 2";
    f.rule = [](int n, double x) { return 0.5 * (1.0 + 1.0 / n) * x * x; };
    f.candidate = [](double x) { return 0.5 * x * x; };
    f.expected = all(Outcome::Pass, Origin::Derived);
    r.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.name = "random-pl";
    f.description = "g + |x|/n with g a seeded random max of five affine functions; limit g";
    const auto g = random_max_affine(seed_from_env());
    f.rule = [g](int n, double x) { return g(x) + std::abs(x) / n; };
    f.candidate = g;
    f.expected = all(Outcome::Pass, Origin::Derived);
    r.push_back(std::move(f));
  }
  {
    FamilySpec f;
    f.name = "translation";
    f.description = "|x - 1/n|; limit |x|";
    f.rule = [](int n, double x) { return std::abs(x - 1.0 / n); };
    f.candidate = [](double x) { return std::abs(x); };
    f.expected = all(Outcome::Pass, Origin::Derived);
    r.push_back(std::move(f));
  }
  std::sort(r.begin(), r.end(), [](const FamilySpec& a, const FamilySpec& b) { return a.name < b.name; });
  return r;
}

}  // namespace

const std::vector<FamilySpec>& registry() {
  static const std::vector<FamilySpec> reg = build();
  return reg;
}

const FamilySpec& find_family(std::string_view name) {
  for (const FamilySpec& f : registry())
    if (f.name == name) return f;
  throw Error(ErrorCode::Usage, "unknown family '" + std::string(name) + "'");
}

}  // namespace epilim
