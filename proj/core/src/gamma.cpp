#include "epilim/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epilim/error.hpp"

namespace epilim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Window = std::optional<std::pair<double, double>>;

bool in_window(const Window& w, double x) {
  return !w || (x >= w->first - 1e-12 && x <= w->second + 1e-12);
}

// Open-ball index radius: grid points strictly closer than eps. The ball of
// radius h is the point itself, so a constant sequence is reproduced exactly.
std::size_t ball_radius(double eps, double h) {
  const double r = std::ceil(eps / h - 1e-9) - 1.0;
  return r <= 0.0 ? 0 : static_cast<std::size_t>(r);
}

// Ball infima of one member at every grid point.
std::vector<ExtReal> ball_inf(const GridFn& f, std::size_t r) {
  const std::size_t m = f.size();
  std::vector<ExtReal> out(m, ExtReal::pos_inf());
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = i >= r ? i - r : 0;
    const std::size_t b = std::min(m - 1, i + r);
    ExtReal best = ExtReal::pos_inf();
    for (std::size_t j = a; j <= b; ++j) best = min(best, f[j]);
    out[i] = best;
  }
  return out;
}

struct Raw {
  std::vector<std::vector<ExtReal>> per_eps;  // tail extreme per eps entry
  std::vector<ExtReal> value;                 // combined over eps
  std::vector<int> divergence;
};

// Tail extreme (min for lower, max for upper) of ball infima over members
// [first, N], then sup over eps.
Raw estimate(const std::vector<GridFn>& members, int first_offset, const GammaParams& p,
             const Grid1D& grid, bool upper, bool with_divergence) {
  const std::size_t m = grid.count();
  const double h = grid.spacing();
  Raw out;
  out.per_eps.reserve(p.eps_schedule.size());
  std::vector<std::vector<ExtReal>> finest;  // per member, finest eps
  for (std::size_t e = 0; e < p.eps_schedule.size(); ++e) {
    const std::size_t r = ball_radius(p.eps_schedule[e], h);
    const bool last = e + 1 == p.eps_schedule.size();
    std::vector<ExtReal> acc(m, upper ? ExtReal::neg_inf() : ExtReal::pos_inf());
    for (std::size_t k = static_cast<std::size_t>(first_offset); k < members.size(); ++k) {
      std::vector<ExtReal> b = ball_inf(members[k], r);
      for (std::size_t i = 0; i < m; ++i) acc[i] = upper ? max(acc[i], b[i]) : min(acc[i], b[i]);
      if (last && with_divergence) finest.push_back(std::move(b));
    }
    out.per_eps.push_back(std::move(acc));
  }
  // Both limits take the sup over eps (ball infima shrink as eps grows).
  out.value = out.per_eps.front();
  for (std::size_t e = 1; e < out.per_eps.size(); ++e)
    for (std::size_t i = 0; i < m; ++i) out.value[i] = max(out.value[i], out.per_eps[e][i]);
  out.divergence.assign(m, 0);
  if (!with_divergence || finest.size() < 2) return out;

  const std::size_t len = finest.size();
  const std::size_t mid = (len + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double min_e = kInf, max_e = -kInf, min_l = kInf, max_l = -kInf;
    bool finite = true;
    for (std::size_t k = 0; k < len && finite; ++k) {
      const ExtReal& v = finest[k][i];
      if (!v.is_finite()) {
        finite = false;
        break;
      }
      const double d = v.value();
      if (k < mid) {
        min_e = std::min(min_e, d);
        max_e = std::max(max_e, d);
      } else {
        min_l = std::min(min_l, d);
        max_l = std::max(max_l, d);
      }
    }
    if (!finite) continue;
    if (min_l > max_e &&
        min_l - min_e > std::max(p.divergence_floor, p.divergence_ratio * std::abs(min_e)))
      out.divergence[i] = 1;
    else if (max_l < min_e &&
             max_e - max_l > std::max(p.divergence_floor, p.divergence_ratio * std::abs(max_e)))
      out.divergence[i] = -1;
  }
  return out;
}

double sup_gap(const std::vector<ExtReal>& a, const std::vector<ExtReal>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].is_finite() && b[i].is_finite())
      worst = std::max(worst, std::abs(a[i].value() - b[i].value()));
  return worst;
}

GammaEstimate run(const FnSeq& seq, const GammaParams& p, bool upper) {
  p.validate(seq.grid());
  const Grid1D& grid = seq.grid();
  const std::vector<GridFn> members = seq.materialize(p.tail_start, p.horizon);
  Raw main = estimate(members, 0, p, grid, upper, true);

  GammaEstimate out{GridFn(grid, main.value, NegInfPolicy::Allow),
                    GridFn(grid, main.value, NegInfPolicy::Allow),
                    main.divergence,
                    0.0,
                    0.0};
  std::vector<ExtReal> lim = main.value;
  for (std::size_t i = 0; i < lim.size(); ++i) {
    if (main.divergence[i] > 0) lim[i] = ExtReal::pos_inf();
    if (main.divergence[i] < 0) lim[i] = ExtReal::neg_inf();
  }
  out.limit = GridFn(grid, std::move(lim), NegInfPolicy::Allow);

  const std::size_t ne = main.per_eps.size();
  if (ne >= 2) out.eps_sensitivity = sup_gap(main.per_eps[ne - 1], main.per_eps[ne - 2]);
  const int t2 = std::min(2 * p.tail_start, p.horizon - 1);
  if (t2 > p.tail_start) {
    Raw late = estimate(members, t2 - p.tail_start, p, grid, upper, false);
    out.tail_sensitivity = sup_gap(main.value, late.value);
  }
  return out;
}

}  // namespace

GammaParams GammaParams::defaults(const Grid1D& grid, int horizon) {
  GammaParams p;
  const double h = grid.spacing();
  p.eps_schedule = {4.0 * h, 2.0 * h, h};
  p.horizon = horizon;
  p.tail_start = std::max(1, horizon / 2);
  return p;
}

void GammaParams::validate(const Grid1D& grid) const {
  if (eps_schedule.empty()) throw Error(ErrorCode::BadParameter, "empty eps schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0)) throw Error(ErrorCode::BadParameter, "eps must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw Error(ErrorCode::BadParameter, "eps schedule must be strictly decreasing");
  }
  if (eps_schedule.back() < grid.spacing() * (1.0 - 1e-9))
    throw Error(ErrorCode::BadParameter, "eps below grid spacing");
  if (tail_start < 1 || tail_start >= horizon)
    throw Error(ErrorCode::BadParameter, "need 1 <= tail_start < horizon");
  if (trust_window && !(trust_window->first < trust_window->second))
    throw Error(ErrorCode::BadParameter, "empty trust window");
}

bool GammaEstimate::any_diverging() const {
  return std::any_of(divergence.begin(), divergence.end(), [](int d) { return d != 0; });
}

bool GammaEstimate::all_diverging() const {
  return !divergence.empty() &&
         std::all_of(divergence.begin(), divergence.end(), [](int d) { return d != 0; });
}

GammaEstimate gamma_liminf(const FnSeq& seq, const GammaParams& p) { return run(seq, p, false); }
GammaEstimate gamma_limsup(const FnSeq& seq, const GammaParams& p) { return run(seq, p, true); }

Residual epi_residual(const GridFn& a, const GridFn& b, const Window& window) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::BadParameter, "grid mismatch");
  const Grid1D& g = a.grid();
  Residual r;
  std::vector<double> da, db;
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.point(i);
    if (!in_window(window, x)) continue;
    if (a[i].is_neg_inf() != b[i].is_neg_inf()) {
      if (r.value < kInf) r = {kInf, x};
      continue;
    }
    if (a[i].is_finite()) da.push_back(x);
    if (b[i].is_finite()) db.push_back(x);
    if (a[i].is_finite() && b[i].is_finite()) {
      const double d = std::abs(a[i].value() - b[i].value());
      if (d > r.value) r = {d, x};
    }
  }
  if (da.empty() != db.empty()) {
    if (r.value < kInf) r = {kInf, da.empty() ? db.front() : da.front()};
    return r;
  }
  // Hausdorff distance between the finite domains; both lists are sorted.
  auto excess = [&r](const std::vector<double>& p, const std::vector<double>& q) {
    std::size_t j = 0;
    for (double x : p) {
      while (j + 1 < q.size() && std::abs(q[j + 1] - x) <= std::abs(q[j] - x)) ++j;
      const double d = std::abs(q[j] - x);
      if (d > r.value) r = {d, x};
    }
  };
  if (!da.empty()) {
    excess(da, db);
    excess(db, da);
  }
  return r;
}

Verdict gamma_limit_verdict(const FnSeq& seq, const GridFn& candidate, const GammaParams& p,
                            double tol) {
  const GammaEstimate lo = gamma_liminf(seq, p);
  const GammaEstimate up = gamma_limsup(seq, p);
  const Residual rl = epi_residual(lo.limit, candidate, p.trust_window);
  const Residual ru = epi_residual(up.limit, candidate, p.trust_window);

  Verdict v;
  v.residual_max = std::max(rl.value, ru.value);
  v.residual_argmax = rl.value >= ru.value ? rl.argmax : ru.argmax;
  v.outcome = v.residual_max <= tol ? Outcome::Pass : Outcome::Fail;
  if (lo.any_diverging() || up.any_diverging()) v.diagnostics.emplace_back("diverging");
  v.diagnostics.push_back("liminf residual " + ExtReal(rl.value).to_string());
  v.diagnostics.push_back("limsup residual " + ExtReal(ru.value).to_string());
  v.truncation_params = {{"horizon", p.horizon},
                         {"tail_start", p.tail_start},
                         {"eps_min", p.eps_schedule.back()},
                         {"spacing", seq.grid().spacing()},
                         {"tol", tol},
                         {"eps_sensitivity", std::max(lo.eps_sensitivity, up.eps_sensitivity)},
                         {"tail_sensitivity", std::max(lo.tail_sensitivity, up.tail_sensitivity)}};
  if (p.trust_window) {
    v.truncation_params["trust_lo"] = p.trust_window->first;
    v.truncation_params["trust_hi"] = p.trust_window->second;
  }
  return v;
}

namespace {

double dist(double a, double b) { return std::abs(a - b); }
double dist(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

template <class P>
double dist_to_set(const P& y, const std::vector<P>& s) {
  double best = kInf;
  for (const P& q : s) best = std::min(best, dist(y, q));
  return best;
}

template <class P>
std::vector<P> set_limit(const SetSeqOf<P>& s, const std::vector<P>& candidates,
                         const std::vector<double>& tols, const SetLimitParams& p, bool inner) {
  if (s.horizon < 2) throw Error(ErrorCode::BadParameter, "set sequence horizon too small");
  if (tols.empty()) throw Error(ErrorCode::BadParameter, "empty tolerance schedule");
  const int first = p.tail_start > 0 ? p.tail_start : std::max(1, s.horizon / 2);
  if (first > s.horizon) throw Error(ErrorCode::BadParameter, "tail_start beyond horizon");
  std::vector<std::vector<P>> sets;
  for (int n = first; n <= s.horizon; ++n) sets.push_back(s.provider(n));
  const std::size_t need = static_cast<std::size_t>(
      std::ceil(p.fraction * static_cast<double>(sets.size()) - 1e-12));

  std::vector<P> out;
  for (const P& y : candidates) {
    std::vector<double> d(sets.size());
    for (std::size_t k = 0; k < sets.size(); ++k) d[k] = dist_to_set(y, sets[k]);
    bool keep = true;
    for (double tol : tols) {
      const auto hits = static_cast<std::size_t>(
          std::count_if(d.begin(), d.end(), [tol](double v) { return v <= tol; }));
      if (inner ? hits != d.size() : hits < std::max<std::size_t>(need, 1)) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(y);
  }
  return out;
}

}  // namespace

std::vector<double> set_li(const SetSeq& s, const std::vector<double>& c,
                           const std::vector<double>& t, const SetLimitParams& p) {
  return set_limit(s, c, t, p, true);
}
std::vector<double> set_ls(const SetSeq& s, const std::vector<double>& c,
                           const std::vector<double>& t, const SetLimitParams& p) {
  return set_limit(s, c, t, p, false);
}
std::vector<Point2> set_li(const PlanarSetSeq& s, const std::vector<Point2>& c,
                           const std::vector<double>& t, const SetLimitParams& p) {
  return set_limit(s, c, t, p, true);
}
std::vector<Point2> set_ls(const PlanarSetSeq& s, const std::vector<Point2>& c,
                           const std::vector<double>& t, const SetLimitParams& p) {
  return set_limit(s, c, t, p, false);
}

DoubleSeq::DoubleSeq(std::size_t rows, std::size_t cols, ExtReal fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DiagonalPath diagonal_index(const DoubleSeq& a, double tol) {
  const std::size_t K = a.rows();
  const std::size_t N = a.cols();
  if (K < 4 || N < 4)
    throw Error(ErrorCode::HorizonExceeded, "need at least 4 rows and 4 columns");
  DiagonalPath path;
  path.row_tail_start = K - std::max<std::size_t>(1, K / 4);
  path.col_tail_start = N - std::max<std::size_t>(1, N / 4);

  // Column tail-sup over the row tail: the truncated limsup_k alpha[k][n].
  std::vector<ExtReal> col_sup(N, ExtReal::neg_inf());
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t k = path.row_tail_start; k < K; ++k) col_sup[n] = max(col_sup[n], a.at(k, n));
  path.bound = ExtReal::neg_inf();
  for (std::size_t n = path.col_tail_start; n < N; ++n) path.bound = max(path.bound, col_sup[n]);
  const ExtReal limit = path.bound.is_finite() ? ExtReal(path.bound.value() + tol) : path.bound;

  path.columns.resize(K);
  std::size_t prev = 0;
  for (std::size_t k = 0; k < K; ++k) {
    std::size_t lower = std::max(prev, k * N / K);
    if (k >= path.row_tail_start) lower = std::max(lower, path.col_tail_start);
    std::size_t pick = N - 1;
    for (std::size_t n = lower; n < N; ++n) {
      if (col_sup[n] <= limit) {
        pick = n;
        break;
      }
    }
    path.columns[k] = pick;
    prev = pick;
  }
  path.achieved = ExtReal::neg_inf();
  for (std::size_t k = path.row_tail_start; k < K; ++k)
    path.achieved = max(path.achieved, a.at(k, path.columns[k]));
  return path;
}

}  // namespace epilim
