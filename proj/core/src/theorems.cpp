#include "epilim/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epilim/error.hpp"
#include "epilim/io.hpp"
#include "epilim/regularize.hpp"

namespace epilim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A monotone trend is "escaping" when the tail half moves past the head half
// by more than max(0.5, 0.25 |head|), the rule used for pointwise divergence.
bool drifts_up(double head, double tail) {
  return tail - head > std::max(0.5, 0.25 * std::abs(head));
}

double steepest_quotient(const GridFn& f) {
  const Grid1D& g = f.grid();
  double steepest = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (!f[i].is_finite() || !f[i + 1].is_finite()) continue;
    steepest = std::max(steepest, std::abs((f[i + 1].value() - f[i].value()) /
                                           (g.point(i + 1) - g.point(i))));
  }
  return steepest;
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

SlopeGrid common_slope_grid(const FnSeq& seq, int tail_start, std::optional<std::size_t> count) {
  double steepest = 0.0;
  for (int n : {1, tail_start, seq.horizon()}) steepest = std::max(steepest, steepest_quotient(seq.at(n)));
  const double half = steepest > 0.0 ? 1.25 * steepest : 1.0;
  return SlopeGrid(Grid1D(-half, half, count.value_or(seq.grid().count())));
}

GridFn masked_conjugate(const GridFn& f, const SlopeGrid& s) {
  if (f.has_neg_inf() || !f.is_proper()) return conjugate_extended(f, s);
  const GridFn c = conjugate(f, s);
  const TrustInterval t = trust_interval(f);
  std::vector<ExtReal> vals = c.values();
  for (std::size_t j = 0; j < vals.size(); ++j) {
    const double sj = s.axis.point(j);
    const double slack = 1e-9 * (1.0 + std::abs(sj));
    if (sj < t.lo - slack || sj > t.hi + slack) vals[j] = ExtReal::pos_inf();
  }
  return GridFn(s.axis, std::move(vals));
}

FnSeq conjugate_seq(const FnSeq& seq, const SlopeGrid& s) {
  return FnSeq(
      s.axis, [seq, s](int n) { return masked_conjugate(seq.at(n), s); }, seq.horizon());
}

std::pair<double, double> dual_trust_window(const FnSeq& seq, const GridFn& f, int tail_start,
                                            const SlopeGrid& s) {
  double lo = s.axis.lo();
  double hi = s.axis.hi();
  auto narrow = [&](const GridFn& g) {
    if (!g.is_proper() || g.has_neg_inf()) return;
    const TrustInterval t = trust_interval(g);
    lo = std::max(lo, t.lo);
    hi = std::min(hi, t.hi);
  };
  for (int n = tail_start; n <= seq.horizon(); ++n) narrow(seq.at(n));
  narrow(f);
  const double d = s.axis.spacing();
  if (hi - lo < d) {
    const double c = s.axis.point(s.axis.nearest_index(std::clamp(0.5 * (lo + hi), s.axis.lo(), s.axis.hi())));
    return {c - 0.5 * d, c + 0.5 * d};
  }
  return {lo, hi};
}

std::string_view to_string(CoercivityStyle s) {
  switch (s) {
    case CoercivityStyle::DualDomainBounded: return "DualDomainBounded";
    case CoercivityStyle::UniformCoercive: return "UniformCoercive";
    case CoercivityStyle::UniformlyBounded: return "UniformlyBounded";
    case CoercivityStyle::Heuristic: return "Heuristic";
  }
  return "Heuristic";
}

namespace {

// Slopes of f beyond the window, assuming f continues affinely when its hull
// keeps a single slope over the outer quarter on that side. Empty when either
// side is not saturated.
std::optional<std::pair<double, double>> saturated_slopes(const GridFn& f) {
  if (!f.is_proper() || f.has_neg_inf()) return std::nullopt;
  const auto [first, last] = *f.finite_range();
  if (first != 0 || last + 1 != f.size()) return std::nullopt;
  const Grid1D& g = f.grid();
  const auto hull = lower_hull(f);
  if (hull.size() < 2) return std::nullopt;
  const double quarter = 0.25 * (g.hi() - g.lo());
  auto slope = [&](std::size_t k) {
    return (f[hull[k + 1]].value() - f[hull[k]].value()) / (g.point(hull[k + 1]) - g.point(hull[k]));
  };
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)); };
  const double left = slope(0);
  for (std::size_t k = 1; k + 1 < hull.size() && g.point(hull[k]) < g.lo() + quarter; ++k)
    if (!same(slope(k), left)) return std::nullopt;
  const double right = slope(hull.size() - 2);
  for (std::size_t k = hull.size() - 2; k-- > 0 && g.point(hull[k + 1]) > g.hi() - quarter;)
    if (!same(slope(k), right)) return std::nullopt;
  return std::make_pair(left, right);
}

struct HeadTail {
  double head;
  double tail;
};

// Extremes of v over the head half and the tail half of the index range.
template <class Pick>
HeadTail split(const std::vector<double>& v, double init, Pick pick) {
  const std::size_t mid = v.size() / 2;
  HeadTail r{init, init};
  for (std::size_t i = 0; i < v.size(); ++i) {
    double& slot = i < mid ? r.head : r.tail;
    slot = pick(slot, v[i]);
  }
  return r;
}

HeadTail split_max(const std::vector<double>& v) {
  return split(v, -kInf, [](double a, double b) { return std::max(a, b); });
}

HeadTail split_min(const std::vector<double>& v) {
  return split(v, kInf, [](double a, double b) { return std::min(a, b); });
}

}  // namespace

EquicoercivityReport equicoercivity_check(const FnSeq& seq, const FnSeq& dual_seq) {
  const int N = seq.horizon();
  if (N < 2) throw Error(ErrorCode::HorizonExceeded, "equicoercivity needs at least two members");
  EquicoercivityReport rep;
  for (int n = 1; n <= N; ++n) rep.n.push_back(n);

  // (1) bounded dual domains.
  {
    std::vector<double> radius;
    bool all = true;
    for (int n = 1; n <= N && all; ++n) {
      const auto s = saturated_slopes(seq.at(n));
      if (!s) {
        all = false;
        break;
      }
      radius.push_back(std::max(std::abs(s->first), std::abs(s->second)));
    }
    if (all) {
      rep.style = CoercivityStyle::DualDomainBounded;
      rep.extremes = radius;
      const HeadTail ht = split_max(radius);
      rep.holds = !(ht.tail > 1.5 * ht.head + 1e-12);
      rep.detail = rep.holds ? "dual domains inside [-R, R], R = " + fmt(std::max(ht.head, ht.tail))
                             : "dual domain point escapes: radius " + fmt(ht.head) + " -> " + fmt(ht.tail);
      return rep;
    }
  }

  const std::vector<GridFn> duals = dual_seq.materialize(1, N);
  const bool duals_proper =
      std::all_of(duals.begin(), duals.end(), [](const GridFn& g) { return g.is_proper() && !g.has_neg_inf(); });

  // (2) f_n*(s) >= alpha |s| + beta uniformly.
  if (duals_proper) {
    for (double alpha : {1.0, 0.5, 0.25, 0.125}) {
      std::vector<double> beta;
      for (const GridFn& g : duals) {
        double b = kInf;
        for (std::size_t j = 0; j < g.size(); ++j)
          if (g[j].is_finite()) b = std::min(b, g[j].value() - alpha * std::abs(g.grid().point(j)));
        beta.push_back(b);
      }
      const HeadTail ht = split_min(beta);
      if (!drifts_up(-ht.head, -ht.tail)) {
        rep.style = CoercivityStyle::UniformCoercive;
        rep.holds = true;
        rep.alpha = alpha;
        rep.beta = std::min(ht.head, ht.tail);
        rep.extremes = beta;
        rep.detail = "f_n*(s) >= " + fmt(alpha) + "|s| + (" + fmt(rep.beta) + ")";
        return rep;
      }
    }
  }

  // (3) f_n <= rho near the window center.
  {
    const Grid1D& g = seq.grid();
    const double c = 0.5 * (g.lo() + g.hi());
    const double r = 0.25 * (g.hi() - g.lo());
    std::vector<double> rho;
    bool bounded = true;
    for (int n = 1; n <= N && bounded; ++n) {
      const GridFn f = seq.at(n);
      double m = -kInf;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(g.point(i) - c) > r + 1e-12) continue;
        if (!f[i].is_finite()) {
          bounded = false;
          break;
        }
        m = std::max(m, f[i].value());
      }
      rho.push_back(m);
    }
    if (bounded) {
      const HeadTail ht = split_max(rho);
      if (!drifts_up(ht.head, ht.tail)) {
        rep.style = CoercivityStyle::UniformlyBounded;
        rep.holds = true;
        rep.rho = std::max(ht.head, ht.tail);
        rep.radius = r;
        rep.extremes = rho;
        rep.detail = "f_n <= " + fmt(rep.rho) + " on |x - " + fmt(c) + "| <= " + fmt(r);
        return rep;
      }
    }
  }

  // (4) sublevel radii at a common level.
  rep.style = CoercivityStyle::Heuristic;
  if (!duals_proper) {
    rep.holds = false;
    rep.detail = "some conjugate is improper";
    return rep;
  }
  double level = -kInf;
  for (const GridFn& g : duals) {
    double m = kInf;
    for (const ExtReal& v : g.values())
      if (v.is_finite()) m = std::min(m, v.value());
    level = std::max(level, m);
  }
  level += 1.0;
  std::vector<double> radius;
  for (const GridFn& g : duals) {
    double r = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g[j].is_finite() && g[j].value() <= level) r = std::max(r, std::abs(g.grid().point(j)));
    radius.push_back(r);
  }
  const HeadTail ht = split_max(radius);
  rep.extremes = radius;
  rep.holds = !(ht.tail > 1.5 * ht.head + duals.front().grid().spacing());
  rep.detail = "finite-horizon scan: sublevel radius at level " + fmt(level) + " goes " + fmt(ht.head) +
               " -> " + fmt(ht.tail);
  return rep;
}

namespace {

struct DualContext {
  SlopeGrid slopes;
  FnSeq dual;
  GammaParams params;
};

DualContext make_dual(const FnSeq& seq, const GridFn& f, const GammaParams& p) {
  p.validate(seq.grid());
  SlopeGrid slopes = common_slope_grid(seq, p.tail_start);
  FnSeq dual = conjugate_seq(seq.with_horizon(p.horizon), slopes);
  GammaParams pd = GammaParams::defaults(slopes.axis, p.horizon);
  pd.tail_start = p.tail_start;
  pd.divergence_floor = p.divergence_floor;
  pd.divergence_ratio = p.divergence_ratio;
  pd.trust_window = dual_trust_window(seq.with_horizon(p.horizon), f, p.tail_start, slopes);
  return {std::move(slopes), std::move(dual), std::move(pd)};
}

std::vector<double> as_doubles(const GridFn& f) {
  std::vector<double> out;
  out.reserve(f.size());
  for (const ExtReal& v : f.values()) out.push_back(v.to_double());
  return out;
}

// sup of (a - b)^+ over the window, with the usual extended-real conventions.
Residual one_sided_excess(const GridFn& a, const GridFn& b, const std::optional<std::pair<double, double>>& w) {
  Residual r;
  const Grid1D& g = a.grid();
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.point(i);
    if (w && (x < w->first - 1e-12 || x > w->second + 1e-12)) continue;
    if (a[i] <= b[i]) continue;
    const double d = (a[i].is_finite() && b[i].is_finite()) ? a[i].value() - b[i].value() : kInf;
    if (d > r.value) r = {d, x};
  }
  return r;
}

Verdict residual_verdict(const Residual& r, double tol) {
  Verdict v;
  v.residual_max = r.value;
  v.residual_argmax = r.argmax;
  v.outcome = r.value <= tol ? Outcome::Pass : Outcome::Fail;
  return v;
}

HypothesisReport coercivity_hypothesis(const EquicoercivityReport& eq) {
  return {"equicoercivity", eq.holds, std::string(to_string(eq.style)) + ": " + eq.detail};
}

}  // namespace

Verdict dual_gamma_check(const FnSeq& seq, const GridFn& f, const GammaParams& p, double tol) {
  const DualContext ctx = make_dual(seq, f, p);
  const EquicoercivityReport eq = equicoercivity_check(seq.with_horizon(p.horizon), ctx.dual);
  const GammaEstimate lo = gamma_liminf(seq, p);
  const GammaEstimate up = gamma_limsup(seq, p);
  const bool dom_ok = up.limit.is_proper();

  const GridFn conj_lo = masked_conjugate(lo.limit, ctx.slopes);
  const GammaEstimate dual_up = gamma_limsup(ctx.dual, ctx.params);
  const Residual ident = epi_residual(conj_lo, dual_up.limit, ctx.params.trust_window);
  const Residual one = one_sided_excess(conj_lo, dual_up.limit, ctx.params.trust_window);

  Verdict v;
  v.hypotheses.push_back(coercivity_hypothesis(eq));
  v.hypotheses.push_back({"dom Γ-limsup nonempty", dom_ok,
                          dom_ok ? "Γ-limsup finite somewhere" : "Γ-limsup is +inf on the whole grid"});

  Verdict ident_v = residual_verdict(ident, tol);
  ident_v.diagnostics.emplace_back("conjugate of Γ-liminf vs Γ-limsup of conjugates");
  Verdict one_v = residual_verdict(one, tol);
  one_v.diagnostics.emplace_back("excess of conjugate of Γ-liminf over Γ-limsup of conjugates");

  Verdict primal = gamma_limit_verdict(seq, f, p, tol);
  Verdict dual = gamma_limit_verdict(ctx.dual, masked_conjugate(f, ctx.slopes), ctx.params, tol);

  v.residual_max = ident.value;
  v.residual_argmax = ident.argmax;
  if (!dom_ok || !eq.holds) {
    v.outcome = Outcome::HypothesisFailure;
    if (!dom_ok) v.diagnostics.emplace_back("dom Γ-limsup empty");
    if (!eq.holds) v.diagnostics.emplace_back("conjugates not equicoercive");
  } else {
    const bool equivalent = primal.holds() == dual.holds();
    v.residual_max = std::max({ident.value, primal.residual_max, dual.residual_max});
    v.outcome = (ident.value <= tol && equivalent) ? Outcome::Pass : Outcome::Fail;
    if (!equivalent) v.diagnostics.emplace_back("primal and dual convergence disagree");
  }

  // Exhibit the identity on the full slope window, including infinite values.
  std::size_t neg = 0, pos = 0, fin = 0;
  for (const ExtReal& x : dual_up.limit.values()) (x.is_neg_inf() ? neg : x.is_pos_inf() ? pos : fin)++;
  if (!conj_lo.is_proper() && conj_lo.has_neg_inf() && (pos > 0 || fin > 0)) {
    v.diagnostics.push_back("strict gap: conjugate of Γ-liminf is -inf everywhere, Γ-limsup of conjugates is -inf at " +
                            std::to_string(neg) + ", finite at " + std::to_string(fin) + ", +inf at " +
                            std::to_string(pos) + " of " + std::to_string(dual_up.limit.size()) + " slopes");
  }
  v.witness["slope"] = ctx.slopes.axis.points();
  v.witness["conjugate_of_liminf"] = as_doubles(conj_lo);
  v.witness["limsup_of_conjugates"] = as_doubles(dual_up.limit);

  v.truncation_params = {{"horizon", p.horizon},
                         {"tail_start", p.tail_start},
                         {"spacing", seq.grid().spacing()},
                         {"slope_spacing", ctx.slopes.axis.spacing()},
                         {"slope_trust_lo", ctx.params.trust_window->first},
                         {"slope_trust_hi", ctx.params.trust_window->second},
                         {"tol", tol}};
  v.parts.push_back({"conjugate_identity", std::move(ident_v)});
  v.parts.push_back({"one_sided", std::move(one_v)});
  v.parts.push_back({"primal", std::move(primal)});
  v.parts.push_back({"dual", std::move(dual)});
  return v;
}

Verdict joly_check(const FnSeq& seq, const GammaParams& p, double tol) {
  const GridFn none = GridFn::constant(seq.grid(), ExtReal::pos_inf());
  const DualContext ctx = make_dual(seq, none, p);

  // A bounded dual selection with bounded-above values: the per-member minima
  // of the conjugates over the slope window must not escape upward.
  std::vector<double> minima;
  bool proper = true;
  for (int n = 1; n <= p.horizon; ++n) {
    const GridFn g = ctx.dual.at(n);
    double m = kInf;
    for (const ExtReal& x : g.values())
      if (x.is_finite()) m = std::min(m, x.value());
    if (!(m < kInf)) proper = false;
    minima.push_back(m);
  }
  const std::size_t mid = minima.size() / 2;
  const double head = *std::max_element(minima.begin(), minima.begin() + static_cast<long>(mid));
  const double tail = *std::max_element(minima.begin() + static_cast<long>(mid), minima.end());
  const bool bounded = proper && !drifts_up(head, tail);

  const GammaEstimate dual_lo = gamma_liminf(ctx.dual, ctx.params);
  const GridFn back = conjugate_extended(dual_lo.limit, SlopeGrid(seq.grid()));
  const GammaEstimate up = gamma_limsup(seq, p);
  const Residual r = epi_residual(back, up.limit, p.trust_window);

  Verdict v = residual_verdict(r, tol);
  v.hypotheses.push_back({"bounded dual sequence with bounded-above values", bounded,
                          "max of min f_n* over head/tail halves: " + fmt(head) + " / " + fmt(tail)});
  if (!bounded) {
    v.outcome = Outcome::HypothesisFailure;
    v.diagnostics.emplace_back("no bounded dual sequence with bounded-above values");
  }
  v.diagnostics.emplace_back("conjugate of Γ-liminf of conjugates vs Γ-limsup");
  v.truncation_params = {{"horizon", p.horizon},
                         {"tail_start", p.tail_start},
                         {"spacing", seq.grid().spacing()},
                         {"slope_spacing", ctx.slopes.axis.spacing()},
                         {"tol", tol}};
  v.witness["min_conjugate"] = std::move(minima);
  return v;
}

double NormalizationWitness::residual() const {
  return std::max({residual_x, residual_s, residual_value});
}

NormalizationWitness normalization_finder(const FnSeq& seq, const GridFn& f, const GammaParams& p,
                                          double tol) {
  p.validate(seq.grid());
  const MonotoneGraph gf = subdiff_graph(f);
  std::vector<GridFn> members = seq.materialize(p.tail_start, p.horizon);
  std::vector<MonotoneGraph> graphs;
  graphs.reserve(members.size());
  for (const GridFn& m : members) graphs.push_back(subdiff_graph(m));

  NormalizationWitness best;
  double best_res = kInf;
  for (const Breakpoint& b : gf.breakpoints()) {
    if (p.trust_window && (b.x < p.trust_window->first - 1e-12 || b.x > p.trust_window->second + 1e-12)) continue;
    const ExtReal fa = eval(f, b.x);
    const Interval iv = gf.slice(b.x);
    std::vector<double> stars;
    for (const ExtReal& e : {iv.lo, iv.hi})
      if (e.is_finite()) stars.push_back(e.value());
    if (stars.size() == 2) stars.push_back(0.5 * (stars[0] + stars[1]));
    for (double a_star : stars) {
      NormalizationWitness w;
      w.a = b.x;
      w.a_star = a_star;
      const std::size_t len = graphs.size();
      w.n.resize(len);
      w.a_n.resize(len);
      w.a_star_n.resize(len);
      w.value_n.resize(len);
      // Late members first: diverging families exceed the running best early.
      double res = 0.0;
      for (std::size_t k = len; k-- > 0 && res < best_res;) {
        const Point2 q = graphs[k].nearest(b.x, a_star);
        const ExtReal v = eval(members[k], q.x);
        const double dv = v.is_finite() ? std::abs(v.value() - fa.value()) : kInf;
        w.n[k] = p.tail_start + static_cast<double>(k);
        w.a_n[k] = q.x;
        w.a_star_n[k] = q.y;
        w.value_n[k] = v.to_double();
        w.residual_x = std::max(w.residual_x, std::abs(q.x - b.x));
        w.residual_s = std::max(w.residual_s, std::abs(q.y - a_star));
        w.residual_value = std::max(w.residual_value, dv);
        res = w.residual();
      }
      if (res < best_res) {
        best_res = res;
        best = std::move(w);
      }
    }
  }
  if (!(best_res <= tol))
    throw Error(ErrorCode::NotFound, "no normalization anchor within tolerance; best residual " + fmt(best_res));
  return best;
}

Verdict attouch_equivalence_check(const FnSeq& seq, const GridFn& f, const GammaParams& p, double tol) {
  Verdict dg = dual_gamma_check(seq, f, p, tol);
  const bool coercive = dg.hypotheses[0].holds;
  const bool dom_ok = dg.hypotheses[1].holds;

  Verdict a = *dg.part("dual");
  a.diagnostics.insert(a.diagnostics.begin(), "conjugate of f vs Γ-limits of the conjugates");

  // (b): graphical convergence on the trusted box plus normalization.
  const Grid1D& g = seq.grid();
  const double slope_half = default_slope_grid(f).axis.hi();
  const Box box{p.trust_window ? p.trust_window->first : g.lo(), p.trust_window ? p.trust_window->second : g.hi(),
                -slope_half, slope_half};
  const MonotoneGraph gf = subdiff_graph(f);
  Verdict graph = graphical_convergence_verdict([&seq](int n) { return subdiff_graph(seq.at(n)); }, gf, box, p, tol);
  Verdict norm;
  try {
    const NormalizationWitness w = normalization_finder(seq, f, p, tol);
    norm.outcome = Outcome::Pass;
    norm.residual_max = w.residual();
    norm.residual_argmax = w.a;
    norm.witness["a"] = {w.a, w.a_star};
    norm.witness["n"] = w.n;
    norm.witness["a_n"] = w.a_n;
    norm.witness["a_star_n"] = w.a_star_n;
    norm.witness["value_n"] = w.value_n;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFound) throw;
    norm.outcome = Outcome::Fail;
    norm.residual_max = kInf;
    norm.diagnostics.emplace_back(e.what());
  }
  Verdict b;
  b.outcome = graph.holds() && norm.holds() ? Outcome::Pass : Outcome::Fail;
  b.residual_max = std::max(graph.residual_max, norm.residual_max);
  b.residual_argmax = graph.residual_max >= norm.residual_max ? graph.residual_argmax : norm.residual_argmax;
  b.parts.push_back({"graphical", std::move(graph)});
  b.parts.push_back({"normalization", std::move(norm)});

  Verdict c = gamma_limit_verdict(seq, f, p, tol);

  const bool ta = a.holds(), tb = b.holds(), tc = c.holds();
  const bool chain = (!ta || tb) && (!tb || tc);
  const bool agree = ta == tb && tb == tc;

  Verdict v;
  v.hypotheses = dg.hypotheses;
  v.truncation_params = dg.truncation_params;
  v.residual_max = c.residual_max;
  v.residual_argmax = c.residual_argmax;
  if (!chain) v.diagnostics.emplace_back("implication (a) => (b) => (c) violated");
  if (coercive && dom_ok && !agree) v.diagnostics.emplace_back("equicoercive but (a), (b), (c) disagree");
  if (!dom_ok) {
    v.outcome = Outcome::HypothesisFailure;
    v.diagnostics.emplace_back("dom Γ-limsup empty");
  } else if (!chain || (coercive && !agree)) {
    v.outcome = Outcome::Fail;
  } else {
    v.outcome = tc ? Outcome::Pass : Outcome::Fail;
  }
  v.diagnostics.push_back(std::string("(a) ") + (ta ? "true" : "false") + ", (b) " + (tb ? "true" : "false") +
                          ", (c) " + (tc ? "true" : "false"));
  v.parts.push_back({"a", std::move(a)});
  v.parts.push_back({"b", std::move(b)});
  v.parts.push_back({"c", std::move(c)});
  return v;
}

WitnessSchedule WitnessSchedule::dyadic(int horizon) {
  WitnessSchedule s;
  for (int k = 1; k <= horizon; k *= 2) {
    s.k.push_back(k);
    s.lambda.push_back(1.0 / k);
  }
  return s;
}

WitnessResult witness_recovery(const FnSeq& seq, double x_star, const GammaParams& p, double tol,
                               std::optional<WitnessSchedule> schedule) {
  p.validate(seq.grid());
  const int N = p.horizon;
  const WitnessSchedule ws = schedule.value_or(WitnessSchedule::dyadic(N));
  if (ws.k.size() != ws.lambda.size() || ws.k.empty())
    throw Error(ErrorCode::BadParameter, "k and lambda schedules differ in length");
  for (std::size_t c = 0; c < ws.k.size(); ++c) {
    if (!(ws.lambda[c] > 0.0)) throw Error(ErrorCode::BadParameter, "lambda must be positive");
    if (c > 0 && !(ws.k[c] > ws.k[c - 1])) throw Error(ErrorCode::BadParameter, "k schedule must increase");
  }

  const SlopeGrid slopes = common_slope_grid(seq, p.tail_start);
  const Grid1D& sg = slopes.axis;
  const std::size_t js = sg.nearest_index(std::clamp(x_star, sg.lo(), sg.hi()));
  const double xs = sg.point(js);
  const Grid1D& g = seq.grid();

  std::vector<GridFn> members = seq.materialize(1, N);
  std::vector<GridFn> duals;
  duals.reserve(members.size());
  for (const GridFn& m : members) duals.push_back(masked_conjugate(m, slopes));

  // B_k: interval hull of [-k, k] within the window and the anchors (the
  // domain point of each member nearest the origin).
  double anchor_lo = kInf, anchor_hi = -kInf;
  for (const GridFn& m : members) {
    const auto range = m.finite_range();
    if (!range) throw Error(ErrorCode::ImproperInput, "improper family member");
    const double a = std::clamp(0.0, g.point(range->first), g.point(range->second));
    const double snapped = g.point(g.nearest_index(a));
    anchor_lo = std::min(anchor_lo, snapped);
    anchor_hi = std::max(anchor_hi, snapped);
  }
  auto ball = [&](std::size_t c) {
    return std::make_pair(std::min(std::max(g.lo(), -ws.k[c]), anchor_lo), std::max(std::min(g.hi(), ws.k[c]), anchor_hi));
  };
  auto support = [](const std::pair<double, double>& b, double t) { return std::max(t * b.first, t * b.second); };

  // alpha[n][c] = ((f_n*)_lambda [] sigma_{B_k})(x*), the conjugate of the
  // truncated regularization.
  const std::size_t K = ws.k.size();
  DoubleSeq alpha(static_cast<std::size_t>(N), K);
  for (std::size_t r = 0; r < static_cast<std::size_t>(N); ++r) {
    for (std::size_t c = 0; c < K; ++c) {
      const GridFn phi = moreau_envelope(duals[r], ws.lambda[c]);
      const auto b = ball(c);
      double best = kInf;
      for (std::size_t i = 0; i < sg.count(); ++i)
        best = std::min(best, phi[i].value() + support(b, xs - sg.point(i)));
      alpha.at(r, c) = best;
    }
  }
  const DiagonalPath path = diagonal_index(alpha);

  WitnessResult res;
  for (std::size_t r = 0; r < static_cast<std::size_t>(N); ++r) {
    const std::size_t c = path.columns[r];
    const GridFn phi = moreau_envelope(duals[r], ws.lambda[c]);
    const auto b = ball(c);
    std::size_t arg = 0;
    double best = kInf;
    for (std::size_t i = 0; i < sg.count(); ++i) {
      const double v = phi[i].value() + support(b, xs - sg.point(i));
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    const double xn = sg.point(arg);
    const double yn = prox(duals[r], ws.lambda[c], xn);
    res.n.push_back(static_cast<double>(r + 1));
    res.k_n.push_back(ws.k[c]);
    res.lambda_n.push_back(ws.lambda[c]);
    res.x_n.push_back(xn);
    res.y_n.push_back(yn);
    res.value_n.push_back(duals[r][sg.nearest_index(yn)].to_double());
  }

  const GammaEstimate lo = gamma_liminf(seq, p);
  const GridFn target_fn = masked_conjugate(lo.limit, slopes);
  const ExtReal target = target_fn[js];
  res.target = target.to_double();
  res.achieved = -kInf;
  double reg_lhs = -kInf;
  for (int n = p.tail_start; n <= N; ++n) {
    const std::size_t r = static_cast<std::size_t>(n - 1);
    res.achieved = std::max(res.achieved, res.value_n[r]);
    const double gap = res.x_n[r] - res.y_n[r];
    reg_lhs = std::max(reg_lhs, res.value_n[r] + gap * gap / (2.0 * res.lambda_n[r]));
  }
  res.terminal_gap = std::abs(res.y_n.back() - xs);

  Verdict& v = res.verdict;
  const EquicoercivityReport eq = equicoercivity_check(seq.with_horizon(N), conjugate_seq(seq.with_horizon(N), slopes));
  v.hypotheses.push_back(coercivity_hypothesis(eq));
  v.hypotheses.push_back({"Γ-liminf proper", lo.limit.is_proper(), ""});
  v.residual_max = std::max(res.terminal_gap, res.achieved - res.target);
  v.residual_argmax = xs;
  if (!lo.limit.is_proper() || !eq.holds) {
    v.outcome = Outcome::HypothesisFailure;
    v.diagnostics.emplace_back(!lo.limit.is_proper() ? "dom Γ-liminf empty" : "conjugates not equicoercive");
  } else if (target.is_pos_inf()) {
    v.outcome = Outcome::Pass;
    v.diagnostics.emplace_back("f*(x*) = +inf: inequality holds trivially");
  } else {
    const bool bounded = res.achieved <= res.target + tol;
    const bool converged = res.terminal_gap <= tol;
    v.outcome = bounded && converged ? Outcome::Pass : Outcome::Fail;
    if (!bounded) v.diagnostics.emplace_back("limsup f_n*(y_n*) exceeds f*(x*) + tol");
    if (!converged) v.diagnostics.emplace_back("y_n* does not reach x* within the horizon");
    if (reg_lhs > res.target + tol) v.diagnostics.emplace_back("regularized inequality exceeds f*(x*) + tol");
  }
  v.truncation_params = {{"horizon", N},
                         {"tail_start", p.tail_start},
                         {"x_star", xs},
                         {"slope_spacing", sg.spacing()},
                         {"target", res.target},
                         {"achieved", res.achieved},
                         {"regularized_lhs", reg_lhs},
                         {"diagonal_bound", path.bound.to_double()},
                         {"diagonal_achieved", path.achieved.to_double()},
                         {"tol", tol}};
  v.witness["n"] = res.n;
  v.witness["k_n"] = res.k_n;
  v.witness["x_n"] = res.x_n;
  v.witness["y_n"] = res.y_n;
  v.witness["value_n"] = res.value_n;
  return res;
}

PairSequence a_implies_b_construct(const FnSeq& seq, const GridFn& f, double x, double y_star,
                                   const GammaParams& p, double tol) {
  p.validate(seq.grid());
  const Grid1D& g = seq.grid();
  const double u = g.point(g.nearest_index(std::clamp(x, g.lo(), g.hi())));
  const WitnessResult w = witness_recovery(seq, y_star, p, tol);
  const double ys = w.verdict.truncation_params.at("x_star");

  PairSequence out;
  const MonotoneGraph gf = subdiff_graph(f);
  const double h = g.spacing();
  const bool on_graph = gf.distance(u, ys) <= h + tol;
  out.verdict.hypotheses.push_back({"(x, y*) on the graph of f", on_graph, "distance " + fmt(gf.distance(u, ys))});

  for (int n = p.tail_start; n <= p.horizon; ++n) {
    const GridFn fn = seq.at(n);
    const double z = w.y_n[static_cast<std::size_t>(n - 1)];
    const double eps = std::max(0.0, fenchel_young_gap(fn, u, z));
    const SubgradPair r = br_repair(fn, {u, z, eps});
    out.n.push_back(n);
    out.eps_n.push_back(eps);
    out.x_n.push_back(r.x);
    out.y_n.push_back(r.s);
  }
  const double dx = std::abs(out.x_n.back() - u);
  const double dy = std::abs(out.y_n.back() - ys);
  Verdict& v = out.verdict;
  v.residual_max = std::max(dx, dy);
  v.residual_argmax = u;
  if (!on_graph) {
    v.outcome = Outcome::HypothesisFailure;
    v.diagnostics.emplace_back("(x, y*) is not a graph point of f");
  } else {
    v.outcome = v.residual_max <= tol ? Outcome::Pass : Outcome::Fail;
  }
  v.truncation_params = {{"x", u}, {"y_star", ys}, {"tol", tol}, {"tail_start", p.tail_start}, {"horizon", p.horizon}};
  v.witness["n"] = out.n;
  v.witness["eps_n"] = out.eps_n;
  v.witness["x_n"] = out.x_n;
  v.witness["y_n"] = out.y_n;
  return out;
}

}  // namespace epilim
