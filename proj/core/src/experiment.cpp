#include "epilim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "epilim/error.hpp"
#include "epilim/families.hpp"
#include "epilim/io.hpp"
#include "epilim/regularize.hpp"
#include "epilim/theorems.hpp"

namespace epilim {

namespace {

using json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Usage, "config key '" + key + "' expects a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double d = parse_number(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw Error(ErrorCode::Usage, "config key '" + key + "' expects an integer, got '" + v + "'");
  return static_cast<int>(d);
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 2;
    case Outcome::HypothesisFailure: return 3;
  }
  return 2;
}

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

struct Setup {
  const FamilySpec* family;
  Grid1D grid;
  int horizon;
  GammaParams params;
  double tol;
  FnSeq seq;
  GridFn candidate;
};

Setup resolve(const ExperimentConfig& cfg) {
  if (cfg.family.empty()) throw Error(ErrorCode::Usage, "--family is required");
  const FamilySpec& fam = find_family(cfg.family);
  const Grid1D grid = cfg.grid.empty() ? fam.default_grid() : Grid1D::parse(cfg.grid);
  const int horizon = cfg.horizon > 0 ? cfg.horizon : fam.horizon;
  if (horizon < 2) throw Error(ErrorCode::Usage, "--n must be at least 2");
  if (cfg.tail_start < 0 || cfg.tail_start >= horizon)
    throw Error(ErrorCode::Usage, "--tail-start must lie in [1, n)");
  GammaParams p = fam.params(grid, horizon, cfg.tail_start);
  p.validate(grid);
  if (cfg.tol && !(*cfg.tol >= 0.0)) throw Error(ErrorCode::Usage, "--tol must be nonnegative");
  const double tol = default_tolerance(grid, p.tail_start) + cfg.tol.value_or(0.0);
  return {&fam, grid, horizon, p, tol, fam.sequence(grid, horizon), fam.candidate_on(grid)};
}

std::string resolved_format(const ExperimentConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw Error(ErrorCode::Usage, "--format must be csv or json");
  return f;
}

std::string render(const GridFn& f, const std::string& format) {
  if (format == "json") return to_json(f) + "\n";
  std::ostringstream os;
  write_csv(os, f);
  return os.str();
}

std::string render(const MonotoneGraph& g) {
  std::ostringstream os;
  write_csv(os, g);
  return os.str();
}

class Artifacts {
 public:
  explicit Artifacts(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir_ + "'");
    }
  }
  bool enabled() const { return !dir_.empty(); }
  void write(const std::string& name, const std::string& content) const {
    if (dir_.empty()) return;
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  }

 private:
  std::string dir_;
};

std::string ext(const std::string& format) { return format == "json" ? ".json" : ".csv"; }

ExperimentResult finish(const Verdict& v, const Artifacts& art) {
  const std::string text = v.to_json(2) + "\n";
  art.write("verdict.json", text);
  return {exit_code(v.outcome), text, ""};
}

ExperimentResult run_command(const ExperimentConfig& cfg) {
  const std::string& cmd = cfg.command;
  if (cmd == "list") return {0, list_families(cfg.format), ""};
  if (cmd == "reproduce") return reproduce(cfg.target, cfg);

  const Setup s = resolve(cfg);
  const Artifacts art(cfg.out);

  if (cmd == "conjugate" || cmd == "moreau") {
    const int member = cfg.member > 0 ? cfg.member : s.horizon;
    const std::string format = resolved_format(cfg, "csv");
    const GridFn f = s.seq.at(member);
    const GridFn out = cmd == "conjugate" ? conjugate(f) : moreau_envelope(f, cfg.lambda);
    const std::string text = render(out, format);
    art.write(cmd + ext(format), text);
    return {0, art.enabled() ? "" : text, ""};
  }

  const std::string format = resolved_format(cfg, "csv");
  if (cmd == "gamma-check") {
    const Verdict v = gamma_limit_verdict(s.seq, s.candidate, s.params, s.tol);
    if (art.enabled()) {
      art.write("candidate" + ext(format), render(s.candidate, format));
      art.write("liminf" + ext(format), render(gamma_liminf(s.seq, s.params).limit, format));
      art.write("limsup" + ext(format), render(gamma_limsup(s.seq, s.params).limit, format));
    }
    return finish(v, art);
  }
  if (cmd == "dual-check") {
    const Verdict v = dual_gamma_check(s.seq, s.candidate, s.params, s.tol);
    if (art.enabled()) {
      const Grid1D slopes(v.witness.at("slope").front(), v.witness.at("slope").back(),
                          v.witness.at("slope").size());
      auto curve = [&](const char* key) {
        std::vector<ExtReal> vals(v.witness.at(key).begin(), v.witness.at(key).end());
        return GridFn(slopes, std::move(vals), NegInfPolicy::Allow);
      };
      art.write("conjugate_of_liminf" + ext(format), render(curve("conjugate_of_liminf"), format));
      art.write("limsup_of_conjugates" + ext(format), render(curve("limsup_of_conjugates"), format));
    }
    return finish(v, art);
  }
  if (cmd == "attouch-check") {
    const Verdict v = attouch_equivalence_check(s.seq, s.candidate, s.params, s.tol);
    if (art.enabled()) {
      art.write("graph_candidate.csv", render(subdiff_graph(s.candidate)));
      art.write("graph_member.csv", render(subdiff_graph(s.seq.at(s.horizon))));
    }
    return finish(v, art);
  }
  if (cmd == "witness") {
    const WitnessResult w = witness_recovery(s.seq, cfg.x_star, s.params, s.tol);
    return finish(w.verdict, art);
  }
  throw Error(ErrorCode::Usage, "unknown command '" + cmd + "'");
}

// ---- reproduce ---------------------------------------------------------------

struct Claim {
  std::string claim;
  std::string expected;
  std::string computed;
  double residual = 0.0;
  bool holds = false;
};

json claims_json(const std::vector<Claim>& cs) {
  json arr = json::array();
  for (const Claim& c : cs)
    arr.push_back({{"claim", c.claim},
                   {"expected", c.expected},
                   {"computed", c.computed},
                   {"residual", number(c.residual)},
                   {"holds", c.holds}});
  return arr;
}

std::string count_text(const GridFn& f) {
  std::size_t neg = 0, fin = 0, pos = 0;
  for (const ExtReal& v : f.values()) {
    if (v.is_neg_inf()) ++neg;
    else if (v.is_pos_inf()) ++pos;
    else ++fin;
  }
  return "-inf at " + std::to_string(neg) + ", finite at " + std::to_string(fin) + ", +inf at " +
         std::to_string(pos) + " of " + std::to_string(f.size()) + " points";
}

ExperimentResult reproduce_blowup(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.family = "blowup";
  const Setup s = resolve(c);
  std::vector<Claim> claims;

  // Conjugates of the first 64 members on their own slope windows.
  {
    const double W = std::max(-s.grid.lo(), s.grid.hi());
    double err_trust = 0.0, err_ramp = 0.0, err_edge = 0.0;
    for (int n = 1; n <= 64; ++n) {
      const GridFn f = s.seq.at(n);
      const SlopeGrid sg = default_slope_grid(f);
      const GridFn fc = conjugate(f, sg);
      const TrustInterval t = trust_interval(f);
      err_edge = std::max({err_edge, std::abs(t.lo + 1.0 / n), std::abs(t.hi - 1.0 / n)});
      for (std::size_t j = 0; j < fc.size(); ++j) {
        const double sj = sg.axis.point(j);
        const double v = fc[j].value();
        if (t.contains(sj))
          err_trust = std::max(err_trust, std::abs(v + n));
        else
          err_ramp = std::max(err_ramp, std::abs(v - ((std::abs(sj) - 1.0 / n) * W - n)));
      }
    }
    claims.push_back({"f_n* = indicator of [-1/n, 1/n] minus n on the trust region, n <= 64",
                      "max error <= 1e-9", "max error " + format_double(err_trust), err_trust,
                      err_trust <= 1e-9});
    claims.push_back({"trust region of f_n is [-1/n, 1/n]", "endpoint error <= 1e-12",
                      "endpoint error " + format_double(err_edge), err_edge, err_edge <= 1e-12});
    claims.push_back({"outside the trust region the window turns +inf into the ramp (|s| - 1/n) W - n",
                      "max error <= 1e-9", "max error " + format_double(err_ramp), err_ramp, err_ramp <= 1e-9});
  }

  const GammaEstimate lo = gamma_liminf(s.seq, s.params);
  const bool lo_inf = std::all_of(lo.limit.values().begin(), lo.limit.values().end(),
                                  [](const ExtReal& v) { return v.is_pos_inf(); });
  claims.push_back({"Γ-liminf f_n = +inf everywhere", "+inf at every grid point", count_text(lo.limit),
                    lo_inf ? 0.0 : kInf, lo_inf});

  const Verdict dv = dual_gamma_check(s.seq, s.candidate, s.params, s.tol);
  const auto& slope = dv.witness.at("slope");
  const auto& conj_lo = dv.witness.at("conjugate_of_liminf");
  const auto& dual_up = dv.witness.at("limsup_of_conjugates");
  const bool conj_neg = std::all_of(conj_lo.begin(), conj_lo.end(), [](double v) { return v == -kInf; });
  claims.push_back({"f* = -inf for f = Γ-liminf f_n", "-inf at every slope", conj_neg ? "-inf at every slope" : "not identically -inf",
                    conj_neg ? 0.0 : kInf, conj_neg});

  bool shape = true;
  for (std::size_t j = 0; j < slope.size(); ++j) {
    const bool origin = std::abs(slope[j]) <= 1e-12;
    shape = shape && (origin ? dual_up[j] == -kInf : dual_up[j] == kInf);
  }
  std::size_t neg = 0, pos = 0;
  for (double v : dual_up) {
    if (v == -kInf) ++neg;
    if (v == kInf) ++pos;
  }
  claims.push_back({"Γ-limsup f_n* = -inf at 0 and +inf elsewhere", "-inf at s = 0, +inf at s != 0",
                    "-inf at " + std::to_string(neg) + ", +inf at " + std::to_string(pos) + " of " +
                        std::to_string(slope.size()) + " slopes",
                    shape ? 0.0 : kInf, shape});
  claims.push_back({"f* differs from Γ-limsup f_n*", "strict inequality at every s != 0",
                    shape && conj_neg ? "-inf < +inf at every s != 0" : "gap not exhibited", 0.0, shape && conj_neg});
  const bool diag = dv.outcome == Outcome::HypothesisFailure && dv.has_diagnostic("dom Γ-limsup empty");
  claims.push_back({"the conjugate-limit theorem does not apply", "hypothesis failure: dom Γ-limsup empty",
                    std::string(to_string(dv.outcome)) + (diag ? ": dom Γ-limsup empty" : ""), 0.0, diag});

  json report;
  report["example"] = "blowup";
  report["family"] = s.family->description;
  report["claims"] = claims_json(claims);
  report["verdict"] = json::parse(dv.to_json(-1));
  const bool ok = std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds; });
  const std::string text = report.dump(2) + "\n";
  Artifacts(cfg.out).write("reproduce_blowup.json", text);
  return {ok ? 0 : 2, text, ""};
}

ExperimentResult reproduce_nested(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.family = "nested-intervals";
  const Setup s = resolve(c);
  std::vector<Claim> claims;

  // C_n = [-1 + 1/n, 1 - 1/n] sampled on a reporting grid plus its endpoints.
  const Grid1D report(-1.5, 1.5, 385);
  const double h = report.spacing();
  SetSeq sets{[&report](int n) {
                const double r = 1.0 - 1.0 / n;
                std::vector<double> pts{-r};
                for (double y : report.points())
                  if (std::abs(y) < r) pts.push_back(y);
                pts.push_back(r);
                return pts;
              },
              s.horizon};
  const std::vector<double> tols{2.0 * h, h, 0.5 * h + 1e-12};
  const SetLimitParams sp{s.params.tail_start, 0.25};
  const std::vector<double> li = set_li(sets, report.points(), tols, sp);
  const std::vector<double> ls = set_ls(sets, report.points(), tols, sp);
  auto describe = [](const std::vector<double>& v) {
    if (v.empty()) return std::string("empty");
    return "[" + format_double(v.front()) + ", " + format_double(v.back()) + "], " + std::to_string(v.size()) +
           " reporting points";
  };
  std::size_t inside = 0;
  for (double y : report.points()) inside += std::abs(y) <= 1.0 ? 1 : 0;
  auto matches = [&](const std::vector<double>& v) {
    return !v.empty() && v.front() == -1.0 && v.back() == 1.0 && v.size() == inside;
  };
  auto gap = [&](const std::vector<double>& v) {
    return v.empty() ? kInf : std::max(std::abs(v.front() + 1.0), std::abs(v.back() - 1.0));
  };
  claims.push_back({"Li C_n = [-1, 1]", "[-1, 1]", describe(li), gap(li), matches(li)});
  claims.push_back({"Ls C_n = [-1, 1]", "[-1, 1]", describe(ls), gap(ls), matches(ls)});

  const Verdict gv = gamma_limit_verdict(s.seq, s.candidate, s.params, s.tol);
  claims.push_back({"support functions (1 - 1/n)|x| Γ-converge to |x|", "residual <= " + format_double(s.tol),
                    "residual " + format_double(gv.residual_max), gv.residual_max, gv.holds()});

  json report_json;
  report_json["example"] = "nested-intervals";
  report_json["family"] = s.family->description;
  report_json["claims"] = claims_json(claims);
  report_json["note"] =
      "one-dimensional convergent analog only: the failure Ls C_n != C of the original construction needs an "
      "infinite-dimensional space and weak* limits, which no finite grid can exhibit";
  report_json["verdict"] = json::parse(gv.to_json(-1));
  const bool ok = std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds; });
  const std::string text = report_json.dump(2) + "\n";
  Artifacts(cfg.out).write("reproduce_nested-intervals.json", text);
  return {ok ? 0 : 2, text, ""};
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, ExperimentConfig cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Usage, "config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "command") cfg.command = value;
    else if (key == "family") cfg.family = value;
    else if (key == "target") cfg.target = value;
    else if (key == "grid") cfg.grid = value;
    else if (key == "n") cfg.horizon = parse_int(key, value);
    else if (key == "tail-start") cfg.tail_start = parse_int(key, value);
    else if (key == "tol") cfg.tol = parse_number(key, value);
    else if (key == "format") cfg.format = value;
    else if (key == "out") cfg.out = value;
    else if (key == "lambda") cfg.lambda = parse_number(key, value);
    else if (key == "x-star") cfg.x_star = parse_number(key, value);
    else if (key == "member") cfg.member = parse_int(key, value);
    else throw Error(ErrorCode::Usage, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Usage, "cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  try {
    return run_command(cfg);
  } catch (const Error& e) {
    const ErrorCode c = e.code();
    const bool usage = c == ErrorCode::Usage || c == ErrorCode::BadParameter || c == ErrorCode::OutOfDomain ||
                       c == ErrorCode::Io;
    return {usage ? 1 : 2, "", e.what()};
  }
}

std::string list_families(const std::string& format) {
  if (!format.empty() && format != "json" && format != "csv" && format != "table")
    throw Error(ErrorCode::Usage, "--format must be csv or json");
  const auto& reg = registry();
  auto expect = [](const FamilySpec& f, const char* key) {
    const Expectation& e = f.expected.at(key);
    return std::string(to_string(e.outcome)) + " (" + std::string(to_string(e.origin)) + ")";
  };
  if (format == "json") {
    json arr = json::array();
    for (const FamilySpec& f : reg) {
      json e = json::object();
      for (const auto& [k, x] : f.expected)
        e[k] = {{"outcome", std::string(to_string(x.outcome))}, {"origin", std::string(to_string(x.origin))}};
      arr.push_back({{"name", f.name},
                     {"origin", std::string(to_string(f.origin))},
                     {"description", f.description},
                     {"grid", f.default_grid().to_string()},
                     {"horizon", f.horizon},
                     {"expected", e}});
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  if (format == "csv") {
    os << "name,origin,grid,horizon,gamma-check,dual-check,attouch-check\n";
    for (const FamilySpec& f : reg)
      os << f.name << ',' << to_string(f.origin) << ',' << f.default_grid().to_string() << ',' << f.horizon << ','
         << to_string(f.expected.at("gamma-check").outcome) << ',' << to_string(f.expected.at("dual-check").outcome)
         << ',' << to_string(f.expected.at("attouch-check").outcome) << '\n';
    return os.str();
  }
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  os << pad("name", 18) << pad("origin", 9) << pad("gamma-check", 30) << pad("dual-check", 30) << "attouch-check\n";
  for (const FamilySpec& f : reg)
    os << pad(f.name, 18) << pad(std::string(to_string(f.origin)), 9) << pad(expect(f, "gamma-check"), 30)
       << pad(expect(f, "dual-check"), 30) << expect(f, "attouch-check") << '\n';
  return os.str();
}

ExperimentResult reproduce(const std::string& id, const ExperimentConfig& cfg) {
  try {
    if (id == "blowup") return reproduce_blowup(cfg);
    if (id == "nested-intervals") return reproduce_nested(cfg);
    throw Error(ErrorCode::Usage, "unknown example '" + id + "' (expected blowup or nested-intervals)");
  } catch (const Error& e) {
    const bool usage = e.code() == ErrorCode::Usage || e.code() == ErrorCode::BadParameter;
    return {usage ? 1 : 2, "", e.what()};
  }
}

}  // namespace epilim
