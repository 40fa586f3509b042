#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "epilim/error.hpp"
#include "epilim/experiment.hpp"

namespace {

// Flags as typed on the command line; unset ones leave the config untouched.
struct Flags {
  std::string config;
  std::optional<std::string> family, grid, format, out;
  std::optional<int> n, tail_start, member;
  std::optional<double> tol, lambda, x_star;
  std::string target;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--family", f.family, "registered family name");
  sub->add_option("--grid", f.grid, "grid as lo:hi:count");
  sub->add_option("--n", f.n, "horizon N");
  sub->add_option("--tail-start", f.tail_start, "first index of the tail window");
  sub->add_option("--tol", f.tol, "extra tolerance on top of spacing + 2/tail_start");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--out", f.out, "output directory for artifacts");
  sub->add_option("--config", f.config, "key = value config file");
}

epilim::ExperimentConfig merge(const std::string& command, const Flags& f) {
  epilim::ExperimentConfig cfg;
  if (!f.config.empty()) cfg = epilim::load_config(f.config, cfg);
  cfg.command = command;
  if (!f.target.empty()) cfg.target = f.target;
  if (f.family) cfg.family = *f.family;
  if (f.grid) cfg.grid = *f.grid;
  if (f.format) cfg.format = *f.format;
  if (f.out) cfg.out = *f.out;
  if (f.n) cfg.horizon = *f.n;
  if (f.tail_start) cfg.tail_start = *f.tail_start;
  if (f.member) cfg.member = *f.member;
  if (f.tol) cfg.tol = *f.tol;
  if (f.lambda) cfg.lambda = *f.lambda;
  if (f.x_star) cfg.x_star = *f.x_star;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epi-convergence and conjugate-limit experiments on uniform grids"};
  app.require_subcommand(1);
  Flags flags;

  auto* conj = app.add_subcommand("conjugate", "discrete conjugate of one family member");
  auto* moreau = app.add_subcommand("moreau", "Moreau envelope of one family member");
  auto* gamma = app.add_subcommand("gamma-check", "Γ-limit of the family against its candidate");
  auto* dual = app.add_subcommand("dual-check", "conjugate-limit theorem check");
  auto* attouch = app.add_subcommand("attouch-check", "epi / graphical / normalization equivalence");
  auto* witness = app.add_subcommand("witness", "constructive witness sequence at --x-star");
  auto* repro = app.add_subcommand("reproduce", "worked example: blowup or nested-intervals");
  auto* list = app.add_subcommand("list", "registered families");

  for (CLI::App* sub : {conj, moreau, gamma, dual, attouch, witness, repro, list}) add_common(sub, flags);
  for (CLI::App* sub : {conj, moreau}) sub->add_option("--member", flags.member, "family index (default: horizon)");
  moreau->add_option("--lambda", flags.lambda, "envelope parameter");
  witness->add_option("--x-star", flags.x_star, "target point");
  repro->add_option("id", flags.target, "example id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  epilim::ExperimentConfig cfg;
  try {
    cfg = merge(app.get_subcommands().front()->get_name(), flags);
  } catch (const epilim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  epilim::ExperimentResult r;
  if (cfg.command == "list") {
    try {
      r.output = epilim::list_families(cfg.format);
    } catch (const epilim::Error& e) {
      r = {1, "", e.what()};
    }
  } else {
    r = epilim::run_experiment(cfg);
  }
  std::cout << r.output;
  if (!r.error.empty()) std::cerr << "error: " << r.error << '\n';
  return r.exit_code;
}
