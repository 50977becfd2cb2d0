#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "randmeas/cli.hpp"
#include "randmeas/parallel.hpp"
#include "randmeas/version.hpp"

namespace {

void add_common(CLI::App* cmd, std::uint64_t& seed, unsigned& threads,
                std::string& out, const std::string& default_out) {
  cmd->add_option("--seed", seed, "Master seed (required)")->required();
  cmd->add_option("--threads", threads, "Worker threads")
      ->default_val(randmeas::default_thread_count());
  cmd->add_option("--out", out, "Output CSV path (JSON written alongside)")
      ->default_val(default_out);
  cmd->configurable(true);
}

int finish(const randmeas::RunArtifacts& artifacts, const std::string& out) {
  const int code = randmeas::write_artifacts(artifacts, out);
  std::cout << artifacts.json;
  if (artifacts.has_pass_rule) {
    std::cout << (artifacts.pass ? "PASS" : "FAIL") << "\n";
  }
  std::cout << "wrote " << out << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(randmeas::kArtifactVersion) +
               " - random-measurement state distinction experiments"};
  app.require_subcommand(0, 1);
  // Config files mirror the flags: a [subcommand] section with key=value
  // lines. Unknown keys are rejected.
  app.set_config("--config", "", "key=value config file ([subcommand] section)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  randmeas::ConcentrationConfig conc;
  std::string conc_out;
  auto* conc_cmd =
      app.add_subcommand("concentration", "Tail-bound Monte Carlo verifiers");
  conc_cmd->add_option("--exp", conc.exp,
                       "chi-square | projection-upper | projection-two-sided | "
                       "gram-schmidt | matrix-norm | weighted-chisquare | high-rank")
      ->required();
  conc_cmd->add_option("--n", conc.n, "Dimension / degrees of freedom");
  conc_cmd->add_option("--k", conc.k, "Subspace dimension");
  conc_cmd->add_option("--r", conc.r, "Vector count / state rank");
  conc_cmd->add_option("--eps", conc.eps, "Epsilon parameter");
  conc_cmd->add_option("--t", conc.t, "Tail multiplier t");
  conc_cmd->add_option("--M", conc.m_factor, "Gram-Schmidt M parameter");
  conc_cmd->add_option("--profile", conc.profile,
                       "Lambda profile (weighted-chisquare)");
  conc_cmd->add_option("--trials", conc.trials, "Trial count")->required();
  add_common(conc_cmd, conc.seed, conc.threads, conc_out, "concentration.csv");

  randmeas::DistinguishConfig dist;
  std::string dist_out;
  auto* dist_cmd =
      app.add_subcommand("distinguish", "Random-measurement TV vs Frobenius distance");
  dist_cmd->add_option("--n", dist.n, "State dimension")->required();
  dist_cmd->add_option("--mode", dist.mode,
                       "haar-basis | povm-plain | povm-ancilla");
  dist_cmd->add_option("--K", dist.ancilla_k, "Ancilla factor for povm-ancilla");
  dist_cmd->add_option("--pair", dist.pair,
                       "random-pure | orthogonal-pure | mixed-rank:<r>");
  dist_cmd->add_option("--pairs", dist.pairs, "Number of state pairs");
  dist_cmd->add_option("--trials", dist.trials, "Measurement draws per pair")
      ->required();
  add_common(dist_cmd, dist.seed, dist.threads, dist_out, "distinguish.csv");

  randmeas::HspCliConfig hsp;
  std::string hsp_out;
  auto* hsp_cmd =
      app.add_subcommand("hsp", "Hidden-subgroup identification experiment");
  hsp_cmd->add_option("--group", hsp.group, "Group descriptor, e.g. dihedral:4")
      ->required();
  hsp_cmd->add_option("--runs", hsp.runs, "Independent runs")->required();
  hsp_cmd->add_option("--copies", hsp.copies,
                      "Coset-state copies per run (0 = auto-calibrated)");
  hsp_cmd->add_option("--C", hsp.C, "Fourier sampling constant C");
  hsp_cmd->add_option("--c-cal", hsp.c_cal, "copies_for calibration constant");
  add_common(hsp_cmd, hsp.seed, hsp.threads, hsp_out, "hsp.csv");

  randmeas::IdentifyCliConfig ident;
  std::string ident_out;
  auto* ident_cmd =
      app.add_subcommand("identify", "General state-identification experiment");
  ident_cmd->add_option("--n", ident.n, "State dimension")->required();
  ident_cmd->add_option("--k", ident.k, "Ensemble size")->required();
  ident_cmd->add_option("--mode", ident.mode,
                        "haar-basis | povm-plain | povm-ancilla");
  ident_cmd->add_option("--K", ident.ancilla_k, "Ancilla factor");
  ident_cmd->add_option("--kind", ident.kind, "random-pure | mixed-rank:<r>");
  ident_cmd->add_option("--runs", ident.runs, "Runs per state")->required();
  ident_cmd->add_option("--copies", ident.copies, "Copies per run (0 = auto)");
  ident_cmd->add_option("--c-cal", ident.c_cal, "copies_for calibration constant");
  add_common(ident_cmd, ident.seed, ident.threads, ident_out, "identify.csv");

  std::string info_group;
  auto* info_cmd = app.add_subcommand(
      "group-info", "Irrep dimensions, subgroup lattice, w/r distance tables");
  info_cmd->add_option("--group", info_group, "Group descriptor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (conc_cmd->parsed()) return finish(randmeas::run_concentration(conc), conc_out);
    if (dist_cmd->parsed()) return finish(randmeas::run_distinguish(dist), dist_out);
    if (hsp_cmd->parsed()) return finish(randmeas::run_hsp(hsp), hsp_out);
    if (ident_cmd->parsed()) return finish(randmeas::run_identify(ident), ident_out);
    if (info_cmd->parsed()) {
      std::cout << randmeas::group_info_text(info_group);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "usage error: no subcommand given (see --help)\n";
  return 1;
}
