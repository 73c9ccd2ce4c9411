// Command-line driver: single runs, convergence sweeps, the limit-consistency
// check and the soliton benchmark. Exit codes: 0 success, 2 configuration
// error, 3 solver failure, 4 I/O error.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "zak/harness.hpp"

namespace {

// Accepts plain floats and fractions like "1/64".
double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0.0) throw zak::ConfigError("division by zero in '" + text + "'");
    return num / den;
  } catch (const zak::ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw zak::ConfigError("cannot parse number '" + text + "'");
  }
}

std::vector<double> parse_numbers(const std::vector<std::string>& texts) {
  std::vector<double> out;
  for (const auto& t : texts) {
    std::string item;
    std::istringstream ss(t);
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(parse_number(item));
  }
  return out;
}

struct Options {
  std::string case_name = "case-II";
  std::vector<std::string> epsilon_raw;
  double h = 0.0;
  double tau = 0.0;
  double T = 1.0;
  std::vector<double> domain;
  std::string sweep_kind;
  std::string out_path;
  bool table = false;
  int workers = 2;
  double fp_tol = 1e-12;
  bool seed_check = false;
};

zak::PhysicalCase make_case(const Options& opt, double epsilon) {
  zak::PhysicalCase pc = zak::PhysicalCase::named(opt.case_name);
  pc.epsilon = epsilon;
  pc.T = opt.T;
  if (!opt.domain.empty()) {
    if (opt.domain.size() != 2)
      throw zak::ConfigError("--domain expects two values a,b");
    pc.a = opt.domain[0];
    pc.b = opt.domain[1];
  }
  return pc;
}

int cmd_run(const Options& opt) {
  const auto eps_list = parse_numbers(opt.epsilon_raw);
  const double epsilon = eps_list.empty() ? 1.0 : eps_list.front();
  const double h = opt.h > 0.0 ? opt.h : 0.1;
  const double tau = opt.tau > 0.0 ? opt.tau : 1e-3;
  zak::PhysicalCase pc = make_case(opt, epsilon);
  zak::Grid1D grid = zak::Grid1D::with_spacing(pc.a, pc.b, h);
  zak::StepConfig cfg;
  cfg.fp_tol = opt.fp_tol;

  std::vector<double> times;
  for (int i = 0; i <= 4; ++i) times.push_back(pc.T * i / 4.0);
  zak::Trajectory traj = zak::run(pc, grid, tau, cfg, times);

  std::printf("# %s eps=%g h=%g tau=%g T=%g (M=%d, %d steps)\n",
              pc.name.c_str(), pc.epsilon, grid.h, tau, pc.T, grid.cells,
              traj.stats.steps);
  std::printf("%-10s %-14s %-14s %-14s\n", "t", "norm_E", "norm_F", "norm_N");
  for (const auto& s : traj.samples)
    std::printf("%-10.4g %-14.8g %-14.8g %-14.8g\n", s.t, zak::norm_l2(s.E),
                zak::norm_l2(s.F), zak::norm_l2(s.N));
  std::printf("max parity mass drift (rel): %.3e\n",
              traj.stats.max_parity_drift_rel);
  std::printf("max fixed-point iterations:  %d\n",
              traj.stats.max_fp_iterations);

  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw zak::IoError("cannot open '" + opt.out_path + "'");
    f << "t,norm_E,norm_F,norm_N\n";
    char line[160];
    for (const auto& s : traj.samples) {
      std::snprintf(line, sizeof line, "%.6g,%.6g,%.6g,%.6g\n", s.t,
                    zak::norm_l2(s.E), zak::norm_l2(s.F), zak::norm_l2(s.N));
      f << line;
    }
    if (!f) throw zak::IoError("write failed for '" + opt.out_path + "'");
  }
  return 0;
}

int cmd_sweep(const Options& opt) {
  if (opt.sweep_kind.empty())
    throw zak::ConfigError("sweep: --sweep {spatial|temporal|resonance-I|resonance-II} is required");
  zak::SweepSpec spec;
  spec.kind = zak::sweep_kind_from_string(opt.sweep_kind);
  spec.workers = opt.workers;
  spec.step_cfg.fp_tol = opt.fp_tol;

  const auto eps_list = parse_numbers(opt.epsilon_raw);
  // Desk-scale defaults mirroring the convergence tables; override with
  // --epsilon/--h/--tau/--domain for other slices.
  switch (spec.kind) {
    case zak::SweepKind::spatial: {
      Options o = opt;
      o.case_name = opt.case_name.empty() ? "case-II" : opt.case_name;
      spec.base = make_case(o, 1.0);
      spec.epsilon_list =
          eps_list.empty() ? std::vector<double>{1.0, 0.25, 0.0625, 0.015625}
                           : eps_list;
      spec.tau_fixed = opt.tau > 0.0 ? opt.tau : 1e-4;
      double h0 = opt.h > 0.0 ? opt.h : 0.2;
      spec.h_list = {h0, h0 / 2, h0 / 4, h0 / 8};
      break;
    }
    case zak::SweepKind::temporal: {
      spec.base = make_case(opt, 1.0);
      spec.epsilon_list =
          eps_list.empty() ? std::vector<double>{1.0, 0.25, 0.0625} : eps_list;
      spec.h_fixed = opt.h > 0.0 ? opt.h : 2.5e-3;
      double tau0 = opt.tau > 0.0 ? opt.tau : 0.1 / 32;
      spec.tau_list = {tau0, tau0 / 2, tau0 / 4};
      break;
    }
    case zak::SweepKind::resonance_I: {
      Options o = opt;
      if (o.case_name.empty()) o.case_name = "case-I";
      spec.base = make_case(o, 1.0);
      spec.epsilon0 = eps_list.empty() ? 0.5 : eps_list.front();
      spec.tau0 = opt.tau > 0.0 ? opt.tau : 0.1;
      spec.h_fixed = opt.h > 0.0 ? opt.h : 6.25e-3;
      spec.chain_length = 3;
      break;
    }
    case zak::SweepKind::resonance_II: {
      spec.base = make_case(opt, 1.0);
      spec.epsilon0 = eps_list.empty() ? 0.125 : eps_list.front();
      spec.tau0 = opt.tau > 0.0 ? opt.tau : 0.1 / 8;
      spec.h_fixed = opt.h > 0.0 ? opt.h : 6.25e-3;
      spec.chain_length = 4;
      break;
    }
  }
  spec.base.T = opt.T;

  zak::SweepResult result = zak::run_sweep(spec);
  if (!opt.out_path.empty()) zak::emit_csv(result.records, opt.out_path);
  if (opt.table || opt.out_path.empty())
    std::cout << zak::format_table(result.records);
  if (result.ref_stability_rel_change)
    std::printf("# reference stability: doubling r_tau moves the probe error "
                "by %.2f%%\n",
                *result.ref_stability_rel_change * 100.0);
  std::printf("# max parity mass drift (rel): %.3e, max fp iterations: %d\n",
              result.max_parity_drift_rel, result.max_fp_iterations);
  for (const auto& r : result.records)
    if (!r.failure.empty()) return 3;
  return 0;
}

int cmd_limit_check(const Options& opt) {
  Options o = opt;
  if (o.domain.empty()) o.domain = {-50.0, 50.0};
  zak::PhysicalCase pc =
      make_case(o, 1.0);
  if (opt.case_name.empty()) pc = zak::PhysicalCase::named("case-I");
  const double h = opt.h > 0.0 ? opt.h : 7.8125e-3;
  const double tau = opt.tau > 0.0 ? opt.tau : 2.5e-4;
  auto eps_list = parse_numbers(opt.epsilon_raw);
  if (eps_list.empty()) eps_list = {0.25, 0.125, 0.0625};

  zak::Grid1D grid = zak::Grid1D::with_spacing(pc.a, pc.b, h);
  zak::StepConfig cfg;
  cfg.fp_tol = opt.fp_tol;
  auto rows = zak::limit_consistency_check(pc, eps_list, grid, tau, cfg);
  std::printf("%-12s %-14s %-10s\n", "epsilon", "h1_diff", "ratio");
  for (const auto& r : rows)
    std::printf("%-12g %-14.6g %-10s\n", r.epsilon, r.h1_diff,
                r.ratio ? std::to_string(*r.ratio).c_str() : "-");
  return 0;
}

int cmd_soliton(const Options& opt) {
  const double T = opt.T;
  const double dt = opt.tau > 0.0 ? opt.tau : 1e-3;
  const int cells = opt.h > 0.0
                        ? zak::Grid1D::with_spacing(-32.0, 32.0, opt.h).cells
                        : 1024;
  auto res = zak::soliton_benchmark(1.0, 32.0, cells, dt, T);
  std::printf("soliton benchmark: M=%d dt=%g T=%g\n", cells, dt, T);
  std::printf("  L2 error:        %.6e\n", res.l2_error);
  std::printf("  mass drift(rel): %.3e\n", res.mass_drift_rel);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformly accurate finite difference solver for the "
               "subsonic-limit Zakharov system"};
  app.fallthrough();
  app.set_config("--config", "", "flat key=value file mirroring the flags");

  Options opt;
  app.add_option("--case", opt.case_name, "case-I (alpha=1) or case-II (alpha=0)")
      ->capture_default_str();
  app.add_option("--epsilon", opt.epsilon_raw,
                 "epsilon value(s); accepts fractions like 1/64 and comma lists");
  app.add_option("--h", opt.h, "mesh size");
  app.add_option("--tau", opt.tau, "time step (tau0 for sweeps)");
  app.add_option("--T", opt.T, "final time")->capture_default_str();
  app.add_option("--domain", opt.domain, "domain endpoints a,b")->delimiter(',');
  app.add_option("--sweep", opt.sweep_kind,
                 "sweep kind: spatial|temporal|resonance-I|resonance-II");
  app.add_option("--out", opt.out_path, "CSV output path");
  app.add_flag("--table", opt.table, "print a formatted table to stdout");
  app.add_option("--workers", opt.workers, "concurrent sweep cells")
      ->capture_default_str();
  app.add_option("--fp-tol", opt.fp_tol, "fixed-point tolerance")
      ->capture_default_str();
  app.add_flag("--seed-check", opt.seed_check,
               "run the randomized invariant suite and exit");

  auto* sub_run = app.add_subcommand("run", "single simulation");
  auto* sub_sweep = app.add_subcommand("sweep", "convergence-table sweep");
  auto* sub_limit =
      app.add_subcommand("limit-check", "epsilon^2 consistency with NLSE-OP");
  auto* sub_soliton = app.add_subcommand("soliton-bench",
                                         "splitting-solver soliton benchmark");

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt.seed_check)
      return zak::run_invariant_suite(std::cout) ? 0 : 3;
    if (sub_run->parsed()) return cmd_run(opt);
    if (sub_sweep->parsed()) return cmd_sweep(opt);
    if (sub_limit->parsed()) return cmd_limit_check(opt);
    if (sub_soliton->parsed()) return cmd_soliton(opt);
    std::cout << app.help();
    return 2;
  } catch (const zak::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const zak::SolverError& e) {
    std::fprintf(stderr, "solver failure at step %d (t=%g): %s\n", e.step,
                 e.time, e.what());
    return 3;
  } catch (const zak::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
