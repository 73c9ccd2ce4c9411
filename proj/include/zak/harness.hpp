// Batch driver: reference solutions, the error functions of the convergence
// study, spatial/temporal/resonance sweeps, observed orders, CSV and table
// output.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zak/solver.hpp"
#include "zak/splitting.hpp"

namespace zak {

enum class SweepKind { spatial, temporal, resonance_I, resonance_II };

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& name);

// One (epsilon, h, tau) run's errors at t = T:
//   e_err = ||e|| + ||delta_x^+ e||     (E against the reference)
//   n_err = ||N_ref - N||               (recovered density)
struct ErrorRecord {
  std::string kind;
  std::string case_name;
  double epsilon = 0.0;
  double h = 0.0;
  double tau = 0.0;
  double T = 0.0;
  double e_err = 0.0;
  double n_err = 0.0;
  std::optional<double> order_e;  // empty -> printed as "-"
  std::optional<double> order_n;
  std::string ref_descriptor;
  double wall_time = 0.0;  // seconds
  std::string failure;     // nonempty if the cell failed
};

// Reference runs refine the finest sweep member by r_h and r_tau; tau_ref is
// additionally capped at epsilon / tau_epsilon_cap.
struct RefPolicy {
  int r_h = 4;
  int r_tau = 4;
  double tau_epsilon_cap = 20.0;
};

struct SweepSpec {
  SweepKind kind = SweepKind::spatial;
  PhysicalCase base;                 // epsilon is overridden per cell
  std::vector<double> epsilon_list;  // spatial/temporal kinds
  std::vector<double> h_list;        // spatial: strictly halving
  double h_fixed = 0.0;              // temporal/resonance kinds
  std::vector<double> tau_list;      // temporal: strictly halving
  double tau_fixed = 0.0;            // spatial kind
  double epsilon0 = 0.0;             // resonance chain anchors
  double tau0 = 0.0;
  int chain_length = 0;
  RefPolicy ref;
  StepConfig step_cfg;
  int workers = 1;
  bool ref_stability_check = true;

  void validate() const;  // throws ConfigError
};

struct SweepResult {
  std::vector<ErrorRecord> records;
  int max_fp_iterations = 0;
  double max_parity_drift_rel = 0.0;
  // Relative change of the most reference-sensitive cell error when r_tau is
  // doubled; filled when the stability check runs.
  std::optional<double> ref_stability_rel_change;
};

struct Reference {
  Grid1D grid;
  ComplexField E;
  RealField F;
  RealField N;
  double tau_ref = 0.0;
  std::string descriptor;
  RunStats stats;  // the reference run participates in the parity checks
};

// Fine-grid self-reference at (h_finest / r_h, min(tau_finest / r_tau,
// eps / cap)) with coarse nodes a subset of the fine ones.
Reference reference_solution(const PhysicalCase& pc, double h_finest,
                             double tau_finest, const RefPolicy& policy,
                             const StepConfig& cfg);

// Errors of one run against a reference (node-subset restriction).
ErrorRecord evaluate_cell(const PhysicalCase& pc, const Grid1D& grid,
                          double tau, const StepConfig& cfg,
                          const Reference& ref);

SweepResult run_sweep(const SweepSpec& spec);

struct LimitCheckRow {
  double epsilon = 0.0;
  double h1_diff = 0.0;           // ||E_fd - E_split|| + ||delta_x^+ (...)||
  std::optional<double> ratio;    // previous / current along the chain
};

// Measures ||E^eps - Etilde^eps||_{H^1} at t = T for a halving epsilon chain
// (each <= 1/4); the splitting solver runs at dt = eps/40.
std::vector<LimitCheckRow> limit_consistency_check(
    const PhysicalCase& base, const std::vector<double>& epsilon_list,
    const Grid1D& grid, double tau_fd, const StepConfig& cfg);

struct SolitonBenchResult {
  double l2_error = 0.0;
  double mass_drift_rel = 0.0;
};

// Single-soliton NLS benchmark: E(x, t) = sqrt(2) a sech(a x) exp(i a^2 t).
SolitonBenchResult soliton_benchmark(double a_param, double half_width,
                                     int cells, double dt, double T);

// CSV columns: kind,case,epsilon,h,tau,T,e_err,n_err,order_e,order_n,
// ref_descriptor,wall_time. Six significant digits, LF endings, header row.
void emit_csv(const std::vector<ErrorRecord>& records, const std::string& path);
std::string format_csv(const std::vector<ErrorRecord>& records);

// Paper-style blocks: per epsilon one error row and one rate row.
std::string format_table(const std::vector<ErrorRecord>& records);

// Quick randomized self-checks (discrete identities, transform roundtrip,
// solver residuals, step parity). Prints one line per check; returns overall
// success.
bool run_invariant_suite(std::ostream& out, unsigned seed = 20260801u);

}  // namespace zak
