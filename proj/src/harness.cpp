#include "zak/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "zak/sine_transform.hpp"

namespace zak {

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::spatial: return "spatial";
    case SweepKind::temporal: return "temporal";
    case SweepKind::resonance_I: return "resonance-I";
    case SweepKind::resonance_II: return "resonance-II";
  }
  return "?";
}

SweepKind sweep_kind_from_string(const std::string& name) {
  if (name == "spatial") return SweepKind::spatial;
  if (name == "temporal") return SweepKind::temporal;
  if (name == "resonance-I") return SweepKind::resonance_I;
  if (name == "resonance-II") return SweepKind::resonance_II;
  throw ConfigError("unknown sweep kind '" + name + "'");
}

namespace {

void require_halving(const std::vector<double>& xs, const char* what) {
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || std::abs(xs[i] / xs[i + 1] - 2.0) > 1e-9)
      throw ConfigError(std::string(what) +
                        ": refinement sequence must halve at every entry");
  }
  if (!xs.empty() && !(xs.back() > 0.0))
    throw ConfigError(std::string(what) + ": entries must be positive");
}

void parallel_jobs(int workers, int njobs, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, njobs));
  if (workers <= 1) {
    for (int i = 0; i < njobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= njobs) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct CellRun {
  Snapshot final;
  RunStats stats;
  double wall = 0.0;
};

CellRun run_cell(const PhysicalCase& pc, const Grid1D& grid, double tau,
                 const StepConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const double times[1] = {pc.T};
  Trajectory traj = run(pc, grid, tau, cfg, times);
  require(!traj.samples.empty(), "run produced no snapshot at T");
  CellRun out;
  out.final = std::move(traj.samples.back());
  out.stats = traj.stats;
  out.wall = wall_seconds(t0);
  return out;
}

void fill_errors(ErrorRecord& rec, const Snapshot& cell, const Reference& ref) {
  ComplexField e = restrict_to(ref.E, cell.E.grid) - cell.E;
  rec.e_err = norm_l2(e) + seminorm_h1(e);
  rec.n_err = norm_l2(restrict_to(ref.N, cell.N.grid) - cell.N);
  rec.ref_descriptor = ref.descriptor;
}

}  // namespace

void SweepSpec::validate() const {
  base.validate();
  if (workers < 1) throw ConfigError("SweepSpec: workers must be >= 1");
  switch (kind) {
    case SweepKind::spatial:
      if (epsilon_list.empty() || h_list.empty() || !(tau_fixed > 0.0))
        throw ConfigError("spatial sweep needs epsilon_list, h_list, tau_fixed");
      require_halving(h_list, "h_list");
      break;
    case SweepKind::temporal:
      if (epsilon_list.empty() || tau_list.empty() || !(h_fixed > 0.0))
        throw ConfigError("temporal sweep needs epsilon_list, tau_list, h_fixed");
      require_halving(tau_list, "tau_list");
      break;
    case SweepKind::resonance_I:
    case SweepKind::resonance_II:
      if (!(epsilon0 > 0.0 && epsilon0 <= 1.0) || !(tau0 > 0.0) ||
          chain_length < 1 || !(h_fixed > 0.0))
        throw ConfigError(
            "resonance sweep needs epsilon0 in (0,1], tau0 > 0, "
            "chain_length >= 1, h_fixed");
      break;
  }
  for (double eps : epsilon_list)
    if (!(eps > 0.0 && eps <= 1.0))
      throw ConfigError("SweepSpec: epsilon values must lie in (0, 1]");
}

Reference reference_solution(const PhysicalCase& pc, double h_finest,
                             double tau_finest, const RefPolicy& policy,
                             const StepConfig& cfg) {
  if (policy.r_h < 4 || policy.r_tau < 4)
    throw ConfigError("RefPolicy: requires r_h >= 4 and r_tau >= 4");
  const double h_ref = h_finest / policy.r_h;
  const Grid1D fine = Grid1D::with_spacing(pc.a, pc.b, h_ref);
  const double tau_cap = pc.epsilon / policy.tau_epsilon_cap;
  const double tau_raw = std::min(tau_finest / policy.r_tau, tau_cap);
  const long n_steps =
      std::max<long>(1, std::llround(std::ceil(pc.T / tau_raw - 1e-9)));
  const double tau_ref = pc.T / n_steps;

  const double times[1] = {pc.T};
  Trajectory traj = run(pc, fine, tau_ref, cfg, times);
  require(!traj.samples.empty(), "reference run produced no snapshot");

  Reference ref;
  ref.grid = fine;
  ref.E = std::move(traj.samples.back().E);
  ref.F = std::move(traj.samples.back().F);
  ref.N = std::move(traj.samples.back().N);
  ref.tau_ref = tau_ref;
  ref.stats = traj.stats;
  char buf[160];
  std::snprintf(buf, sizeof buf, "self(h=%.6g;tau=%.6g;rh=%d;rtau=%d)", h_ref,
                tau_ref, policy.r_h, policy.r_tau);
  ref.descriptor = buf;
  return ref;
}

ErrorRecord evaluate_cell(const PhysicalCase& pc, const Grid1D& grid,
                          double tau, const StepConfig& cfg,
                          const Reference& ref) {
  ErrorRecord rec;
  rec.case_name = pc.name;
  rec.epsilon = pc.epsilon;
  rec.h = grid.h;
  rec.tau = tau;
  rec.T = pc.T;
  CellRun cell = run_cell(pc, grid, tau, cfg);
  fill_errors(rec, cell.final, ref);
  rec.wall_time = cell.wall;
  return rec;
}

namespace {

struct CellPlan {
  double epsilon = 0.0;
  double h = 0.0;
  double tau = 0.0;
  int group = 0;      // chain id (orders run along a group)
  int ref_id = 0;     // index into the reference table
  double refine_ratio = 2.0;  // tau (or h) ratio to the previous chain member
};

struct RefPlan {
  double epsilon = 0.0;
  double h_finest = 0.0;
  double tau_finest = 0.0;
};

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const PhysicalCase& base = spec.base;

  std::vector<CellPlan> cells;
  std::vector<RefPlan> refs;

  std::vector<double> eps_sorted = spec.epsilon_list;
  std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<>());

  switch (spec.kind) {
    case SweepKind::spatial:
      for (size_t g = 0; g < eps_sorted.size(); ++g) {
        refs.push_back({eps_sorted[g], spec.h_list.back(), spec.tau_fixed});
        for (size_t i = 0; i < spec.h_list.size(); ++i)
          cells.push_back({eps_sorted[g], spec.h_list[i], spec.tau_fixed,
                           static_cast<int>(g), static_cast<int>(g),
                           i > 0 ? spec.h_list[i - 1] / spec.h_list[i] : 1.0});
      }
      break;
    case SweepKind::temporal:
      for (size_t g = 0; g < eps_sorted.size(); ++g) {
        refs.push_back({eps_sorted[g], spec.h_fixed, spec.tau_list.back()});
        for (size_t i = 0; i < spec.tau_list.size(); ++i)
          cells.push_back({eps_sorted[g], spec.h_fixed, spec.tau_list[i],
                           static_cast<int>(g), static_cast<int>(g),
                           i > 0 ? spec.tau_list[i - 1] / spec.tau_list[i] : 1.0});
      }
      break;
    case SweepKind::resonance_I:
      // tau_m = tau0 / 2^{3m} coupled with eps_m = eps0 / 2^{2m}.
      for (int m = 0; m < spec.chain_length; ++m) {
        const double eps = spec.epsilon0 / std::pow(2.0, 2 * m);
        const double tau = spec.tau0 / std::pow(2.0, 3 * m);
        refs.push_back({eps, spec.h_fixed, tau});
        cells.push_back({eps, spec.h_fixed, tau, 0, m, m > 0 ? 8.0 : 1.0});
      }
      break;
    case SweepKind::resonance_II:
      // tau_m = tau0 / 2^m coupled with eps_m = eps0 / 2^m.
      for (int m = 0; m < spec.chain_length; ++m) {
        const double eps = spec.epsilon0 / std::pow(2.0, m);
        const double tau = spec.tau0 / std::pow(2.0, m);
        refs.push_back({eps, spec.h_fixed, tau});
        cells.push_back({eps, spec.h_fixed, tau, 0, m, m > 0 ? 2.0 : 1.0});
      }
      break;
  }

  // The stability probe re-measures the most reference-sensitive cell (the
  // finest member of the first chain) against a doubled-r_tau reference.
  const int n_cells = static_cast<int>(cells.size());
  const bool stability = spec.ref_stability_check;
  int probe_cell = -1;
  if (stability) {
    for (int i = 0; i < n_cells; ++i)
      if (cells[i].group == 0) probe_cell = i;
  }

  // Phase A: references (plus the stability reference, which refines the
  // probe cell's own plan).
  const int n_refs = static_cast<int>(refs.size());
  std::vector<Reference> ref_table(n_refs + (stability ? 1 : 0));
  std::vector<std::string> ref_failure(ref_table.size());

  auto build_ref = [&](int i) {
    RefPolicy policy = spec.ref;
    RefPlan plan;
    if (i < n_refs) {
      plan = refs[i];
    } else {
      plan = refs[cells[probe_cell].ref_id];
      policy.r_tau *= 2;
    }
    PhysicalCase pc = base;
    pc.epsilon = plan.epsilon;
    try {
      ref_table[i] = reference_solution(pc, plan.h_finest, plan.tau_finest,
                                        policy, spec.step_cfg);
    } catch (const std::exception& e) {
      ref_failure[i] = e.what();
    }
  };
  parallel_jobs(spec.workers, static_cast<int>(ref_table.size()), build_ref);

  // Phase B: sweep cells.
  std::vector<ErrorRecord> records(n_cells);
  std::vector<RunStats> cell_stats(n_cells);
  double probe_err_alt = std::numeric_limits<double>::quiet_NaN();

  auto run_one = [&](int i) {
    const CellPlan& plan = cells[i];
    ErrorRecord& rec = records[i];
    rec.kind = to_string(spec.kind);
    rec.case_name = base.name;
    rec.epsilon = plan.epsilon;
    rec.h = plan.h;
    rec.tau = plan.tau;
    rec.T = base.T;
    rec.e_err = rec.n_err = std::numeric_limits<double>::quiet_NaN();
    if (!ref_failure[plan.ref_id].empty()) {
      rec.failure = "reference failed: " + ref_failure[plan.ref_id];
      rec.ref_descriptor = "failed";
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      PhysicalCase pc = base;
      pc.epsilon = plan.epsilon;
      const Grid1D grid = Grid1D::with_spacing(pc.a, pc.b, plan.h);
      CellRun cell = run_cell(pc, grid, plan.tau, spec.step_cfg);
      fill_errors(rec, cell.final, ref_table[plan.ref_id]);
      cell_stats[i] = cell.stats;
      if (i == probe_cell && ref_failure.back().empty()) {
        ErrorRecord alt = rec;
        fill_errors(alt, cell.final, ref_table.back());
        probe_err_alt = alt.e_err;
      }
    } catch (const std::exception& e) {
      rec.failure = e.what();
      rec.ref_descriptor = "failed";
    }
    rec.wall_time = wall_seconds(t0);
  };
  parallel_jobs(spec.workers, n_cells, run_one);

  // Observed orders along each chain.
  for (int i = 1; i < n_cells; ++i) {
    if (cells[i].group != cells[i - 1].group) continue;
    const ErrorRecord& prev = records[i - 1];
    ErrorRecord& cur = records[i];
    if (!prev.failure.empty() || !cur.failure.empty()) continue;
    const double denom = std::log(cells[i].refine_ratio);
    if (prev.e_err > 0.0 && cur.e_err > 0.0)
      cur.order_e = std::log(prev.e_err / cur.e_err) / denom;
    if (prev.n_err > 0.0 && cur.n_err > 0.0)
      cur.order_n = std::log(prev.n_err / cur.n_err) / denom;
  }

  SweepResult result;
  result.records = std::move(records);
  auto fold_stats = [&](const RunStats& st) {
    result.max_fp_iterations =
        std::max(result.max_fp_iterations, st.max_fp_iterations);
    result.max_parity_drift_rel =
        std::max(result.max_parity_drift_rel, st.max_parity_drift_rel);
  };
  for (size_t i = 0; i < ref_table.size(); ++i)
    if (ref_failure[i].empty()) fold_stats(ref_table[i].stats);
  for (const RunStats& st : cell_stats) fold_stats(st);

  if (stability) {
    if (!ref_failure.back().empty())
      throw SolverError("reference stability check failed to run: " +
                            ref_failure.back(),
                        -1, base.T);
    if (probe_cell >= 0 && records[probe_cell].failure.empty()) {
      const double e1 = result.records[probe_cell].e_err;
      const double change =
          std::abs(e1 - probe_err_alt) / std::max(e1, 1e-300);
      result.ref_stability_rel_change = change;
      if (!(change < 0.10))
        throw SolverError(
            "reference stability check failed: doubling r_tau changed the "
            "probe cell error by " +
                std::to_string(change * 100.0) + "%",
            -1, base.T);
    }
  }
  return result;
}

std::vector<LimitCheckRow> limit_consistency_check(
    const PhysicalCase& base, const std::vector<double>& epsilon_list,
    const Grid1D& grid, double tau_fd, const StepConfig& cfg) {
  if (epsilon_list.empty())
    throw ConfigError("limit_consistency_check: empty epsilon list");
  for (double eps : epsilon_list)
    if (eps > 0.25 * (1.0 + 1e-12))
      throw ConfigError("limit_consistency_check: each epsilon must be <= 1/4");
  require_halving(epsilon_list, "epsilon_list");

  std::vector<LimitCheckRow> rows;
  const double times[1] = {base.T};
  for (double eps : epsilon_list) {
    PhysicalCase pc = base;
    pc.epsilon = eps;
    Trajectory fd = run(pc, grid, tau_fd, cfg, times);
    const long n_split = std::llround(std::ceil(base.T * 40.0 / eps - 1e-9));
    const double dt = base.T / n_split;
    SplitTrajectory sp = solve_nlse_op(pc, grid, dt, base.T, times);
    require(!fd.samples.empty() && !sp.samples.empty(),
            "limit check produced no snapshots");
    ComplexField diff = fd.samples.back().E - sp.samples.back().second;
    LimitCheckRow row;
    row.epsilon = eps;
    row.h1_diff = norm_l2(diff) + seminorm_h1(diff);
    if (!rows.empty() && row.h1_diff > 0.0)
      row.ratio = rows.back().h1_diff / row.h1_diff;
    rows.push_back(row);
  }
  return rows;
}

SolitonBenchResult soliton_benchmark(double a_param, double half_width,
                                     int cells, double dt, double T) {
  PhysicalCase pc;
  pc.name = "soliton";
  pc.epsilon = 1.0;
  pc.a = -half_width;
  pc.b = half_width;
  pc.T = T;
  const double amp = std::sqrt(2.0) * a_param;
  pc.profiles.envelope = {[=](double x, int) {
                            return Complex(amp / std::cosh(a_param * x), 0.0);
                          },
                          0};
  pc.profiles.omega0 = {[](double, int) { return 0.0; }, 2};
  pc.profiles.omega1 = {[](double, int) { return 0.0; }, 0};
  pc.profiles.analytic = false;

  const Grid1D grid(pc.a, pc.b, cells);
  const double times[1] = {T};
  SplitTrajectory traj = solve_nlse_op(pc, grid, dt, T, times);
  require(!traj.samples.empty(), "soliton benchmark produced no snapshot");

  const Complex rot(std::cos(a_param * a_param * T),
                    std::sin(a_param * a_param * T));
  ComplexField exact = sample_interior<Complex>(grid, [&](double x) {
    return amp / std::cosh(a_param * x) * rot;
  });
  SolitonBenchResult out;
  out.l2_error = norm_l2(traj.samples.back().second - exact);
  out.mass_drift_rel = traj.max_mass_drift_rel;
  return out;
}

namespace {

std::string fmt_g6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_order(const std::optional<double>& o) {
  return o ? fmt_g6(*o) : std::string("-");
}

}  // namespace

std::string format_csv(const std::vector<ErrorRecord>& records) {
  if (records.empty()) throw ConfigError("format_csv: empty record list");
  std::ostringstream out;
  out << "kind,case,epsilon,h,tau,T,e_err,n_err,order_e,order_n,"
         "ref_descriptor,wall_time\n";
  for (const ErrorRecord& r : records) {
    out << r.kind << ',' << r.case_name << ',' << fmt_g6(r.epsilon) << ','
        << fmt_g6(r.h) << ',' << fmt_g6(r.tau) << ',' << fmt_g6(r.T) << ','
        << fmt_g6(r.e_err) << ',' << fmt_g6(r.n_err) << ','
        << fmt_order(r.order_e) << ',' << fmt_order(r.order_n) << ','
        << (r.failure.empty() ? r.ref_descriptor : "failed: " + r.failure)
        << ',' << fmt_g6(r.wall_time) << '\n';
  }
  return out.str();
}

void emit_csv(const std::vector<ErrorRecord>& records, const std::string& path) {
  if (records.empty())
    throw ConfigError("emit_csv: empty record list, no file created");
  const std::string body = format_csv(records);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("emit_csv: cannot open '" + path + "' for writing");
  f << body;
  f.flush();
  if (!f) throw IoError("emit_csv: write failed for '" + path + "'");
}

std::string format_table(const std::vector<ErrorRecord>& records) {
  if (records.empty()) throw ConfigError("format_table: empty record list");
  const bool resonance = records[0].kind.rfind("resonance", 0) == 0;
  std::ostringstream out;
  out << "# " << records[0].kind << " sweep, " << records[0].case_name
      << ", T=" << fmt_g6(records[0].T) << "\n";

  auto cell_label = [&](const ErrorRecord& r) {
    if (resonance)
      return "eps=" + fmt_g6(r.epsilon) + ",tau=" + fmt_g6(r.tau);
    if (records[0].kind == "spatial") return "h=" + fmt_g6(r.h);
    return "tau=" + fmt_g6(r.tau);
  };

  // Row blocks share the chain of the first epsilon.
  std::vector<size_t> first_chain;
  for (size_t i = 0; i < records.size(); ++i)
    if (records[i].epsilon == records[0].epsilon || resonance)
      first_chain.push_back(i);

  auto section = [&](const char* name, auto err_of, auto order_of) {
    out << '\n' << name;
    for (size_t i : first_chain) out << '\t' << cell_label(records[i]);
    out << '\n';
    for (size_t i = 0; i < records.size();) {
      const double eps = records[i].epsilon;
      out << (resonance ? std::string("chain") : "eps=" + fmt_g6(eps));
      size_t begin = i;
      for (; i < records.size() && (resonance || records[i].epsilon == eps); ++i)
        out << '\t'
            << (records[i].failure.empty() ? fmt_g6(err_of(records[i]))
                                           : std::string("failed"));
      out << "\nrate";
      for (size_t j = begin; j < i; ++j) out << '\t' << order_of(records[j]);
      out << '\n';
    }
  };
  section("e_err", [](const ErrorRecord& r) { return r.e_err; },
          [](const ErrorRecord& r) { return fmt_order(r.order_e); });
  section("n_err", [](const ErrorRecord& r) { return r.n_err; },
          [](const ErrorRecord& r) { return fmt_order(r.order_n); });
  return out.str();
}

bool run_invariant_suite(std::ostream& out, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, double value) {
    out << (ok ? "PASS" : "FAIL") << "  " << name << "  (measure=" << value
        << ")\n";
    all_ok = all_ok && ok;
  };

  // Summation by parts and symmetry of the second difference.
  {
    Grid1D g(-3.0, 2.0, 64);
    double worst = 0.0;
    for (int t = 0; t < 4; ++t) {
      ComplexField u(g), v(g);
      for (int j = 1; j < g.cells; ++j) {
        u.v(j) = Complex(uni(gen), uni(gen));
        v.v(j) = Complex(uni(gen), uni(gen));
      }
      ComplexField mdu(g);
      mdu.v = -second_diff(u).v;
      const Complex lhs = inner(mdu, v);
      const Complex rhs = g.h * forward_diff(v).dot(forward_diff(u));
      worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(lhs) + 1.0));
      const Complex s1 = inner(second_diff(u), v);
      ComplexField dv = second_diff(v);
      const Complex s2 = inner(u, dv);
      worst = std::max(worst, std::abs(s1 - s2) / (std::abs(s1) + 1.0));
    }
    report("summation-by-parts / symmetry", worst <= 1e-12, worst);
  }

  // DST roundtrip.
  {
    double worst = 0.0;
    for (int cells : {4, 16, 64, 256}) {
      SineTransform dst(cells);
      Eigen::VectorXd s(cells - 1);
      for (auto& x : s.reshaped()) x = uni(gen);
      worst = std::max(worst, (dst.inverse(dst.forward(s)) - s)
                                  .cwiseAbs()
                                  .maxCoeff() /
                                  s.cwiseAbs().maxCoeff());
    }
    report("dst roundtrip", worst <= 1e-12, worst);
  }

  // Linear solver residuals on random inputs.
  {
    Grid1D g(0.0, 1.0, 128);
    RealField rhs(g);
    for (int j = 1; j < g.cells; ++j) rhs.v(j) = uni(gen);
    const double sigma = 3.7;
    RealField u = solve_real_helmholtz(sigma, rhs);
    RealField applied(g);
    applied.v = sigma * u.v - 0.5 * second_diff(u).v;
    const double res_h =
        (applied.v - rhs.v).cwiseAbs().maxCoeff() /
        (1e-300 + (sigma + 1.0 / (g.h * g.h)) * norm_l2(u));
    ComplexField crhs(g);
    for (int j = 1; j < g.cells; ++j) crhs.v(j) = Complex(uni(gen), uni(gen));
    RealField pot(g);
    for (int j = 1; j < g.cells; ++j) pot.v(j) = uni(gen);
    const Complex lambda(0.0, 100.0);
    ComplexField cu = solve_complex_tridiagonal(lambda, pot, crhs);
    ComplexField capplied(g);
    capplied.v = lambda * cu.v + second_diff(cu).v;
    for (int j = 1; j < g.cells; ++j) capplied.v(j) -= pot.v(j) * cu.v(j);
    capplied.clamp_boundary();
    const double res_c =
        (capplied.v - crhs.v).cwiseAbs().maxCoeff() /
        (1e-300 +
         (std::abs(lambda) + 1.0 / (g.h * g.h) + norm_inf(pot)) * norm_l2(cu));
    report("tridiagonal solver residuals", res_h <= 1e-12 && res_c <= 1e-12,
           std::max(res_h, res_c));
  }

  // Window average of G against its exact integral.
  {
    PhysicalCase pc = PhysicalCase::named("case-II");
    pc.a = -40.0;
    pc.b = 40.0;
    pc.epsilon = 0.25;
    Grid1D g(pc.a, pc.b, 128);
    WaveModes modes = decompose_waves(pc, g);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const double tau = 0.001 + 0.05 * std::abs(uni(gen));
      const double t_k = tau + std::abs(uni(gen));
      RealField h_avg = averaged_potential(modes, t_k, tau);
      RealField integ = integral_of_G(modes, t_k - tau, t_k + tau);
      const double scale = std::max(norm_inf(integ), 1e-30);
      RealField diff(g);
      diff.v = 2.0 * tau * h_avg.v - integ.v;
      worst = std::max(worst, norm_inf(diff) / scale);
    }
    report("H * 2tau == integral of G", worst <= 1e-12, worst);
  }

  // Zero data is a fixed point of the step.
  {
    PhysicalCase pc = PhysicalCase::named("case-II");
    pc.a = -40.0;
    pc.b = 40.0;
    pc.epsilon = 0.5;
    Grid1D g(pc.a, pc.b, 64);
    WaveModes modes = decompose_waves(pc, g);
    SolverState st;
    st.physical = &pc;
    st.modes = &modes;
    st.tau = 0.01;
    st.k = 1;
    st.E_prev = ComplexField(g);
    st.E_curr = ComplexField(g);
    st.F_prev = RealField(g);
    st.F_curr = RealField(g);
    StepConfig cfg;
    StepStats stats = step(st, cfg);
    const double m = norm_inf(st.E_curr) + norm_inf(st.F_curr);
    report("zero fixed point (1 iteration)", m == 0.0 && stats.iterations == 1, m);
  }

  // Parity mass conservation over a short run.
  {
    PhysicalCase pc = PhysicalCase::named("case-II");
    pc.a = -40.0;
    pc.b = 40.0;
    pc.epsilon = 0.25;
    pc.T = 0.2;
    Grid1D g(pc.a, pc.b, 128);
    StepConfig cfg;
    const double times[1] = {pc.T};
    Trajectory traj = run(pc, g, 0.01, cfg, times);
    report("step parity mass conservation",
           traj.stats.max_parity_drift_rel <= 1e-10,
           traj.stats.max_parity_drift_rel);
  }

  return all_ok;
}

}  // namespace zak
