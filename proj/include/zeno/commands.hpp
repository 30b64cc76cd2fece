// commands.hpp — subcommand implementations shared by the CLI and tests.
#pragma once

#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/config.hpp"
#include "zeno/effective.hpp"
#include "zeno/errors.hpp"
#include "zeno/gap.hpp"
#include "zeno/oracle.hpp"
#include "zeno/sector.hpp"
#include "zeno/table.hpp"
#include "zeno/version.hpp"

namespace zeno {

struct CommandResult {
  ResultTable table;
  bool pass = true;  // false triggers the check-failure exit code
};

namespace detail {

inline std::string dims_string(const LatticeSpec& spec) {
  std::string s = "[";
  for (std::size_t i = 0; i < spec.dims.size(); ++i)
    s += (i ? "," : "") + std::to_string(spec.dims[i]);
  return s + "]";
}

inline void common_meta(ResultTable& t, const RunConfig& cfg, const char* subcommand) {
  t.add_meta("tool", std::string("zeno ") + version_string);
  t.add_meta("subcommand", subcommand);
  t.add_meta("lattice", dims_string(cfg.lattice) + " " + to_string(cfg.lattice.boundary));
  t.add_meta("config", emit_config(cfg, -1));
}

inline std::vector<SectorConfig> scan_family(const RunConfig& cfg, const LatticeGraph& g) {
  if (cfg.family == Family::custom) {
    std::vector<SectorConfig> customs;
    for (const auto& spec : cfg.custom_specs) customs.push_back(parse_sector_spec(spec, g));
    return candidate_configs(g, Family::custom, &customs);
  }
  return candidate_configs(g, cfg.family);
}

inline ScanPlan scan_plan(const RunConfig& cfg, const LatticeGraph& g) {
  ScanPlan plan;
  plan.gamma_grid = cfg.gamma_values();
  plan.family = cfg.family;
  if (cfg.family == Family::custom)
    for (const auto& spec : cfg.custom_specs) plan.custom.push_back(parse_sector_spec(spec, g));
  plan.record_modes = cfg.record_modes;
  plan.workers = cfg.workers;
  plan.validate();
  return plan;
}

}  // namespace detail

// Eigenvalues of one sector plus the additive constant and the slowest
// nonzero decay mode.
inline CommandResult cmd_solve_sector(const RunConfig& cfg) {
  const double gamma = cfg.single_gamma("solve-sector");
  const LatticeGraph g = build_lattice(cfg.lattice);
  const ModelParams p = cfg.model_at(gamma);
  const SectorConfig sector = parse_sector_spec(cfg.sector_spec, g);

  const SectorSpectrum s = solve_sector(g, p, sector);
  const SectorMax m = sector_max_nonzero(s);

  CommandResult res;
  ResultTable& t = res.table;
  detail::common_meta(t, cfg, "solve-sector");
  t.add_meta("gamma", format_significant(gamma, cfg.precision));
  t.add_meta("sector", sector.label);
  t.add_meta("n_flipped", std::to_string(sector.n_flipped()));
  if (m.found) {
    std::string occ;
    for (std::size_t i = 0; i < m.occupied.size(); ++i)
      occ += (i ? "," : "") + std::to_string(m.occupied[i]);
    t.add_meta("sector_max_occupation", occ.empty() ? "(vacuum)" : occ);
  } else {
    t.add_meta("sector_max_occupation", "(no nonzero mode)");
  }

  t.columns = {"alpha", "re", "im"};
  for (int a = 0; a < s.n_modes(); ++a) {
    auto& row = t.add_row();
    row.emplace_back(std::to_string(a));
    row.emplace_back(s.eigenvalues(a).real());
    row.emplace_back(s.eigenvalues(a).imag());
  }
  {
    auto& row = t.add_row();
    row.emplace_back(std::string("constant"));
    row.emplace_back(s.constant.real());
    row.emplace_back(s.constant.imag());
  }
  {
    auto& row = t.add_row();
    row.emplace_back(std::string("sector_max"));
    if (m.found) {
      row.emplace_back(m.lambda.real());
      row.emplace_back(m.lambda.imag());
    } else {
      row.emplace_back(Cell{});
      row.emplace_back(Cell{});
    }
  }
  return res;
}

// Gap across the gamma grid; the maximum marks the Zeno crossover.
inline CommandResult cmd_zeno_scan(const RunConfig& cfg) {
  const LatticeGraph g = build_lattice(cfg.lattice);
  const ScanPlan plan = detail::scan_plan(cfg, g);
  const ZenoScan scan = zeno_scan(g, cfg.model, plan);
  const bool uniform = !cfg.model.bond_overrides;

  CommandResult res;
  ResultTable& t = res.table;
  detail::common_meta(t, cfg, "zeno-scan");
  t.add_meta("family", to_string(plan.family));
  if (scan.argmax_index >= 0)
    t.add_meta("gamma_star", format_significant(scan.gamma_star, cfg.precision));
  if (uniform) {
    const GapAsymptotes a = gap_asymptotes(cfg.model_at(1.0), g.dimension());
    t.add_meta("crossover_estimate", format_significant(a.zeno_crossover, cfg.precision));
  }

  t.columns = {"gamma", "gap", "argmax_label", "argmax_flips"};
  if (uniform) {
    t.columns.push_back("asym_small");
    t.columns.push_back("asym_large");
  }
  for (const GapResult& pt : scan.points) {
    auto& row = t.add_row();
    row.emplace_back(pt.gamma);
    if (pt.defined)
      row.emplace_back(pt.gap);
    else
      row.emplace_back(Cell{});
    row.emplace_back(pt.argmax_label);
    row.emplace_back(std::int64_t(pt.argmax_flips));
    if (uniform) {
      const GapAsymptotes a = gap_asymptotes(cfg.model_at(pt.gamma), g.dimension());
      row.emplace_back(a.small_gamma);
      row.emplace_back(a.large_gamma);
    }
  }
  return res;
}

// Which sector carries the slowest decay at each gamma, and where it changes.
inline CommandResult cmd_crossing_report(const RunConfig& cfg) {
  const LatticeGraph g = build_lattice(cfg.lattice);
  const ScanPlan plan = detail::scan_plan(cfg, g);
  const CrossingReport rep = sector_crossing_report(g, cfg.model, plan);

  CommandResult res;
  ResultTable& t = res.table;
  detail::common_meta(t, cfg, "crossing-report");
  t.add_meta("family", to_string(plan.family));
  for (const Crossing& c : rep.crossings) {
    std::string line = "gamma " + format_significant(c.gamma_before, cfg.precision) + " -> " +
                       format_significant(c.gamma_after, cfg.precision) + ", " + c.label_before +
                       " -> " + c.label_after;
    t.add_meta("crossing", line);
  }
  if (rep.crossings.empty()) t.add_meta("crossing", "(none)");

  t.columns = {"gamma", "gap", "argmax_label", "argmax_flips", "wall_length"};
  std::vector<std::string> labels;
  if (plan.record_modes && !rep.rows.empty()) {
    for (const SectorValue& v : rep.rows.front().sector_values) {
      labels.push_back(v.label);
      t.columns.push_back("absmax:" + v.label);
    }
  }
  for (const GapResult& pt : rep.rows) {
    auto& row = t.add_row();
    row.emplace_back(pt.gamma);
    if (pt.defined)
      row.emplace_back(pt.gap);
    else
      row.emplace_back(Cell{});
    row.emplace_back(pt.argmax_label);
    row.emplace_back(std::int64_t(pt.argmax_flips));
    if (pt.defined)
      row.emplace_back(std::int64_t(domain_wall_length(g, pt.argmax)));
    else
      row.emplace_back(Cell{});
    if (plan.record_modes)
      for (const SectorValue& v : pt.sector_values) {
        if (v.found)
          row.emplace_back(std::abs(v.max_re()));
        else
          row.emplace_back(Cell{});
      }
  }
  return res;
}

namespace detail {

inline void check_row(ResultTable& t, bool& pass, const std::string& name, double value,
                      double threshold, bool ok) {
  auto& row = t.add_row();
  row.emplace_back(name);
  row.emplace_back(std::string(ok ? "pass" : "fail"));
  row.emplace_back(value);
  row.emplace_back(threshold);
  pass = pass && ok;
}

inline void skip_row(ResultTable& t, const std::string& name, const std::string& why) {
  auto& row = t.add_row();
  row.emplace_back(name);
  row.emplace_back(std::string("skipped"));
  row.emplace_back(Cell{});
  row.emplace_back(Cell{});
  t.add_meta("skipped", name + ": " + why);
}

}  // namespace detail

// Brute-force cross-validation battery on a small lattice.
inline CommandResult cmd_oracle_check(const RunConfig& cfg) {
  const double gamma = cfg.single_gamma("oracle-check");
  const LatticeGraph g = build_lattice(cfg.lattice);
  const ModelParams p = cfg.model_at(gamma);
  const int N = g.n_sites;

  CommandResult res;
  ResultTable& t = res.table;
  detail::common_meta(t, cfg, "oracle-check");
  t.add_meta("gamma", format_significant(gamma, cfg.precision));
  t.add_meta("oracle_cap", std::to_string(cfg.oracle_cap));
  t.columns = {"check", "status", "value", "threshold"};
  bool& pass = res.pass;

  const auto direct = oracle::build_superoperator_direct(g, p, cfg.oracle_cap);
  const auto fermionic = oracle::build_superoperator_fermionic(g, p, cfg.oracle_cap);

  {
    const SpMat diff = SpMat(direct.mat - fermionic.mat);
    double worst = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
      for (SpMat::InnerIterator it(diff, k); it; ++it)
        worst = std::max(worst, std::abs(it.value()));
    detail::check_row(t, pass, "fermionic_vs_direct", worst, 1e-12, worst < 1e-12);
  }

  if (p.solvable()) {
    const auto rep = oracle::sector_partition_check(g, p, cfg.oracle_cap);
    detail::check_row(t, pass, "sector_partition", rep.max_mismatch, rep.tolerance, rep.pass);
  } else {
    detail::skip_row(t, "sector_partition", "model is not at the solvable point");
  }

  {
    const auto rotated = oracle::spectrum_of(oracle::rotate_to_bcs_hubbard(direct, g));
    const auto assembled = oracle::spectrum_of(oracle::assemble_bcs_hubbard(g, p, cfg.oracle_cap));
    const double dist = max_multiset_distance(rotated, assembled);
    detail::check_row(t, pass, "rotation_spectra", dist, 1e-10, dist < 1e-10);
  }

  const auto states = oracle::steady_states(g, cfg.oracle_cap);
  {
    const double r = oracle::adjoint_residual(direct, Eigen::MatrixXcd::Identity(1 << N, 1 << N));
    detail::check_row(t, pass, "trace_preservation", r, 1e-10, r < 1e-10);
  }
  {
    const double r = oracle::adjoint_residual(direct, oracle::parity_matrix(N));
    detail::check_row(t, pass, "adjoint_parity", r, 1e-12, r < 1e-12);
  }
  {
    const double r = oracle::steady_residual(direct, states.rho_minus);
    detail::check_row(t, pass, "steady_rho_minus", r, 1e-10, r < 1e-10);
  }
  {
    const double r = oracle::steady_residual(direct, states.rho_plus);
    detail::check_row(t, pass, "steady_rho_plus", r, 1e-10, r < 1e-10);
  }
  {
    const double tr1 = std::abs(states.rho_minus.trace() - std::complex<double>(1.0));
    detail::check_row(t, pass, "trace_rho_minus", tr1, 1e-12, tr1 < 1e-12);
    const double tr0 = std::abs(states.rho_plus.trace());
    detail::check_row(t, pass, "trace_rho_plus", tr0, 1e-12, tr0 < 1e-12);
  }
  {
    const double me = oracle::min_hermitian_eigenvalue(states.rho_even);
    detail::check_row(t, pass, "psd_rho_even", me, -1e-12, me >= -1e-12);
    const double mo = oracle::min_hermitian_eigenvalue(states.rho_odd);
    detail::check_row(t, pass, "psd_rho_odd", mo, -1e-12, mo >= -1e-12);
  }
  if (N <= 5) {
    const auto gap = oracle::exact_gap(direct);
    detail::check_row(t, pass, "kernel_dimension", double(gap.n_zero_modes), 2.0,
                      gap.n_zero_modes == 2);
  } else {
    detail::skip_row(t, "kernel_dimension", "full spectrum beyond 5 sites is expensive");
  }

  return res;
}

// Steady-state construction and positivity of the mixing family.
inline CommandResult cmd_steady_state(const RunConfig& cfg) {
  const double gamma = cfg.single_gamma("steady-state");
  const LatticeGraph g = build_lattice(cfg.lattice);
  const ModelParams p = cfg.model_at(gamma);
  const int N = g.n_sites;

  CommandResult res;
  ResultTable& t = res.table;
  detail::common_meta(t, cfg, "steady-state");
  t.add_meta("gamma", format_significant(gamma, cfg.precision));
  t.columns = {"check", "status", "value", "threshold"};
  bool& pass = res.pass;

  const auto L = oracle::build_superoperator_direct(g, p, cfg.oracle_cap);
  const auto states = oracle::steady_states(g, cfg.oracle_cap);

  const double tr1 = std::abs(states.rho_minus.trace() - std::complex<double>(1.0));
  detail::check_row(t, pass, "trace_rho_minus", tr1, 1e-12, tr1 < 1e-12);
  const double tr0 = std::abs(states.rho_plus.trace());
  detail::check_row(t, pass, "trace_rho_plus", tr0, 1e-12, tr0 < 1e-12);

  const double rm = oracle::steady_residual(L, states.rho_minus);
  detail::check_row(t, pass, "residual_rho_minus", rm, 1e-10, rm < 1e-10);
  const double rp = oracle::steady_residual(L, states.rho_plus);
  detail::check_row(t, pass, "residual_rho_plus", rp, 1e-10, rp < 1e-10);
  const double ra = oracle::adjoint_residual(L, oracle::parity_matrix(N));
  detail::check_row(t, pass, "residual_adjoint_parity", ra, 1e-12, ra < 1e-12);

  const double me = oracle::min_hermitian_eigenvalue(states.rho_even);
  detail::check_row(t, pass, "psd_rho_even", me, -1e-12, me >= -1e-12);
  const double mo = oracle::min_hermitian_eigenvalue(states.rho_odd);
  detail::check_row(t, pass, "psd_rho_odd", mo, -1e-12, mo >= -1e-12);

  // rho_q = rho_minus + q rho_plus is a state exactly for |q| <= 1
  for (double q : {1.0, -1.0}) {
    const double m = oracle::min_hermitian_eigenvalue(states.rho_minus + q * states.rho_plus);
    detail::check_row(t, pass, "psd_q=" + format_significant(q, 3), m, -1e-12, m >= -1e-12);
  }
  for (double q : {1.5, -1.5}) {
    const double m = oracle::min_hermitian_eigenvalue(states.rho_minus + q * states.rho_plus);
    detail::check_row(t, pass, "negative_q=" + format_significant(q, 3), m, -1e-6, m < -1e-6);
  }

  if (N <= 5) {
    const auto gap = oracle::exact_gap(L);
    detail::check_row(t, pass, "kernel_dimension", double(gap.n_zero_modes), 2.0,
                      gap.n_zero_modes == 2);
  } else {
    detail::skip_row(t, "kernel_dimension", "full spectrum beyond 5 sites is expensive");
  }
  return res;
}

}  // namespace zeno
