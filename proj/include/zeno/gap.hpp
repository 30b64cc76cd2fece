// gap.hpp — Liouvillian gap over candidate sectors, Zeno scans, crossings.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/errors.hpp"
#include "zeno/lattice.hpp"
#include "zeno/model.hpp"
#include "zeno/parallel.hpp"
#include "zeno/sector.hpp"

namespace zeno {

enum class Family { exhaustive, default_family, custom };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::exhaustive: return "exhaustive";
    case Family::default_family: return "default";
    case Family::custom: return "custom";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  if (s == "exhaustive") return Family::exhaustive;
  if (s == "default") return Family::default_family;
  if (s == "custom") return Family::custom;
  throw config_error("unknown scan family: " + s);
}

inline constexpr int exhaustive_site_cap = 14;

// Candidate sectors for gap scans.
//
// The default family contains the configurations that can carry the slowest
// decay: the unflipped sector, one flipped site at the origin, and compact
// flipped domains (1D: contiguous segments up to half filling; higher d:
// origin-anchored axis-aligned blocks with sides up to 4, deduplicated by
// side multiset). The exhaustive family enumerates all sectors once per
// charge-conjugate pair by pinning D = +1 at the origin.
inline std::vector<SectorConfig> candidate_configs(
    const LatticeGraph& g, Family family,
    const std::vector<SectorConfig>* custom = nullptr) {
  const int N = g.n_sites;
  std::vector<SectorConfig> out;

  if (family == Family::custom) {
    if (!custom || custom->empty())
      throw config_error("candidate_configs: custom family needs at least one config");
    for (SectorConfig c : *custom) {
      c.validate(N);
      if (c.label.empty()) c.label = std::to_string(c.n_flipped()) + "-flipped";
      out.push_back(std::move(c));
    }
    return out;
  }

  if (family == Family::exhaustive) {
    if (N > exhaustive_site_cap)
      throw config_error("candidate_configs: exhaustive family capped at " +
                         std::to_string(exhaustive_site_cap) + " sites");
    const std::uint32_t count = std::uint32_t(1) << (N - 1);
    out.reserve(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      SectorConfig c;
      c.d.assign(N, 1);
      std::string bits(N, '0');
      for (int l = 1; l < N; ++l)
        if (mask & (std::uint32_t(1) << (l - 1))) {
          c.d[l] = -1;
          bits[l] = '1';
        }
      c.label = "cfg-" + bits;
      out.push_back(std::move(c));
    }
    return out;
  }

  out.push_back(uniform_config(N));
  const int d = g.dimension();
  if (d == 1) {
    for (int n = 1; n <= N / 2; ++n) out.push_back(segment_config(g, n));
    return out;
  }

  out.push_back(flipped_config(N, {0}, "1-flipped"));
  std::vector<int> caps(d);
  for (int a = 0; a < d; ++a) caps[a] = std::min(4, g.spec.dims[a] / 2);
  std::vector<int> axis_by_cap(d);
  for (int a = 0; a < d; ++a) axis_by_cap[a] = a;
  std::sort(axis_by_cap.begin(), axis_by_cap.end(),
            [&](int a, int b) { return caps[a] != caps[b] ? caps[a] < caps[b] : a < b; });

  std::vector<int> sides(d, 1);
  for (;;) {
    // next non-decreasing multiset over 1..max cap
    int pos = d - 1;
    const int cap_max = *std::max_element(caps.begin(), caps.end());
    while (pos >= 0 && sides[pos] == cap_max) --pos;
    if (pos < 0) break;
    ++sides[pos];
    for (int k = pos + 1; k < d; ++k) sides[k] = sides[pos];

    bool feasible = true;
    for (int k = 0; k < d; ++k) feasible = feasible && sides[k] <= caps[axis_by_cap[k]];
    if (!feasible) continue;

    std::vector<int> per_axis(d, 1);
    for (int k = 0; k < d; ++k) per_axis[axis_by_cap[k]] = sides[k];
    out.push_back(block_config(g, per_axis));
    // relabel by the sorted side multiset so congruent blocks share a name
    std::string label = "block-";
    for (int k = 0; k < d; ++k) label += (k ? "x" : "") + std::to_string(sides[k]);
    out.back().label = label;
  }
  return out;
}

struct SectorValue {
  std::string label;
  int n_flipped = 0;
  bool found = false;
  std::complex<double> lambda{0.0, 0.0};

  double max_re() const { return lambda.real(); }
};

struct GapResult {
  double gamma = 0.0;
  bool defined = false;
  double gap = std::numeric_limits<double>::infinity();
  std::string argmax_label;
  int argmax_flips = 0;
  SectorConfig argmax;
  std::vector<SectorValue> sector_values;
};

// Gap at one gamma over a fixed candidate family: -max of the per-sector
// nonzero maxima, excluding sectors whose maximum does not decay. Ties are
// broken toward fewer flips, then lexicographically smaller label.
inline GapResult liouvillian_gap(const LatticeGraph& g, const ModelParams& params, double gamma,
                                 const std::vector<SectorConfig>& configs, int workers = 1) {
  if (configs.empty()) throw config_error("liouvillian_gap: empty candidate family");
  ModelParams p = params;
  p.gamma = gamma;
  p.require_solvable("liouvillian_gap");

  const int n = int(configs.size());
  GapResult r;
  r.gamma = gamma;
  r.sector_values.resize(n);
  std::vector<char> kept(n, 0);

  const double tol = tol_zero_lambda(gamma, g.n_sites);
  parallel_for(n, workers, [&](int i) {
    const SectorSpectrum s = solve_sector(g, p, configs[i]);
    const SectorMax m = sector_max_nonzero(s);
    SectorValue v;
    v.label = configs[i].label;
    v.n_flipped = configs[i].n_flipped();
    v.found = m.found;
    v.lambda = m.lambda;
    r.sector_values[i] = std::move(v);
    kept[i] = m.found && m.lambda.real() < -tol;
  });

  const double tie_tol = 1e-9 * std::max(1.0, gamma);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    if (kept[i]) best = std::max(best, r.sector_values[i].max_re());
  if (!std::isfinite(best)) return r;  // nothing decays: gap undefined

  int winner = -1;
  for (int i = 0; i < n; ++i) {
    if (!kept[i] || r.sector_values[i].max_re() < best - tie_tol) continue;
    if (winner < 0) {
      winner = i;
      continue;
    }
    const auto& a = r.sector_values[i];
    const auto& b = r.sector_values[winner];
    if (a.n_flipped != b.n_flipped ? a.n_flipped < b.n_flipped : a.label < b.label) winner = i;
  }

  r.defined = true;
  r.gap = -best;
  r.argmax = configs[winner];
  r.argmax_label = r.sector_values[winner].label;
  r.argmax_flips = r.sector_values[winner].n_flipped;
  return r;
}

struct ScanPlan {
  std::vector<double> gamma_grid;  // ascending, strictly positive
  Family family = Family::default_family;
  std::vector<SectorConfig> custom;
  bool record_modes = false;
  int workers = 1;

  void validate() const {
    if (gamma_grid.empty()) throw config_error("scan: gamma grid is empty");
    double prev = 0.0;
    for (double gmm : gamma_grid) {
      if (!(gmm > 0)) throw config_error("scan: gamma grid must be strictly positive");
      if (gmm <= prev && prev != 0.0) throw config_error("scan: gamma grid must be ascending");
      prev = gmm;
    }
    if (workers < 1) throw config_error("scan: workers must be >= 1");
  }
};

struct ZenoScan {
  std::vector<GapResult> points;
  int argmax_index = -1;     // grid point with the largest gap
  double gamma_star = 0.0;   // measured crossover location
};

// Gap across a gamma grid; the maximum marks the Zeno crossover.
inline ZenoScan zeno_scan(const LatticeGraph& g, const ModelParams& params, const ScanPlan& plan) {
  plan.validate();
  const auto configs = candidate_configs(g, plan.family,
                                         plan.family == Family::custom ? &plan.custom : nullptr);
  ZenoScan scan;
  scan.points.reserve(plan.gamma_grid.size());
  for (double gmm : plan.gamma_grid)
    scan.points.push_back(liouvillian_gap(g, params, gmm, configs, plan.workers));
  for (int i = 0; i < int(scan.points.size()); ++i) {
    const auto& pt = scan.points[i];
    if (!pt.defined) continue;
    if (scan.argmax_index < 0 || pt.gap > scan.points[scan.argmax_index].gap) scan.argmax_index = i;
  }
  if (scan.argmax_index >= 0) scan.gamma_star = scan.points[scan.argmax_index].gamma;
  return scan;
}

struct Crossing {
  double gamma_before = 0.0;
  double gamma_after = 0.0;
  std::string label_before;
  std::string label_after;
  int flips_before = 0;
  int flips_after = 0;
};

struct CrossingReport {
  std::vector<GapResult> rows;
  std::vector<Crossing> crossings;  // consecutive grid points with a new argmax
};

// Tracks which sector carries the slowest decay as gamma varies. The uniform
// sector is dropped from the scanned family: its slowest value -gamma/2 is
// always duplicated exactly by the 1-flipped vacuum, so removing it changes
// no gap value but attributes the weak-dissipation branch to the defect
// sector whose crossing with longer segments the report is meant to expose.
inline CrossingReport sector_crossing_report(const LatticeGraph& g, const ModelParams& params,
                                             const ScanPlan& plan) {
  ScanPlan defects = plan;
  defects.custom = candidate_configs(g, plan.family,
                                     plan.family == Family::custom ? &plan.custom : nullptr);
  std::erase_if(defects.custom, [](const SectorConfig& c) { return c.n_flipped() == 0; });
  defects.family = Family::custom;
  if (defects.custom.empty()) throw config_error("crossing report: no flipped sectors to scan");
  const ZenoScan scan = zeno_scan(g, params, defects);
  CrossingReport rep;
  rep.rows = scan.points;
  const GapResult* prev = nullptr;
  for (const auto& pt : rep.rows) {
    if (!pt.defined) continue;
    if (prev && prev->argmax_label != pt.argmax_label)
      rep.crossings.push_back({prev->gamma, pt.gamma, prev->argmax_label, pt.argmax_label,
                               prev->argmax_flips, pt.argmax_flips});
    prev = &pt;
  }
  return rep;
}

struct ModeProfile {
  int mode_index = -1;                  // position in the sorted spectrum
  std::complex<double> energy{0.0, 0.0};
  Eigen::VectorXd weight;               // |psi_l|^2, normalized
  double localization = 0.0;            // weight within distance 1 of flips
};

// Profile of the least-damped single-particle mode of one sector.
inline ModeProfile slowest_mode_profile(const LatticeGraph& g, const ModelParams& params,
                                        const SectorConfig& config) {
  const SectorSpectrum s = solve_sector(g, params, config, true);
  ModeProfile prof;
  for (int a = 0; a < s.n_modes(); ++a)
    if (prof.mode_index < 0 || s.eigenvalues(a).imag() > s.eigenvalues(prof.mode_index).imag())
      prof.mode_index = a;
  prof.energy = s.eigenvalues(prof.mode_index);
  Eigen::VectorXd w = s.eigenvectors.col(prof.mode_index).cwiseAbs2();
  w /= w.sum();
  prof.weight = w;

  std::vector<char> near(g.n_sites, 0);
  for (int l = 0; l < g.n_sites; ++l) {
    if (config.d[l] != -1) continue;
    near[l] = 1;
    for (const Neighbor& nb : neighbors(g, l)) near[nb.site] = 1;
  }
  for (int l = 0; l < g.n_sites; ++l)
    if (near[l]) prof.localization += w(l);
  return prof;
}

}  // namespace zeno
