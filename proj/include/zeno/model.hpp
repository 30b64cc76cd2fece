// model.hpp — model parameters and dissipation-sector configurations.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/lattice.hpp"

namespace zeno {

// Per-direction bond amplitudes, always quoted for the A->B orientation.
// `pos` fields apply to bonds leaving an A site along +e_a, `neg` along -e_a.
struct BondCouplings {
  double t_pos = 1.0;
  double delta_pos = 1.0;
  double t_neg = 1.0;
  double delta_neg = 1.0;
};

struct ModelParams {
  double t = 1.0;
  double delta = 1.0;
  double gamma = 0.0;
  // When set, overrides (t, delta) with one BondCouplings entry per direction.
  std::optional<std::vector<BondCouplings>> bond_overrides;

  // The sector decomposition exists exactly when every hopping amplitude
  // equals its pairing amplitude (compared as exact doubles).
  bool solvable() const {
    if (!bond_overrides) return t == delta;
    return std::all_of(bond_overrides->begin(), bond_overrides->end(), [](const BondCouplings& b) {
      return b.t_pos == b.delta_pos && b.t_neg == b.delta_neg;
    });
  }

  double hop(int direction, int step) const {
    if (!bond_overrides) return t;
    const auto& b = bond_overrides->at(direction);
    return step > 0 ? b.t_pos : b.t_neg;
  }

  double pair(int direction, int step) const {
    if (!bond_overrides) return delta;
    const auto& b = bond_overrides->at(direction);
    return step > 0 ? b.delta_pos : b.delta_neg;
  }

  void require_solvable(const char* where) const {
    if (!solvable())
      throw non_solvable_error(std::string(where) +
                               ": hopping and pairing amplitudes differ; no sector decomposition");
  }

  void validate(int dimension) const {
    if (gamma < 0) throw config_error("model: gamma must be >= 0");
    if (bond_overrides && static_cast<int>(bond_overrides->size()) != dimension)
      throw config_error("model: bond_overrides needs one entry per lattice direction");
  }
};

// One dissipation sector: a choice D_l = +-1 per site. D_l = -1 is a flip.
struct SectorConfig {
  std::vector<std::int8_t> d;
  std::string label;

  int n_sites() const { return static_cast<int>(d.size()); }

  int n_flipped() const {
    return static_cast<int>(std::count(d.begin(), d.end(), static_cast<std::int8_t>(-1)));
  }

  int sum() const {
    int s = 0;
    for (auto v : d) s += v;
    return s;
  }

  void validate(int n_sites_expected) const {
    if (static_cast<int>(d.size()) != n_sites_expected)
      throw std::invalid_argument("sector: config size does not match lattice");
    for (auto v : d)
      if (v != 1 && v != -1) throw std::invalid_argument("sector: entries must be +-1");
  }
};

inline SectorConfig uniform_config(int n_sites) {
  SectorConfig c;
  c.d.assign(n_sites, 1);
  c.label = "0-flipped";
  return c;
}

inline SectorConfig flipped_config(int n_sites, const std::vector<int>& flipped_sites,
                                   std::string label = {}) {
  SectorConfig c;
  c.d.assign(n_sites, 1);
  for (int s : flipped_sites) {
    if (s < 0 || s >= n_sites) throw std::invalid_argument("sector: flipped site out of range");
    c.d[s] = -1;
  }
  if (label.empty()) {
    const int k = c.n_flipped();
    label = k == 0 ? "0-flipped" : (k == 1 ? "1-flipped" : std::to_string(k) + "-flipped");
  }
  c.label = std::move(label);
  return c;
}

// Contiguous 1D segment of `length` flipped sites anchored at the origin.
inline SectorConfig segment_config(const LatticeGraph& g, int length) {
  if (g.dimension() != 1) throw std::invalid_argument("segment_config: 1D lattices only");
  if (length < 1 || length > g.n_sites)
    throw std::invalid_argument("segment_config: length out of range");
  std::vector<int> sites(length);
  for (int i = 0; i < length; ++i) sites[i] = i;
  std::string label = length == 1 ? "1-flipped" : "segment-" + std::to_string(length);
  return flipped_config(g.n_sites, sites, label);
}

// Axis-aligned block of flipped sites anchored at the origin: all sites with
// x_a < sides[a] for every direction a.
inline SectorConfig block_config(const LatticeGraph& g, const std::vector<int>& sides) {
  const int d = g.dimension();
  if (static_cast<int>(sides.size()) != d)
    throw std::invalid_argument("block_config: one side per direction required");
  for (int a = 0; a < d; ++a)
    if (sides[a] < 1 || sides[a] > g.spec.dims[a])
      throw std::invalid_argument("block_config: side out of range");
  std::vector<int> sites;
  for (int s = 0; s < g.n_sites; ++s) {
    const auto x = g.site_coords(s);
    bool inside = true;
    for (int a = 0; a < d; ++a) inside = inside && x[a] < sides[a];
    if (inside) sites.push_back(s);
  }
  std::string label = "block-";
  for (int a = 0; a < d; ++a) label += (a ? "x" : "") + std::to_string(sides[a]);
  return flipped_config(g.n_sites, sites, label);
}

}  // namespace zeno
