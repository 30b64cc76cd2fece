// effective.hpp — large-gamma effective spin model and gap asymptotes.
//
// For gamma >> t the slow subspace is spanned per site by the empty state
// (spin up) and the doubly occupied state (spin down). Second-order
// perturbation theory gives
//   H_eff = -i sum_bonds [ J_perp (-tz tz + tx tx) + J (ty ty + 1) ],
//   J_perp = (t^2 - Delta^2) / gamma,  J = (t^2 + Delta^2) / gamma,
// whose eigenvalues E estimate Liouvillian eigenvalues via lambda = -i E.
// At t = Delta this is a classical Ising model in ty: a sector {D_l} whose
// domain walls cross L_D bonds has lambda = -4 t^2 L_D / gamma.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "zeno/lattice.hpp"
#include "zeno/model.hpp"

namespace zeno {

struct EffectiveCouplings {
  double j_perp = 0.0;
  double j = 0.0;
};

inline void require_uniform(const ModelParams& p, const char* where) {
  if (p.bond_overrides)
    throw std::invalid_argument(std::string(where) + ": uniform couplings required");
}

inline EffectiveCouplings effective_couplings(const ModelParams& p) {
  require_uniform(p, "effective_couplings");
  if (p.gamma <= 0) throw std::invalid_argument("effective_couplings: gamma must be positive");
  return {(p.t * p.t - p.delta * p.delta) / p.gamma, (p.t * p.t + p.delta * p.delta) / p.gamma};
}

// Number of bonds crossed by domain walls of {D_l}: bonds whose endpoints
// carry different D. The all-equal configurations have length zero.
inline int domain_wall_length(const LatticeGraph& g, const SectorConfig& config) {
  config.validate(g.n_sites);
  int walls = 0;
  for (const Bond& b : g.bonds)
    if (config.d[b.a_site] != config.d[b.b_site]) ++walls;
  return walls;
}

// Ising estimate of the sector's slowest nonzero eigenvalue at t = Delta.
inline double ising_prediction(const LatticeGraph& g, const ModelParams& p,
                               const SectorConfig& config) {
  require_uniform(p, "ising_prediction");
  p.require_solvable("ising_prediction");
  if (p.gamma <= 0) throw std::invalid_argument("ising_prediction: gamma must be positive");
  return -4.0 * p.t * p.t * domain_wall_length(g, config) / p.gamma;
}

struct GapAsymptotes {
  double small_gamma = 0.0;     // gamma / 2
  double large_gamma = 0.0;     // 8 t^2 d / gamma
  double zeno_crossover = 0.0;  // 4 t sqrt(d), where the two branches meet
};

inline GapAsymptotes gap_asymptotes(const ModelParams& p, int dimension) {
  require_uniform(p, "gap_asymptotes");
  if (p.gamma <= 0) throw std::invalid_argument("gap_asymptotes: gamma must be positive");
  if (dimension < 1) throw std::invalid_argument("gap_asymptotes: dimension must be >= 1");
  GapAsymptotes a;
  a.small_gamma = p.gamma / 2.0;
  a.large_gamma = 8.0 * p.t * p.t * dimension / p.gamma;
  a.zeno_crossover = 4.0 * p.t * std::sqrt(double(dimension));
  return a;
}

// Dense 2^N effective Hamiltonian. Basis bit l: 0 = site empty (spin up),
// 1 = site doubly occupied (spin down).
inline Eigen::MatrixXcd build_spin_effective(const LatticeGraph& g, const ModelParams& p,
                                             int cap = 10) {
  require_uniform(p, "build_spin_effective");
  if (p.gamma <= 0) throw std::invalid_argument("build_spin_effective: gamma must be positive");
  if (g.n_sites > cap)
    throw std::invalid_argument("build_spin_effective: lattice exceeds site cap");
  const auto [j_perp, j] = effective_couplings(p);
  const std::size_t dim = std::size_t(1) << g.n_sites;
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  for (const Bond& b : g.bonds) {
    const std::uint32_t bi = std::uint32_t(1) << b.a_site;
    const std::uint32_t bj = std::uint32_t(1) << b.b_site;
    for (std::uint32_t s = 0; s < dim; ++s) {
      const double zi = (s & bi) ? -1.0 : 1.0;
      const double zj = (s & bj) ? -1.0 : 1.0;
      // tz tz and the constant: diagonal
      h(s, s) += -I * (-j_perp * zi * zj + j);
      // tx tx: flips both sites with unit amplitude
      const std::uint32_t flipped = s ^ bi ^ bj;
      h(flipped, s) += -I * j_perp;
      // ty ty: flips both sites, amplitude (i zi)(i zj) = -zi zj
      h(flipped, s) += -I * j * (-zi * zj);
    }
  }
  return h;
}

// Bijection between Ising patterns ty and sector charges: D = ty on A and
// D = -ty on B. Applying it twice is the identity.
inline SectorConfig tau_to_sector(const std::vector<int>& tau_y, const LatticeGraph& g) {
  if (int(tau_y.size()) != g.n_sites)
    throw std::invalid_argument("tau_to_sector: pattern size mismatch");
  SectorConfig c;
  c.d.resize(g.n_sites);
  for (int l = 0; l < g.n_sites; ++l) {
    if (tau_y[l] != 1 && tau_y[l] != -1)
      throw std::invalid_argument("tau_to_sector: entries must be +-1");
    c.d[l] = static_cast<std::int8_t>(g.sublattice[l] == 0 ? tau_y[l] : -tau_y[l]);
  }
  c.label = std::to_string(c.n_flipped()) + "-flipped";
  return c;
}

inline std::vector<int> sector_to_tau(const SectorConfig& config, const LatticeGraph& g) {
  config.validate(g.n_sites);
  std::vector<int> tau(g.n_sites);
  for (int l = 0; l < g.n_sites; ++l)
    tau[l] = g.sublattice[l] == 0 ? config.d[l] : -config.d[l];
  return tau;
}

}  // namespace zeno
