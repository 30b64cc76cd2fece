// sector.hpp — per-sector free-fermion reduction of the Liouvillian.
//
// At the solvable point (hopping == pairing on every bond) the Liouvillian
// splits into 2^N sectors labelled by conserved charges D_l = +-1. Each sector
// is governed by the N x N single-particle matrix
//     h_ij = h_ji = 2 t_bond   (nearest-neighbour bonds),
//     h_ll = -i (gamma/2) D_l,
// plus the additive constant i (gamma/4) sum_l (D_l - 1). Every many-body
// Liouvillian eigenvalue of the sector is lambda_m = -i (sum_occupied E_alpha
// + constant) over occupation patterns m of the eigenvalues E_alpha of h.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "zeno/errors.hpp"
#include "zeno/lattice.hpp"
#include "zeno/model.hpp"
#include "zeno/spectra.hpp"

namespace zeno {

// Modes with Im E above this count as amplifying and enter the maximizing
// occupation; smaller imaginary parts are treated as marginal.
inline constexpr double tol_im_mode = 1e-12;

// Scale-aware threshold separating true zero modes from slow decay.
inline double tol_zero_lambda(double gamma, int n_sites) {
  return 1e-10 * std::max(1.0, gamma * n_sites);
}

struct SectorSpectrum {
  Eigen::VectorXcd eigenvalues;               // E_alpha, ascending by (Re, Im)
  std::complex<double> constant{0.0, 0.0};    // i gamma/4 sum_l (D_l - 1)
  double gamma = 0.0;
  Eigen::MatrixXcd eigenvectors;              // empty unless requested

  int n_modes() const { return static_cast<int>(eigenvalues.size()); }
  bool has_vectors() const { return eigenvectors.size() > 0; }
};

inline Eigen::MatrixXcd build_h(const LatticeGraph& g, const ModelParams& p,
                                const SectorConfig& config) {
  p.require_solvable("build_h");
  p.validate(g.dimension());
  config.validate(g.n_sites);
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(g.n_sites, g.n_sites);
  for (const Bond& b : g.bonds) {
    const double amp = 2.0 * p.hop(b.direction, b.orientation);
    h(b.a_site, b.b_site) += amp;
    h(b.b_site, b.a_site) += amp;
  }
  for (int l = 0; l < g.n_sites; ++l)
    h(l, l) = -I * (p.gamma / 2.0) * static_cast<double>(config.d[l]);
  return h;
}

inline std::complex<double> sector_constant(const ModelParams& p, const SectorConfig& config) {
  const int sum = config.sum();
  return std::complex<double>(0.0, p.gamma / 4.0 * (sum - config.n_sites()));
}

// Dense non-Hermitian eigensolve with a trace sum-rule postcondition.
inline SectorSpectrum diagonalize(const Eigen::MatrixXcd& h, bool with_vectors = false) {
  const int n = static_cast<int>(h.rows());
  if (h.rows() != h.cols()) throw std::invalid_argument("diagonalize: matrix must be square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, with_vectors);
  if (solver.info() != Eigen::Success)
    throw solver_error("diagonalize: eigensolver failed to converge");

  SectorSpectrum s;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = solver.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return spectrum_less(ev(a), ev(b)); });
  s.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) s.eigenvalues(i) = ev(order[i]);
  if (with_vectors) {
    s.eigenvectors.resize(n, n);
    for (int i = 0; i < n; ++i) s.eigenvectors.col(i) = solver.eigenvectors().col(order[i]);
  }

  const std::complex<double> sum = s.eigenvalues.sum();
  const std::complex<double> tr = h.trace();
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (std::abs(sum - tr) > 1e-10 * n * scale)
    throw solver_error("diagonalize: eigenvalue sum violates trace rule");
  return s;
}

inline SectorSpectrum solve_sector(const LatticeGraph& g, const ModelParams& p,
                                   const SectorConfig& config, bool with_vectors = false) {
  SectorSpectrum s = diagonalize(build_h(g, p, config), with_vectors);
  s.constant = sector_constant(p, config);
  s.gamma = p.gamma;
  return s;
}

// lambda_m for the occupation given as a sorted-or-not list of mode indices.
inline std::complex<double> assemble_lambda(const SectorSpectrum& s,
                                            const std::vector<int>& occupied_modes) {
  std::complex<double> e = s.constant;
  for (int alpha : occupied_modes) {
    if (alpha < 0 || alpha >= s.n_modes())
      throw std::invalid_argument("assemble_lambda: mode index out of range");
    e += s.eigenvalues(alpha);
  }
  return std::complex<double>(0.0, -1.0) * e;
}

// All 2^N many-body eigenvalues of one sector. Intended for small N.
inline std::vector<std::complex<double>> enumerate_lambdas(const SectorSpectrum& s) {
  const int n = s.n_modes();
  if (n > 24) throw std::invalid_argument("enumerate_lambdas: sector too large to enumerate");
  const std::complex<double> minus_i(0.0, -1.0);
  std::vector<std::complex<double>> sums(std::size_t(1) << n);
  sums[0] = s.constant;
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + s.eigenvalues(low);
  }
  for (auto& v : sums) v *= minus_i;
  return sums;
}

struct SectorMax {
  bool found = false;
  std::complex<double> lambda{0.0, 0.0};
  std::vector<int> occupied;

  double value() const { return lambda.real(); }
};

// Largest real part among nonzero eigenvalues of the sector.
//
// The unconstrained maximizer occupies exactly the amplifying modes
// (Im E_alpha > tol). When that pattern lands on a zero mode of the
// Liouvillian, the best nonzero eigenvalue is one occupation flip away;
// candidates are ranked by Re lambda, then by |lambda| (prefers genuinely
// nonzero modes in degenerate Hermitian limits), then by mode index.
inline SectorMax sector_max_nonzero(const SectorSpectrum& s) {
  const int n = s.n_modes();
  const double tol = tol_zero_lambda(s.gamma, n);

  std::vector<int> top;
  for (int a = 0; a < n; ++a)
    if (s.eigenvalues(a).imag() > tol_im_mode) top.push_back(a);

  const std::complex<double> lambda_top = assemble_lambda(s, top);
  if (std::abs(lambda_top) > tol) return {true, lambda_top, top};

  SectorMax best;
  auto consider = [&](std::vector<int> occ) {
    const std::complex<double> lam = assemble_lambda(s, occ);
    if (std::abs(lam) <= tol) return;
    bool better = false;
    if (!best.found) {
      better = true;
    } else if (lam.real() != best.lambda.real()) {
      better = lam.real() > best.lambda.real();
    } else if (std::abs(lam) != std::abs(best.lambda)) {
      better = std::abs(lam) > std::abs(best.lambda);
    }
    if (better) best = {true, lam, std::move(occ)};
  };

  std::vector<char> in_top(n, 0);
  for (int a : top) in_top[a] = 1;
  for (int a : top) {
    std::vector<int> occ;
    for (int b : top)
      if (b != a) occ.push_back(b);
    consider(std::move(occ));
  }
  for (int a = 0; a < n; ++a) {
    if (in_top[a]) continue;
    std::vector<int> occ = top;
    occ.push_back(a);
    std::sort(occ.begin(), occ.end());
    consider(std::move(occ));
  }
  return best;
}

// Uniform-model dispersion of the unflipped sector under periodic boundaries:
// E(k) = 4 t sum_a cos k_a - i gamma/2.
inline std::complex<double> dispersion_0flipped(const std::vector<double>& k,
                                                const ModelParams& p) {
  if (p.bond_overrides)
    throw std::invalid_argument("dispersion_0flipped: uniform couplings required");
  double c = 0.0;
  for (double ka : k) c += std::cos(ka);
  return std::complex<double>(4.0 * p.t * c, -p.gamma / 2.0);
}

}  // namespace zeno
