// oracle.hpp — brute-force many-body Lindbladian on small lattices.
//
// Cross-validation machinery: the full 4^N superoperator is built two
// independent ways (Kronecker products on ket x bra, and doubled-space
// fermions with right-multiplication maps), rotated to the non-Hermitian
// Hubbard form, and compared against the sector decomposition.
//
// Vectorization convention: |ket><bra| -> index ket * 2^N + bra, so a map
// rho -> A rho B becomes kron(A, B^T).
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "zeno/errors.hpp"
#include "zeno/fock.hpp"
#include "zeno/lattice.hpp"
#include "zeno/model.hpp"
#include "zeno/sector.hpp"
#include "zeno/spectra.hpp"

namespace zeno::oracle {

using zeno::SpMat;
using zeno::complexd;

inline constexpr int default_site_cap = 6;

struct Superoperator {
  int n_sites = 0;
  double gamma = 0.0;
  SpMat mat;  // 4^N x 4^N, vectorization index ket * 2^N + bra

  std::size_t dim() const { return std::size_t(1) << (2 * n_sites); }
};

inline void check_cap(const LatticeGraph& g, int cap, const char* where) {
  if (g.n_sites > cap)
    throw config_error(std::string(where) + ": lattice has " + std::to_string(g.n_sites) +
                       " sites, oracle cap is " + std::to_string(cap));
}

inline SpMat kron(const SpMat& a, const SpMat& b) {
  SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Triplet> t;
  t.reserve(std::size_t(a.nonZeros()) * b.nonZeros());
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SpMat::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SpMat::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(int(ia.row() * b.rows() + ib.row()), int(ia.col() * b.cols() + ib.col()),
                         ia.value() * ib.value());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// Single-species Hamiltonian on the 2^N Fock space:
// sum over bonds of t (c+_i c_j + c+_j c_i) + Delta (c+_i c+_j + c_j c_i),
// pairing quoted with the A-sublattice operator first.
inline SpMat build_H0(const LatticeGraph& g, const ModelParams& p,
                      int cap = default_site_cap) {
  check_cap(g, cap, "build_H0");
  p.validate(g.dimension());
  const FockBasis f(g.n_sites);
  SpMat h(int(f.dim()), int(f.dim()));
  for (const Bond& b : g.bonds) {
    const double th = p.hop(b.direction, b.orientation);
    const double dh = p.pair(b.direction, b.orientation);
    const SpMat ci = f.annihilate(b.a_site), cdi = f.create(b.a_site);
    const SpMat cj = f.annihilate(b.b_site), cdj = f.create(b.b_site);
    h += th * SpMat(cdi * cj) + th * SpMat(cdj * ci);
    h += dh * SpMat(cdi * cdj) + dh * SpMat(cj * ci);
  }
  return h;
}

// L = -i [H0, .] + gamma sum_l (n_l . n_l - 1/2 {n_l, .}) via Kronecker
// products. This is the authoritative construction.
inline Superoperator build_superoperator_direct(const LatticeGraph& g, const ModelParams& p,
                                                int cap = default_site_cap) {
  check_cap(g, cap, "build_superoperator_direct");
  const complexd I(0.0, 1.0);
  const FockBasis f(g.n_sites);
  const SpMat h0 = build_H0(g, p, cap);
  const SpMat id = f.identity();

  SpMat L = -I * kron(h0, id) + I * kron(id, SpMat(h0.transpose()));
  for (int l = 0; l < g.n_sites; ++l) {
    const SpMat nl = f.number(l);  // real diagonal, so nl^T = nl
    L += p.gamma * kron(nl, nl);
    L += complexd(-p.gamma / 2.0) * kron(nl, id);
    L += complexd(-p.gamma / 2.0) * kron(id, nl);
  }
  return {g.n_sites, p.gamma, std::move(L)};
}

// Exchanges the two N-bit halves of a doubled-space index. Maps between the
// vectorization index ket * 2^N + bra and the doubled Fock index in which the
// ket occupies modes 0..N-1 and the bra occupies tilde modes N..2N-1.
inline std::uint32_t swap_halves(std::uint32_t x, int n) {
  const std::uint32_t mask = (std::uint32_t(1) << n) - 1;
  return ((x & mask) << n) | (x >> n);
}

inline SpMat permute_halves(const SpMat& m, int n_sites) {
  std::vector<Triplet> t;
  t.reserve(m.nonZeros());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      t.emplace_back(int(swap_halves(std::uint32_t(it.row()), n_sites)),
                     int(swap_halves(std::uint32_t(it.col()), n_sites)), it.value());
  SpMat out(m.rows(), m.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// Same superoperator built from two fermion species on a 2N-mode Fock space.
// Left multiplications act on modes 0..N-1 directly. Right multiplication by
// c_l / c+_l maps to tilde-mode operators times the parity of the original
// modes, which keeps the two species mutually anticommuting while
// reproducing the bra-side matrix action exactly:
//   rho c+_l -> ctilde_l P_orig,   rho c_l -> ctilde+_l P_orig.
// Right maps compose in reverse order: R_{AB} = R_B R_A.
inline Superoperator build_superoperator_fermionic(const LatticeGraph& g, const ModelParams& p,
                                                   int cap = default_site_cap) {
  check_cap(g, cap, "build_superoperator_fermionic");
  const int N = g.n_sites;
  const complexd I(0.0, 1.0);
  const FockBasis f(2 * N);
  const std::uint32_t orig_mask = (std::uint32_t(1) << N) - 1;
  const SpMat p_orig = f.parity(orig_mask);

  auto r_create = [&](int l) { return SpMat(f.annihilate(N + l) * p_orig); };
  auto r_annihilate = [&](int l) { return SpMat(f.create(N + l) * p_orig); };

  SpMat left(int(f.dim()), int(f.dim()));
  SpMat right(int(f.dim()), int(f.dim()));
  for (const Bond& b : g.bonds) {
    const int i = b.a_site, j = b.b_site;
    const double th = p.hop(b.direction, b.orientation);
    const double dh = p.pair(b.direction, b.orientation);
    left += th * SpMat(f.create(i) * f.annihilate(j));
    left += th * SpMat(f.create(j) * f.annihilate(i));
    left += dh * SpMat(f.create(i) * f.create(j));
    left += dh * SpMat(f.annihilate(j) * f.annihilate(i));
    right += th * SpMat(r_annihilate(j) * r_create(i));  // R of c+_i c_j
    right += th * SpMat(r_annihilate(i) * r_create(j));  // R of c+_j c_i
    right += dh * SpMat(r_create(j) * r_create(i));      // R of c+_i c+_j
    right += dh * SpMat(r_annihilate(i) * r_annihilate(j));  // R of c_j c_i
  }

  SpMat L = -I * left + I * right;
  for (int l = 0; l < N; ++l) {
    const SpMat nl = f.number(l);
    const SpMat r_nl = SpMat(r_annihilate(l) * r_create(l));  // R of n_l
    L += p.gamma * SpMat(nl * r_nl);
    L += complexd(-p.gamma / 2.0) * nl;
    L += complexd(-p.gamma / 2.0) * r_nl;
  }
  return {N, p.gamma, permute_halves(L, N)};
}

// Diagonal of the sublattice rotation U on the doubled Fock space: a factor
// i per tilde fermion on sublattice A and -i per tilde fermion on B.
inline Eigen::VectorXcd rotation_diagonal(const LatticeGraph& g) {
  const int N = g.n_sites;
  const std::size_t dim = std::size_t(1) << (2 * N);
  const complexd I(0.0, 1.0);
  Eigen::VectorXcd u(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    const std::uint32_t tilde = std::uint32_t(s) >> N;
    complexd phase(1.0, 0.0);
    for (int l = 0; l < N; ++l)
      if (tilde & (std::uint32_t(1) << l)) phase *= (g.sublattice[l] == 0) ? I : -I;
    u(s) = phase;
  }
  return u;
}

// H = i U+ L U on the doubled Fock space; spectra satisfy lambda = -i E.
inline SpMat rotate_to_bcs_hubbard(const Superoperator& L, const LatticeGraph& g) {
  const SpMat fock = permute_halves(L.mat, L.n_sites);
  const Eigen::VectorXcd u = rotation_diagonal(g);
  const complexd I(0.0, 1.0);
  std::vector<Triplet> t;
  t.reserve(fock.nonZeros());
  for (int k = 0; k < fock.outerSize(); ++k)
    for (SpMat::InnerIterator it(fock, k); it; ++it)
      t.emplace_back(int(it.row()), int(it.col()),
                     I * std::conj(u(it.row())) * it.value() * u(it.col()));
  SpMat h(fock.rows(), fock.cols());
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

// The non-Hermitian Hubbard Hamiltonian assembled literally on the doubled
// Fock space (spin up = modes 0..N-1, spin down = tilde modes N..2N-1):
// sum over bonds and spins of t (c+_i c_j + h.c.) + Delta (c+_i c+_j + h.c.)
// plus i gamma sum_l (n_up - 1/2)(n_down - 1/2) - i N gamma / 4.
inline SpMat assemble_bcs_hubbard(const LatticeGraph& g, const ModelParams& p,
                                  int cap = default_site_cap) {
  check_cap(g, cap, "assemble_bcs_hubbard");
  const int N = g.n_sites;
  const complexd I(0.0, 1.0);
  const FockBasis f(2 * N);
  SpMat h(int(f.dim()), int(f.dim()));
  for (const Bond& b : g.bonds) {
    const double th = p.hop(b.direction, b.orientation);
    const double dh = p.pair(b.direction, b.orientation);
    for (int spin : {0, 1}) {
      const int i = b.a_site + spin * N, j = b.b_site + spin * N;
      h += th * SpMat(f.create(i) * f.annihilate(j));
      h += th * SpMat(f.create(j) * f.annihilate(i));
      h += dh * SpMat(f.create(i) * f.create(j));
      h += dh * SpMat(f.annihilate(j) * f.annihilate(i));
    }
  }
  const SpMat id = f.identity();
  for (int l = 0; l < N; ++l) {
    const SpMat a = SpMat(f.number(l) - 0.5 * id);
    const SpMat b = SpMat(f.number(N + l) - 0.5 * id);
    h += (I * p.gamma) * SpMat(a * b);
  }
  h -= (I * p.gamma * double(N) / 4.0) * id;
  return h;
}

inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
  const int dim = int(rho.rows());
  Eigen::VectorXcd v(std::size_t(dim) * dim);
  for (int ket = 0; ket < dim; ++ket)
    for (int bra = 0; bra < dim; ++bra) v(std::size_t(ket) * dim + bra) = rho(ket, bra);
  return v;
}

inline Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int n_sites) {
  const int dim = 1 << n_sites;
  Eigen::MatrixXcd rho(dim, dim);
  for (int ket = 0; ket < dim; ++ket)
    for (int bra = 0; bra < dim; ++bra) rho(ket, bra) = v(std::size_t(ket) * dim + bra);
  return rho;
}

// Total fermion parity (-1)^{sum_l n_l} on the 2^N Fock space.
inline Eigen::MatrixXcd parity_matrix(int n_sites) {
  const int dim = 1 << n_sites;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) s(k, k) = (std::popcount(unsigned(k)) & 1) ? -1.0 : 1.0;
  return s;
}

struct SteadyStates {
  Eigen::MatrixXcd rho_minus;  // I / 2^N, the maximally mixed state
  Eigen::MatrixXcd rho_plus;   // S / 2^N, traceless parity component
  Eigen::MatrixXcd rho_even;   // (I + S) / 2^N, even-parity steady state
  Eigen::MatrixXcd rho_odd;    // (I - S) / 2^N, odd-parity steady state
};

inline SteadyStates steady_states(const LatticeGraph& g, int cap = default_site_cap) {
  check_cap(g, cap, "steady_states");
  const int dim = 1 << g.n_sites;
  const double w = 1.0 / dim;
  SteadyStates s;
  s.rho_minus = w * Eigen::MatrixXcd::Identity(dim, dim);
  s.rho_plus = w * parity_matrix(g.n_sites);
  s.rho_even = s.rho_minus + s.rho_plus;
  s.rho_odd = s.rho_minus - s.rho_plus;
  return s;
}

inline double steady_residual(const Superoperator& L, const Eigen::MatrixXcd& rho) {
  return (L.mat * vectorize(rho)).norm();
}

inline double adjoint_residual(const Superoperator& L, const Eigen::MatrixXcd& obs) {
  return (L.mat.adjoint() * vectorize(obs)).norm();
}

// Smallest eigenvalue of the Hermitian part; >= -tol certifies positive
// semidefiniteness of a numerically Hermitian matrix.
inline double min_hermitian_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((rho + rho.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) throw solver_error("min_hermitian_eigenvalue: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

inline std::vector<complexd> spectrum_of(const SpMat& m) {
  Eigen::MatrixXcd dense(m);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense, false);
  if (es.info() != Eigen::Success) throw solver_error("spectrum_of: eigensolver failed");
  return to_sorted_vector(es.eigenvalues());
}

inline std::vector<complexd> full_spectrum(const Superoperator& L) { return spectrum_of(L.mat); }

struct OracleGap {
  bool defined = false;
  double gap = 0.0;
  int n_zero_modes = 0;  // eigenvalues with |lambda| below tolerance
};

inline OracleGap exact_gap(const Superoperator& L) {
  const auto spec = full_spectrum(L);
  const double tol = tol_zero_lambda(L.gamma, L.n_sites);
  OracleGap out;
  double best = 1.0;
  bool have = false;
  for (const auto& lam : spec) {
    if (std::abs(lam) <= tol) ++out.n_zero_modes;
    if (std::abs(lam.real()) > tol) {
      if (!have || lam.real() > best) best = lam.real();
      have = true;
    }
  }
  out.defined = have;
  if (have) out.gap = -best;
  return out;
}

struct PartitionReport {
  int n_values = 0;
  double max_mismatch = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Union of assembled sector eigenvalues vs the full superoperator spectrum.
inline PartitionReport sector_partition_check(const LatticeGraph& g, const ModelParams& p,
                                              int cap = default_site_cap, double tol = 1e-8) {
  p.require_solvable("sector_partition_check");
  const auto L = build_superoperator_direct(g, p, cap);
  const auto direct = full_spectrum(L);

  const int N = g.n_sites;
  std::vector<complexd> assembled;
  assembled.reserve(direct.size());
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << N); ++mask) {
    SectorConfig c;
    c.d.resize(N);
    for (int l = 0; l < N; ++l) c.d[l] = (mask & (std::uint32_t(1) << l)) ? -1 : 1;
    const auto lams = enumerate_lambdas(solve_sector(g, p, c));
    assembled.insert(assembled.end(), lams.begin(), lams.end());
  }

  PartitionReport r;
  r.n_values = int(direct.size());
  r.tolerance = tol;
  r.max_mismatch = max_multiset_distance(direct, assembled);
  r.pass = r.max_mismatch < tol;
  return r;
}

}  // namespace zeno::oracle
