// fock.hpp — sparse Jordan-Wigner fermion operators on a small Fock space.
//
// Basis states are occupation bitmasks; bit l is mode l. The string of mode l
// runs over all modes k < l, so c_l acting on |s> picks up
// (-1)^popcount(s & ((1<<l)-1)).
#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>

namespace zeno {

using SpMat = Eigen::SparseMatrix<std::complex<double>>;
using Triplet = Eigen::Triplet<std::complex<double>>;

struct FockBasis {
  int n_modes;

  explicit FockBasis(int modes) : n_modes(modes) {
    if (modes < 1 || modes > 24) throw std::invalid_argument("FockBasis: 1..24 modes supported");
  }

  std::size_t dim() const { return std::size_t(1) << n_modes; }

  static double jw_sign(std::uint32_t state, int mode) {
    const std::uint32_t below = state & ((std::uint32_t(1) << mode) - 1);
    return (std::popcount(below) & 1) ? -1.0 : 1.0;
  }

  SpMat annihilate(int mode) const {
    check_mode(mode);
    std::vector<Triplet> t;
    t.reserve(dim() / 2);
    const std::uint32_t bit = std::uint32_t(1) << mode;
    for (std::uint32_t s = 0; s < dim(); ++s)
      if (s & bit) t.emplace_back(int(s ^ bit), int(s), jw_sign(s, mode));
    return from_triplets(t);
  }

  SpMat create(int mode) const {
    check_mode(mode);
    std::vector<Triplet> t;
    t.reserve(dim() / 2);
    const std::uint32_t bit = std::uint32_t(1) << mode;
    for (std::uint32_t s = 0; s < dim(); ++s)
      if (!(s & bit)) t.emplace_back(int(s | bit), int(s), jw_sign(s, mode));
    return from_triplets(t);
  }

  SpMat number(int mode) const {
    check_mode(mode);
    std::vector<Triplet> t;
    const std::uint32_t bit = std::uint32_t(1) << mode;
    for (std::uint32_t s = 0; s < dim(); ++s)
      if (s & bit) t.emplace_back(int(s), int(s), 1.0);
    return from_triplets(t);
  }

  // (-1)^(number of occupied modes within mask)
  SpMat parity(std::uint32_t mask) const {
    std::vector<Triplet> t;
    t.reserve(dim());
    for (std::uint32_t s = 0; s < dim(); ++s)
      t.emplace_back(int(s), int(s), (std::popcount(s & mask) & 1) ? -1.0 : 1.0);
    return from_triplets(t);
  }

  SpMat identity() const {
    SpMat m(static_cast<int>(dim()), static_cast<int>(dim()));
    m.setIdentity();
    return m;
  }

 private:
  void check_mode(int mode) const {
    if (mode < 0 || mode >= n_modes) throw std::invalid_argument("FockBasis: mode out of range");
  }

  SpMat from_triplets(const std::vector<Triplet>& t) const {
    SpMat m(static_cast<int>(dim()), static_cast<int>(dim()));
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }
};

}  // namespace zeno
