// test_oracle.cpp — brute-force Lindbladian cross-checks: canonical fermion
// algebra, two independent superoperator constructions, the rotated
// Hamiltonian form, steady states, and the sector partition of the spectrum.
#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <fstream>
#include <random>

#include <Eigen/Dense>

#include <zeno/fock.hpp>
#include <zeno/oracle.hpp>
#include <zeno/spectra.hpp>

using namespace zeno;
namespace orc = zeno::oracle;
using cd = std::complex<double>;

namespace {

double max_abs(const SpMat& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double max_abs_diff(const SpMat& a, const SpMat& b) { return max_abs(SpMat(a - b)); }

const std::vector<LatticeSpec>& small_lattices() {
  static const std::vector<LatticeSpec> pool = {{{2}, Boundary::open},
                                                {{3}, Boundary::open},
                                                {{4}, Boundary::open},
                                                {{4}, Boundary::periodic},
                                                {{2, 2}, Boundary::open}};
  return pool;
}

ModelParams random_params(std::mt19937& rng, bool solvable) {
  std::uniform_real_distribution<double> amp(0.3, 1.8);
  std::uniform_real_distribution<double> gam(0.0, 3.0);
  ModelParams p;
  p.t = amp(rng);
  p.delta = solvable ? p.t : amp(rng);
  p.gamma = gam(rng);
  return p;
}

int count_zero_modes(const std::vector<cd>& spec, double tol) {
  int n = 0;
  for (const cd& lam : spec)
    if (std::abs(lam) <= tol) ++n;
  return n;
}

}  // namespace

TEST_CASE("Fock operators satisfy the canonical anticommutation algebra", "[oracle]") {
  const FockBasis f(4);
  const SpMat id = f.identity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const SpMat ci = f.annihilate(i), cdj = f.create(j);
      const SpMat anti = SpMat(ci * cdj) + SpMat(cdj * ci);
      if (i == j) {
        CHECK(max_abs_diff(anti, id) < 1e-15);
      } else {
        CHECK(max_abs(anti) < 1e-15);
      }
      const SpMat cj = f.annihilate(j);
      CHECK(max_abs(SpMat(SpMat(ci * cj) + SpMat(cj * ci))) < 1e-15);
    }
    CHECK(max_abs_diff(f.number(i), SpMat(f.create(i) * f.annihilate(i))) < 1e-15);
  }
}

TEST_CASE("two-site Hamiltonian entries pin the operator conventions", "[oracle]") {
  LatticeGraph g = build_lattice({{2}, Boundary::open});
  ModelParams p{0.7, 0.4, 0.0, {}};
  Eigen::MatrixXcd h = Eigen::MatrixXcd(orc::build_H0(g, p));
  // Basis index = occupation bitmask; site l is bit l.
  CHECK(std::abs(h(2, 1) - cd(0.7, 0)) < 1e-15);  // hop site 0 -> 1
  CHECK(std::abs(h(1, 2) - cd(0.7, 0)) < 1e-15);
  CHECK(std::abs(h(3, 0) - cd(0.4, 0)) < 1e-15);  // pair creation on the bond
  CHECK(std::abs(h(0, 3) - cd(0.4, 0)) < 1e-15);
  CHECK(h.diagonal().norm() < 1e-15);
}

TEST_CASE("Hamiltonian is Hermitian and conserves fermion parity", "[oracle]") {
  std::mt19937 rng(5150);
  for (const LatticeSpec& spec : small_lattices()) {
    LatticeGraph g = build_lattice(spec);
    for (bool solvable : {true, false}) {
      ModelParams p = random_params(rng, solvable);
      SpMat h = orc::build_H0(g, p);
      CHECK(max_abs_diff(h, SpMat(h.adjoint())) < 1e-13);
      SpMat s = FockBasis(g.n_sites).parity((1u << g.n_sites) - 1);
      CHECK(max_abs_diff(SpMat(h * s), SpMat(s * h)) < 1e-13);
    }
  }
}

TEST_CASE("independent superoperator constructions agree entrywise", "[oracle]") {
  std::mt19937 rng(90210);
  for (const LatticeSpec& spec : small_lattices()) {
    LatticeGraph g = build_lattice(spec);
    for (bool solvable : {true, false}) {
      ModelParams p = random_params(rng, solvable);
      orc::Superoperator direct = orc::build_superoperator_direct(g, p);
      orc::Superoperator ferm = orc::build_superoperator_fermionic(g, p);
      INFO("sites " << g.n_sites << " t " << p.t << " delta " << p.delta << " gamma " << p.gamma);
      CHECK(max_abs_diff(direct.mat, ferm.mat) < 1e-12);
    }
  }
}

TEST_CASE("generator preserves the trace", "[oracle]") {
  std::mt19937 rng(31337);
  for (const LatticeSpec& spec : small_lattices()) {
    LatticeGraph g = build_lattice(spec);
    ModelParams p = random_params(rng, rng() % 2 == 0);
    orc::Superoperator L = orc::build_superoperator_direct(g, p);
    const int dim = 1 << g.n_sites;
    Eigen::VectorXcd vec_id = orc::vectorize(Eigen::MatrixXcd::Identity(dim, dim));
    CHECK((L.mat.adjoint() * vec_id).norm() < 1e-10);
  }
}

TEST_CASE("rotated generator matches the assembled Hamiltonian spectrum", "[oracle]") {
  std::mt19937 rng(424242);
  for (const LatticeSpec& spec : {LatticeSpec{{2}, Boundary::open},
                                  LatticeSpec{{3}, Boundary::open},
                                  LatticeSpec{{4}, Boundary::periodic}}) {
    LatticeGraph g = build_lattice(spec);
    for (bool solvable : {true, false}) {
      ModelParams p = random_params(rng, solvable);
      orc::Superoperator L = orc::build_superoperator_direct(g, p);
      const auto rotated = orc::spectrum_of(orc::rotate_to_bcs_hubbard(L, g));
      const auto literal = orc::spectrum_of(orc::assemble_bcs_hubbard(g, p));
      INFO("sites " << g.n_sites << " solvable " << solvable);
      CHECK(max_multiset_distance(rotated, literal) < 1e-10);

      // Eigenvalue dictionary: every Liouvillian eigenvalue is -i times a
      // Hamiltonian eigenvalue.
      std::vector<cd> mapped;
      for (const cd& e : literal) mapped.push_back(cd(0, -1) * e);
      CHECK(max_multiset_distance(orc::full_spectrum(L), mapped) < 1e-10);
    }
  }
}

TEST_CASE("oracle spectra are closed under conjugation", "[oracle]") {
  std::mt19937 rng(606060);
  for (int trial = 0; trial < 12; ++trial) {
    const auto& pool = small_lattices();
    LatticeGraph g = build_lattice(pool[rng() % pool.size()]);
    ModelParams p = random_params(rng, rng() % 2 == 0);
    const auto spec = orc::full_spectrum(orc::build_superoperator_direct(g, p));
    std::vector<cd> conj;
    for (const cd& lam : spec) conj.push_back(std::conj(lam));
    CHECK(max_multiset_distance(spec, conj) < 1e-10);
  }
}

TEST_CASE("identity and parity generate the steady-state family", "[oracle]") {
  std::mt19937 rng(808080);
  for (const LatticeSpec& spec : {LatticeSpec{{3}, Boundary::open},
                                  LatticeSpec{{4}, Boundary::periodic}}) {
    LatticeGraph g = build_lattice(spec);
    for (bool solvable : {true, false}) {
      ModelParams p = random_params(rng, solvable);
      orc::Superoperator L = orc::build_superoperator_direct(g, p);
      orc::SteadyStates s = orc::steady_states(g);

      CHECK(orc::steady_residual(L, s.rho_minus) < 1e-10);
      CHECK(orc::steady_residual(L, s.rho_plus) < 1e-10);
      CHECK(orc::steady_residual(L, s.rho_even) < 1e-10);
      CHECK(orc::steady_residual(L, s.rho_odd) < 1e-10);

      CHECK(std::abs(s.rho_minus.trace() - cd(1, 0)) < 1e-12);
      CHECK(std::abs(s.rho_plus.trace()) < 1e-12);
      CHECK(std::abs(s.rho_even.trace() - cd(1, 0)) < 1e-12);
      CHECK(std::abs(s.rho_odd.trace() - cd(1, 0)) < 1e-12);

      // Parity is conserved in the Heisenberg picture as well.
      Eigen::MatrixXcd parity = orc::parity_matrix(g.n_sites);
      CHECK(orc::adjoint_residual(L, parity) < 1e-12);

      // rho_minus + q rho_plus is a state exactly for |q| <= 1.
      for (double q : {-1.0, -0.5, 0.0, 0.5, 1.0})
        CHECK(orc::min_hermitian_eigenvalue(s.rho_minus + q * s.rho_plus) > -1e-12);
      for (double q : {-1.5, 1.5})
        CHECK(orc::min_hermitian_eigenvalue(s.rho_minus + q * s.rho_plus) < -1e-6);
    }
  }
}

TEST_CASE("dissipative kernel is exactly two-dimensional", "[oracle]") {
  for (const LatticeSpec& spec : {LatticeSpec{{2}, Boundary::open},
                                  LatticeSpec{{3}, Boundary::open},
                                  LatticeSpec{{4}, Boundary::periodic}}) {
    LatticeGraph g = build_lattice(spec);
    ModelParams p{1.0, 1.0, 0.9, {}};
    const auto spec_l = orc::full_spectrum(orc::build_superoperator_direct(g, p));
    CHECK(count_zero_modes(spec_l, tol_zero_lambda(p.gamma, g.n_sites)) == 2);
  }
}

TEST_CASE("closed-system limit has a larger kernel", "[oracle]") {
  LatticeGraph g = build_lattice({{2}, Boundary::open});
  ModelParams p{1.0, 1.0, 0.0, {}};
  const auto spec = orc::full_spectrum(orc::build_superoperator_direct(g, p));
  CHECK(count_zero_modes(spec, 1e-10) > 2);
}

TEST_CASE("sector eigenvalues partition the full spectrum", "[oracle]") {
  for (const LatticeSpec& spec : {LatticeSpec{{2}, Boundary::open},
                                  LatticeSpec{{3}, Boundary::open}}) {
    LatticeGraph g = build_lattice(spec);
    ModelParams p{1.0, 1.0, 0.7, {}};
    orc::PartitionReport r = orc::sector_partition_check(g, p);
    CHECK(r.n_values == int(std::size_t(1) << (2 * g.n_sites)));
    CHECK(r.max_mismatch < 1e-8);
    CHECK(r.pass);
  }
}

TEST_CASE("partition check refuses mismatched couplings", "[oracle]") {
  LatticeGraph g = build_lattice({{2}, Boundary::open});
  ModelParams p{1.0, 0.3, 0.7, {}};
  CHECK_THROWS_AS(orc::sector_partition_check(g, p), non_solvable_error);
}

TEST_CASE("vectorization index convention is ket-major", "[oracle]") {
  const int dim = 4;  // two sites
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(2, 1) = cd(0.25, -0.5);
  Eigen::VectorXcd v = orc::vectorize(rho);
  CHECK(v(2 * dim + 1) == cd(0.25, -0.5));
  CHECK(v.cwiseAbs().sum() == std::abs(cd(0.25, -0.5)));
  Eigen::MatrixXcd back = orc::unvectorize(v, 2);
  CHECK((back - rho).norm() == 0.0);
}

TEST_CASE("half-swap permutation is an involution", "[oracle]") {
  CHECK(orc::swap_halves(0b1101u, 2) == 0b0111u);
  std::mt19937 rng(17);
  for (int n : {2, 3, 4})
    for (int k = 0; k < 50; ++k) {
      const std::uint32_t x = rng() & ((1u << (2 * n)) - 1);
      CHECK(orc::swap_halves(orc::swap_halves(x, n), n) == x);
    }
}

TEST_CASE("exact gap matches the sector maximizer on a small lattice", "[oracle]") {
  LatticeGraph g = build_lattice({{4}, Boundary::periodic});
  ModelParams p{1.0, 1.0, 0.7, {}};
  orc::Superoperator L = orc::build_superoperator_direct(g, p);
  orc::OracleGap og = orc::exact_gap(L);
  REQUIRE(og.defined);
  CHECK(og.n_zero_modes == 2);

  // Best nonzero real part over every sector, assembled from mode spectra.
  double best = -1e300;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    SectorConfig c;
    c.d.resize(4);
    for (int l = 0; l < 4; ++l) c.d[l] = (mask & (1u << l)) ? -1 : 1;
    SectorMax m = sector_max_nonzero(solve_sector(g, p, c));
    if (m.found) best = std::max(best, m.value());
  }
  CHECK(std::abs(og.gap - (-best)) < 1e-9);
}

// Pinned-spectrum fixture: 256 eigenvalues of the four-site periodic chain at
// t = delta = 1, gamma = 0.7. Regenerate with:
//   unit_tests "[generate]"
// and commit the refreshed CSV under tests/fixtures/.
static const char* fixture_path = ZENO_TEST_DATA "/oracle_spectrum_1d4_g07.csv";

TEST_CASE("pinned fixture spectrum is reproduced", "[oracle]") {
  std::ifstream in(fixture_path);
  REQUIRE(in.good());
  const auto pinned = read_spectrum_csv(in);
  REQUIRE(pinned.size() == 256);

  LatticeGraph g = build_lattice({{4}, Boundary::periodic});
  ModelParams p{1.0, 1.0, 0.7, {}};
  const auto spec = orc::full_spectrum(orc::build_superoperator_direct(g, p));
  CHECK(max_multiset_distance(spec, pinned) < 1e-9);
}

TEST_CASE("regenerate pinned oracle spectrum", "[.][generate]") {
  LatticeGraph g = build_lattice({{4}, Boundary::periodic});
  ModelParams p{1.0, 1.0, 0.7, {}};
  const auto spec = orc::full_spectrum(orc::build_superoperator_direct(g, p));
  std::ofstream out(fixture_path);
  REQUIRE(out.good());
  write_spectrum_csv(out, spec);
}
