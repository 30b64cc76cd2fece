// lattice.hpp — bipartite hypercubic lattices with oriented A->B bonds.
#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno {

enum class Boundary { periodic, open };

inline const char* to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "open";
}

// Extents of a d-dimensional hypercubic lattice. Periodic extents must be
// even (bipartiteness) and at least 4 (distinct +/- neighbours per site).
struct LatticeSpec {
  std::vector<int> dims;
  Boundary boundary = Boundary::periodic;

  int dimension() const { return static_cast<int>(dims.size()); }
  int n_sites() const {
    int n = 1;
    for (int L : dims) n *= L;
    return n;
  }
};

// One nearest-neighbour bond, oriented from sublattice A to sublattice B.
// b_site = a_site + orientation * e_direction (up to periodic wrapping).
struct Bond {
  int a_site;
  int b_site;
  int direction;
  int orientation;  // +1 or -1
};

// Neighbour record as seen from a given site: nbr = site + step * e_direction.
struct Neighbor {
  int site;
  int direction;
  int step;  // +1 or -1
};

struct LatticeGraph {
  LatticeSpec spec;
  int n_sites = 0;
  std::vector<std::int8_t> sublattice;       // 0 = A (even coordinate sum), 1 = B
  std::vector<Bond> bonds;                   // sorted by (a_site, direction, orientation)
  std::vector<std::vector<Neighbor>> adjacency;

  int dimension() const { return spec.dimension(); }

  // Coordinates in C row-major order: the last coordinate varies fastest.
  std::vector<int> site_coords(int site) const {
    const int d = dimension();
    std::vector<int> x(d);
    for (int a = d - 1; a >= 0; --a) {
      x[a] = site % spec.dims[a];
      site /= spec.dims[a];
    }
    return x;
  }

  int coords_site(const std::vector<int>& x) const {
    const int d = dimension();
    if (static_cast<int>(x.size()) != d)
      throw std::invalid_argument("coords_site: coordinate rank mismatch");
    int site = 0;
    for (int a = 0; a < d; ++a) {
      if (x[a] < 0 || x[a] >= spec.dims[a])
        throw std::invalid_argument("coords_site: coordinate out of range");
      site = site * spec.dims[a] + x[a];
    }
    return site;
  }
};

inline void validate(const LatticeSpec& spec) {
  if (spec.dims.empty()) throw std::invalid_argument("lattice: dims must be non-empty");
  for (int L : spec.dims) {
    if (spec.boundary == Boundary::periodic) {
      if (L < 4 || L % 2 != 0)
        throw std::invalid_argument(
            "lattice: periodic extents must be even and >= 4, got " + std::to_string(L));
    } else {
      if (L < 2)
        throw std::invalid_argument("lattice: open extents must be >= 2, got " +
                                    std::to_string(L));
    }
  }
}

inline LatticeGraph build_lattice(const LatticeSpec& spec) {
  validate(spec);
  LatticeGraph g;
  g.spec = spec;
  g.n_sites = spec.n_sites();
  const int d = spec.dimension();

  g.sublattice.resize(g.n_sites);
  for (int s = 0; s < g.n_sites; ++s) {
    const auto x = g.site_coords(s);
    const int parity = std::accumulate(x.begin(), x.end(), 0) & 1;
    g.sublattice[s] = static_cast<std::int8_t>(parity);
  }

  // neighbour(site, a, step) or -1 when the step leaves an open lattice
  auto neighbor_site = [&](int s, int a, int step) -> int {
    auto x = g.site_coords(s);
    x[a] += step;
    if (spec.boundary == Boundary::periodic) {
      x[a] = (x[a] + spec.dims[a]) % spec.dims[a];
    } else if (x[a] < 0 || x[a] >= spec.dims[a]) {
      return -1;
    }
    return g.coords_site(x);
  };

  g.adjacency.resize(g.n_sites);
  for (int s = 0; s < g.n_sites; ++s)
    for (int a = 0; a < d; ++a)
      for (int step : {+1, -1}) {
        const int nbr = neighbor_site(s, a, step);
        if (nbr >= 0) g.adjacency[s].push_back({nbr, a, step});
      }

  for (int s = 0; s < g.n_sites; ++s) {
    if (g.sublattice[s] != 0) continue;
    for (int a = 0; a < d; ++a)
      for (int step : {+1, -1}) {
        const int nbr = neighbor_site(s, a, step);
        if (nbr >= 0) g.bonds.push_back({s, nbr, a, step});
      }
  }
  return g;
}

inline const std::vector<Neighbor>& neighbors(const LatticeGraph& g, int site) {
  if (site < 0 || site >= g.n_sites) throw std::invalid_argument("neighbors: site out of range");
  return g.adjacency[site];
}

// Site reached by `steps` unit steps along +e_direction. Wraps under periodic
// boundaries; throws when the walk leaves an open lattice.
inline int shifted_site(const LatticeGraph& g, int site, int direction, int steps) {
  auto x = g.site_coords(site);
  const int L = g.spec.dims[direction];
  x[direction] += steps;
  if (g.spec.boundary == Boundary::periodic) {
    x[direction] = ((x[direction] % L) + L) % L;
  } else if (x[direction] < 0 || x[direction] >= L) {
    throw std::invalid_argument("shifted_site: walk leaves open lattice");
  }
  return g.coords_site(x);
}

}  // namespace zeno
