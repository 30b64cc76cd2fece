// spectra.hpp — eigenvalue ordering, multiset comparison, CSV round-trip.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zeno {

using complexd = std::complex<double>;

// Canonical output order everywhere: ascending lexicographic by (Re, Im).
inline bool spectrum_less(const complexd& a, const complexd& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

inline void sort_spectrum(std::vector<complexd>& v) {
  std::sort(v.begin(), v.end(), spectrum_less);
}

inline std::vector<complexd> to_sorted_vector(const Eigen::VectorXcd& v) {
  std::vector<complexd> out(v.data(), v.data() + v.size());
  sort_spectrum(out);
  return out;
}

// Maximum matched distance between two equal-size multisets of complex
// numbers. Greedy nearest-neighbour matching on sorted lists; robust against
// order swaps inside conjugate pairs and degenerate clusters.
inline double max_multiset_distance(std::vector<complexd> a, std::vector<complexd> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("max_multiset_distance: size mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  sort_spectrum(a);
  sort_spectrum(b);
  const std::size_t n = a.size();
  std::vector<char> used(n, 0);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = -1.0;
    std::size_t best_j = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(a[i] - b[j]);
      if (best < 0 || d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

inline std::string format_significant(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

// Two-column CSV (re, im) with a header row, 15 significant digits by default.
inline void write_spectrum_csv(std::ostream& os, const std::vector<complexd>& values,
                               int digits = 15) {
  os << "re,im\n";
  for (const auto& z : values)
    os << format_significant(z.real(), digits) << ',' << format_significant(z.imag(), digits)
       << '\n';
}

inline std::vector<complexd> read_spectrum_csv(std::istream& is) {
  std::vector<complexd> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("spectrum csv: missing comma in line: " + line);
    const std::string a = line.substr(0, comma);
    const std::string b = line.substr(comma + 1);
    if (a == "re") continue;  // header
    std::size_t pos_a = 0, pos_b = 0;
    const double re = std::stod(a, &pos_a);
    const double im = std::stod(b, &pos_b);
    out.emplace_back(re, im);
  }
  return out;
}

}  // namespace zeno
