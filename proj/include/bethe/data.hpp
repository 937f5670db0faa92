// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bethe/choice.hpp"

namespace bethe {

using Complex = std::complex<double>;

inline constexpr double kRelTol = 1e-10;
inline constexpr double kAbsTol = 1e-12;

inline bool approx_equal(Complex a, Complex b, double rel = kRelTol, double abs = kAbsTol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(abs, rel * scale);
}

/// Flat storage index for a pair (j2, j1) with 1 <= j1 < j2 <= M.
constexpr int pair_index(int j2, int j1) { return (j2 - 1) * (j2 - 2) / 2 + (j1 - 1); }

struct Permutation {
  std::vector<int> image;  // 1-based symbols

  static Permutation identity(int m) {
    Permutation p;
    p.image.resize(static_cast<std::size_t>(m));
    std::iota(p.image.begin(), p.image.end(), 1);
    return p;
  }

  int size() const { return static_cast<int>(image.size()); }
  int operator[](int j) const { return image[static_cast<std::size_t>(j - 1)]; }  // 1-based

  bool is_valid() const {
    Choice seen = 0;
    for (int v : image) {
      if (v < 1 || v > size()) return false;
      const Choice bit = Choice{1} << (v - 1);
      if (seen & bit) return false;
      seen |= bit;
    }
    return true;
  }
};

/// Parameters of an M-particle Bethe wavefunction: quasi-momenta k_j and
/// real scattering angles theta_{j2 j1} for each symbol pair.
struct BetheData {
  int M = 0;
  std::vector<double> k;        // size M
  std::vector<double> theta;    // size M(M-1)/2, indexed by pair_index

  BetheData() = default;
  BetheData(std::vector<double> momenta, std::vector<double> angles)
      : M(static_cast<int>(momenta.size())), k(std::move(momenta)), theta(std::move(angles)) {
    validate();
  }

  void validate() const {
    if (M < 0 || M > kMaxSymbols) throw std::invalid_argument("BetheData: bad particle count");
    if (static_cast<int>(k.size()) != M) throw std::invalid_argument("BetheData: k must have M entries");
    if (static_cast<int>(theta.size()) != M * (M - 1) / 2) {
      throw std::invalid_argument("BetheData: theta must have M(M-1)/2 entries");
    }
  }

  int particles() const { return M; }

  double theta_angle(int j2, int j1) const { return theta[static_cast<std::size_t>(pair_index(j2, j1))]; }

  /// Two-particle exchange factor -e^{i theta_{j2 j1}}, for j2 > j1.
  Complex scatter(int j2, int j1) const {
    return -std::exp(Complex(0.0, theta_angle(j2, j1)));
  }

  /// Single-particle plane-wave amplitude e^{i k_j x} at absolute site x.
  Complex amplitude(int j, int x) const {
    return std::exp(Complex(0.0, k[static_cast<std::size_t>(j - 1)] * static_cast<double>(x)));
  }

  /// Data restricted to the symbols of a choice: momenta k_{c_j} and angles
  /// theta_{c_b c_a}, reindexed over 1..|c|.
  BetheData reduced(Choice c) const {
    const std::vector<int> sym = choice_symbols(c);
    const int m = static_cast<int>(sym.size());
    BetheData out;
    out.M = m;
    out.k.reserve(static_cast<std::size_t>(m));
    for (int s : sym) out.k.push_back(k[static_cast<std::size_t>(s - 1)]);
    out.theta.resize(static_cast<std::size_t>(m * (m - 1) / 2));
    for (int b = 2; b <= m; ++b) {
      for (int a = 1; a < b; ++a) {
        out.theta[static_cast<std::size_t>(pair_index(b, a))] =
            theta_angle(sym[static_cast<std::size_t>(b - 1)], sym[static_cast<std::size_t>(a - 1)]);
      }
    }
    return out;
  }
};

/// Parameters of a generalized Bethe wavefunction: arbitrary single-particle
/// amplitude rows phi_{j x} on a fixed lattice and complex scattering angles.
struct GeneralizedBetheData {
  int M = 0;
  int N = 0;
  Eigen::MatrixXcd phi;          // M x N
  std::vector<Complex> theta;    // size M(M-1)/2, indexed by pair_index

  GeneralizedBetheData() = default;
  GeneralizedBetheData(Eigen::MatrixXcd amplitudes, std::vector<Complex> angles)
      : M(static_cast<int>(amplitudes.rows())),
        N(static_cast<int>(amplitudes.cols())),
        phi(std::move(amplitudes)),
        theta(std::move(angles)) {
    validate();
  }

  void validate() const {
    if (M < 0 || M > kMaxSymbols) throw std::invalid_argument("GeneralizedBetheData: bad particle count");
    if (phi.rows() != M || phi.cols() != N) {
      throw std::invalid_argument("GeneralizedBetheData: phi must be M x N");
    }
    if (static_cast<int>(theta.size()) != M * (M - 1) / 2) {
      throw std::invalid_argument("GeneralizedBetheData: theta must have M(M-1)/2 entries");
    }
  }

  int particles() const { return M; }

  Complex theta_angle(int j2, int j1) const { return theta[static_cast<std::size_t>(pair_index(j2, j1))]; }

  Complex scatter(int j2, int j1) const {
    return -std::exp(Complex(0.0, 1.0) * theta_angle(j2, j1));
  }

  Complex amplitude(int j, int x) const {
    if (x < 1 || x > N) throw std::invalid_argument("GeneralizedBetheData: site outside lattice");
    return phi(j - 1, x - 1);
  }

  /// Row restriction to the symbols of a choice; the lattice is kept whole so
  /// that local wavefunctions can be evaluated at absolute positions.
  GeneralizedBetheData reduced(Choice c) const {
    const std::vector<int> sym = choice_symbols(c);
    const int m = static_cast<int>(sym.size());
    GeneralizedBetheData out;
    out.M = m;
    out.N = N;
    out.phi.resize(m, N);
    for (int r = 0; r < m; ++r) out.phi.row(r) = phi.row(sym[static_cast<std::size_t>(r)] - 1);
    out.theta.resize(static_cast<std::size_t>(m * (m - 1) / 2));
    for (int b = 2; b <= m; ++b) {
      for (int a = 1; a < b; ++a) {
        out.theta[static_cast<std::size_t>(pair_index(b, a))] =
            theta_angle(sym[static_cast<std::size_t>(b - 1)], sym[static_cast<std::size_t>(a - 1)]);
      }
    }
    return out;
  }
};

using WaveData = std::variant<BetheData, GeneralizedBetheData>;

inline int wave_particles(const WaveData& d) {
  return std::visit([](const auto& x) { return x.particles(); }, d);
}

/// Contiguous left-to-right split of the lattice {1,..,N} into L parts.
/// Part l (0-based) occupies sites first_site(l) .. first_site(l)+parts[l]-1.
struct LatticePartition {
  int N = 0;
  std::vector<int> parts;

  LatticePartition() = default;
  LatticePartition(int num_sites, std::vector<int> sizes) : N(num_sites), parts(std::move(sizes)) {
    validate();
  }

  static LatticePartition single_sites(int num_sites) {
    return LatticePartition(num_sites, std::vector<int>(static_cast<std::size_t>(num_sites), 1));
  }
  static LatticePartition uniform(int num_parts, int part_size) {
    return LatticePartition(num_parts * part_size,
                            std::vector<int>(static_cast<std::size_t>(num_parts), part_size));
  }

  void validate() const {
    if (N < 0) throw std::invalid_argument("LatticePartition: negative size");
    long long total = 0;
    for (int p : parts) {
      if (p < 1) throw std::invalid_argument("LatticePartition: parts must have >= 1 site");
      total += p;
    }
    if (total != N) throw std::invalid_argument("LatticePartition: part sizes must sum to N");
  }

  int size() const { return static_cast<int>(parts.size()); }
  int part_size(int l) const { return parts[static_cast<std::size_t>(l)]; }
  int first_site(int l) const {
    int s = 1;
    for (int i = 0; i < l; ++i) s += parts[static_cast<std::size_t>(i)];
    return s;
  }
  bool is_uniform() const {
    for (int p : parts) {
      if (p != parts.front()) return false;
    }
    return !parts.empty();
  }
};

/// Partition of a ring: part 1 wraps around, holding the first `first_left`
/// and the last `first_right` sites; the remaining parts sit contiguously in
/// between, left to right.
struct RingPartition {
  int N = 0;
  int first_left = 0;
  int first_right = 0;
  std::vector<int> middle;

  RingPartition() = default;
  RingPartition(int num_sites, int left, int right, std::vector<int> middle_sizes)
      : N(num_sites), first_left(left), first_right(right), middle(std::move(middle_sizes)) {
    validate();
  }

  void validate() const {
    if (first_left < 0 || first_right < 0 || first_left + first_right < 1) {
      throw std::invalid_argument("RingPartition: part 1 must be non-empty");
    }
    long long total = first_left + first_right;
    for (int p : middle) {
      if (p < 1) throw std::invalid_argument("RingPartition: parts must have >= 1 site");
      total += p;
    }
    if (total != N) throw std::invalid_argument("RingPartition: part sizes must sum to N");
  }

  int size() const { return static_cast<int>(middle.size()) + 1; }
  int part_size(int l) const {
    return l == 0 ? first_left + first_right : middle[static_cast<std::size_t>(l - 1)];
  }
  /// First site of middle part l (1-based l in [1, L-1]).
  int middle_first_site(int l) const {
    int s = first_left + 1;
    for (int i = 1; i < l; ++i) s += middle[static_cast<std::size_t>(i - 1)];
    return s;
  }
};

}  // namespace bethe
