// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "bethe/data.hpp"
#include "bethe/scattering.hpp"

namespace bethe {

/// C(n, k) with saturation to UINT64_MAX on overflow.
std::uint64_t binomial(int n, int k);

/// Hard cap on the number of amplitudes a dense state may hold; defaults to
/// 1e7 and can be overridden through the BETHE_ORACLE_MAX environment variable.
std::uint64_t oracle_max();

/// Practical cap on the permutation sum of the brute-force builders.
inline constexpr int kOracleMaxParticles = 8;

/// Rank of an increasing 1-based position vector among all m-subsets of
/// {1,..,n}: rank(x) = sum_j C(x_j - 1, j). Colexicographic order.
std::uint64_t config_rank(std::span<const int> x);

/// Advance x to the next configuration in rank order; false after the last.
bool next_config(std::span<int> x, int n);

/// Explicit amplitude table of an m-particle wavefunction supported on an
/// arbitrary increasing list of absolute lattice sites. Amplitudes are stored
/// over local positions 1..sites.size() in config_rank order.
struct DenseState {
  int particles = 0;
  std::vector<int> sites;
  Eigen::VectorXcd amps;

  DenseState() = default;
  DenseState(int m, std::vector<int> site_labels);

  static DenseState vacuum(int num_sites, int first_site = 1);

  int num_sites() const { return static_cast<int>(sites.size()); }
  std::uint64_t dimension() const { return binomial(num_sites(), particles); }
  bool is_global() const;  // sites are exactly 1..N

  Complex amp(std::span<const int> local_config) const {
    return amps[static_cast<Eigen::Index>(config_rank(local_config))];
  }
  Complex& amp(std::span<const int> local_config) {
    return amps[static_cast<Eigen::Index>(config_rank(local_config))];
  }
};

/// Largest relative deviation max_x |a(x)-b(x)| / max_x |b(x)| between two
/// states on the same support.
double max_relative_error(const DenseState& got, const DenseState& want);

DenseState operator+(const DenseState& a, const DenseState& b);
DenseState operator*(Complex scale, const DenseState& s);

/// Product state on the disjoint union of the two supports: amplitudes
/// multiply on configurations that place a.particles in a's sites and
/// b.particles in b's sites, and vanish elsewhere in the combined sector.
DenseState tensor_product(const DenseState& a, const DenseState& b);

/// sum_x conj(lhs(x)) rhs(x); zero when particle numbers differ.
Complex inner_product(const DenseState& lhs, const DenseState& rhs);

/// Number of singular values above tol * sigma_max across all particle
/// sectors of the cut (sites 1..cut | cut+1..N).
int schmidt_rank(const DenseState& state, int cut, double tol = 1e-9);

namespace detail {

template <class Data>
void check_oracle_bounds(const Data& data, int num_sites) {
  if (data.particles() > num_sites) {
    throw std::invalid_argument("dense builder: more particles than sites");
  }
  if (data.particles() > kOracleMaxParticles) {
    throw std::invalid_argument("dense builder: particle count above brute-force cap");
  }
  if (binomial(num_sites, data.particles()) > oracle_max()) {
    throw std::invalid_argument(
        "dense builder: basis size exceeds oracle bound (override with BETHE_ORACLE_MAX)");
  }
}

}  // namespace detail

/// Brute-force amplitude table over the listed absolute sites:
/// amp(x) = sum_P Theta[P] prod_j amp_{P_j}(x_j). Unnormalized.
template <class Data>
DenseState build_dense_on_sites(const Data& data, std::vector<int> site_labels) {
  detail::check_oracle_bounds(data, static_cast<int>(site_labels.size()));
  const int m = data.particles();
  DenseState out(m, std::move(site_labels));

  // Precompute all permutations and their amplitudes once.
  std::vector<Permutation> perms;
  std::vector<Complex> weights;
  Permutation p = Permutation::identity(m);
  do {
    perms.push_back(p);
    weights.push_back(theta_of_permutation(data, p));
  } while (std::next_permutation(p.image.begin(), p.image.end()));

  if (m == 0) {
    out.amps[0] = Complex(1.0, 0.0);
    return out;
  }
  std::vector<int> x(static_cast<std::size_t>(m));
  std::iota(x.begin(), x.end(), 1);
  std::uint64_t rank = 0;
  do {
    Complex total(0.0, 0.0);
    for (std::size_t ip = 0; ip < perms.size(); ++ip) {
      Complex term = weights[ip];
      for (int j = 1; j <= m; ++j) {
        term *= data.amplitude(perms[ip][j], out.sites[static_cast<std::size_t>(x[static_cast<std::size_t>(j - 1)] - 1)]);
      }
      total += term;
    }
    out.amps[static_cast<Eigen::Index>(rank++)] = total;
  } while (next_config(x, out.num_sites()));
  return out;
}

/// Bethe wavefunction on the full lattice {1,..,N}.
DenseState build_dense_bethe(const BetheData& data, int num_sites);

/// Generalized Bethe wavefunction on its own lattice {1,..,N}.
DenseState build_dense_generalized(const GeneralizedBetheData& data);

/// Local wavefunction with data reduced to `choice`, on the absolute site
/// range [first_site, first_site + num_sites - 1].
template <class Data>
DenseState build_local_bethe(const Data& data, Choice choice, int first_site, int num_sites) {
  if (choice_size(choice) > num_sites) {
    throw std::invalid_argument("build_local_bethe: choice larger than the site range");
  }
  std::vector<int> site_labels(static_cast<std::size_t>(num_sites));
  std::iota(site_labels.begin(), site_labels.end(), first_site);
  return build_dense_on_sites(data.reduced(choice), std::move(site_labels));
}

}  // namespace bethe
