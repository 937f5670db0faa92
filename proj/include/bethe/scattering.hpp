// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "bethe/data.hpp"

namespace bethe {

/// Scattering amplitude Theta[P] of a permutation: the product of one factor
/// -e^{i theta_{P_{j1} P_{j2}}} per inverted pair (P_{j1} > P_{j2}, j1 < j2).
template <class Data>
Complex theta_of_permutation(const Data& data, const Permutation& p) {
  if (p.size() != data.particles()) {
    throw std::invalid_argument("theta_of_permutation: permutation size differs from particle count");
  }
  Complex out(1.0, 0.0);
  for (int j1 = 1; j1 < p.size(); ++j1) {
    for (int j2 = j1 + 1; j2 <= p.size(); ++j2) {
      if (p[j1] > p[j2]) out *= data.scatter(p[j1], p[j2]);
    }
  }
  return out;
}

/// Pair amplitude Theta[a, b]: one factor -e^{i theta_{a_alpha b_beta}} per
/// pair with a_alpha > b_beta. The choices must be disjoint.
template <class Data>
Complex theta_pair(const Data& data, Choice a, Choice b) {
  if (!choices_disjoint(a, b)) {
    throw std::invalid_argument("theta_pair: choices overlap");
  }
  Complex out(1.0, 0.0);
  for (Choice ra = a; ra != 0; ra &= ra - 1) {
    const int sa = std::countr_zero(ra) + 1;
    for (Choice rb = b; rb != 0; rb &= rb - 1) {
      const int sb = std::countr_zero(rb) + 1;
      if (sa > sb) out *= data.scatter(sa, sb);
    }
  }
  return out;
}

/// Multi-part amplitude Theta_L = prod_{l1<l2} Theta[a_{l1}, a_{l2}] over
/// pairwise disjoint choices.
template <class Data>
Complex theta_multi(const Data& data, std::span<const Choice> parts) {
  Choice seen = 0;
  for (Choice c : parts) {
    if (!choices_disjoint(seen, c)) throw std::invalid_argument("theta_multi: choices overlap");
    seen |= c;
  }
  Complex out(1.0, 0.0);
  for (std::size_t l1 = 0; l1 + 1 < parts.size(); ++l1) {
    for (std::size_t l2 = l1 + 1; l2 < parts.size(); ++l2) {
      out *= theta_pair(data, parts[l1], parts[l2]);
    }
  }
  return out;
}

/// Split of a permutation P into the choices (a, b) gathered from its first
/// m_a and last M-m_a components, plus the local permutations r, s that
/// rearrange a and b into P's prefix and suffix. r and s act on local
/// indices: P_j = a_{r_j} for j <= m_a and P_{m_a+j} = b_{s_j}.
struct FactorizedPermutation {
  Choice a = 0;
  Choice b = 0;
  Permutation r;
  Permutation s;
};

FactorizedPermutation factorize_permutation(const Permutation& p, int m_a);

/// Inverse of factorize_permutation.
Permutation recompose_permutation(const FactorizedPermutation& f);

/// Shift phase (prod_{j in b} e^{i k_j})^{n_a} picked up by translating the
/// choice-b plane waves across n_a sites.
Complex omega_shift(const BetheData& data, Choice b, long long n_a);

}  // namespace bethe
