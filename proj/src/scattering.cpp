// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/scattering.hpp"

#include <algorithm>

namespace bethe {

FactorizedPermutation factorize_permutation(const Permutation& p, int m_a) {
  const int m = p.size();
  if (m_a < 0 || m_a > m) throw std::invalid_argument("factorize_permutation: m_a outside [0, M]");
  if (!p.is_valid()) throw std::invalid_argument("factorize_permutation: not a permutation");

  FactorizedPermutation out;
  std::vector<int> prefix(p.image.begin(), p.image.begin() + m_a);
  std::vector<int> suffix(p.image.begin() + m_a, p.image.end());
  std::vector<int> a_sorted = prefix;
  std::vector<int> b_sorted = suffix;
  std::sort(a_sorted.begin(), a_sorted.end());
  std::sort(b_sorted.begin(), b_sorted.end());
  out.a = choice_from_symbols(a_sorted, m);
  out.b = choice_from_symbols(b_sorted, m);

  auto local_of = [](const std::vector<int>& seq, const std::vector<int>& sorted) {
    Permutation loc;
    loc.image.reserve(seq.size());
    for (int v : seq) {
      const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
      loc.image.push_back(static_cast<int>(it - sorted.begin()) + 1);
    }
    return loc;
  };
  out.r = local_of(prefix, a_sorted);
  out.s = local_of(suffix, b_sorted);
  return out;
}

Permutation recompose_permutation(const FactorizedPermutation& f) {
  const std::vector<int> a_sym = choice_symbols(f.a);
  const std::vector<int> b_sym = choice_symbols(f.b);
  Permutation p;
  p.image.reserve(a_sym.size() + b_sym.size());
  for (int r : f.r.image) p.image.push_back(a_sym[static_cast<std::size_t>(r - 1)]);
  for (int s : f.s.image) p.image.push_back(b_sym[static_cast<std::size_t>(s - 1)]);
  return p;
}

Complex omega_shift(const BetheData& data, Choice b, long long n_a) {
  if (n_a < 0) throw std::invalid_argument("omega_shift: negative shift");
  double momentum_sum = 0.0;
  for (int s : choice_symbols(b)) momentum_sum += data.k[static_cast<std::size_t>(s - 1)];
  return std::exp(Complex(0.0, momentum_sum * static_cast<double>(n_a)));
}

}  // namespace bethe
