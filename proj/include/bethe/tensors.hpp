// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <tuple>

#include "bethe/dense_state.hpp"

namespace bethe {

/// Sparse tensor whose indices all run over choice domains. Index 0 is the
/// incoming index, indices 1.. are outgoing. Entries hold the structurally
/// nonzero values only: for splitting tensors these are exactly the tuples
/// passing the union delta.
struct SparseChoiceTensor {
  std::vector<ChoiceDomain> domains;
  std::map<std::vector<Choice>, Complex> entries;

  int arity() const { return static_cast<int>(domains.size()); }

  Complex at(std::span<const Choice> idx) const {
    const auto it = entries.find(std::vector<Choice>(idx.begin(), idx.end()));
    return it == entries.end() ? Complex(0.0, 0.0) : it->second;
  }

  /// Dense (incoming fixed) matrix over the two outgoing domains, in
  /// convention order. Only meaningful for arity-3 tensors.
  Eigen::MatrixXcd slice_matrix(Choice incoming) const;

  bool operator==(const SparseChoiceTensor& other) const {
    return domains == other.domains && entries == other.entries;
  }
};

/// Change-of-basis tensor of one lattice part: entry (a, sigma) is the local
/// wavefunction amplitude of occupation bitstring sigma under the data
/// reduced to choice a. Bit t of sigma is the occupation of the t-th site of
/// the part, counted from the left. `relative` marks shifted tensors whose
/// amplitudes are evaluated at positions 1..num_sites regardless of where
/// the part sits in the lattice.
struct SiteBasisTensor {
  ChoiceDomain domain;
  int first_site = 1;
  int num_sites = 0;
  bool relative = false;
  std::map<std::pair<Choice, std::uint64_t>, Complex> entries;

  Complex at(Choice a, std::uint64_t sigma) const {
    const auto it = entries.find({a, sigma});
    return it == entries.end() ? Complex(0.0, 0.0) : it->second;
  }

  bool operator==(const SiteBasisTensor& other) const {
    return domain == other.domain && first_site == other.first_site &&
           num_sites == other.num_sites && relative == other.relative && entries == other.entries;
  }
};

/// Fused site tensor of an MPS: two bond indices and one physical index.
struct MpsSiteTensor {
  ChoiceDomain left;
  ChoiceDomain right;
  int first_site = 1;
  int num_sites = 0;
  std::map<std::tuple<Choice, Choice, std::uint64_t>, Complex> entries;

  Complex at(Choice mu_left, Choice mu_right, std::uint64_t sigma) const {
    const auto it = entries.find({mu_left, mu_right, sigma});
    return it == entries.end() ? Complex(0.0, 0.0) : it->second;
  }

  /// Dense bond matrix at fixed physical index, in convention order.
  Eigen::MatrixXcd matrix(std::uint64_t sigma) const;
};

/// Splitting tensor: entry (c; a, b) = delta_{a u b, c} Theta[a, b].
template <class Data>
SparseChoiceTensor build_t(const Data& data, const ChoiceDomain& c_domain,
                           const ChoiceDomain& a_domain, const ChoiceDomain& b_domain) {
  SparseChoiceTensor t;
  t.domains = {c_domain, a_domain, b_domain};
  for (const Choice c : c_domain.choices()) {
    Choice a = 0;
    while (true) {
      const Choice b = c & ~a;
      if (a_domain.contains(a) && b_domain.contains(b)) {
        t.entries[{c, a, b}] = theta_pair(data, a, b);
      }
      if (a == c) break;
      a = (a - c) & c;
    }
  }
  return t;
}

/// Splitting tensor with q outgoing indices: entry (mu; nu_1,..,nu_q) =
/// delta_{nu_1 u .. u nu_q, mu} Theta_q[nu_1,..,nu_q].
template <class Data>
SparseChoiceTensor build_t_qary(const Data& data, const ChoiceDomain& in_domain,
                                std::span<const ChoiceDomain> out_domains) {
  const int q = static_cast<int>(out_domains.size());
  if (q < 2) throw std::invalid_argument("build_t_qary: need at least two outgoing indices");
  SparseChoiceTensor t;
  t.domains.push_back(in_domain);
  for (const auto& d : out_domains) t.domains.push_back(d);

  for (const Choice mu : in_domain.choices()) {
    std::vector<int> symbols = choice_symbols(mu);
    std::vector<Choice> nu(static_cast<std::size_t>(q), 0);
    auto recurse = [&](auto&& self, std::size_t pos) -> void {
      if (pos == symbols.size()) {
        for (int l = 0; l < q; ++l) {
          if (!out_domains[static_cast<std::size_t>(l)].contains(nu[static_cast<std::size_t>(l)])) return;
        }
        std::vector<Choice> key;
        key.reserve(static_cast<std::size_t>(q) + 1);
        key.push_back(mu);
        key.insert(key.end(), nu.begin(), nu.end());
        t.entries[std::move(key)] = theta_multi(data, nu);
        return;
      }
      const Choice bit = Choice{1} << (symbols[pos] - 1);
      for (int l = 0; l < q; ++l) {
        nu[static_cast<std::size_t>(l)] |= bit;
        self(self, pos + 1);
        nu[static_cast<std::size_t>(l)] &= ~bit;
      }
    };
    recurse(recurse, 0);
  }
  return t;
}

/// Splitting tensor dressed with the shift phase of the left block:
/// entry (c; a, b) = Theta[a, b] Omega_{n_a}(b) delta_{a u b, c}.
SparseChoiceTensor build_t_shifted(const BetheData& data, long long n_a, const ChoiceDomain& c_domain,
                                   const ChoiceDomain& a_domain, const ChoiceDomain& b_domain);

/// Change-of-basis tensor on the absolute site range
/// [first_site, first_site + num_sites - 1]. Choices larger than the part
/// are clipped out.
template <class Data>
SiteBasisTensor build_s(const Data& data, const ChoiceDomain& domain, int first_site, int num_sites) {
  SiteBasisTensor s;
  s.domain = domain;
  s.first_site = first_site;
  s.num_sites = num_sites;
  if (num_sites > 63) throw std::invalid_argument("build_s: part too large for bitstring index");
  for (const Choice a : domain.choices()) {
    const int m = choice_size(a);
    if (m > num_sites) continue;
    const DenseState local = build_local_bethe(data, a, first_site, num_sites);
    if (m == 0) {
      s.entries[{a, 0}] = local.amps[0];
      continue;
    }
    std::vector<int> x(static_cast<std::size_t>(m));
    std::iota(x.begin(), x.end(), 1);
    std::uint64_t rank = 0;
    do {
      std::uint64_t sigma = 0;
      for (int pos : x) sigma |= std::uint64_t{1} << (pos - 1);
      s.entries[{a, sigma}] = local.amps[static_cast<Eigen::Index>(rank++)];
    } while (next_config(x, num_sites));
  }
  return s;
}

/// Position-independent change-of-basis tensor: amplitudes at relative
/// coordinates 1..part_size.
SiteBasisTensor build_s_shifted(const BetheData& data, const ChoiceDomain& domain, int part_size);

/// Fused MPS site tensor: entry (mu_L, mu_R, sigma) =
/// sum_a delta_{a u mu_R, mu_L} Theta[a, mu_R] S^a_sigma.
template <class Data>
MpsSiteTensor build_r(const Data& data, const ChoiceDomain& left, const ChoiceDomain& right,
                      int first_site, int num_sites) {
  MpsSiteTensor r;
  r.left = left;
  r.right = right;
  r.first_site = first_site;
  r.num_sites = num_sites;
  const ChoiceDomain a_domain = ChoiceDomain::full(left.num_symbols());
  const SiteBasisTensor s = build_s(data, a_domain, first_site, num_sites);
  for (const Choice mu_l : left.choices()) {
    Choice mu_r = 0;
    while (true) {  // subsets of mu_l
      if (right.contains(mu_r)) {
        const Choice a = mu_l & ~mu_r;
        const Complex weight = theta_pair(data, a, mu_r);
        for (const auto& [key, value] : s.entries) {
          if (key.first != a) continue;
          r.entries[{mu_l, mu_r, key.second}] = weight * value;
        }
      }
      if (mu_r == mu_l) break;
      mu_r = (mu_r - mu_l) & mu_l;
    }
  }
  return r;
}

/// Homogeneous fused MPS site tensor built from the shifted pair.
MpsSiteTensor build_r_shifted(const BetheData& data, const ChoiceDomain& left,
                              const ChoiceDomain& right, int part_size);

}  // namespace bethe
