// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/tensors.hpp"

namespace bethe {

Eigen::MatrixXcd SparseChoiceTensor::slice_matrix(Choice incoming) const {
  if (arity() != 3) throw std::invalid_argument("slice_matrix: tensor is not three-index");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(domains[1].size(), domains[2].size());
  for (const auto& [key, value] : entries) {
    if (key[0] != incoming) continue;
    out(domains[1].position_of(key[1]), domains[2].position_of(key[2])) = value;
  }
  return out;
}

Eigen::MatrixXcd MpsSiteTensor::matrix(std::uint64_t sigma) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(left.size(), right.size());
  for (const auto& [key, value] : entries) {
    if (std::get<2>(key) != sigma) continue;
    out(left.position_of(std::get<0>(key)), right.position_of(std::get<1>(key))) = value;
  }
  return out;
}

SparseChoiceTensor build_t_shifted(const BetheData& data, long long n_a, const ChoiceDomain& c_domain,
                                   const ChoiceDomain& a_domain, const ChoiceDomain& b_domain) {
  SparseChoiceTensor t = build_t(data, c_domain, a_domain, b_domain);
  for (auto& [key, value] : t.entries) value *= omega_shift(data, key[2], n_a);
  return t;
}

SiteBasisTensor build_s_shifted(const BetheData& data, const ChoiceDomain& domain, int part_size) {
  SiteBasisTensor s = build_s(data, domain, 1, part_size);
  s.relative = true;
  return s;
}

MpsSiteTensor build_r_shifted(const BetheData& data, const ChoiceDomain& left,
                              const ChoiceDomain& right, int part_size) {
  MpsSiteTensor r;
  r.left = left;
  r.right = right;
  r.first_site = 1;
  r.num_sites = part_size;
  const ChoiceDomain a_domain = ChoiceDomain::full(left.num_symbols());
  const SiteBasisTensor s = build_s_shifted(data, a_domain, part_size);
  for (const Choice mu_l : left.choices()) {
    Choice mu_r = 0;
    while (true) {
      if (right.contains(mu_r)) {
        const Choice a = mu_l & ~mu_r;
        const Complex weight = theta_pair(data, a, mu_r) * omega_shift(data, mu_r, part_size);
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

}  // namespace bethe
