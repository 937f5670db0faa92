// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/overlap.hpp"

#include <Eigen/Dense>
#include <map>

namespace bethe {

namespace {

/// Particle-sector blocked matrix over (ket domain x bra domain). Off-sector
/// entries are not stored at all, which keeps the environments exactly
/// block-diagonal by construction.
class SectorEnv {
 public:
  SectorEnv(ChoiceDomain ket, ChoiceDomain bra) : ket_(std::move(ket)), bra_(std::move(bra)) {
    const int top = std::max(ket_.max_particles(), bra_.max_particles());
    blocks_.reserve(static_cast<std::size_t>(top) + 1);
    for (int m = 0; m <= top; ++m) {
      blocks_.emplace_back(Eigen::MatrixXcd::Zero(ket_.sector_size(m), bra_.sector_size(m)));
    }
  }

  const ChoiceDomain& ket() const { return ket_; }
  const ChoiceDomain& bra() const { return bra_; }
  Eigen::MatrixXcd& block(int m) { return blocks_[static_cast<std::size_t>(m)]; }
  const Eigen::MatrixXcd& block(int m) const { return blocks_[static_cast<std::size_t>(m)]; }
  int sectors() const { return static_cast<int>(blocks_.size()); }

  Complex at(Choice k, Choice b) const {
    const int m = choice_size(k);
    if (m != choice_size(b) || m >= sectors()) return Complex(0.0, 0.0);
    const int i = ket_.sector_pos(k);
    const int j = bra_.sector_pos(b);
    if (i < 0 || j < 0 || ket_.position_of(k) < 0 || bra_.position_of(b) < 0) return Complex(0.0, 0.0);
    return blocks_[static_cast<std::size_t>(m)](i, j);
  }

  void add(Choice k, Choice b, Complex v) {
    const int m = choice_size(k);
    blocks_[static_cast<std::size_t>(m)](ket_.sector_pos(k), bra_.sector_pos(b)) += v;
  }

 private:
  ChoiceDomain ket_;
  ChoiceDomain bra_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

struct FusedEntry {
  Choice in = 0;
  Choice out = 0;
  std::uint64_t sigma = 0;
  Complex value{0.0, 0.0};
};

/// Site tensor with the change-of-basis tensor absorbed: the sparse form of
/// the fused MPS tensor.
std::vector<FusedEntry> fuse_site(const SparseChoiceTensor& t, const SiteBasisTensor& s) {
  std::map<Choice, std::vector<std::pair<std::uint64_t, Complex>>> by_choice;
  for (const auto& [key, value] : s.entries) by_choice[key.first].push_back({key.second, value});
  std::vector<FusedEntry> out;
  for (const auto& [key, tv] : t.entries) {
    const auto it = by_choice.find(key[1]);
    if (it == by_choice.end()) continue;
    for (const auto& [sigma, sv] : it->second) out.push_back({key[0], key[2], sigma, tv * sv});
  }
  return out;
}

void check_chain(const TensorNetwork& net, const char* caller) {
  if (net.kind != TensorNetwork::Kind::mps) {
    throw std::invalid_argument(std::string(caller) + ": network is not an MPS");
  }
}

const ChoiceDomain& in_domain(const TensorNetwork& net, int node) {
  return net.node_tensors[static_cast<std::size_t>(node)].domains[0];
}
const ChoiceDomain& out_domain(const TensorNetwork& net, int node) {
  return net.node_tensors[static_cast<std::size_t>(node)].domains[2];
}

SectorEnv leaf_env(const SiteBasisTensor& ket, const SiteBasisTensor& bra) {
  SectorEnv env(ket.domain, bra.domain);
  std::map<std::uint64_t, std::vector<std::pair<Choice, Complex>>> bra_by_sigma;
  for (const auto& [key, value] : bra.entries) bra_by_sigma[key.second].push_back({key.first, value});
  for (const auto& [key, kv] : ket.entries) {
    const auto it = bra_by_sigma.find(key.second);
    if (it == bra_by_sigma.end()) continue;
    for (const auto& [bchoice, bv] : it->second) env.add(key.first, bchoice, kv * std::conj(bv));
  }
  return env;
}

/// rho^mu_nu = sum T_ket^mu_{...} (prod_l rho_l) conj(T_bra^nu_{...}).
SectorEnv merge_env(const SparseChoiceTensor& ket, const SparseChoiceTensor& bra,
                    const std::vector<const SectorEnv*>& children) {
  SectorEnv env(ket.domains[0], bra.domains[0]);
  for (const auto& [kkey, kv] : ket.entries) {
    for (const auto& [bkey, bv] : bra.entries) {
      if (choice_size(kkey[0]) != choice_size(bkey[0])) continue;
      Complex product = kv * std::conj(bv);
      bool nonzero = true;
      for (std::size_t l = 0; l < children.size(); ++l) {
        if (choice_size(kkey[l + 1]) != choice_size(bkey[l + 1])) {
          nonzero = false;
          break;
        }
        product *= children[l]->at(kkey[l + 1], bkey[l + 1]);
        if (product == Complex(0.0, 0.0)) {
          nonzero = false;
          break;
        }
      }
      if (nonzero) env.add(kkey[0], bkey[0], product);
    }
  }
  return env;
}

SectorEnv tree_env(const TensorNetwork& bra, const TensorNetwork& ket, int node) {
  const auto& kchildren = ket.tree.nodes[static_cast<std::size_t>(node)].children;
  const auto& bchildren = bra.tree.nodes[static_cast<std::size_t>(node)].children;
  if (kchildren.size() != bchildren.size()) {
    throw std::invalid_argument("ttn_overlap: tree shapes differ");
  }
  std::vector<SectorEnv> storage;
  storage.reserve(kchildren.size());
  for (std::size_t l = 0; l < kchildren.size(); ++l) {
    const auto& kc = kchildren[l];
    if (kc.kind != bchildren[l].kind || kc.index != bchildren[l].index) {
      throw std::invalid_argument("ttn_overlap: tree shapes differ");
    }
    switch (kc.kind) {
      case PlanarTree::Child::Kind::node:
        storage.push_back(tree_env(bra, ket, kc.index));
        break;
      case PlanarTree::Child::Kind::leaf:
        storage.push_back(leaf_env(ket.leaf_tensors[static_cast<std::size_t>(kc.index)],
                                   bra.leaf_tensors[static_cast<std::size_t>(kc.index)]));
        break;
      case PlanarTree::Child::Kind::pin: {
        SectorEnv pin_env(ChoiceDomain::singleton(ket.M, kc.pin),
                          ChoiceDomain::singleton(bra.M, bchildren[l].pin));
        pin_env.add(kc.pin, bchildren[l].pin, Complex(1.0, 0.0));
        storage.push_back(std::move(pin_env));
        break;
      }
    }
  }
  std::vector<const SectorEnv*> children;
  for (const auto& e : storage) children.push_back(&e);
  return merge_env(ket.node_tensors[static_cast<std::size_t>(node)],
                   bra.node_tensors[static_cast<std::size_t>(node)], children);
}

Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, long long exponent) {
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

}  // namespace

Complex mps_overlap(const TensorNetwork& bra, const TensorNetwork& ket, OverlapStats* stats) {
  check_chain(bra, "mps_overlap");
  check_chain(ket, "mps_overlap");
  if (bra.partition.N != ket.partition.N || bra.partition.parts != ket.partition.parts) {
    throw std::invalid_argument("mps_overlap: partitions differ");
  }
  if (bra.M != ket.M) return Complex(0.0, 0.0);
  const int num_parts = ket.partition.size();
  if (stats) stats->per_site_multiplies.assign(static_cast<std::size_t>(num_parts), 0);

  SectorEnv rho(in_domain(ket, 0), in_domain(bra, 0));
  rho.add(ket.root_choice, bra.root_choice, Complex(1.0, 0.0));

  for (int i = 0; i < num_parts; ++i) {
    const auto fused_ket = fuse_site(ket.node_tensors[static_cast<std::size_t>(i)],
                                     ket.leaf_tensors[static_cast<std::size_t>(i)]);
    const auto fused_bra = fuse_site(bra.node_tensors[static_cast<std::size_t>(i)],
                                     bra.leaf_tensors[static_cast<std::size_t>(i)]);
    const ChoiceDomain& ket_in = in_domain(ket, i);
    const ChoiceDomain& ket_out = out_domain(ket, i);
    const ChoiceDomain& bra_in = in_domain(bra, i);
    const ChoiceDomain& bra_out = out_domain(bra, i);

    // step 1: absorb the ket site tensor, rho x A
    std::uint64_t multiplies = 0;
    std::map<std::uint64_t, Eigen::MatrixXcd> half;
    for (const auto& e : fused_ket) {
      const int m = choice_size(e.in);
      const int cols = bra_in.sector_size(m);
      if (cols == 0) continue;
      auto it = half.find(e.sigma);
      if (it == half.end()) {
        it = half.emplace(e.sigma, Eigen::MatrixXcd::Zero(ket_out.size(), bra_in.size())).first;
      }
      const int row = ket_out.position_of(e.out);
      const int ki = ket_in.sector_pos(e.in);
      const int col0 = bra_in.sector_begin(m);
      for (int j = 0; j < cols; ++j) {
        it->second(row, col0 + j) += rho.block(m)(ki, j) * e.value;
        ++multiplies;
      }
    }
    if (stats) stats->per_site_multiplies[static_cast<std::size_t>(i)] = multiplies;

    // step 2: absorb the conjugated bra site tensor
    SectorEnv next(ket_out, bra_out);
    for (const auto& f : fused_bra) {
      const auto it = half.find(f.sigma);
      if (it == half.end()) continue;
      const int mt = choice_size(f.out);
      const int rows = ket_out.sector_size(mt);
      if (rows == 0) continue;
      const int row0 = ket_out.sector_begin(mt);
      const int col = bra_in.position_of(f.in);
      const int bj = bra_out.sector_pos(f.out);
      const Complex w = std::conj(f.value);
      for (int i2 = 0; i2 < rows; ++i2) {
        next.block(mt)(i2, bj) += it->second(row0 + i2, col) * w;
      }
    }
    rho = std::move(next);
  }
  return rho.at(kEmptyChoice, kEmptyChoice);
}

Complex ttn_overlap(const TensorNetwork& bra, const TensorNetwork& ket) {
  if (!(bra.tree == ket.tree)) throw std::invalid_argument("ttn_overlap: tree shapes differ");
  if (bra.partition.N != ket.partition.N || bra.partition.parts != ket.partition.parts) {
    throw std::invalid_argument("ttn_overlap: partitions differ");
  }
  if (bra.M != ket.M) return Complex(0.0, 0.0);
  const SectorEnv root = tree_env(bra, ket, 0);
  return root.at(ket.root_choice, bra.root_choice);
}

Complex homogeneous_mps_overlap(const TensorNetwork& bra, const TensorNetwork& ket,
                                long long num_sites) {
  check_chain(bra, "homogeneous_mps_overlap");
  check_chain(ket, "homogeneous_mps_overlap");
  if (!bra.homogeneous || !ket.homogeneous) {
    throw std::invalid_argument("homogeneous_mps_overlap: networks must be homogeneous");
  }
  if (bra.partition.part_size(0) != 1 || ket.partition.part_size(0) != 1) {
    throw std::invalid_argument("homogeneous_mps_overlap: parts must be single sites");
  }
  if (num_sites < 0) num_sites = ket.partition.N;
  if (bra.M != ket.M) return Complex(0.0, 0.0);

  const auto fused_ket = fuse_site(ket.node_tensors[0], ket.leaf_tensors[0]);
  const auto fused_bra = fuse_site(bra.node_tensors[0], bra.leaf_tensors[0]);
  const ChoiceDomain& kd = in_domain(ket, 0);
  const ChoiceDomain& bd = in_domain(bra, 0);
  const int dim_k = kd.size();
  const int dim_b = bd.size();

  Eigen::MatrixXcd transfer = Eigen::MatrixXcd::Zero(dim_k * dim_b, dim_k * dim_b);
  for (const auto& e : fused_ket) {
    for (const auto& f : fused_bra) {
      if (e.sigma != f.sigma) continue;
      const int row = kd.position_of(e.in) * dim_b + bd.position_of(f.in);
      const int col = kd.position_of(e.out) * dim_b + bd.position_of(f.out);
      transfer(row, col) += e.value * std::conj(f.value);
    }
  }

  const Eigen::MatrixXcd power = matrix_power(std::move(transfer), num_sites);
  const int row = kd.position_of(ket.root_choice) * dim_b + bd.position_of(bra.root_choice);
  const int col = kd.position_of(kEmptyChoice) * dim_b + bd.position_of(kEmptyChoice);
  return power(row, col);
}

Complex homogeneous_ttn_overlap(const TensorNetwork& bra, const TensorNetwork& ket) {
  if (bra.kind != TensorNetwork::Kind::binary_ttn || ket.kind != TensorNetwork::Kind::binary_ttn) {
    throw std::invalid_argument("homogeneous_ttn_overlap: networks must be regular binary trees");
  }
  if (!bra.homogeneous || !ket.homogeneous) {
    throw std::invalid_argument("homogeneous_ttn_overlap: networks must be homogeneous");
  }
  if (bra.partition.size() != ket.partition.size()) {
    throw std::invalid_argument("homogeneous_ttn_overlap: depths differ");
  }
  if (bra.M != ket.M) return Complex(0.0, 0.0);

  const int num_parts = ket.partition.size();
  int depth = 0;
  while ((1 << depth) < num_parts) ++depth;

  SectorEnv env = leaf_env(ket.leaf_tensors[0], bra.leaf_tensors[0]);
  for (int z = depth - 1; z >= 0; --z) {
    const int node = (1 << z) - 1;  // leftmost node of the layer
    const std::vector<const SectorEnv*> children = {&env, &env};
    env = merge_env(ket.node_tensors[static_cast<std::size_t>(node)],
                    bra.node_tensors[static_cast<std::size_t>(node)], children);
  }
  return env.at(ket.root_choice, bra.root_choice);
}

OverlapReport make_report(Complex overlap, Complex bra_self, Complex ket_self) {
  OverlapReport r;
  r.overlap = overlap;
  r.norm_bra = std::sqrt(std::max(0.0, bra_self.real()));
  r.norm_ket = std::sqrt(std::max(0.0, ket_self.real()));
  const double denom = r.norm_bra * r.norm_ket;
  r.fidelity = denom > 0.0 ? std::abs(overlap) / denom : 0.0;
  return r;
}

}  // namespace bethe
