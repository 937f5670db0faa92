// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/network.hpp"

#include <map>
#include <set>

namespace bethe {

namespace {

using Child = PlanarTree::Child;

void inorder_walk(const PlanarTree& tree, int node, std::vector<int>& leaves,
                  std::vector<bool>& visited) {
  if (node < 0 || node >= static_cast<int>(tree.nodes.size())) {
    throw std::invalid_argument("PlanarTree: child references missing node");
  }
  if (visited[static_cast<std::size_t>(node)]) {
    throw std::invalid_argument("PlanarTree: node reachable twice");
  }
  visited[static_cast<std::size_t>(node)] = true;
  const auto& children = tree.nodes[static_cast<std::size_t>(node)].children;
  for (const auto& c : children) {
    switch (c.kind) {
      case Child::Kind::node:
        inorder_walk(tree, c.index, leaves, visited);
        break;
      case Child::Kind::leaf:
        leaves.push_back(c.index);
        break;
      case Child::Kind::pin:
        break;
    }
  }
  if (children.size() < 2) {
    throw std::invalid_argument("PlanarTree: internal nodes need at least two children");
  }
}

/// Sites covered by the subtree hanging below each node, as [first, count].
struct Cover {
  int first = 0;
  int count = 0;
};

Cover child_cover(const TensorNetwork& net, const Child& c, const std::vector<Cover>& node_cover);

Cover compute_cover(const TensorNetwork& net, int node, std::vector<Cover>& node_cover) {
  const auto& children = net.tree.nodes[static_cast<std::size_t>(node)].children;
  Cover cover;
  bool started = false;
  for (const auto& c : children) {
    Cover cc;
    if (c.kind == Child::Kind::node) {
      cc = compute_cover(net, c.index, node_cover);
    } else {
      cc = child_cover(net, c, node_cover);
    }
    if (cc.count == 0) continue;
    if (!started) {
      cover = cc;
      started = true;
    } else {
      if (cc.first != cover.first + cover.count) {
        throw std::invalid_argument("TensorNetwork: children must cover adjacent ranges in order");
      }
      cover.count += cc.count;
    }
  }
  node_cover[static_cast<std::size_t>(node)] = cover;
  return cover;
}

Cover child_cover(const TensorNetwork& net, const Child& c, const std::vector<Cover>& node_cover) {
  switch (c.kind) {
    case Child::Kind::node:
      return node_cover[static_cast<std::size_t>(c.index)];
    case Child::Kind::leaf:
      return {net.partition.first_site(c.index), net.partition.part_size(c.index)};
    case Child::Kind::pin:
      return {0, 0};
  }
  return {};
}

ChoiceDomain bond_domain(int m, int total_sites, int covered_sites) {
  return ChoiceDomain(m, std::max(0, m - (total_sites - covered_sites)),
                      std::min(m, covered_sites));
}

template <class Data>
TensorNetwork make_mps(const Data& data, const LatticePartition& partition, bool homogeneous) {
  partition.validate();
  const int m = data.particles();
  const int total = partition.N;
  const int num_parts = partition.size();
  if (num_parts < 1) throw std::invalid_argument("build_mps: empty partition");

  TensorNetwork net;
  net.kind = TensorNetwork::Kind::mps;
  net.M = m;
  net.partition = partition;
  net.tree = PlanarTree::chain(num_parts);
  net.root_choice = full_choice(m);
  net.homogeneous = homogeneous;

  if (homogeneous) {
    if constexpr (std::is_same_v<Data, BetheData>) {
      if (!partition.is_uniform()) {
        throw std::invalid_argument("build_mps: homogeneous form needs uniform part sizes");
      }
      const int p = partition.part_size(0);
      const ChoiceDomain bond = ChoiceDomain::full(m);
      // capacity clip only: the tensors must not depend on the lattice size
      const ChoiceDomain leaf(m, 0, std::min(m, p));
      const SparseChoiceTensor t = build_t_shifted(data, p, bond, leaf, bond);
      const SiteBasisTensor s = build_s_shifted(data, leaf, p);
      for (int i = 0; i < num_parts; ++i) {
        net.node_tensors.push_back(t);
        SiteBasisTensor si = s;
        si.first_site = partition.first_site(i);
        net.leaf_tensors.push_back(std::move(si));
      }
      return net;
    } else {
      throw std::invalid_argument("build_mps: homogeneous form needs plane-wave data");
    }
  }

  int below = total;
  for (int i = 0; i < num_parts; ++i) {
    const int ni = partition.part_size(i);
    const ChoiceDomain in = bond_domain(m, total, below);
    const ChoiceDomain leaf = bond_domain(m, total, ni);
    const ChoiceDomain out = bond_domain(m, total, below - ni);
    net.node_tensors.push_back(build_t(data, in, leaf, out));
    net.leaf_tensors.push_back(build_s(data, leaf, partition.first_site(i), ni));
    below -= ni;
  }
  return net;
}

template <class Data>
TensorNetwork make_binary_ttn(const Data& data, const LatticePartition& partition, bool homogeneous) {
  partition.validate();
  const int m = data.particles();
  const int total = partition.N;
  const int num_parts = partition.size();
  if (num_parts < 2 || (num_parts & (num_parts - 1)) != 0) {
    throw std::invalid_argument("build_binary_ttn: part count must be a power of two (>= 2)");
  }

  TensorNetwork net;
  net.kind = TensorNetwork::Kind::binary_ttn;
  net.M = m;
  net.partition = partition;
  net.tree = PlanarTree::regular_binary(num_parts);
  net.root_choice = full_choice(m);
  net.homogeneous = homogeneous;

  if (homogeneous) {
    if constexpr (!std::is_same_v<Data, BetheData>) {
      throw std::invalid_argument("build_binary_ttn: homogeneous form needs plane-wave data");
    }
    if (!partition.is_uniform()) {
      throw std::invalid_argument("build_binary_ttn: homogeneous form needs uniform part sizes");
    }
  }

  std::vector<Cover> cover(net.tree.nodes.size());
  compute_cover(net, 0, cover);

  const int p = partition.part_size(0);
  const ChoiceDomain full = ChoiceDomain::full(m);
  const ChoiceDomain leaf_dom_uniform(m, 0, std::min(m, p));

  net.node_tensors.resize(net.tree.nodes.size());
  for (std::size_t n = 0; n < net.tree.nodes.size(); ++n) {
    const auto& children = net.tree.nodes[n].children;
    const Cover left = child_cover(net, children[0], cover);
    const Cover right = child_cover(net, children[1], cover);
    auto edge_domain = [&](const Child& c, const Cover& cc) {
      if (homogeneous) {
        return c.kind == Child::Kind::leaf ? leaf_dom_uniform : full;
      }
      return bond_domain(m, total, cc.count);
    };
    const ChoiceDomain in = homogeneous ? full : bond_domain(m, total, cover[n].count);
    const ChoiceDomain dl = edge_domain(children[0], left);
    const ChoiceDomain dr = edge_domain(children[1], right);
    if (homogeneous) {
      if constexpr (std::is_same_v<Data, BetheData>) {
        net.node_tensors[n] = build_t_shifted(data, left.count, in, dl, dr);
      }
    } else {
      net.node_tensors[n] = build_t(data, in, dl, dr);
    }
  }

  for (int i = 0; i < num_parts; ++i) {
    if (homogeneous) {
      if constexpr (std::is_same_v<Data, BetheData>) {
        SiteBasisTensor s = build_s_shifted(data, leaf_dom_uniform, p);
        s.first_site = partition.first_site(i);
        net.leaf_tensors.push_back(std::move(s));
      }
    } else {
      net.leaf_tensors.push_back(build_s(data, bond_domain(m, total, partition.part_size(i)),
                                         partition.first_site(i), partition.part_size(i)));
    }
  }
  return net;
}

template <class Data>
TensorNetwork make_planar(const Data& data, const LatticePartition& partition,
                          const PlanarTree& tree) {
  partition.validate();
  tree.validate();
  if (tree.num_leaves != partition.size()) {
    throw std::invalid_argument("build_planar_ttn: tree leaf count differs from partition length");
  }
  const int m = data.particles();
  const int total = partition.N;

  TensorNetwork net;
  net.kind = TensorNetwork::Kind::planar_ttn;
  net.M = m;
  net.partition = partition;
  net.tree = tree;
  net.root_choice = full_choice(m);

  std::vector<Cover> cover(tree.nodes.size());
  compute_cover(net, 0, cover);

  net.node_tensors.resize(tree.nodes.size());
  for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
    const auto& children = tree.nodes[n].children;
    std::vector<ChoiceDomain> out_domains;
    for (const auto& c : children) {
      if (c.kind == Child::Kind::pin) {
        out_domains.push_back(ChoiceDomain::singleton(m, c.pin));
      } else {
        out_domains.push_back(bond_domain(m, total, child_cover(net, c, cover).count));
      }
    }
    const ChoiceDomain in = bond_domain(m, total, cover[n].count);
    net.node_tensors[n] = build_t_qary(data, in, out_domains);
  }
  for (int i = 0; i < partition.size(); ++i) {
    net.leaf_tensors.push_back(build_s(data, bond_domain(m, total, partition.part_size(i)),
                                       partition.first_site(i), partition.part_size(i)));
  }
  return net;
}

using BlockMap = std::map<Choice, DenseState>;

BlockMap leaf_blocks(const TensorNetwork& net, int leaf, const std::set<Choice>& needed) {
  const SiteBasisTensor& s = net.leaf_tensors[static_cast<std::size_t>(leaf)];
  const int first = net.partition.first_site(leaf);
  const int count = net.partition.part_size(leaf);
  std::vector<int> labels(static_cast<std::size_t>(count));
  std::iota(labels.begin(), labels.end(), first);

  BlockMap out;
  for (Choice a : needed) {
    if (!s.domain.contains(a) || choice_size(a) > count) continue;
    out.emplace(a, DenseState(choice_size(a), labels));
  }
  for (const auto& [key, value] : s.entries) {
    const auto it = out.find(key.first);
    if (it == out.end()) continue;
    std::vector<int> config;
    for (std::uint64_t bits = key.second; bits != 0; bits &= bits - 1) {
      config.push_back(std::countr_zero(bits) + 1);
    }
    it->second.amp(config) = value;
  }
  return out;
}

BlockMap contract_node(const TensorNetwork& net, int node, const std::set<Choice>& needed,
                       const std::vector<Cover>& cover) {
  const SparseChoiceTensor& t = net.node_tensors[static_cast<std::size_t>(node)];
  const auto& children = net.tree.nodes[static_cast<std::size_t>(node)].children;
  const std::size_t q = children.size();

  std::vector<std::set<Choice>> child_needed(q);
  for (const auto& [key, value] : t.entries) {
    if (!needed.count(key[0])) continue;
    for (std::size_t l = 0; l < q; ++l) child_needed[l].insert(key[l + 1]);
  }

  std::vector<BlockMap> child_blocks(q);
  for (std::size_t l = 0; l < q; ++l) {
    const Child& c = children[l];
    switch (c.kind) {
      case Child::Kind::node:
        child_blocks[l] = contract_node(net, c.index, child_needed[l], cover);
        break;
      case Child::Kind::leaf:
        child_blocks[l] = leaf_blocks(net, c.index, child_needed[l]);
        break;
      case Child::Kind::pin: {
        DenseState unit(0, {});
        unit.amps[0] = Complex(1.0, 0.0);
        if (c.pin != kEmptyChoice) {
          throw std::invalid_argument("contract_to_dense: only empty pins are contractible");
        }
        child_blocks[l].emplace(c.pin, std::move(unit));
        break;
      }
    }
  }

  const Cover cc = cover[static_cast<std::size_t>(node)];
  std::vector<int> labels(static_cast<std::size_t>(cc.count));
  std::iota(labels.begin(), labels.end(), cc.first);

  BlockMap out;
  for (const auto& [key, value] : t.entries) {
    if (!needed.count(key[0])) continue;
    bool feasible = true;
    for (std::size_t l = 0; l < q; ++l) {
      if (!child_blocks[l].count(key[l + 1])) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;

    DenseState product = child_blocks[0].at(key[1]);
    for (std::size_t l = 1; l < q; ++l) product = tensor_product(product, child_blocks[l].at(key[l + 1]));

    auto it = out.find(key[0]);
    if (it == out.end()) it = out.emplace(key[0], DenseState(choice_size(key[0]), labels)).first;
    it->second = it->second + value * product;
  }
  return out;
}

}  // namespace

void PlanarTree::validate() const {
  if (nodes.empty()) throw std::invalid_argument("PlanarTree: no nodes");
  std::vector<int> leaves;
  std::vector<bool> visited(nodes.size(), false);
  inorder_walk(*this, 0, leaves, visited);
  for (bool v : visited) {
    if (!v) throw std::invalid_argument("PlanarTree: unreachable node");
  }
  if (static_cast<int>(leaves.size()) != num_leaves) {
    throw std::invalid_argument("PlanarTree: leaf count mismatch");
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] != static_cast<int>(i)) {
      throw std::invalid_argument("PlanarTree: leaves must appear in left-to-right order");
    }
  }
}

PlanarTree PlanarTree::chain(int num_parts) {
  if (num_parts < 1) throw std::invalid_argument("PlanarTree::chain: need at least one part");
  PlanarTree tree;
  tree.num_leaves = num_parts;
  tree.nodes.resize(static_cast<std::size_t>(num_parts));
  for (int i = 0; i < num_parts; ++i) {
    auto& node = tree.nodes[static_cast<std::size_t>(i)];
    node.children.push_back(Child::of_leaf(i));
    if (i + 1 < num_parts) {
      node.children.push_back(Child::of_node(i + 1));
    } else {
      node.children.push_back(Child::of_pin(kEmptyChoice));
    }
  }
  return tree;
}

PlanarTree PlanarTree::regular_binary(int num_parts) {
  if (num_parts < 2 || (num_parts & (num_parts - 1)) != 0) {
    throw std::invalid_argument("PlanarTree::regular_binary: part count must be a power of two");
  }
  PlanarTree tree;
  tree.num_leaves = num_parts;
  tree.nodes.resize(static_cast<std::size_t>(num_parts) - 1);
  const int bottom_first = num_parts / 2 - 1;
  for (int n = 0; n < num_parts - 1; ++n) {
    auto& node = tree.nodes[static_cast<std::size_t>(n)];
    if (n < bottom_first) {
      node.children.push_back(Child::of_node(2 * n + 1));
      node.children.push_back(Child::of_node(2 * n + 2));
    } else {
      const int leaf = 2 * (n - bottom_first);
      node.children.push_back(Child::of_leaf(leaf));
      node.children.push_back(Child::of_leaf(leaf + 1));
    }
  }
  return tree;
}

int TensorNetwork::max_bond_dimension() const {
  int best = 0;
  for (const auto& t : node_tensors) {
    for (const auto& d : t.domains) best = std::max(best, d.size());
  }
  return best;
}

std::uint64_t TensorNetwork::nonzero_count() const {
  std::uint64_t total = 0;
  for (const auto& t : node_tensors) total += t.entries.size();
  for (const auto& s : leaf_tensors) total += s.entries.size();
  return total;
}

TensorNetwork build_mps(const BetheData& data, const LatticePartition& partition, bool homogeneous) {
  return make_mps(data, partition, homogeneous);
}
TensorNetwork build_mps(const GeneralizedBetheData& data, const LatticePartition& partition,
                        bool homogeneous) {
  return make_mps(data, partition, homogeneous);
}

TensorNetwork build_binary_ttn(const BetheData& data, const LatticePartition& partition,
                               bool homogeneous) {
  return make_binary_ttn(data, partition, homogeneous);
}
TensorNetwork build_binary_ttn(const GeneralizedBetheData& data, const LatticePartition& partition,
                               bool homogeneous) {
  return make_binary_ttn(data, partition, homogeneous);
}

TensorNetwork build_planar_ttn(const BetheData& data, const LatticePartition& partition,
                               const PlanarTree& tree) {
  return make_planar(data, partition, tree);
}
TensorNetwork build_planar_ttn(const GeneralizedBetheData& data, const LatticePartition& partition,
                               const PlanarTree& tree) {
  return make_planar(data, partition, tree);
}

DenseState contract_to_dense(const TensorNetwork& net) {
  if (binomial(net.partition.N, net.M) > oracle_max()) {
    throw std::invalid_argument("contract_to_dense: basis size exceeds oracle bound");
  }
  std::vector<Cover> cover(net.tree.nodes.size());
  compute_cover(net, 0, cover);
  BlockMap top = contract_node(net, 0, {net.root_choice}, cover);
  const auto it = top.find(net.root_choice);
  if (it != top.end()) return it->second;

  std::vector<int> labels(static_cast<std::size_t>(net.partition.N));
  std::iota(labels.begin(), labels.end(), 1);
  return DenseState(net.M, labels);  // identically zero
}

}  // namespace bethe
