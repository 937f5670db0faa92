// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bethe/tensors.hpp"

namespace bethe {

/// Rooted tree with ordered children; leaves are numbered left to right and
/// in-order traversal must visit them in increasing order (planarity). Pin
/// children stand for dangling bond edges frozen to a fixed choice, such as
/// the empty pin closing the right end of an MPS chain.
struct PlanarTree {
  struct Child {
    enum class Kind { node, leaf, pin };
    Kind kind = Kind::leaf;
    int index = -1;  // node id or leaf id
    Choice pin = 0;

    static Child of_node(int id) { return {Kind::node, id, 0}; }
    static Child of_leaf(int id) { return {Kind::leaf, id, 0}; }
    static Child of_pin(Choice c) { return {Kind::pin, -1, c}; }

    bool operator==(const Child&) const = default;
  };
  struct Node {
    std::vector<Child> children;
    bool operator==(const Node&) const = default;
  };

  std::vector<Node> nodes;  // node 0 is attached to the root edge
  int num_leaves = 0;

  void validate() const;

  static PlanarTree chain(int num_parts);
  static PlanarTree regular_binary(int num_parts);  // num_parts = 2^Z

  bool operator==(const PlanarTree&) const = default;
};

/// A planar tree tensor network representing one wavefunction: a splitting
/// tensor per node, a change-of-basis tensor per leaf, and the root edge
/// frozen to the full choice. Homogeneous networks use the shifted tensors,
/// keep full bond domains everywhere, and apply the boundary pins only at
/// contraction time, so that equal-shaped tensors are identical objects.
struct TensorNetwork {
  enum class Kind { mps, binary_ttn, planar_ttn };

  Kind kind = Kind::mps;
  int M = 0;
  LatticePartition partition;
  PlanarTree tree;
  std::vector<SparseChoiceTensor> node_tensors;
  std::vector<SiteBasisTensor> leaf_tensors;
  Choice root_choice = 0;
  bool homogeneous = false;

  int max_bond_dimension() const;
  std::uint64_t nonzero_count() const;
};

/// Chain network of L splitting tensors over the partition, leftmost bond
/// frozen to the full choice and rightmost to the empty one.
TensorNetwork build_mps(const BetheData& data, const LatticePartition& partition,
                        bool homogeneous = false);
TensorNetwork build_mps(const GeneralizedBetheData& data, const LatticePartition& partition,
                        bool homogeneous = false);

/// Regular binary tree network; requires a power-of-two part count. The
/// homogeneous variant uses one shifted tensor per layer, with the shift set
/// by the span of a node's left subtree.
TensorNetwork build_binary_ttn(const BetheData& data, const LatticePartition& partition,
                               bool homogeneous = false);
TensorNetwork build_binary_ttn(const GeneralizedBetheData& data, const LatticePartition& partition,
                               bool homogeneous = false);

/// Network over an arbitrary planar tree; each node of fan-out q gets a
/// q-ary splitting tensor.
TensorNetwork build_planar_ttn(const BetheData& data, const LatticePartition& partition,
                               const PlanarTree& tree);
TensorNetwork build_planar_ttn(const GeneralizedBetheData& data, const LatticePartition& partition,
                               const PlanarTree& tree);

/// Full contraction back to the explicit amplitude table on {1,..,N}.
DenseState contract_to_dense(const TensorNetwork& net);

}  // namespace bethe
