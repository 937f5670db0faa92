// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bethe/network.hpp"

namespace bethe {

/// One gate of the preparation circuit. Qudits have dimension D = 2^M; the
/// computational basis of a qudit enumerates the occupation bitstrings of
/// its M lattice sites (bit t of the basis index = occupation of the t-th
/// site of the block). layer is the tree scale the gate implements; the
/// one-qudit top preparation shares layer 0 with the root gate.
struct QuditGate {
  enum class Kind { one_qudit, two_qudit };
  Kind kind = Kind::one_qudit;
  int layer = 0;
  std::vector<int> targets;      // qudit indices, 0-based
  Eigen::MatrixXcd unitary;      // D x D or D^2 x D^2
};

/// Preparation circuit acting on L = N/M qudits initialized in |0..0>.
/// depth counts the two-qudit layers, log2(N/M).
struct QuantumCircuit {
  int N = 0;
  int M = 0;
  int num_qudits = 0;
  int D = 1;
  int depth = 0;
  std::vector<QuditGate> gates;  // application order

  int two_qudit_count() const {
    int c = 0;
    for (const auto& g : gates) c += g.kind == QuditGate::Kind::two_qudit ? 1 : 0;
    return c;
  }
};

/// Canonical form of a layer-homogeneous regular binary tree: one isometry
/// per layer (top first) and the top vector whose squared norm is the
/// squared norm of the represented state.
struct CanonicalTtn {
  std::vector<Eigen::MatrixXcd> isometries;  // W[z]: D^2 x D, z = 0..Z-1
  std::vector<Eigen::MatrixXcd> factors;     // S[z]: D x D upper triangular
  Eigen::VectorXcd top;                      // column of S[0] at the full choice
};

/// Bottom-up QR canonicalization; one QR per layer. Requires a homogeneous
/// regular binary tree whose parts each span M sites. The triangular factors
/// are normalized to a real non-negative diagonal; rank-deficient columns
/// keep the orthonormal completion produced by the Householder reflections.
CanonicalTtn canonicalize(const TensorNetwork& net);

/// Which incoming slot of the two-qudit unitary is frozen to |0..0>: `left`
/// pins the second input (gate carries the state on its first wire), `right`
/// pins the first.
enum class GateOrientation { left, right };

/// Completion of a D^2 x D isometry into a D^2 x D^2 unitary whose frozen
/// slice reproduces the isometry.
Eigen::MatrixXcd embed_isometry(const Eigen::MatrixXcd& w, GateOrientation orientation);

/// Full pipeline: homogeneous binary tree (parts of M sites), canonical
/// form, unitary embedding, tree wiring. Requires N = M 2^Z; the vacuum
/// M = 0 compiles to an empty circuit.
QuantumCircuit compile_circuit(const BetheData& data, int num_sites,
                               GateOrientation orientation = GateOrientation::left);

/// Exact statevector over the (2^M)^L computational basis, qudit 0 most
/// significant.
Eigen::VectorXcd simulate_statevector(const QuantumCircuit& circuit);

/// |<oracle normalized | simulated>|^2; throws when below 1 - 1e-9.
double verify_preparation(const BetheData& data, int num_sites);

/// As verify_preparation but without the acceptance threshold.
double preparation_fidelity(const BetheData& data, int num_sites,
                            GateOrientation orientation = GateOrientation::left);

}  // namespace bethe
