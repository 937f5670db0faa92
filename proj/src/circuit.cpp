// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/circuit.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>

#include "bethe/dense_state.hpp"

namespace bethe {

namespace {

constexpr double kOrthoTol = 1e-9;

/// S tensor as a (physical bitstring) x (choice position) matrix.
Eigen::MatrixXcd site_matrix(const SiteBasisTensor& s) {
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(Eigen::Index{1} << s.num_sites, s.domain.size());
  for (const auto& [key, value] : s.entries) {
    out(static_cast<Eigen::Index>(key.second), s.domain.position_of(key.first)) = value;
  }
  return out;
}

/// Splitting tensor as a (a,b)-row, c-column matrix.
Eigen::MatrixXcd t_matrix(const SparseChoiceTensor& t) {
  const int da = t.domains[1].size();
  const int db = t.domains[2].size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da * db, t.domains[0].size());
  for (const auto& [key, value] : t.entries) {
    out(t.domains[1].position_of(key[1]) * db + t.domains[2].position_of(key[2]),
        t.domains[0].position_of(key[0])) = value;
  }
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Thin QR with the diagonal of the triangular factor made real and
/// non-negative.
void thin_qr(const Eigen::MatrixXcd& f, Eigen::MatrixXcd& q, Eigen::MatrixXcd& r) {
  const Eigen::Index cols = f.cols();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(f);
  q = qr.householderQ() * Eigen::MatrixXcd::Identity(f.rows(), cols);
  r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > kAbsTol) {
      const Complex phase = d / std::abs(d);
      q.col(j) *= phase;
      r.row(j) *= std::conj(phase);
    }
  }
}

/// Extend a set of orthonormal columns (placed in `u` at `filled`) to a full
/// unitary, assigning completion vectors to the unfilled columns in order.
void complete_unitary(Eigen::MatrixXcd& u, const std::vector<bool>& filled) {
  const Eigen::Index dim = u.rows();
  std::vector<Eigen::Index> basis_cols;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (filled[static_cast<std::size_t>(c)]) basis_cols.push_back(c);
  }
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (!filled[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }
  std::size_t next_free = 0;
  for (Eigen::Index cand = 0; cand < dim && next_free < free_cols.size(); ++cand) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(cand) = Complex(1.0, 0.0);
    for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize for stability
      for (Eigen::Index c : basis_cols) v -= u.col(c).dot(v) * u.col(c);
    }
    const double norm = v.norm();
    if (norm > 1e-6) {
      u.col(free_cols[next_free]) = v / norm;
      basis_cols.push_back(free_cols[next_free]);
      ++next_free;
    }
  }
  if (next_free != free_cols.size()) {
    throw std::runtime_error("complete_unitary: completion failed");
  }
}

Eigen::MatrixXcd prep_unitary(const Eigen::VectorXcd& column) {
  const Eigen::Index dim = column.size();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  u.col(0) = column / column.norm();
  std::vector<bool> filled(static_cast<std::size_t>(dim), false);
  filled[0] = true;
  complete_unitary(u, filled);
  return u;
}

/// Amplitudes of the wavefunction of one M-site block as a qudit column.
Eigen::VectorXcd block_column(const BetheData& data, int num_sites) {
  const SiteBasisTensor s = build_s(data, ChoiceDomain::full(data.M), 1, num_sites);
  return site_matrix(s).col(s.domain.position_of(full_choice(data.M)));
}

}  // namespace

CanonicalTtn canonicalize(const TensorNetwork& net) {
  if (net.kind != TensorNetwork::Kind::binary_ttn || !net.homogeneous) {
    throw std::invalid_argument("canonicalize: need a homogeneous regular binary tree");
  }
  const int m = net.M;
  const int num_parts = net.partition.size();
  int depth = 0;
  while ((1 << depth) < num_parts) ++depth;

  CanonicalTtn canon;
  if (m == 0) {
    canon.isometries.assign(static_cast<std::size_t>(depth), Eigen::MatrixXcd::Ones(1, 1));
    canon.factors.assign(static_cast<std::size_t>(depth), Eigen::MatrixXcd::Ones(1, 1));
    canon.top = Eigen::VectorXcd::Ones(1);
    return canon;
  }
  if (!net.partition.is_uniform() || net.partition.part_size(0) != m) {
    throw std::invalid_argument("canonicalize: parts must span exactly M sites");
  }

  const int dim = 1 << m;
  canon.isometries.resize(static_cast<std::size_t>(depth));
  canon.factors.resize(static_cast<std::size_t>(depth));

  Eigen::MatrixXcd below = site_matrix(net.leaf_tensors[0]);
  if (below.rows() != dim || below.cols() != dim) {
    throw std::invalid_argument("canonicalize: unexpected leaf dimensions");
  }
  for (int z = depth - 1; z >= 0; --z) {
    const int node = (1 << z) - 1;
    const Eigen::MatrixXcd f = kron(below, below) * t_matrix(net.node_tensors[static_cast<std::size_t>(node)]);
    Eigen::MatrixXcd q, r;
    thin_qr(f, q, r);
    canon.isometries[static_cast<std::size_t>(z)] = std::move(q);
    canon.factors[static_cast<std::size_t>(z)] = r;
    below = std::move(r);
  }
  canon.top = canon.factors[0].col(
      net.node_tensors[0].domains[0].position_of(net.root_choice));
  return canon;
}

Eigen::MatrixXcd embed_isometry(const Eigen::MatrixXcd& w, GateOrientation orientation) {
  const Eigen::Index cols = w.cols();
  const Eigen::Index rows = w.rows();
  if (rows != cols * cols) {
    throw std::invalid_argument("embed_isometry: expected a D^2 x D map");
  }
  const double residual = (w.adjoint() * w - Eigen::MatrixXcd::Identity(cols, cols)).norm();
  if (residual > kOrthoTol) throw std::invalid_argument("embed_isometry: input is not an isometry");

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(rows, rows);
  std::vector<bool> filled(static_cast<std::size_t>(rows), false);
  for (Eigen::Index alpha = 0; alpha < cols; ++alpha) {
    const Eigen::Index col = orientation == GateOrientation::left ? alpha * cols : alpha;
    u.col(col) = w.col(alpha);
    filled[static_cast<std::size_t>(col)] = true;
  }
  complete_unitary(u, filled);
  return u;
}

QuantumCircuit compile_circuit(const BetheData& data, int num_sites, GateOrientation orientation) {
  data.validate();
  const int m = data.M;
  QuantumCircuit circuit;
  circuit.N = num_sites;
  circuit.M = m;
  if (m == 0) {
    circuit.num_qudits = 1;
    circuit.D = 1;
    circuit.depth = 0;
    return circuit;
  }
  if (num_sites % m != 0) throw std::invalid_argument("compile_circuit: N must equal M 2^Z");
  const int num_qudits = num_sites / m;
  if (num_qudits < 1 || (num_qudits & (num_qudits - 1)) != 0) {
    throw std::invalid_argument("compile_circuit: N must equal M 2^Z");
  }
  int depth = 0;
  while ((1 << depth) < num_qudits) ++depth;

  circuit.num_qudits = num_qudits;
  circuit.D = 1 << m;
  circuit.depth = depth;

  // carrier wire: leftmost qudit of a block for the left orientation,
  // rightmost for the right one
  const auto carrier = [&](int block_start, int block_width) {
    return orientation == GateOrientation::left ? block_start : block_start + block_width - 1;
  };

  if (num_qudits == 1) {
    QuditGate prep;
    prep.kind = QuditGate::Kind::one_qudit;
    prep.layer = 0;
    prep.targets = {0};
    prep.unitary = prep_unitary(block_column(data, m));
    circuit.gates.push_back(std::move(prep));
    return circuit;
  }

  const TensorNetwork net =
      build_binary_ttn(data, LatticePartition::uniform(num_qudits, m), /*homogeneous=*/true);
  const CanonicalTtn canon = canonicalize(net);

  QuditGate prep;
  prep.kind = QuditGate::Kind::one_qudit;
  prep.layer = 0;
  prep.targets = {carrier(0, num_qudits)};
  prep.unitary = prep_unitary(canon.top);
  circuit.gates.push_back(std::move(prep));

  for (int z = 0; z < depth; ++z) {
    const int width = num_qudits >> z;
    const Eigen::MatrixXcd u = embed_isometry(canon.isometries[static_cast<std::size_t>(z)], orientation);
    for (int block = 0; block < (1 << z); ++block) {
      const int start = block * width;
      const int left_wire = carrier(start, width / 2);
      const int right_wire = carrier(start + width / 2, width / 2);
      QuditGate gate;
      gate.kind = QuditGate::Kind::two_qudit;
      gate.layer = z;
      // the carried state enters on the first wire for the left form and on
      // the second wire for the right form; the other wire starts in |0..0>
      gate.targets = {left_wire, right_wire};
      gate.unitary = u;
      circuit.gates.push_back(std::move(gate));
    }
  }
  return circuit;
}

Eigen::VectorXcd simulate_statevector(const QuantumCircuit& circuit) {
  const int dim = circuit.D;
  double qubits = std::log2(static_cast<double>(dim)) * circuit.num_qudits;
  if (qubits > 20.5) throw std::invalid_argument("simulate_statevector: state too large");

  Eigen::Index total = 1;
  for (int i = 0; i < circuit.num_qudits; ++i) total *= dim;
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(total);
  state(0) = Complex(1.0, 0.0);

  const auto stride = [&](int qudit) {
    Eigen::Index s = 1;
    for (int i = circuit.num_qudits - 1; i > qudit; --i) s *= dim;
    return s;
  };

  for (const auto& gate : circuit.gates) {
    if (gate.kind == QuditGate::Kind::one_qudit) {
      const Eigen::Index s = stride(gate.targets[0]);
      Eigen::VectorXcd scratch(dim);
      for (Eigen::Index base = 0; base < total; ++base) {
        if ((base / s) % dim != 0) continue;
        for (int q = 0; q < dim; ++q) scratch(q) = state(base + q * s);
        scratch = gate.unitary * scratch;
        for (int q = 0; q < dim; ++q) state(base + q * s) = scratch(q);
      }
    } else {
      const Eigen::Index s1 = stride(gate.targets[0]);
      const Eigen::Index s2 = stride(gate.targets[1]);
      Eigen::VectorXcd scratch(dim * dim);
      for (Eigen::Index base = 0; base < total; ++base) {
        if ((base / s1) % dim != 0 || (base / s2) % dim != 0) continue;
        for (int q1 = 0; q1 < dim; ++q1) {
          for (int q2 = 0; q2 < dim; ++q2) scratch(q1 * dim + q2) = state(base + q1 * s1 + q2 * s2);
        }
        scratch = gate.unitary * scratch;
        for (int q1 = 0; q1 < dim; ++q1) {
          for (int q2 = 0; q2 < dim; ++q2) state(base + q1 * s1 + q2 * s2) = scratch(q1 * dim + q2);
        }
      }
    }
  }
  return state;
}

double preparation_fidelity(const BetheData& data, int num_sites, GateOrientation orientation) {
  const QuantumCircuit circuit = compile_circuit(data, num_sites, orientation);
  const Eigen::VectorXcd state = simulate_statevector(circuit);

  DenseState oracle = build_dense_bethe(data, num_sites);
  const double norm = std::sqrt(inner_product(oracle, oracle).real());
  if (norm == 0.0) throw std::runtime_error("preparation_fidelity: oracle state vanishes");
  oracle.amps /= norm;

  if (data.M == 0) return std::norm(state(0) * std::conj(oracle.amps[0]));

  const int m = data.M;
  const int dim = circuit.D;
  Complex overlap(0.0, 0.0);
  std::vector<int> config;
  for (Eigen::Index idx = 0; idx < state.size(); ++idx) {
    if (state(idx) == Complex(0.0, 0.0)) continue;
    config.clear();
    Eigen::Index rest = idx;
    for (int qudit = circuit.num_qudits - 1; qudit >= 0; --qudit) {
      const int digit = static_cast<int>(rest % dim);
      rest /= dim;
      for (int bit = 0; bit < m; ++bit) {
        if (digit & (1 << bit)) config.push_back(qudit * m + bit + 1);
      }
    }
    if (static_cast<int>(config.size()) != m) continue;  // out-of-sector residue
    std::sort(config.begin(), config.end());
    overlap += std::conj(oracle.amp(config)) * state(idx);
  }
  return std::norm(overlap);
}

double verify_preparation(const BetheData& data, int num_sites) {
  const double fidelity = preparation_fidelity(data, num_sites);
  if (fidelity < 1.0 - 1e-9) {
    throw std::runtime_error("verify_preparation: fidelity " + std::to_string(fidelity) +
                             " below threshold");
  }
  return fidelity;
}

}  // namespace bethe
