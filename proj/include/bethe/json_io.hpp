// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <string>

#include "bethe/circuit.hpp"
#include "bethe/decomposition.hpp"
#include "bethe/network.hpp"

namespace bethe {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json bethe_data_to_json(const BetheData& d);
BetheData bethe_data_from_json(const Json& j);
Json generalized_data_to_json(const GeneralizedBetheData& d);
GeneralizedBetheData generalized_data_from_json(const Json& j);
Json wave_data_to_json(const WaveData& d);
WaveData wave_data_from_json(const Json& j);

Json dense_state_to_json(const DenseState& s);
DenseState dense_state_from_json(const Json& j);

/// Terms serialize as a plain list of {"choices": [[symbols]], "coeff": {re, im}}.
Json terms_to_json(std::span<const DecompositionTerm> terms);

Json tensor_to_json(const SparseChoiceTensor& t);
SparseChoiceTensor tensor_from_json(const Json& j);
Json site_tensor_to_json(const SiteBasisTensor& s);
SiteBasisTensor site_tensor_from_json(const Json& j);

Json tree_to_json(const PlanarTree& t);
PlanarTree tree_from_json(const Json& j);

Json network_to_json(const TensorNetwork& n);
TensorNetwork network_from_json(const Json& j);

Json circuit_to_json(const QuantumCircuit& c);
QuantumCircuit circuit_from_json(const Json& j);

/// Run configuration: the wavefunction data plus the lattice partition used
/// by partition-dependent commands. schema_version 1.
struct RunConfig {
  WaveData data;
  int N = 0;
  LatticePartition partition;  // defaults to single sites
  bool has_ring = false;
  RingPartition ring;
};

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace bethe
