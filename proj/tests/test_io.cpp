// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "bethe/json_io.hpp"
#include "bethe/overlap.hpp"
#include "test_support.hpp"

using namespace bethe;
using bethe::testing::random_bethe;
using bethe::testing::random_generalized;
using bethe::testing::spread_partition;

TEST_CASE("bethe data round-trips bit-identically") {
  const BetheData d = random_bethe(3, 7);
  const Json j = bethe_data_to_json(d);
  const BetheData back = bethe_data_from_json(j);
  CHECK(back.M == d.M);
  CHECK(back.k == d.k);        // exact doubles
  CHECK(back.theta == d.theta);
  CHECK(bethe_data_to_json(back).dump() == j.dump());

  Json missing = j;
  missing["theta"].erase("2,1");
  CHECK_THROWS(bethe_data_from_json(missing));
  Json bad_key = j;
  bad_key["theta"]["1,2"] = 0.5;
  CHECK_THROWS(bethe_data_from_json(bad_key));
}

TEST_CASE("generalized data round-trips bit-identically") {
  const GeneralizedBetheData g = random_generalized(2, 5, 9);
  const Json j = generalized_data_to_json(g);
  const GeneralizedBetheData back = generalized_data_from_json(j);
  CHECK(back.phi == g.phi);
  CHECK(back.theta == g.theta);
  CHECK(generalized_data_to_json(back).dump() == j.dump());

  const WaveData w = wave_data_from_json(j);
  CHECK(std::holds_alternative<GeneralizedBetheData>(w));
}

TEST_CASE("dense states round-trip") {
  const BetheData d = random_bethe(2, 11);
  const DenseState s = build_dense_bethe(d, 6);
  const DenseState back = dense_state_from_json(dense_state_to_json(s));
  CHECK(back.sites == s.sites);
  CHECK(back.amps == s.amps);  // exact
}

TEST_CASE("tensors round-trip") {
  const BetheData d = random_bethe(2, 13);
  const ChoiceDomain full = ChoiceDomain::full(2);
  const SparseChoiceTensor t = build_t(d, full, full, full);
  CHECK(tensor_from_json(tensor_to_json(t)) == t);

  const SiteBasisTensor s = build_s(d, full, 3, 2);
  CHECK(site_tensor_from_json(site_tensor_to_json(s)) == s);
}

TEST_CASE("networks round-trip and contract identically") {
  const BetheData d = random_bethe(2, 17);
  for (bool homogeneous : {false, true}) {
    const TensorNetwork net = build_mps(d, LatticePartition::single_sites(6), homogeneous);
    const Json j = network_to_json(net);
    const TensorNetwork back = network_from_json(j);
    CHECK(network_to_json(back).dump() == j.dump());  // canonical form round-trips
    CHECK(max_relative_error(contract_to_dense(back), contract_to_dense(net)) == 0.0);
  }

  const TensorNetwork ttn = build_binary_ttn(d, spread_partition(8, 4));
  const TensorNetwork back = network_from_json(network_to_json(ttn));
  CHECK(std::abs(ttn_overlap(back, back) - ttn_overlap(ttn, ttn)) < 1e-12);

  const TensorNetwork planar =
      build_planar_ttn(d, spread_partition(6, 3), bethe::testing::random_planar_tree(3, 5));
  const TensorNetwork pback = network_from_json(network_to_json(planar));
  CHECK(max_relative_error(contract_to_dense(pback), contract_to_dense(planar)) == 0.0);
}

TEST_CASE("circuits round-trip") {
  const BetheData d = random_bethe(1, 19);
  const QuantumCircuit c = compile_circuit(d, 4);
  const QuantumCircuit back = circuit_from_json(circuit_to_json(c));
  CHECK(back.depth == c.depth);
  CHECK(back.gates.size() == c.gates.size());
  const Eigen::VectorXcd sa = simulate_statevector(c);
  const Eigen::VectorXcd sb = simulate_statevector(back);
  CHECK((sa - sb).norm() == 0.0);
}

TEST_CASE("configs parse with diagnostics") {
  Json j;
  j["schema_version"] = 1;
  j["N"] = 8;
  j["data"] = bethe_data_to_json(random_bethe(2, 23));
  const RunConfig c = config_from_json(j);
  CHECK(c.N == 8);
  CHECK(c.partition.size() == 8);  // defaults to single sites

  j["partition"] = std::vector<int>{4, 4};
  CHECK(config_from_json(j).partition.size() == 2);

  j["ring"] = Json{{"first_left", 1}, {"first_right", 1}, {"middle", std::vector<int>{6}}};
  CHECK(config_from_json(j).has_ring);

  Json bad = j;
  bad["schema_version"] = 2;
  CHECK_THROWS(config_from_json(bad));
  Json bad_partition = j;
  bad_partition["partition"] = std::vector<int>{3, 3};
  CHECK_THROWS(config_from_json(bad_partition));

  // generalized configs carry their own lattice size
  Json gj;
  gj["schema_version"] = 1;
  gj["data"] = generalized_data_to_json(random_generalized(2, 6, 29));
  CHECK(config_from_json(gj).N == 6);
  gj["N"] = 7;
  CHECK_THROWS(config_from_json(gj));
}

TEST_CASE("decomposition terms export") {
  const BetheData d = random_bethe(2, 31);
  const auto terms = bipartite_decompose(d, LatticePartition(6, {3, 3}));
  const Json j = terms_to_json(terms);
  REQUIRE(j.is_array());
  CHECK(j.size() == 4);
  CHECK(j[0].at("choices").size() == 2);
  CHECK(j[0].at("coeff").contains("re"));
}
