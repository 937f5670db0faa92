// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "bethe/json_io.hpp"
#include "bethe/overlap.hpp"

namespace {

using namespace bethe;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

DenseState dense_of(const RunConfig& c) {
  return std::visit(
      [&](const auto& d) -> DenseState {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, BetheData>) {
          return build_dense_bethe(d, c.N);
        } else {
          return build_dense_generalized(d);
        }
      },
      c.data);
}

TensorNetwork mps_of(const RunConfig& c, const LatticePartition& partition, bool homogeneous) {
  return std::visit([&](const auto& d) { return build_mps(d, partition, homogeneous); }, c.data);
}

TensorNetwork ttn_of(const RunConfig& c, const LatticePartition& partition, bool homogeneous) {
  return std::visit([&](const auto& d) { return build_binary_ttn(d, partition, homogeneous); },
                    c.data);
}

TensorNetwork planar_of(const RunConfig& c, const LatticePartition& partition, const PlanarTree& t) {
  return std::visit([&](const auto& d) { return build_planar_ttn(d, partition, t); }, c.data);
}

LatticePartition spread(int n, int parts) {
  std::vector<int> sizes(static_cast<std::size_t>(parts), n / parts);
  for (int i = 0; i < n % parts; ++i) sizes[static_cast<std::size_t>(i)]++;
  return LatticePartition(n, std::move(sizes));
}

/// Largest power-of-two part count (>= 2) for a binary tree over n sites.
int pow2_parts(int n) {
  int l = 1;
  while (2 * l <= n) l *= 2;
  return l;
}

PlanarTree seeded_planar_tree(int num_leaves, std::uint64_t seed) {
  PlanarTree tree;
  tree.num_leaves = num_leaves;
  std::mt19937_64 rng(seed);
  auto split = [&](auto&& self, int lo, int hi) -> PlanarTree::Child {
    if (lo == hi) return PlanarTree::Child::of_leaf(lo);
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int len = hi - lo + 1;
    std::uniform_int_distribution<int> fanout_dist(2, std::min(len, 4));
    const int fanout = fanout_dist(rng);
    std::vector<int> cuts;
    while (static_cast<int>(cuts.size()) < fanout - 1) {
      std::uniform_int_distribution<int> cut_dist(lo, hi - 1);
      const int c = cut_dist(rng);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(hi);
    std::vector<PlanarTree::Child> children;
    int start = lo;
    for (int cut : cuts) {
      children.push_back(self(self, start, cut));
      start = cut + 1;
    }
    tree.nodes[static_cast<std::size_t>(id)].children = std::move(children);
    return PlanarTree::Child::of_node(id);
  };
  if (num_leaves == 1) {
    tree.nodes.emplace_back();
    tree.nodes[0].children = {PlanarTree::Child::of_leaf(0),
                              PlanarTree::Child::of_pin(kEmptyChoice)};
  } else {
    split(split, 0, num_leaves - 1);
  }
  tree.validate();
  return tree;
}

// ---------------------------------------------------------------------------
// build

int cmd_build(const std::string& config_path, const std::string& format,
              const std::string& tree_path, bool homogeneous, const std::string& out) {
  const RunConfig c = config_from_json(load_json_file(config_path));
  if (format == "dense") {
    const DenseState s = dense_of(c);
    std::cout << "dense state: N=" << c.N << " M=" << wave_particles(c.data)
              << " amplitudes=" << s.amps.size() << "\n";
    if (!out.empty()) save_json_file(out, dense_state_to_json(s));
    return 0;
  }

  TensorNetwork net;
  if (format == "mps") {
    net = mps_of(c, c.partition, homogeneous);
  } else if (format == "ttn") {
    net = ttn_of(c, c.partition, homogeneous);
  } else if (format == "planar") {
    if (tree_path.empty()) throw std::runtime_error("--format planar requires --tree");
    net = planar_of(c, c.partition, tree_from_json(load_json_file(tree_path)));
  } else {
    throw std::runtime_error("unknown format '" + format + "'");
  }

  std::uint64_t node_nnz = 0, leaf_nnz = 0;
  for (const auto& t : net.node_tensors) node_nnz += t.entries.size();
  for (const auto& s : net.leaf_tensors) leaf_nnz += s.entries.size();
  std::cout << "network: kind=" << format << " L=" << net.partition.size()
            << " max_bond=" << net.max_bond_dimension() << " bound=" << (1 << net.M)
            << " node_nonzeros=" << node_nnz << " leaf_nonzeros=" << leaf_nnz
            << (net.homogeneous ? " homogeneous" : "") << "\n";
  if (!out.empty()) save_json_file(out, network_to_json(net));
  return 0;
}

// ---------------------------------------------------------------------------
// overlap

int cmd_overlap(const std::string& config_a, const std::string& config_b,
                const std::string& method) {
  const RunConfig a = config_from_json(load_json_file(config_a));
  const RunConfig b = config_from_json(load_json_file(config_b));
  if (a.N != b.N) throw std::runtime_error("overlap: states live on different lattices");

  Complex overlap, self_a, self_b;
  const auto start = Clock::now();
  if (method == "dense") {
    const DenseState sa = dense_of(a);
    const DenseState sb = dense_of(b);
    overlap = inner_product(sa, sb);
    self_a = inner_product(sa, sa);
    self_b = inner_product(sb, sb);
  } else if (method == "mps") {
    const LatticePartition fine = LatticePartition::single_sites(a.N);
    const TensorNetwork na = mps_of(a, fine, false);
    const TensorNetwork nb = mps_of(b, fine, false);
    overlap = mps_overlap(na, nb);
    self_a = mps_overlap(na, na);
    self_b = mps_overlap(nb, nb);
  } else if (method == "ttn") {
    const LatticePartition parts = spread(a.N, pow2_parts(a.N));
    const TensorNetwork na = ttn_of(a, parts, false);
    const TensorNetwork nb = ttn_of(b, parts, false);
    overlap = ttn_overlap(na, nb);
    self_a = ttn_overlap(na, na);
    self_b = ttn_overlap(nb, nb);
  } else if (method == "transfer") {
    const LatticePartition fine = LatticePartition::single_sites(a.N);
    const TensorNetwork na = mps_of(a, fine, true);
    const TensorNetwork nb = mps_of(b, fine, true);
    overlap = homogeneous_mps_overlap(na, nb);
    self_a = homogeneous_mps_overlap(na, na);
    self_b = homogeneous_mps_overlap(nb, nb);
  } else {
    throw std::runtime_error("unknown method '" + method + "'");
  }
  const double elapsed = seconds_since(start);

  const OverlapReport r = make_report(overlap, self_a, self_b);
  Json j{{"re", overlap.real()},       {"im", overlap.imag()}, {"norm_bra", r.norm_bra},
         {"norm_ket", r.norm_ket},     {"fidelity", r.fidelity}, {"method", method},
         {"seconds", elapsed}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// schmidt

int cmd_schmidt(const std::string& config_path, int cut, double tol) {
  const RunConfig c = config_from_json(load_json_file(config_path));
  if (cut <= 0) cut = c.N / 2;
  const DenseState s = dense_of(c);
  const int rank = schmidt_rank(s, cut, tol);
  const int m = wave_particles(c.data);
  Json j{{"N", c.N},     {"M", m},           {"cut", cut},
         {"tol", tol},   {"rank", rank},     {"bound", 1 << m},
         {"within_bound", rank <= (1 << m)}};
  std::cout << j.dump(2) << "\n";
  return rank <= (1 << m) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// decompose

int cmd_decompose(const std::string& config_path, std::string kind, bool check,
                  const std::string& out) {
  const RunConfig c = config_from_json(load_json_file(config_path));
  if (kind == "auto") kind = c.has_ring ? "contiguous" : (c.partition.size() == 2 ? "bipartite" : "multipartite");

  std::vector<DecompositionTerm> terms;
  std::visit(
      [&](const auto& d) {
        if (kind == "bipartite") {
          LatticePartition two = c.partition.size() == 2 ? c.partition : spread(c.N, 2);
          terms = bipartite_decompose(d, two);
          if (check) materialize_factors(d, two, terms);
        } else if (kind == "multipartite") {
          terms = multipartite_decompose(d, c.partition);
          if (check) materialize_factors(d, c.partition, terms);
        } else if (kind == "contiguous") {
          if (!c.has_ring) throw std::runtime_error("contiguous split needs a \"ring\" config entry");
          terms = contiguous_decompose(d, c.ring);
          if (check) materialize_factors(d, c.ring, terms);
        } else {
          throw std::runtime_error("unknown decomposition kind '" + kind + "'");
        }
      },
      c.data);

  std::cout << "decomposition: kind=" << kind << " terms=" << terms.size() << "\n";
  int exit_code = 0;
  if (check) {
    const double err = max_relative_error(reconstruct(terms, c.N), dense_of(c));
    std::cout << "reconstruction max relative error: " << err << "\n";
    exit_code = err <= 1e-10 ? 0 : 1;
  }
  if (!out.empty()) {
    save_json_file(out, terms_to_json(terms));
  } else if (!check) {
    std::cout << terms_to_json(terms).dump(2) << "\n";
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// circuit

int cmd_circuit(const std::string& config_path, const std::string& out, bool verify) {
  const RunConfig c = config_from_json(load_json_file(config_path));
  if (!std::holds_alternative<BetheData>(c.data)) {
    throw std::runtime_error("circuit compilation needs plane-wave data");
  }
  const BetheData& d = std::get<BetheData>(c.data);
  const QuantumCircuit circuit = compile_circuit(d, c.N);
  std::cout << "circuit: qudits=" << circuit.num_qudits << " dim=" << circuit.D
            << " depth=" << circuit.depth << " two_qudit_gates=" << circuit.two_qudit_count()
            << "\n";
  if (!out.empty()) save_json_file(out, circuit_to_json(circuit));
  if (verify) {
    const double fidelity = preparation_fidelity(d, c.N);
    std::cout << "preparation fidelity: " << fidelity << "\n";
    return fidelity >= 1.0 - 1e-9 ? 0 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string name;
  int status = 0;  // 0 pass, 1 fail, 2 skip
  std::string detail;
};

int cmd_verify(const std::string& config_path, const std::string& level,
               const std::string& artifact) {
  const RunConfig c = config_from_json(load_json_file(config_path));
  const int m = wave_particles(c.data);
  const bool plane_wave = std::holds_alternative<BetheData>(c.data);
  std::vector<CheckResult> results;

  const auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();
      r.status = 0;
    } catch (const std::exception& e) {
      r.status = 1;
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  };
  const auto skip = [&](const std::string& name, const std::string& why) {
    results.push_back({name, 2, why});
  };
  const auto expect_small = [](double err, double tol) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << err;
    if (!(err <= tol)) {
      throw std::runtime_error("error " + s.str() + " above tolerance");
    }
    return "max relative error " + s.str();
  };

  const DenseState oracle = dense_of(c);

  run("bipartite-reconstruction", [&] {
    return std::visit(
        [&](const auto& d) {
          auto terms = bipartite_decompose(d, spread(c.N, 2));
          materialize_factors(d, spread(c.N, 2), terms);
          return expect_small(max_relative_error(reconstruct(terms, c.N), oracle), 1e-10);
        },
        c.data);
  });

  if (c.N >= 3) {
    run("tripartite-reconstruction", [&] {
      return std::visit(
          [&](const auto& d) {
            auto terms = multipartite_decompose(d, spread(c.N, 3));
            materialize_factors(d, spread(c.N, 3), terms);
            return expect_small(max_relative_error(reconstruct(terms, c.N), oracle), 1e-10);
          },
          c.data);
    });
    run("ring-reconstruction", [&] {
      return std::visit(
          [&](const auto& d) {
            const RingPartition ring =
                c.has_ring ? c.ring : RingPartition(c.N, 1, 1, {c.N - 2});
            auto terms = contiguous_decompose(d, ring);
            materialize_factors(d, ring, terms);
            return expect_small(max_relative_error(reconstruct(terms, c.N), oracle), 1e-10);
          },
          c.data);
    });
  }

  run("mps-oracle", [&] {
    const TensorNetwork net = mps_of(c, LatticePartition::single_sites(c.N), false);
    return expect_small(max_relative_error(contract_to_dense(net), oracle), 1e-10);
  });
  run("binary-ttn-oracle", [&] {
    const TensorNetwork net = ttn_of(c, spread(c.N, pow2_parts(c.N)), false);
    return expect_small(max_relative_error(contract_to_dense(net), oracle), 1e-10);
  });
  const int planar_trees = level == "full" ? 4 : 1;
  for (int t = 0; t < planar_trees; ++t) {
    run("planar-ttn-oracle-" + std::to_string(t), [&] {
      const int leaves = std::min(5, c.N);
      const TensorNetwork net =
          planar_of(c, spread(c.N, leaves), seeded_planar_tree(leaves, 1000 + static_cast<std::uint64_t>(t)));
      return expect_small(max_relative_error(contract_to_dense(net), oracle), 1e-10);
    });
  }

  run("schmidt-bound", [&] {
    for (int cut = 1; cut < c.N; ++cut) {
      const int rank = schmidt_rank(oracle, cut);
      if (rank > (1 << m)) {
        throw std::runtime_error("rank " + std::to_string(rank) + " above bound at cut " +
                                 std::to_string(cut));
      }
    }
    return std::string("all cuts within 2^M");
  });

  if (plane_wave) {
    run("t-normalization", [&] {
      const BetheData& d = std::get<BetheData>(c.data);
      const ChoiceDomain full = ChoiceDomain::full(m);
      const SparseChoiceTensor t = build_t(d, full, full, full);
      for (const Choice lhs : full.choices()) {
        for (const Choice rhs : full.choices()) {
          Complex sum(0.0, 0.0);
          for (const auto& [key, value] : t.entries) {
            if (key[0] != lhs) continue;
            sum += value * std::conj(t.at(std::vector<Choice>{rhs, key[1], key[2]}));
          }
          const double expect = lhs == rhs ? std::pow(2.0, choice_size(lhs)) : 0.0;
          if (std::abs(sum - Complex(expect, 0.0)) > 1e-12) {
            throw std::runtime_error("normalization violated at " + choice_to_string(lhs));
          }
        }
      }
      return std::string("sum |T|^2 = 2^|c| to 1e-12");
    });
  } else {
    skip("t-normalization", "complex angles have no unit-modulus normalization");
  }

  const bool circuit_applicable = [&] {
    if (!plane_wave || m < 1) return false;
    if (c.N % m != 0) return false;
    const int l = c.N / m;
    return (l & (l - 1)) == 0 && c.N <= 20;
  }();
  if (circuit_applicable) {
    run("circuit-fidelity", [&] {
      const double f = verify_preparation(std::get<BetheData>(c.data), c.N);
      return "fidelity " + std::to_string(f);
    });
  } else {
    skip("circuit-fidelity", plane_wave ? "N is not M 2^Z within simulation bounds"
                                        : "needs plane-wave data");
  }

  if (level == "full" && plane_wave && m >= 1) {
    run("homogeneous-agreement", [&] {
      const LatticePartition fine = LatticePartition::single_sites(c.N);
      const TensorNetwork hom = mps_of(c, fine, true);
      const Complex fast = homogeneous_mps_overlap(hom, hom);
      const Complex dense = inner_product(oracle, oracle);
      const double err = std::abs(fast - dense) / std::abs(dense);
      return expect_small(err, 1e-9);
    });
  }

  if (!artifact.empty()) {
    run("artifact-contract", [&] {
      const TensorNetwork net = network_from_json(load_json_file(artifact));
      if (net.partition.N != c.N || net.M != m) {
        throw std::runtime_error("artifact shape differs from the config");
      }
      return expect_small(max_relative_error(contract_to_dense(net), oracle), 1e-10);
    });
  }

  int failures = 0;
  for (const auto& r : results) {
    const char* tag = r.status == 0 ? "[PASS]" : (r.status == 1 ? "[FAIL]" : "[SKIP]");
    std::cout << tag << " " << r.name << ": " << r.detail << "\n";
    failures += r.status == 1 ? 1 : 0;
  }
  std::cout << (failures == 0 ? "verify: all checks passed\n"
                              : "verify: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench

double time_call(const std::function<void()>& body, int reps) {
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round < 3; ++round) {
    const auto start = Clock::now();
    for (int i = 0; i < reps; ++i) body();
    best = std::min(best, seconds_since(start) / reps);
  }
  return best;
}

int cmd_bench(std::vector<int> particle_counts, std::vector<long long> sizes, int reps,
              std::uint64_t seed, const std::string& out) {
  std::string csv = "method,M,N,reps,seconds_per_call\n";
  for (int m : particle_counts) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(m));
    std::uniform_real_distribution<double> momentum(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::vector<double> k, theta;
    for (int j = 0; j < m; ++j) k.push_back(momentum(rng));
    for (int p = 0; p < m * (m - 1) / 2; ++p) theta.push_back(angle(rng));
    const BetheData da(k, theta);
    BetheData db = da;
    for (double& kk : db.k) kk += 0.1;

    for (long long n : sizes) {
      const auto row = [&](const std::string& method, const std::function<void()>& body) {
        int use_reps = reps;
        if (use_reps <= 0) {
          const auto start = Clock::now();
          body();
          const double once = std::max(seconds_since(start), 1e-7);
          use_reps = std::max(1, static_cast<int>(0.05 / once));
          use_reps = std::min(use_reps, 20000);
        }
        const double t = time_call(body, use_reps);
        csv += method + "," + std::to_string(m) + "," + std::to_string(n) + "," +
               std::to_string(use_reps) + "," + std::to_string(t) + "\n";
      };

      if (binomial(static_cast<int>(n), m) <= oracle_max() && n <= 2048) {
        row("dense", [&] {
          const Complex v = inner_product(build_dense_bethe(da, static_cast<int>(n)),
                                          build_dense_bethe(db, static_cast<int>(n)));
          (void)v;
        });
      } else {
        std::cerr << "bench: dense omitted at N=" << n << " (oracle bound)\n";
      }
      row("mps", [&] {
        const LatticePartition fine = LatticePartition::single_sites(static_cast<int>(n));
        const Complex v = mps_overlap(build_mps(da, fine, true), build_mps(db, fine, true));
        (void)v;
      });
      row("transfer", [&] {
        const LatticePartition tiny = LatticePartition::single_sites(2);
        const Complex v =
            homogeneous_mps_overlap(build_mps(da, tiny, true), build_mps(db, tiny, true), n);
        (void)v;
      });
    }
  }
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out);
    f << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bethe wavefunctions: fractal decompositions, tensor networks, circuits"};
  app.require_subcommand(1);

  std::string config_path, config_b, out, tree_path, artifact;
  std::string format = "mps", method = "dense", kind = "auto", level = "quick";
  bool homogeneous = false, check = false, verify_flag = false;
  int cut = 0, reps = 0;
  double tol = 1e-9;
  std::vector<int> bench_m = {2};
  std::vector<long long> bench_n = {64, 256, 1024};
  std::uint64_t seed = 7;

  auto* build = app.add_subcommand("build", "construct a representation of the configured state");
  build->add_option("config", config_path)->required();
  build->add_option("--format", format)->check(CLI::IsMember({"dense", "mps", "ttn", "planar"}));
  build->add_option("--tree", tree_path);
  build->add_flag("--homogeneous", homogeneous);
  build->add_option("-o,--output", out);

  auto* overlap = app.add_subcommand("overlap", "overlap of two configured states");
  overlap->add_option("config_a", config_path)->required();
  overlap->add_option("config_b", config_b)->required();
  overlap->add_option("--method", method)
      ->check(CLI::IsMember({"dense", "mps", "ttn", "transfer"}));

  auto* schmidt = app.add_subcommand("schmidt", "numerical Schmidt rank at a cut");
  schmidt->add_option("config", config_path)->required();
  schmidt->add_option("--cut", cut);
  schmidt->add_option("--tol", tol);

  auto* decompose = app.add_subcommand("decompose", "fractal decomposition into local factors");
  decompose->add_option("config", config_path)->required();
  decompose->add_option("--kind", kind)
      ->check(CLI::IsMember({"auto", "bipartite", "multipartite", "contiguous"}));
  decompose->add_flag("--check", check);
  decompose->add_option("-o,--output", out);

  auto* circuit = app.add_subcommand("circuit", "compile the preparation circuit");
  circuit->add_option("config", config_path)->required();
  circuit->add_option("-o,--output", out);
  circuit->add_flag("--verify", verify_flag);

  auto* verify = app.add_subcommand("verify", "run the invariant suite on a configuration");
  verify->add_option("config", config_path)->required();
  verify->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--artifact", artifact);

  auto* bench = app.add_subcommand("bench", "time the overlap methods, CSV output");
  bench->add_option("--M", bench_m)->delimiter(',');
  bench->add_option("--N", bench_n)->delimiter(',');
  bench->add_option("--reps", reps);
  bench->add_option("--seed", seed);
  bench->add_option("-o,--output", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(config_path, format, tree_path, homogeneous, out);
    if (overlap->parsed()) return cmd_overlap(config_path, config_b, method);
    if (schmidt->parsed()) return cmd_schmidt(config_path, cut, tol);
    if (decompose->parsed()) return cmd_decompose(config_path, kind, check, out);
    if (circuit->parsed()) return cmd_circuit(config_path, out, verify_flag);
    if (verify->parsed()) return cmd_verify(config_path, level, artifact);
    if (bench->parsed()) return cmd_bench(bench_m, bench_n, reps, seed, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
