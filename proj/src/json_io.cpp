// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/json_io.hpp"

#include <fstream>

namespace bethe {

namespace {

std::pair<int, int> parse_pair_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) {
    throw std::runtime_error("theta key '" + key + "' is not of the form \"j2,j1\"");
  }
  const int j2 = std::stoi(key.substr(0, comma));
  const int j1 = std::stoi(key.substr(comma + 1));
  if (j1 < 1 || j2 <= j1) {
    throw std::runtime_error("theta key '" + key + "' must satisfy j2 > j1 >= 1");
  }
  return {j2, j1};
}

std::string pair_key(int j2, int j1) { return std::to_string(j2) + "," + std::to_string(j1); }

Json child_to_json(const PlanarTree& t, const PlanarTree::Child& c) {
  switch (c.kind) {
    case PlanarTree::Child::Kind::leaf:
      return Json{{"leaf", c.index + 1}};  // 1-based in files
    case PlanarTree::Child::Kind::pin:
      return Json{{"pin", c.pin}};
    case PlanarTree::Child::Kind::node: {
      Json children = Json::array();
      for (const auto& cc : t.nodes[static_cast<std::size_t>(c.index)].children) {
        children.push_back(child_to_json(t, cc));
      }
      return Json{{"children", children}};
    }
  }
  throw std::logic_error("child_to_json: bad child kind");
}

PlanarTree::Child child_from_json(const Json& j, PlanarTree& t) {
  if (j.contains("leaf")) return PlanarTree::Child::of_leaf(j.at("leaf").get<int>() - 1);
  if (j.contains("pin")) return PlanarTree::Child::of_pin(j.at("pin").get<Choice>());
  if (j.contains("children")) {
    const int id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    std::vector<PlanarTree::Child> children;
    for (const auto& cj : j.at("children")) children.push_back(child_from_json(cj, t));
    t.nodes[static_cast<std::size_t>(id)].children = std::move(children);
    return PlanarTree::Child::of_node(id);
  }
  throw std::runtime_error("tree child must contain one of: leaf, pin, children");
}

Json domain_to_json(const ChoiceDomain& d) {
  Json out = Json::array();
  for (Choice c : d.choices()) out.push_back(c);
  return out;
}

ChoiceDomain domain_from_json(const Json& j, int num_symbols) {
  std::vector<Choice> masks;
  for (const auto& v : j) masks.push_back(v.get<Choice>());
  return ChoiceDomain::from_choices(num_symbols, std::move(masks));
}

}  // namespace

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

Json bethe_data_to_json(const BetheData& d) {
  Json theta = Json::object();
  for (int j2 = 2; j2 <= d.M; ++j2) {
    for (int j1 = 1; j1 < j2; ++j1) theta[pair_key(j2, j1)] = d.theta_angle(j2, j1);
  }
  return Json{{"M", d.M}, {"k", d.k}, {"theta", theta}};
}

BetheData bethe_data_from_json(const Json& j) {
  BetheData d;
  d.M = j.at("M").get<int>();
  d.k = j.at("k").get<std::vector<double>>();
  d.theta.assign(static_cast<std::size_t>(d.M * (d.M - 1) / 2), 0.0);
  std::size_t seen = 0;
  for (const auto& [key, value] : j.at("theta").items()) {
    const auto [j2, j1] = parse_pair_key(key);
    if (j2 > d.M) throw std::runtime_error("theta key '" + key + "' exceeds M");
    d.theta[static_cast<std::size_t>(pair_index(j2, j1))] = value.get<double>();
    ++seen;
  }
  if (seen != d.theta.size()) {
    throw std::runtime_error("theta must contain exactly M(M-1)/2 entries");
  }
  d.validate();
  return d;
}

Json generalized_data_to_json(const GeneralizedBetheData& d) {
  Json phi = Json::array();
  for (int r = 0; r < d.M; ++r) {
    Json row = Json::array();
    for (int c = 0; c < d.N; ++c) row.push_back(complex_to_json(d.phi(r, c)));
    phi.push_back(row);
  }
  Json theta = Json::object();
  for (int j2 = 2; j2 <= d.M; ++j2) {
    for (int j1 = 1; j1 < j2; ++j1) theta[pair_key(j2, j1)] = complex_to_json(d.theta_angle(j2, j1));
  }
  return Json{{"M", d.M}, {"N", d.N}, {"phi", phi}, {"theta", theta}};
}

GeneralizedBetheData generalized_data_from_json(const Json& j) {
  GeneralizedBetheData d;
  d.M = j.at("M").get<int>();
  d.N = j.at("N").get<int>();
  const Json& phi = j.at("phi");
  if (static_cast<int>(phi.size()) != d.M) throw std::runtime_error("phi must have M rows");
  d.phi.resize(d.M, d.N);
  for (int r = 0; r < d.M; ++r) {
    const Json& row = phi.at(static_cast<std::size_t>(r));
    if (static_cast<int>(row.size()) != d.N) throw std::runtime_error("phi rows must have N entries");
    for (int c = 0; c < d.N; ++c) d.phi(r, c) = complex_from_json(row.at(static_cast<std::size_t>(c)));
  }
  d.theta.assign(static_cast<std::size_t>(d.M * (d.M - 1) / 2), Complex(0.0, 0.0));
  std::size_t seen = 0;
  for (const auto& [key, value] : j.at("theta").items()) {
    const auto [j2, j1] = parse_pair_key(key);
    if (j2 > d.M) throw std::runtime_error("theta key '" + key + "' exceeds M");
    d.theta[static_cast<std::size_t>(pair_index(j2, j1))] = complex_from_json(value);
    ++seen;
  }
  if (seen != d.theta.size()) {
    throw std::runtime_error("theta must contain exactly M(M-1)/2 entries");
  }
  d.validate();
  return d;
}

Json wave_data_to_json(const WaveData& d) {
  return std::visit(
      [](const auto& x) -> Json {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, BetheData>) {
          return bethe_data_to_json(x);
        } else {
          return generalized_data_to_json(x);
        }
      },
      d);
}

WaveData wave_data_from_json(const Json& j) {
  if (j.contains("phi")) return generalized_data_from_json(j);
  return bethe_data_from_json(j);
}

Json dense_state_to_json(const DenseState& s) {
  Json amps = Json::array();
  const int m = s.particles;
  if (m == 0) {
    amps.push_back(Json{{"x", Json::array()}, {"re", s.amps[0].real()}, {"im", s.amps[0].imag()}});
  } else {
    std::vector<int> x(static_cast<std::size_t>(m));
    std::iota(x.begin(), x.end(), 1);
    std::uint64_t rank = 0;
    do {
      Json positions = Json::array();
      for (int pos : x) positions.push_back(s.sites[static_cast<std::size_t>(pos - 1)]);
      const Complex a = s.amps[static_cast<Eigen::Index>(rank++)];
      amps.push_back(Json{{"x", positions}, {"re", a.real()}, {"im", a.imag()}});
    } while (next_config(x, s.num_sites()));
  }
  Json out{{"N", s.num_sites()}, {"M", m}, {"amps", amps}};
  if (!s.is_global()) out["sites"] = s.sites;
  return out;
}

DenseState dense_state_from_json(const Json& j) {
  const int n = j.at("N").get<int>();
  const int m = j.at("M").get<int>();
  std::vector<int> sites;
  if (j.contains("sites")) {
    sites = j.at("sites").get<std::vector<int>>();
  } else {
    sites.resize(static_cast<std::size_t>(n));
    std::iota(sites.begin(), sites.end(), 1);
  }
  if (binomial(n, m) > oracle_max()) throw std::runtime_error("dense state exceeds oracle bound");
  DenseState s(m, sites);
  for (const auto& entry : j.at("amps")) {
    std::vector<int> x;
    for (const auto& v : entry.at("x")) {
      const int site = v.get<int>();
      const auto it = std::lower_bound(s.sites.begin(), s.sites.end(), site);
      if (it == s.sites.end() || *it != site) throw std::runtime_error("amplitude site not in support");
      x.push_back(static_cast<int>(it - s.sites.begin()) + 1);
    }
    if (static_cast<int>(x.size()) != m) throw std::runtime_error("amplitude key has wrong length");
    s.amp(x) = Complex(entry.at("re").get<double>(), entry.at("im").get<double>());
  }
  return s;
}

Json terms_to_json(std::span<const DecompositionTerm> terms) {
  Json out = Json::array();
  for (const auto& t : terms) {
    Json choices = Json::array();
    for (Choice c : t.choices) choices.push_back(choice_symbols(c));
    out.push_back(Json{{"choices", choices}, {"coeff", complex_to_json(t.coeff)}});
  }
  return out;
}

Json tensor_to_json(const SparseChoiceTensor& t) {
  Json domains = Json::array();
  int num_symbols = 0;
  for (const auto& d : t.domains) {
    domains.push_back(domain_to_json(d));
    num_symbols = std::max(num_symbols, d.num_symbols());
  }
  Json entries = Json::array();
  for (const auto& [key, value] : t.entries) {
    entries.push_back(Json{{"idx", key}, {"re", value.real()}, {"im", value.imag()}});
  }
  return Json{{"arity", t.arity()}, {"M", num_symbols}, {"domains", domains}, {"entries", entries}};
}

SparseChoiceTensor tensor_from_json(const Json& j) {
  SparseChoiceTensor t;
  const int num_symbols = j.at("M").get<int>();
  for (const auto& dj : j.at("domains")) t.domains.push_back(domain_from_json(dj, num_symbols));
  if (j.at("arity").get<int>() != t.arity()) throw std::runtime_error("tensor arity mismatch");
  for (const auto& entry : j.at("entries")) {
    std::vector<Choice> idx = entry.at("idx").get<std::vector<Choice>>();
    if (idx.size() != t.domains.size()) throw std::runtime_error("tensor entry arity mismatch");
    t.entries[std::move(idx)] =
        Complex(entry.at("re").get<double>(), entry.at("im").get<double>());
  }
  return t;
}

Json site_tensor_to_json(const SiteBasisTensor& s) {
  Json entries = Json::array();
  for (const auto& [key, value] : s.entries) {
    entries.push_back(Json{{"choice", key.first},
                           {"sigma", key.second},
                           {"re", value.real()},
                           {"im", value.imag()}});
  }
  return Json{{"M", s.domain.num_symbols()},
              {"domain", domain_to_json(s.domain)},
              {"first_site", s.first_site},
              {"num_sites", s.num_sites},
              {"relative", s.relative},
              {"entries", entries}};
}

SiteBasisTensor site_tensor_from_json(const Json& j) {
  SiteBasisTensor s;
  s.domain = domain_from_json(j.at("domain"), j.at("M").get<int>());
  s.first_site = j.at("first_site").get<int>();
  s.num_sites = j.at("num_sites").get<int>();
  s.relative = j.at("relative").get<bool>();
  for (const auto& entry : j.at("entries")) {
    s.entries[{entry.at("choice").get<Choice>(), entry.at("sigma").get<std::uint64_t>()}] =
        Complex(entry.at("re").get<double>(), entry.at("im").get<double>());
  }
  return s;
}

Json tree_to_json(const PlanarTree& t) {
  Json children = Json::array();
  for (const auto& c : t.nodes[0].children) children.push_back(child_to_json(t, c));
  return Json{{"leaves", t.num_leaves}, {"root", Json{{"children", children}}}};
}

PlanarTree tree_from_json(const Json& j) {
  PlanarTree t;
  t.num_leaves = j.at("leaves").get<int>();
  t.nodes.emplace_back();
  std::vector<PlanarTree::Child> children;
  for (const auto& cj : j.at("root").at("children")) children.push_back(child_from_json(cj, t));
  t.nodes[0].children = std::move(children);
  t.validate();
  return t;
}

namespace {

const char* kind_name(TensorNetwork::Kind k) {
  switch (k) {
    case TensorNetwork::Kind::mps: return "mps";
    case TensorNetwork::Kind::binary_ttn: return "binary_ttn";
    case TensorNetwork::Kind::planar_ttn: return "planar_ttn";
  }
  return "mps";
}

TensorNetwork::Kind kind_from_name(const std::string& s) {
  if (s == "mps") return TensorNetwork::Kind::mps;
  if (s == "binary_ttn") return TensorNetwork::Kind::binary_ttn;
  if (s == "planar_ttn") return TensorNetwork::Kind::planar_ttn;
  throw std::runtime_error("unknown network kind '" + s + "'");
}

}  // namespace

Json network_to_json(const TensorNetwork& n) {
  Json node_tensors = Json::array();
  for (const auto& t : n.node_tensors) node_tensors.push_back(tensor_to_json(t));
  Json leaf_tensors = Json::array();
  for (const auto& s : n.leaf_tensors) leaf_tensors.push_back(site_tensor_to_json(s));
  return Json{{"schema_version", 1},
              {"type", "network"},
              {"kind", kind_name(n.kind)},
              {"homogeneous", n.homogeneous},
              {"M", n.M},
              {"N", n.partition.N},
              {"partition", n.partition.parts},
              {"root_choice", n.root_choice},
              {"tree", tree_to_json(n.tree)},
              {"node_tensors", node_tensors},
              {"leaf_tensors", leaf_tensors}};
}

TensorNetwork network_from_json(const Json& j) {
  if (j.value("type", "") != "network") throw std::runtime_error("file is not a network artifact");
  TensorNetwork n;
  n.kind = kind_from_name(j.at("kind").get<std::string>());
  n.homogeneous = j.at("homogeneous").get<bool>();
  n.M = j.at("M").get<int>();
  n.partition = LatticePartition(j.at("N").get<int>(), j.at("partition").get<std::vector<int>>());
  n.root_choice = j.at("root_choice").get<Choice>();
  n.tree = tree_from_json(j.at("tree"));
  for (const auto& tj : j.at("node_tensors")) n.node_tensors.push_back(tensor_from_json(tj));
  for (const auto& sj : j.at("leaf_tensors")) n.leaf_tensors.push_back(site_tensor_from_json(sj));
  if (n.node_tensors.size() != n.tree.nodes.size()) {
    throw std::runtime_error("network: one tensor per tree node required");
  }
  if (static_cast<int>(n.leaf_tensors.size()) != n.tree.num_leaves) {
    throw std::runtime_error("network: one tensor per leaf required");
  }
  return n;
}

Json circuit_to_json(const QuantumCircuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < g.unitary.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index col = 0; col < g.unitary.cols(); ++col) {
        row.push_back(complex_to_json(g.unitary(r, col)));
      }
      rows.push_back(row);
    }
    gates.push_back(Json{{"layer", g.layer},
                         {"kind", g.kind == QuditGate::Kind::one_qudit ? "one_qudit" : "two_qudit"},
                         {"targets", g.targets},
                         {"unitary", rows}});
  }
  return Json{{"schema_version", 1}, {"type", "circuit"},   {"N", c.N},
              {"M", c.M},            {"num_qudits", c.num_qudits}, {"D", c.D},
              {"depth", c.depth},    {"gates", gates}};
}

QuantumCircuit circuit_from_json(const Json& j) {
  if (j.value("type", "") != "circuit") throw std::runtime_error("file is not a circuit artifact");
  QuantumCircuit c;
  c.N = j.at("N").get<int>();
  c.M = j.at("M").get<int>();
  c.num_qudits = j.at("num_qudits").get<int>();
  c.D = j.at("D").get<int>();
  c.depth = j.at("depth").get<int>();
  for (const auto& gj : j.at("gates")) {
    QuditGate g;
    g.layer = gj.at("layer").get<int>();
    g.kind = gj.at("kind").get<std::string>() == "one_qudit" ? QuditGate::Kind::one_qudit
                                                             : QuditGate::Kind::two_qudit;
    g.targets = gj.at("targets").get<std::vector<int>>();
    const Json& rows = gj.at("unitary");
    const Eigen::Index dim = static_cast<Eigen::Index>(rows.size());
    g.unitary.resize(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Json& row = rows.at(static_cast<std::size_t>(r));
      for (Eigen::Index col = 0; col < dim; ++col) {
        g.unitary(r, col) = complex_from_json(row.at(static_cast<std::size_t>(col)));
      }
    }
    c.gates.push_back(std::move(g));
  }
  return c;
}

RunConfig config_from_json(const Json& j) {
  if (j.value("schema_version", 0) != 1) {
    throw std::runtime_error("config: schema_version 1 required");
  }
  RunConfig c;
  c.data = wave_data_from_json(j.at("data"));
  if (std::holds_alternative<GeneralizedBetheData>(c.data)) {
    c.N = std::get<GeneralizedBetheData>(c.data).N;
    if (j.contains("N") && j.at("N").get<int>() != c.N) {
      throw std::runtime_error("config: N differs from the lattice size of phi");
    }
  } else {
    if (!j.contains("N")) throw std::runtime_error("config: N is required for plane-wave data");
    c.N = j.at("N").get<int>();
  }
  if (j.contains("partition")) {
    c.partition = LatticePartition(c.N, j.at("partition").get<std::vector<int>>());
  } else {
    c.partition = LatticePartition::single_sites(c.N);
  }
  if (j.contains("ring")) {
    const Json& r = j.at("ring");
    c.has_ring = true;
    c.ring = RingPartition(c.N, r.at("first_left").get<int>(), r.at("first_right").get<int>(),
                           r.at("middle").get<std::vector<int>>());
  }
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json out{{"schema_version", 1}, {"N", c.N}, {"data", wave_data_to_json(c.data)},
           {"partition", c.partition.parts}};
  if (c.has_ring) {
    out["ring"] = Json{{"first_left", c.ring.first_left},
                       {"first_right", c.ring.first_right},
                       {"middle", c.ring.middle}};
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return Json::parse(in);  // parse errors carry byte positions
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace bethe
