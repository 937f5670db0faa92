// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "bethe/dense_state.hpp"

namespace bethe {

/// One product term of a fractal decomposition: a disjoint choice per part
/// (union = the full choice), a scalar coefficient, and, once materialized,
/// the local factor wavefunctions.
struct DecompositionTerm {
  std::vector<Choice> choices;
  Complex coeff{1.0, 0.0};
  std::vector<DenseState> factors;  // empty until materialized
};

namespace detail {

/// Enumerate symbol -> part assignments in lexicographic order of the
/// assignment vector (p_1,..,p_M), skipping parts over capacity, and call
/// visit(choices).
template <class Visitor>
void for_each_assignment(int num_symbols, std::span<const int> capacities, Visitor&& visit) {
  const int num_parts = static_cast<int>(capacities.size());
  std::vector<int> assign(static_cast<std::size_t>(num_symbols), 0);  // 0-based part ids
  std::vector<Choice> choices(static_cast<std::size_t>(num_parts), 0);
  auto recurse = [&](auto&& self, int symbol) -> void {
    if (symbol > num_symbols) {
      visit(std::span<const Choice>(choices));
      return;
    }
    for (int part = 0; part < num_parts; ++part) {
      if (choice_size(choices[static_cast<std::size_t>(part)]) >= capacities[static_cast<std::size_t>(part)]) continue;
      choices[static_cast<std::size_t>(part)] |= Choice{1} << (symbol - 1);
      assign[static_cast<std::size_t>(symbol - 1)] = part;
      self(self, symbol + 1);
      choices[static_cast<std::size_t>(part)] &= ~(Choice{1} << (symbol - 1));
    }
  };
  recurse(recurse, 1);
}

}  // namespace detail

/// Two-part split with coefficient Theta[a, b]; terms are emitted by growing
/// particle number in part A and convention order within each sector. The
/// particle range is clipped by the part capacities.
template <class Data>
std::vector<DecompositionTerm> bipartite_decompose(const Data& data, const LatticePartition& partition) {
  partition.validate();
  if (partition.size() != 2) throw std::invalid_argument("bipartite_decompose: need exactly 2 parts");
  const int m = data.particles();
  const int na = partition.part_size(0);
  const int nb = partition.part_size(1);
  const Choice all = full_choice(m);

  std::vector<DecompositionTerm> terms;
  const int lo = std::max(0, m - nb);
  const int hi = std::min(m, na);
  for (Choice a : all_choices(m)) {
    const int ma = choice_size(a);
    if (ma < lo || ma > hi) continue;
    DecompositionTerm t;
    t.choices = {a, static_cast<Choice>(all & ~a)};
    t.coeff = theta_pair(data, t.choices[0], t.choices[1]);
    terms.push_back(std::move(t));
  }
  return terms;
}

/// L-part split with coefficient Theta_L[a_1,..,a_L]; terms are emitted in
/// lexicographic order of the symbol -> part assignment.
template <class Data>
std::vector<DecompositionTerm> multipartite_decompose(const Data& data, const LatticePartition& partition) {
  partition.validate();
  const int m = data.particles();
  std::vector<int> caps(partition.parts.begin(), partition.parts.end());
  for (int& c : caps) c = std::min(c, m);

  std::vector<DecompositionTerm> terms;
  detail::for_each_assignment(m, caps, [&](std::span<const Choice> choices) {
    DecompositionTerm t;
    t.choices.assign(choices.begin(), choices.end());
    t.coeff = theta_multi(data, choices);
    terms.push_back(std::move(t));
  });
  return terms;
}

/// Ring split where part 1 wraps around the lattice ends. Terms carry unit
/// coefficients; the wrap-around factor on part 1 absorbs the scattering
/// amplitudes and is generally not itself of the product form, see
/// materialize_factors.
template <class Data>
std::vector<DecompositionTerm> contiguous_decompose(const Data& data, const RingPartition& partition) {
  partition.validate();
  const int m = data.particles();
  std::vector<int> caps;
  caps.push_back(std::min(partition.first_left + partition.first_right, m));
  for (int p : partition.middle) caps.push_back(std::min(p, m));

  std::vector<DecompositionTerm> terms;
  detail::for_each_assignment(m, caps, [&](std::span<const Choice> choices) {
    DecompositionTerm t;
    t.choices.assign(choices.begin(), choices.end());
    t.coeff = Complex(1.0, 0.0);
    terms.push_back(std::move(t));
  });
  return terms;
}

/// Fill in the local Bethe factors of left-right terms.
template <class Data>
void materialize_factors(const Data& data, const LatticePartition& partition,
                         std::vector<DecompositionTerm>& terms) {
  for (auto& t : terms) {
    t.factors.clear();
    for (int l = 0; l < partition.size(); ++l) {
      t.factors.push_back(
          build_local_bethe(data, t.choices[static_cast<std::size_t>(l)], partition.first_site(l),
                            partition.part_size(l)));
    }
  }
}

/// Fill in the factors of ring terms. The factor on part 1 is assembled from
/// its left/right sub-blocks: sum over splits a_1 = a_L u a_R of
/// Theta_{L+1}[a_L, a_2,.., a_L-parts.., a_R] |a_L> x |a_R>.
template <class Data>
void materialize_factors(const Data& data, const RingPartition& partition,
                         std::vector<DecompositionTerm>& terms) {
  const int num_parts = partition.size();
  for (auto& t : terms) {
    t.factors.clear();

    const Choice a1 = t.choices[0];
    std::vector<int> left_sites(static_cast<std::size_t>(partition.first_left));
    std::iota(left_sites.begin(), left_sites.end(), 1);
    std::vector<int> right_sites(static_cast<std::size_t>(partition.first_right));
    std::iota(right_sites.begin(), right_sites.end(), partition.N - partition.first_right + 1);
    std::vector<int> part1_sites = left_sites;
    part1_sites.insert(part1_sites.end(), right_sites.begin(), right_sites.end());

    DenseState psi(choice_size(a1), part1_sites);
    // enumerate subsets a_left of a1
    Choice a_left = 0;
    while (true) {
      const Choice a_right = a1 & ~a_left;
      if (choice_size(a_left) <= partition.first_left &&
          choice_size(a_right) <= partition.first_right) {
        std::vector<Choice> ordered;
        ordered.push_back(a_left);
        for (int l = 1; l < num_parts; ++l) ordered.push_back(t.choices[static_cast<std::size_t>(l)]);
        ordered.push_back(a_right);
        const Complex weight = theta_multi(data, ordered);
        DenseState block = tensor_product(
            build_local_bethe(data, a_left, 1, partition.first_left),
            build_local_bethe(data, a_right, partition.N - partition.first_right + 1,
                              partition.first_right));
        psi = psi + weight * block;
      }
      if (a_left == a1) break;
      a_left = (a_left - a1) & a1;  // next subset of a1
    }
    t.factors.push_back(std::move(psi));

    for (int l = 1; l < num_parts; ++l) {
      t.factors.push_back(build_local_bethe(data, t.choices[static_cast<std::size_t>(l)],
                                            partition.middle_first_site(l),
                                            partition.part_size(l)));
    }
  }
}

/// Sum of coefficient-weighted factor products as a state on {1,..,N}.
/// Factors must be materialized and jointly cover the lattice.
DenseState reconstruct(std::span<const DecompositionTerm> terms, int num_sites);

}  // namespace bethe
