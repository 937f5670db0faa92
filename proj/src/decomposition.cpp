// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/decomposition.hpp"

namespace bethe {

DenseState reconstruct(std::span<const DecompositionTerm> terms, int num_sites) {
  if (terms.empty()) throw std::invalid_argument("reconstruct: no terms");
  int particles = 0;
  for (const Choice c : terms.front().choices) particles += choice_size(c);

  std::vector<int> labels(static_cast<std::size_t>(num_sites));
  std::iota(labels.begin(), labels.end(), 1);
  DenseState out(particles, labels);

  for (const auto& term : terms) {
    if (term.factors.empty()) throw std::invalid_argument("reconstruct: factors not materialized");
    int sum = 0;
    for (const Choice c : term.choices) sum += choice_size(c);
    if (sum != particles) throw std::invalid_argument("reconstruct: inconsistent particle numbers");

    // map each absolute site to (factor, local 1-based position)
    std::vector<int> owner(static_cast<std::size_t>(num_sites) + 1, -1);
    std::vector<int> local(static_cast<std::size_t>(num_sites) + 1, 0);
    long long covered = 0;
    for (std::size_t f = 0; f < term.factors.size(); ++f) {
      const auto& fac = term.factors[f];
      if (fac.particles != choice_size(term.choices[f])) {
        throw std::invalid_argument("reconstruct: factor particle number differs from its choice");
      }
      for (int i = 0; i < fac.num_sites(); ++i) {
        const int site = fac.sites[static_cast<std::size_t>(i)];
        if (site < 1 || site > num_sites || owner[static_cast<std::size_t>(site)] != -1) {
          throw std::invalid_argument("reconstruct: factor supports must tile the lattice");
        }
        owner[static_cast<std::size_t>(site)] = static_cast<int>(f);
        local[static_cast<std::size_t>(site)] = i + 1;
        ++covered;
      }
    }
    if (covered != num_sites) {
      throw std::invalid_argument("reconstruct: factor supports must tile the lattice");
    }

    if (particles == 0) {
      Complex product = term.coeff;
      for (const auto& fac : term.factors) product *= fac.amps[0];
      out.amps[0] += product;
      continue;
    }

    std::vector<int> x(static_cast<std::size_t>(particles));
    std::iota(x.begin(), x.end(), 1);
    std::uint64_t rank = 0;
    std::vector<std::vector<int>> split(term.factors.size());
    do {
      for (auto& s : split) s.clear();
      for (int site : x) split[static_cast<std::size_t>(owner[static_cast<std::size_t>(site)])].push_back(
          local[static_cast<std::size_t>(site)]);
      bool sector_ok = true;
      for (std::size_t f = 0; f < term.factors.size(); ++f) {
        if (static_cast<int>(split[f].size()) != term.factors[f].particles) {
          sector_ok = false;
          break;
        }
      }
      if (sector_ok) {
        Complex product = term.coeff;
        for (std::size_t f = 0; f < term.factors.size(); ++f) product *= term.factors[f].amp(split[f]);
        out.amps[static_cast<Eigen::Index>(rank)] += product;
      }
      ++rank;
    } while (next_config(x, num_sites));
  }
  return out;
}

}  // namespace bethe
