// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bethe {

/// An ordered subset of the particle symbols {1,..,M}, packed as a bitmask
/// with symbol j stored at bit j-1. The components of the subset are always
/// read in increasing symbol order.
using Choice = std::uint32_t;

inline constexpr Choice kEmptyChoice = 0;
inline constexpr int kMaxSymbols = 20;

constexpr Choice full_choice(int num_symbols) {
  return num_symbols == 0 ? Choice{0} : ((Choice{1} << num_symbols) - 1u);
}

inline int choice_size(Choice c) { return std::popcount(c); }

inline bool choices_disjoint(Choice a, Choice b) { return (a & b) == 0; }

inline bool choice_subset(Choice a, Choice b) { return (a & ~b) == 0; }

/// Sorted union of two disjoint choices. Throws if any symbol repeats.
inline Choice choice_union(Choice a, Choice b) {
  if (!choices_disjoint(a, b)) {
    throw std::invalid_argument("choice_union: choices share a symbol");
  }
  return a | b;
}

/// Components of a choice as increasing 1-based symbols.
std::vector<int> choice_symbols(Choice c);

Choice choice_from_symbols(std::span<const int> symbols, int num_symbols);

std::string choice_to_string(Choice c);

/// Grading used everywhere for choice indices: first by particle number m,
/// then lexicographically on the increasing symbol vector, so that for M=3
/// the order is {}, (1), (2), (3), (1,2), (1,3), (2,3), (1,2,3).
bool choice_convention_less(Choice a, Choice b);

/// All 2^M choices over M symbols in convention order.
std::vector<Choice> all_choices(int num_symbols);

/// An ordered set of admissible choices for one tensor index, in convention
/// order, with O(1) position lookup and contiguous particle-number sectors.
class ChoiceDomain {
 public:
  ChoiceDomain() = default;

  /// Choices c over num_symbols symbols with min_particles <= |c| <= max_particles.
  ChoiceDomain(int num_symbols, int min_particles, int max_particles);

  static ChoiceDomain full(int num_symbols);
  static ChoiceDomain singleton(int num_symbols, Choice c);
  static ChoiceDomain from_choices(int num_symbols, std::vector<Choice> choices);

  int num_symbols() const { return num_symbols_; }
  int size() const { return static_cast<int>(order_.size()); }
  Choice at(int i) const { return order_[static_cast<std::size_t>(i)]; }
  const std::vector<Choice>& choices() const { return order_; }

  bool contains(Choice c) const { return position_of(c) >= 0; }
  /// Position in convention order, or -1 when absent.
  int position_of(Choice c) const {
    return c < pos_.size() ? pos_[c] : -1;
  }

  /// Sector m occupies positions [sector_begin(m), sector_begin(m) + sector_size(m)).
  int sector_begin(int m) const {
    if (m < 0) return 0;
    if (m > max_particles()) return size();
    return sector_begin_[static_cast<std::size_t>(m)];
  }
  int sector_size(int m) const {
    if (m < 0 || m > max_particles()) return 0;
    return sector_begin_[static_cast<std::size_t>(m) + 1] - sector_begin_[static_cast<std::size_t>(m)];
  }
  int sector_pos(Choice c) const { return position_of(c) - sector_begin(choice_size(c)); }
  int max_particles() const { return static_cast<int>(sector_begin_.size()) - 2; }

  bool operator==(const ChoiceDomain& other) const {
    return num_symbols_ == other.num_symbols_ && order_ == other.order_;
  }

 private:
  void rebuild_index();

  int num_symbols_ = 0;
  std::vector<Choice> order_;
  std::vector<int> pos_;           // indexed by mask
  std::vector<int> sector_begin_;  // size max_particles + 2
};

}  // namespace bethe
