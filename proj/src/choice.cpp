// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/choice.hpp"

#include <algorithm>

namespace bethe {

std::vector<int> choice_symbols(Choice c) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(choice_size(c)));
  while (c != 0) {
    out.push_back(std::countr_zero(c) + 1);
    c &= c - 1;
  }
  return out;
}

Choice choice_from_symbols(std::span<const int> symbols, int num_symbols) {
  Choice c = 0;
  for (int s : symbols) {
    if (s < 1 || s > num_symbols) {
      throw std::invalid_argument("choice_from_symbols: symbol " + std::to_string(s) +
                                  " outside [1, " + std::to_string(num_symbols) + "]");
    }
    Choice bit = Choice{1} << (s - 1);
    if (c & bit) {
      throw std::invalid_argument("choice_from_symbols: repeated symbol " + std::to_string(s));
    }
    c |= bit;
  }
  return c;
}

std::string choice_to_string(Choice c) {
  if (c == 0) return "{}";
  std::string out = "(";
  bool first = true;
  for (int s : choice_symbols(c)) {
    if (!first) out += ",";
    out += std::to_string(s);
    first = false;
  }
  out += ")";
  return out;
}

bool choice_convention_less(Choice a, Choice b) {
  const int ma = choice_size(a);
  const int mb = choice_size(b);
  if (ma != mb) return ma < mb;
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

std::vector<Choice> all_choices(int num_symbols) {
  if (num_symbols < 0 || num_symbols > kMaxSymbols) {
    throw std::invalid_argument("all_choices: unsupported symbol count");
  }
  std::vector<Choice> out;
  out.reserve(std::size_t{1} << num_symbols);
  for (Choice c = 0; c <= full_choice(num_symbols); ++c) {
    out.push_back(c);
    if (c == full_choice(num_symbols)) break;  // avoid wraparound at M=0
  }
  std::sort(out.begin(), out.end(), choice_convention_less);
  return out;
}

ChoiceDomain::ChoiceDomain(int num_symbols, int min_particles, int max_particles)
    : num_symbols_(num_symbols) {
  for (Choice c : all_choices(num_symbols)) {
    const int m = choice_size(c);
    if (m >= min_particles && m <= max_particles) order_.push_back(c);
  }
  rebuild_index();
}

ChoiceDomain ChoiceDomain::full(int num_symbols) {
  return ChoiceDomain(num_symbols, 0, num_symbols);
}

ChoiceDomain ChoiceDomain::singleton(int num_symbols, Choice c) {
  ChoiceDomain d;
  d.num_symbols_ = num_symbols;
  d.order_ = {c};
  d.rebuild_index();
  return d;
}

ChoiceDomain ChoiceDomain::from_choices(int num_symbols, std::vector<Choice> choices) {
  ChoiceDomain d;
  d.num_symbols_ = num_symbols;
  d.order_ = std::move(choices);
  std::sort(d.order_.begin(), d.order_.end(), choice_convention_less);
  d.order_.erase(std::unique(d.order_.begin(), d.order_.end()), d.order_.end());
  d.rebuild_index();
  return d;
}

void ChoiceDomain::rebuild_index() {
  pos_.assign(std::size_t{1} << num_symbols_, -1);
  int max_m = 0;
  for (Choice c : order_) max_m = std::max(max_m, choice_size(c));
  sector_begin_.assign(static_cast<std::size_t>(max_m) + 2, 0);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const Choice c = order_[i];
    if (c >= pos_.size()) throw std::invalid_argument("ChoiceDomain: choice outside symbol range");
    pos_[c] = static_cast<int>(i);
  }
  // convention order is graded, so sectors are contiguous
  for (Choice c : order_) sector_begin_[static_cast<std::size_t>(choice_size(c)) + 1]++;
  for (std::size_t m = 1; m < sector_begin_.size(); ++m) sector_begin_[m] += sector_begin_[m - 1];
}

}  // namespace bethe
