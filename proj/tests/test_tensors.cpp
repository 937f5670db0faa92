// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "bethe/tensors.hpp"
#include "test_support.hpp"

using namespace bethe;
using bethe::testing::random_bethe;
using bethe::testing::random_generalized;

namespace {

Complex phase(double a) { return std::exp(Complex(0.0, a)); }

SparseChoiceTensor full_t(const BetheData& d) {
  const ChoiceDomain full = ChoiceDomain::full(d.M);
  return build_t(d, full, full, full);
}

std::uint64_t expected_t_nonzeros(int m) {
  std::uint64_t total = 0;
  for (int s = 0; s <= m; ++s) total += binomial(m, s) << s;
  return total;
}

}  // namespace

TEST_CASE("splitting tensor matrices for zero, one and two particles") {
  // M = 0: the single 1x1 slice
  const BetheData d0 = random_bethe(0, 1);
  const auto t0 = full_t(d0);
  CHECK(t0.entries.size() == 1);
  CHECK(t0.slice_matrix(kEmptyChoice)(0, 0) == Complex(1.0, 0.0));

  // M = 1: identity-like and swap-like slices
  const BetheData d1 = random_bethe(1, 2);
  const auto t1 = full_t(d1);
  Eigen::MatrixXcd expect0(2, 2), expect1(2, 2);
  expect0 << 1, 0, 0, 0;
  expect1 << 0, 1, 1, 0;
  CHECK(t1.slice_matrix(0b0u).isApprox(expect0, 1e-14));
  CHECK(t1.slice_matrix(0b1u).isApprox(expect1, 1e-14));

  // M = 2: the four slices, basis {} (1) (2) (1,2)
  const BetheData d2 = random_bethe(2, 3);
  const auto t2 = full_t(d2);
  Eigen::MatrixXcd e_empty = Eigen::MatrixXcd::Zero(4, 4);
  e_empty(0, 0) = 1;
  Eigen::MatrixXcd e_1 = Eigen::MatrixXcd::Zero(4, 4);
  e_1(0, 1) = 1;
  e_1(1, 0) = 1;
  Eigen::MatrixXcd e_2 = Eigen::MatrixXcd::Zero(4, 4);
  e_2(0, 2) = 1;
  e_2(2, 0) = 1;
  Eigen::MatrixXcd e_12 = Eigen::MatrixXcd::Zero(4, 4);
  e_12(0, 3) = 1;
  e_12(1, 2) = 1;
  e_12(2, 1) = -phase(d2.theta_angle(2, 1));
  e_12(3, 0) = 1;
  CHECK(t2.slice_matrix(0b00u).isApprox(e_empty, 1e-14));
  CHECK(t2.slice_matrix(0b01u).isApprox(e_1, 1e-14));
  CHECK(t2.slice_matrix(0b10u).isApprox(e_2, 1e-14));
  CHECK(t2.slice_matrix(0b11u).isApprox(e_12, 1e-14));
}

TEST_CASE("splitting tensor structural counts") {
  for (int m = 0; m <= 4; ++m) {
    const BetheData d = random_bethe(m, 10 + static_cast<std::uint64_t>(m));
    CHECK(full_t(d).entries.size() == expected_t_nonzeros(m));
  }
  // M = 2 has 1 + 4 + 4 = 9 structural nonzeros
  CHECK(expected_t_nonzeros(2) == 9);
}

TEST_CASE("splitting tensor delta sparsity and normalization") {
  const BetheData d = random_bethe(3, 17);
  const auto t = full_t(d);

  // for every admissible (c, a) exactly one b fires
  for (const Choice c : all_choices(3)) {
    for (const Choice a : all_choices(3)) {
      if (!choice_subset(a, c)) continue;
      int hits = 0;
      for (const Choice b : all_choices(3)) {
        if (t.at(std::vector<Choice>{c, a, b}) != Complex(0.0, 0.0)) ++hits;
      }
      CHECK(hits == 1);
    }
  }

  // sum_ab T^c_ab conj(T^c'_ab) = delta_cc' 2^|c| for real angles
  for (const Choice c : all_choices(3)) {
    for (const Choice cp : all_choices(3)) {
      Complex overlap(0.0, 0.0);
      for (const auto& [key, value] : t.entries) {
        if (key[0] != c) continue;
        overlap += value * std::conj(t.at(std::vector<Choice>{cp, key[1], key[2]}));
      }
      const double expect = (c == cp) ? std::pow(2.0, choice_size(c)) : 0.0;
      CHECK(std::abs(overlap - Complex(expect, 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("restriction to fewer symbols embeds in the larger tensor") {
  const BetheData d3 = random_bethe(3, 23);
  const BetheData d2 = d3.reduced(choice_from_symbols(std::vector<int>{1, 2}, 3));
  const auto t3 = full_t(d3);
  const auto t2 = full_t(d2);
  for (const auto& [key, value] : t2.entries) {
    CHECK(approx_equal(t3.at(std::vector<Choice>{key[0], key[1], key[2]}), value));
  }
}

TEST_CASE("splitting tensor ignores momenta") {
  BetheData a = random_bethe(3, 29);
  BetheData b = a;
  b.k = {9.0, -2.0, 0.5};
  CHECK(full_t(a).entries == full_t(b).entries);
}

TEST_CASE("q-ary splitting tensor") {
  const BetheData d = random_bethe(2, 31);
  const ChoiceDomain full = ChoiceDomain::full(2);

  // two outgoing indices coincide with the binary builder
  const std::vector<ChoiceDomain> two = {full, full};
  CHECK(build_t_qary(d, full, two).entries == build_t(d, full, full, full).entries);

  // one symbol into three slots: three placements, coefficient one
  const BetheData d1 = random_bethe(1, 32);
  const ChoiceDomain f1 = ChoiceDomain::full(1);
  const std::vector<ChoiceDomain> three = {f1, f1, f1};
  const auto t3 = build_t_qary(d1, f1, three);
  int placements = 0;
  for (const auto& [key, value] : t3.entries) {
    if (key[0] == 0b1u) {
      CHECK(value == Complex(1.0, 0.0));
      ++placements;
    }
  }
  CHECK(placements == 3);

  // a ternary node equals two stacked binary nodes
  const BetheData d3 = random_bethe(3, 33);
  const ChoiceDomain f3 = ChoiceDomain::full(3);
  const std::vector<ChoiceDomain> outs = {f3, f3, f3};
  const auto ternary = build_t_qary(d3, f3, outs);
  const auto binary = build_t(d3, f3, f3, f3);
  for (const auto& [key, value] : ternary.entries) {
    Complex stacked(0.0, 0.0);
    for (const Choice mu : all_choices(3)) {
      stacked += binary.at(std::vector<Choice>{key[0], key[1], mu}) *
                 binary.at(std::vector<Choice>{mu, key[2], key[3]});
    }
    CHECK(approx_equal(value, stacked));
  }

  CHECK_THROWS_AS(build_t_qary(d, full, std::vector<ChoiceDomain>{full}), std::invalid_argument);
}

TEST_CASE("change-of-basis tensor entries") {
  const BetheData d = random_bethe(3, 41);
  const ChoiceDomain full = ChoiceDomain::full(3);

  const SiteBasisTensor s = build_s(d, full, 3, 2);  // sites {3, 4}

  // empty choice: all-zeros bitstring only
  CHECK(s.at(kEmptyChoice, 0b00u) == Complex(1.0, 0.0));
  CHECK(s.at(kEmptyChoice, 0b01u) == Complex(0.0, 0.0));

  // single particle: plane wave at the absolute coordinate
  for (int a = 1; a <= 3; ++a) {
    const Choice c = Choice{1} << (a - 1);
    CHECK(approx_equal(s.at(c, 0b01u), phase(d.k[static_cast<std::size_t>(a - 1)] * 3)));
    CHECK(approx_equal(s.at(c, 0b10u), phase(d.k[static_cast<std::size_t>(a - 1)] * 4)));
  }

  // particle number must match the occupation count
  for (const auto& [key, value] : s.entries) {
    CHECK(choice_size(key.first) == std::popcount(key.second));
  }

  // two particles on a two-site block starting at site 1
  const SiteBasisTensor s1 = build_s(d, full, 1, 2);
  const Choice pair = choice_from_symbols(std::vector<int>{1, 2}, 3);
  const Complex expect = phase(d.k[0] + 2.0 * d.k[1]) -
                         phase(d.theta_angle(2, 1)) * phase(d.k[1] + 2.0 * d.k[0]);
  CHECK(approx_equal(s1.at(pair, 0b11u), expect));

  // choices above the part capacity are clipped out
  CHECK(s.at(full_choice(3), 0b11u) == Complex(0.0, 0.0));
}

TEST_CASE("shifted change-of-basis tensor") {
  const BetheData d = random_bethe(2, 47);
  const ChoiceDomain full = ChoiceDomain::full(2);
  const SiteBasisTensor shifted = build_s_shifted(d, full, 2);
  CHECK(shifted.relative);
  const Choice a = 0b01u;
  CHECK(approx_equal(shifted.at(a, 0b01u), phase(d.k[0])));
  CHECK(approx_equal(shifted.at(a, 0b10u), phase(2.0 * d.k[0])));

  // absolute tensor = omega-rescaled shifted tensor
  const SiteBasisTensor absolute = build_s(d, full, 5, 2);
  for (const auto& [key, value] : shifted.entries) {
    const Complex scale = omega_shift(d, key.first, 4);  // offset of site 5 from site 1
    CHECK(approx_equal(absolute.at(key.first, key.second), scale * value));
  }
}

TEST_CASE("generalized change-of-basis tensor") {
  const GeneralizedBetheData g = random_generalized(2, 6, 53);
  const ChoiceDomain full = ChoiceDomain::full(2);
  const SiteBasisTensor s = build_s(g, full, 2, 3);  // sites {2,3,4}
  CHECK(approx_equal(s.at(0b10u, 0b100u), g.phi(1, 3)));  // symbol 2 at site 4
  const Complex expect = g.phi(0, 1) * g.phi(1, 3) -
                         std::exp(Complex(0.0, 1.0) * g.theta_angle(2, 1)) * g.phi(1, 1) * g.phi(0, 3);
  CHECK(approx_equal(s.at(0b11u, 0b101u), expect));
}

TEST_CASE("fused site tensor matches the displayed qubit matrices") {
  // M = 1, one site at x
  const BetheData d1 = random_bethe(1, 61);
  const ChoiceDomain f1 = ChoiceDomain::full(1);
  const int x = 5;
  const MpsSiteTensor r1 = build_r(d1, f1, f1, x, 1);
  Eigen::MatrixXcd r1_0(2, 2), r1_1(2, 2);
  r1_0 << 1, 0, 0, 1;
  r1_1 << 0, 0, phase(d1.k[0] * x), 0;
  CHECK(r1.matrix(0).isApprox(r1_0, 1e-13));
  CHECK(r1.matrix(1).isApprox(r1_1, 1e-13));

  // M = 2, one site at x
  const BetheData d2 = random_bethe(2, 62);
  const ChoiceDomain f2 = ChoiceDomain::full(2);
  const MpsSiteTensor r2 = build_r(d2, f2, f2, x, 1);
  CHECK(r2.matrix(0).isApprox(Eigen::MatrixXcd::Identity(4, 4), 1e-13));
  Eigen::MatrixXcd r2_1 = Eigen::MatrixXcd::Zero(4, 4);
  r2_1(1, 0) = phase(d2.k[0] * x);
  r2_1(2, 0) = phase(d2.k[1] * x);
  r2_1(3, 1) = -phase(d2.theta_angle(2, 1)) * phase(d2.k[1] * x);
  r2_1(3, 2) = phase(d2.k[0] * x);
  CHECK(r2.matrix(1).isApprox(r2_1, 1e-13));

  // M = 3, one site at x: occupied-slice matrix
  const BetheData d3 = random_bethe(3, 63);
  const ChoiceDomain f3 = ChoiceDomain::full(3);
  const MpsSiteTensor r3 = build_r(d3, f3, f3, x, 1);
  CHECK(r3.matrix(0).isApprox(Eigen::MatrixXcd::Identity(8, 8), 1e-13));
  Eigen::MatrixXcd r3_1 = Eigen::MatrixXcd::Zero(8, 8);
  const Complex e1 = phase(d3.k[0] * x), e2 = phase(d3.k[1] * x), e3 = phase(d3.k[2] * x);
  const Complex s21 = phase(d3.theta_angle(2, 1));
  const Complex s31 = phase(d3.theta_angle(3, 1));
  const Complex s32 = phase(d3.theta_angle(3, 2));
  // basis {} (1) (2) (3) (1,2) (1,3) (2,3) (1,2,3)
  r3_1(1, 0) = e1;
  r3_1(2, 0) = e2;
  r3_1(3, 0) = e3;
  r3_1(4, 1) = -s21 * e2;
  r3_1(4, 2) = e1;
  r3_1(5, 1) = -s31 * e3;
  r3_1(5, 3) = e1;
  r3_1(6, 2) = -s32 * e3;
  r3_1(6, 3) = e2;
  r3_1(7, 4) = s31 * s32 * e3;
  r3_1(7, 5) = -s21 * e2;
  r3_1(7, 6) = e1;
  CHECK(r3.matrix(1).isApprox(r3_1, 1e-13));
}

TEST_CASE("fused single-site tensor structural count") {
  for (int m = 0; m <= 4; ++m) {
    const BetheData d = random_bethe(m, 70 + static_cast<std::uint64_t>(m));
    const ChoiceDomain full = ChoiceDomain::full(m);
    const MpsSiteTensor r = build_r(d, full, full, 2, 1);
    std::uint64_t expect = 0;
    for (int s = 0; s <= m; ++s) expect += binomial(m, s) * static_cast<std::uint64_t>(s + 1);
    CHECK(r.entries.size() == expect);
  }
}

TEST_CASE("shifted tensors carry the block phase") {
  const BetheData d = random_bethe(2, 81);
  const ChoiceDomain full = ChoiceDomain::full(2);

  // zero shift is the plain tensor
  CHECK(build_t_shifted(d, 0, full, full, full).entries == build_t(d, full, full, full).entries);

  // one particle, one-site block
  const BetheData d1 = random_bethe(1, 82);
  const ChoiceDomain f1 = ChoiceDomain::full(1);
  const auto t1 = build_t_shifted(d1, 1, f1, f1, f1);
  CHECK(approx_equal(t1.at(std::vector<Choice>{0b1u, 0b0u, 0b1u}), phase(d1.k[0])));

  // homogeneous fused matrices for two particles
  const MpsSiteTensor rt = build_r_shifted(d, full, full, 1);
  Eigen::MatrixXcd rt0 = Eigen::MatrixXcd::Zero(4, 4);
  rt0(0, 0) = 1;
  rt0(1, 1) = phase(d.k[0]);
  rt0(2, 2) = phase(d.k[1]);
  rt0(3, 3) = phase(d.k[0]) * phase(d.k[1]);
  Eigen::MatrixXcd rt1 = Eigen::MatrixXcd::Zero(4, 4);
  rt1(1, 0) = phase(d.k[0]);
  rt1(2, 0) = phase(d.k[1]);
  rt1(3, 1) = -phase(d.theta_angle(2, 1)) * phase(d.k[1]) * phase(d.k[0]);
  rt1(3, 2) = phase(d.k[0]) * phase(d.k[1]);
  CHECK(rt.matrix(0).isApprox(rt0, 1e-13));
  CHECK(rt.matrix(1).isApprox(rt1, 1e-13));

  // homogeneous fused matrices for one particle
  const MpsSiteTensor rt1p = build_r_shifted(d1, f1, f1, 1);
  Eigen::MatrixXcd a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, phase(d1.k[0]);
  a1 << 0, 0, phase(d1.k[0]), 0;
  CHECK(rt1p.matrix(0).isApprox(a0, 1e-13));
  CHECK(rt1p.matrix(1).isApprox(a1, 1e-13));
}

TEST_CASE("generalized splitting tensor keeps delta sparsity only") {
  const GeneralizedBetheData g = random_generalized(3, 6, 90);
  const ChoiceDomain full = ChoiceDomain::full(3);
  const auto t = build_t(g, full, full, full);
  CHECK(t.entries.size() == expected_t_nonzeros(3));
  // complex angles break unit modulus
  bool some_off_unit = false;
  for (const auto& [key, value] : t.entries) {
    if (std::abs(std::abs(value) - 1.0) > 1e-6 && value != Complex(1.0, 0.0)) some_off_unit = true;
  }
  CHECK(some_off_unit);
}
