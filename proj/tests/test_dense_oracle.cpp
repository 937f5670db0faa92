// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "bethe/dense_state.hpp"
#include "test_support.hpp"

using namespace bethe;
using bethe::testing::random_bethe;
using bethe::testing::random_generalized;

namespace {

Complex plane(double k, int x) { return std::exp(Complex(0.0, k * x)); }

}  // namespace

TEST_CASE("configuration ranking") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(4096, 8) == std::numeric_limits<std::uint64_t>::max());  // saturates

  // ranks enumerate 0..C(n,m)-1 in step with next_config
  const int n = 7, m = 3;
  std::vector<int> x = {1, 2, 3};
  std::uint64_t expected = 0;
  do {
    CHECK(config_rank(x) == expected);
    ++expected;
  } while (next_config(x, n));
  CHECK(expected == binomial(n, m));
}

TEST_CASE("vacuum and single-particle states") {
  const DenseState vac = DenseState::vacuum(5);
  CHECK(vac.particles == 0);
  CHECK(vac.amps.size() == 1);
  CHECK(vac.amps[0] == Complex(1.0, 0.0));

  const BetheData d0 = random_bethe(0, 1);
  const DenseState built_vac = build_dense_bethe(d0, 4);
  CHECK(built_vac.amps[0] == Complex(1.0, 0.0));

  const BetheData d1 = random_bethe(1, 2);
  const DenseState pw = build_dense_bethe(d1, 6);
  for (int x = 1; x <= 6; ++x) {
    CHECK(approx_equal(pw.amp(std::vector<int>{x}), plane(d1.k[0], x)));
  }
}

TEST_CASE("two-particle amplitudes match the closed form") {
  const BetheData d = random_bethe(2, 9);
  const DenseState s = build_dense_bethe(d, 7);
  const Complex scatter = -std::exp(Complex(0.0, d.theta_angle(2, 1)));
  for (int x1 = 1; x1 <= 7; ++x1) {
    for (int x2 = x1 + 1; x2 <= 7; ++x2) {
      const Complex expect =
          plane(d.k[0], x1) * plane(d.k[1], x2) + scatter * plane(d.k[1], x1) * plane(d.k[0], x2);
      CHECK(approx_equal(s.amp(std::vector<int>{x1, x2}), expect));
    }
  }
}

TEST_CASE("fermionic and bosonic special angles") {
  BetheData d = random_bethe(2, 11);
  d.theta[0] = 0.0;  // determinant
  const DenseState det_state = build_dense_bethe(d, 6);
  d.theta[0] = M_PI;  // permanent
  const DenseState perm_state = build_dense_bethe(d, 6);
  for (int x1 = 1; x1 <= 6; ++x1) {
    for (int x2 = x1 + 1; x2 <= 6; ++x2) {
      const Complex a = plane(d.k[0], x1), b = plane(d.k[0], x2);
      const Complex c = plane(d.k[1], x1), e = plane(d.k[1], x2);
      CHECK(std::abs(det_state.amp(std::vector<int>{x1, x2}) - (a * e - b * c)) < 1e-12);
      CHECK(std::abs(perm_state.amp(std::vector<int>{x1, x2}) - (a * e + b * c)) < 1e-12);
    }
  }
}

TEST_CASE("generalized amplitudes") {
  const GeneralizedBetheData g = random_generalized(2, 5, 21);
  const DenseState s = build_dense_generalized(g);
  const Complex scatter = -std::exp(Complex(0.0, 1.0) * g.theta_angle(2, 1));
  for (int x1 = 1; x1 <= 5; ++x1) {
    for (int x2 = x1 + 1; x2 <= 5; ++x2) {
      const Complex expect =
          g.phi(0, x1 - 1) * g.phi(1, x2 - 1) + scatter * g.phi(1, x1 - 1) * g.phi(0, x2 - 1);
      CHECK(approx_equal(s.amp(std::vector<int>{x1, x2}), expect));
    }
  }

  // one particle: the amplitude row itself
  const GeneralizedBetheData g1 = random_generalized(1, 4, 22);
  const DenseState s1 = build_dense_generalized(g1);
  for (int x = 1; x <= 4; ++x) CHECK(s1.amp(std::vector<int>{x}) == g1.phi(0, x - 1));

  // plane-wave rows with real angles reproduce the plane-wave builder
  const BetheData d = random_bethe(2, 23);
  Eigen::MatrixXcd phi(2, 6);
  for (int j = 0; j < 2; ++j) {
    for (int x = 1; x <= 6; ++x) phi(j, x - 1) = plane(d.k[static_cast<std::size_t>(j)], x);
  }
  const GeneralizedBetheData embed(std::move(phi), {Complex(d.theta[0], 0.0)});
  CHECK(max_relative_error(build_dense_generalized(embed), build_dense_bethe(d, 6)) < 1e-12);
}

TEST_CASE("local states live on absolute coordinates") {
  const BetheData d = random_bethe(3, 33);
  const DenseState local = build_local_bethe(d, choice_from_symbols(std::vector<int>{2}, 3), 4, 4);
  CHECK(local.sites == std::vector<int>{4, 5, 6, 7});
  for (int x = 4; x <= 7; ++x) {
    CHECK(approx_equal(local.amp(std::vector<int>{x - 3}), plane(d.k[1], x)));
  }

  const DenseState vac = build_local_bethe(d, kEmptyChoice, 2, 3);
  CHECK(vac.amps[0] == Complex(1.0, 0.0));

  // the full choice on the whole lattice is the global build
  const DenseState full = build_local_bethe(d, full_choice(3), 1, 6);
  CHECK(max_relative_error(full, build_dense_bethe(d, 6)) == 0.0);

  CHECK_THROWS_AS(build_local_bethe(d, full_choice(3), 1, 2), std::invalid_argument);
}

TEST_CASE("inner products") {
  const BetheData d1 = random_bethe(1, 41);
  const DenseState pw = build_dense_bethe(d1, 8);
  CHECK(approx_equal(inner_product(pw, pw), Complex(8.0, 0.0)));

  const DenseState vac = DenseState::vacuum(8);
  CHECK(inner_product(vac, vac) == Complex(1.0, 0.0));
  CHECK(inner_product(vac, pw) == Complex(0.0, 0.0));  // different particle number

  // orthogonal momenta on the ring: geometric sums cancel
  const int n = 12;
  const BetheData da({2.0 * M_PI / n}, {});
  const BetheData db({4.0 * M_PI / n}, {});
  const Complex cross = inner_product(build_dense_bethe(da, n), build_dense_bethe(db, n));
  CHECK(std::abs(cross) < 1e-10);

  CHECK_THROWS_AS(inner_product(vac, DenseState::vacuum(5)), std::invalid_argument);
}

TEST_CASE("oracle bounds are enforced") {
  const BetheData d = random_bethe(2, 43);
  CHECK_THROWS_AS(build_dense_bethe(d, 1), std::invalid_argument);  // M > N
  BetheData big = random_bethe(kOracleMaxParticles + 1, 44);
  CHECK_THROWS_AS(build_dense_bethe(big, 32), std::invalid_argument);
  CHECK_THROWS_AS(build_dense_bethe(random_bethe(8, 45), 4096), std::invalid_argument);
}

TEST_CASE("schmidt ranks") {
  CHECK(schmidt_rank(DenseState::vacuum(6), 3) == 1);

  // a generic two-particle state hits the 2^M bound on a wide cut
  const BetheData d2 = random_bethe(2, 51);
  const DenseState s2 = build_dense_bethe(d2, 8);
  CHECK(schmidt_rank(s2, 4) == 4);

  // three particles stay within 8 across every cut
  const BetheData d3 = random_bethe(3, 52);
  const DenseState s3 = build_dense_bethe(d3, 10);
  for (int cut = 1; cut < 10; ++cut) CHECK(schmidt_rank(s3, cut) <= 8);

  // a random same-sector state exceeds the bound
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseState random_state(2, [] {
    std::vector<int> sites(12);
    std::iota(sites.begin(), sites.end(), 1);
    return sites;
  }());
  for (Eigen::Index i = 0; i < random_state.amps.size(); ++i) {
    random_state.amps[i] = Complex(gauss(rng), gauss(rng));
  }
  CHECK(schmidt_rank(random_state, 6) > 4);

  CHECK_THROWS_AS(schmidt_rank(s2, 0), std::invalid_argument);
  CHECK_THROWS_AS(schmidt_rank(s2, 8), std::invalid_argument);
}

TEST_CASE("narrow parts clip the schmidt sectors") {
  // a cut of one site cannot host two particles: rank <= 1 + 1
  const BetheData d = random_bethe(2, 55);
  const DenseState s = build_dense_bethe(d, 8);
  CHECK(schmidt_rank(s, 1) <= 2);
}

TEST_CASE("tensor products split by membership") {
  const BetheData d = random_bethe(2, 61);
  const DenseState left = build_local_bethe(d, choice_from_symbols(std::vector<int>{1}, 2), 1, 3);
  const DenseState right = build_local_bethe(d, choice_from_symbols(std::vector<int>{2}, 2), 4, 3);
  const DenseState prod = tensor_product(left, right);
  CHECK(prod.particles == 2);
  CHECK(prod.num_sites() == 6);
  CHECK(approx_equal(prod.amp(std::vector<int>{2, 5}), plane(d.k[0], 2) * plane(d.k[1], 5)));
  CHECK(prod.amp(std::vector<int>{1, 2}) == Complex(0.0, 0.0));  // both in the left block

  CHECK_THROWS_AS(tensor_product(left, left), std::invalid_argument);
}
