// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bethe/dense_state.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cstdlib>
#include <limits>

namespace bethe {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * factor / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::uint64_t oracle_max() {
  static const std::uint64_t value = [] {
    if (const char* env = std::getenv("BETHE_ORACLE_MAX")) {
      const unsigned long long v = std::strtoull(env, nullptr, 10);
      if (v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{10'000'000};
  }();
  return value;
}

std::uint64_t config_rank(std::span<const int> x) {
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    rank += binomial(x[j] - 1, static_cast<int>(j) + 1);
  }
  return rank;
}

bool next_config(std::span<int> x, int n) {
  const int m = static_cast<int>(x.size());
  for (int j = 0; j < m; ++j) {
    const int limit = (j + 1 < m) ? x[static_cast<std::size_t>(j) + 1] - 1 : n;
    if (x[static_cast<std::size_t>(j)] < limit) {
      x[static_cast<std::size_t>(j)]++;
      for (int i = 0; i < j; ++i) x[static_cast<std::size_t>(i)] = i + 1;
      return true;
    }
  }
  return false;
}

DenseState::DenseState(int m, std::vector<int> site_labels)
    : particles(m), sites(std::move(site_labels)) {
  if (m < 0 || m > num_sites()) throw std::invalid_argument("DenseState: bad particle count");
  for (std::size_t i = 1; i < sites.size(); ++i) {
    if (sites[i] <= sites[i - 1]) throw std::invalid_argument("DenseState: sites must increase");
  }
  amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(binomial(num_sites(), m)));
}

DenseState DenseState::vacuum(int num_sites, int first_site) {
  std::vector<int> labels(static_cast<std::size_t>(num_sites));
  std::iota(labels.begin(), labels.end(), first_site);
  DenseState s(0, std::move(labels));
  s.amps[0] = Complex(1.0, 0.0);
  return s;
}

bool DenseState::is_global() const {
  for (int i = 0; i < num_sites(); ++i) {
    if (sites[static_cast<std::size_t>(i)] != i + 1) return false;
  }
  return true;
}

double max_relative_error(const DenseState& got, const DenseState& want) {
  if (got.sites != want.sites || got.particles != want.particles) {
    throw std::invalid_argument("max_relative_error: mismatched supports");
  }
  const double scale = want.amps.cwiseAbs().maxCoeff();
  const double diff = (got.amps - want.amps).cwiseAbs().maxCoeff();
  if (scale == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / scale;
}

DenseState operator+(const DenseState& a, const DenseState& b) {
  if (a.sites != b.sites || a.particles != b.particles) {
    throw std::invalid_argument("DenseState addition: mismatched supports");
  }
  DenseState out = a;
  out.amps += b.amps;
  return out;
}

DenseState operator*(Complex scale, const DenseState& s) {
  DenseState out = s;
  out.amps *= scale;
  return out;
}

DenseState tensor_product(const DenseState& a, const DenseState& b) {
  std::vector<int> merged = a.sites;
  merged.insert(merged.end(), b.sites.begin(), b.sites.end());
  std::sort(merged.begin(), merged.end());
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (merged[i] == merged[i - 1]) throw std::invalid_argument("tensor_product: overlapping supports");
  }
  DenseState out(a.particles + b.particles, merged);
  if (out.particles == 0) {
    out.amps[0] = a.amps[0] * b.amps[0];
    return out;
  }

  // local index (1-based) of each merged site within a resp. b, or 0
  std::vector<int> in_a(merged.size(), 0), in_b(merged.size(), 0);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const auto ita = std::lower_bound(a.sites.begin(), a.sites.end(), merged[i]);
    if (ita != a.sites.end() && *ita == merged[i]) in_a[i] = static_cast<int>(ita - a.sites.begin()) + 1;
    const auto itb = std::lower_bound(b.sites.begin(), b.sites.end(), merged[i]);
    if (itb != b.sites.end() && *itb == merged[i]) in_b[i] = static_cast<int>(itb - b.sites.begin()) + 1;
  }

  std::vector<int> x(static_cast<std::size_t>(out.particles));
  std::iota(x.begin(), x.end(), 1);
  std::uint64_t rank = 0;
  std::vector<int> xa, xb;
  do {
    xa.clear();
    xb.clear();
    for (int pos : x) {
      if (in_a[static_cast<std::size_t>(pos - 1)] != 0) {
        xa.push_back(in_a[static_cast<std::size_t>(pos - 1)]);
      } else {
        xb.push_back(in_b[static_cast<std::size_t>(pos - 1)]);
      }
    }
    if (static_cast<int>(xa.size()) == a.particles) {
      out.amps[static_cast<Eigen::Index>(rank)] = a.amp(xa) * b.amp(xb);
    }
    ++rank;
  } while (next_config(x, out.num_sites()));
  return out;
}

Complex inner_product(const DenseState& lhs, const DenseState& rhs) {
  if (lhs.sites != rhs.sites) throw std::invalid_argument("inner_product: mismatched supports");
  if (lhs.particles != rhs.particles) return Complex(0.0, 0.0);
  return lhs.amps.dot(rhs.amps);
}

int schmidt_rank(const DenseState& state, int cut, double tol) {
  const int n = state.num_sites();
  const int m = state.particles;
  if (cut < 1 || cut >= n) throw std::invalid_argument("schmidt_rank: cut outside [1, N-1]");

  std::vector<double> singular;
  const int na = cut;
  const int nb = n - cut;
  for (int ma = std::max(0, m - nb); ma <= std::min(m, na); ++ma) {
    const int mb = m - ma;
    const Eigen::Index rows = static_cast<Eigen::Index>(binomial(na, ma));
    const Eigen::Index cols = static_cast<Eigen::Index>(binomial(nb, mb));
    Eigen::MatrixXcd block(rows, cols);

    std::vector<int> xa(static_cast<std::size_t>(ma));
    std::iota(xa.begin(), xa.end(), 1);
    Eigen::Index ra = 0;
    do {
      std::vector<int> xb(static_cast<std::size_t>(mb));
      std::iota(xb.begin(), xb.end(), 1);
      Eigen::Index rb = 0;
      do {
        std::vector<int> x = xa;
        for (int pos : xb) x.push_back(pos + na);
        block(ra, rb) = state.amp(x);
        ++rb;
      } while (next_config(xb, nb));
      ++ra;
    } while (next_config(xa, na));

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
    const auto& sv = svd.singularValues();
    singular.insert(singular.end(), sv.data(), sv.data() + sv.size());
  }

  double sigma_max = 0.0;
  for (double s : singular) sigma_max = std::max(sigma_max, s);
  if (sigma_max == 0.0) return 0;
  int rank = 0;
  for (double s : singular) {
    if (s > tol * sigma_max) ++rank;
  }
  return rank;
}

DenseState build_dense_bethe(const BetheData& data, int num_sites) {
  std::vector<int> labels(static_cast<std::size_t>(num_sites));
  std::iota(labels.begin(), labels.end(), 1);
  return build_dense_on_sites(data, std::move(labels));
}

DenseState build_dense_generalized(const GeneralizedBetheData& data) {
  std::vector<int> labels(static_cast<std::size_t>(data.N));
  std::iota(labels.begin(), labels.end(), 1);
  return build_dense_on_sites(data, std::move(labels));
}

}  // namespace bethe
