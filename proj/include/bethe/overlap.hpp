// Copyright 2026 The bethe-tn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bethe/network.hpp"

namespace bethe {

/// Optional instrumentation of the site sweep: number of scalar multiplies
/// spent in the environment-times-site product, per site.
struct OverlapStats {
  std::vector<std::uint64_t> per_site_multiplies;
};

/// <bra|ket> by a left-to-right environment sweep over two MPS of the same
/// partition. The environment is kept in particle-sector blocks throughout.
/// Returns 0 when the particle numbers differ.
Complex mps_overlap(const TensorNetwork& bra, const TensorNetwork& ket,
                    OverlapStats* stats = nullptr);

/// <bra|ket> by a bottom-up merge of child environments over two tree
/// networks of identical shape.
Complex ttn_overlap(const TensorNetwork& bra, const TensorNetwork& ket);

/// <bra|ket> for homogeneous single-site MPS through the mixed transfer
/// matrix raised to the N-th power by repeated squaring. num_sites overrides
/// the lattice size (the site tensors do not depend on it).
Complex homogeneous_mps_overlap(const TensorNetwork& bra, const TensorNetwork& ket,
                                long long num_sites = -1);

/// <bra|ket> for layer-homogeneous regular binary trees of equal depth: one
/// environment merge per layer.
Complex homogeneous_ttn_overlap(const TensorNetwork& bra, const TensorNetwork& ket);

/// Raw overlap plus norms and the normalized fidelity |<a|b>|/(|a||b|).
struct OverlapReport {
  Complex overlap{0.0, 0.0};
  double norm_bra = 0.0;
  double norm_ket = 0.0;
  double fidelity = 0.0;
};

OverlapReport make_report(Complex overlap, Complex bra_self, Complex ket_self);

}  // namespace bethe
