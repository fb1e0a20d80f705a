#pragma once

#include <vector>

#include "secrecy/channel.hpp"
#include "secrecy/solver.hpp"

namespace secrecy {

/// Legitimate channels restricted to the null space of G.
/// h_proj[k] = H_k * basis, with basis an orthonormal n_t x d basis of null(G).
struct ProjectedChannelSet {
  std::vector<Matrix> h_proj;
  Matrix basis;
};

/// Throws Error(kEmptyNullSpace) when G has full column rank.
ProjectedChannelSet zf_project(const ChannelSet& ch);

/// Zero-forcing baseline: the eavesdropper-free WSR problem on the projected
/// channels. Covariances are mapped back to the transmit space (B X B^H), and
/// rates are evaluated on the original channels, where leakage is zero.
SolverResult zf_wsr(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                    const PowerConstraint& p, const SolverConfig& cfg = {});

/// MIMO broadcast bound: solve_wsr with G = 0.
SolverResult bc_upper_bound(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                            const PowerConstraint& p, const SolverConfig& cfg = {});

}  // namespace secrecy
