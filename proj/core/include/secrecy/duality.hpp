#pragma once

#include <utility>
#include <vector>

#include "secrecy/channel.hpp"

namespace secrecy {

/// Factors of the BC <-> MAC covariance transformation, indexed by user.
/// c[k] = I + H_k (sum of BC covariances encoded after k) H_k^H      (n_k x n_k)
/// d[k] = I + sum over users encoded before k of H_j^H Sigma_j H_j   (n_t x n_t)
/// e[k] * diag * f[k]^H is the economy SVD of d^{-1/2} H_k^H c^{-1/2}, restricted
/// to its positive singular values.
struct DualityContext {
  EncodingOrder order;
  std::vector<Matrix> c;
  std::vector<Matrix> d;
  std::vector<Matrix> e;
  std::vector<Matrix> f;
};

/// Maps broadcast covariances to dual MAC covariances with the same per-user
/// (eavesdropper-free) rates. The dual MAC decodes positions in encoding order,
/// see mac_rates. Total power is preserved whenever each Q_k lies in the range
/// of d_k^{-1/2} e_k; power a user radiates outside that range reaches no
/// MAC-side counterpart and is dropped.
std::pair<CovarianceSet, DualityContext> bc_to_mac(const ChannelSet& ch, const CovarianceSet& q,
                                                   const EncodingOrder& order);

/// Inverse map. Preserves per-user rates and total power.
CovarianceSet mac_to_bc(const ChannelSet& ch, const CovarianceSet& sigma, const EncodingOrder& order);
std::pair<CovarianceSet, DualityContext> mac_to_bc_with_context(const ChannelSet& ch,
                                                                const CovarianceSet& sigma,
                                                                const EncodingOrder& order);

/// Per-user effective eavesdropper channels c^{1/2} f e^H d^{-1/2} G^H (n_k x n_e),
/// which satisfy G_k^H Sigma_k G_k = G Q_k G^H for matched covariance pairs.
std::vector<Matrix> effective_eve_channels(const DualityContext& ctx, const Matrix& g);

/// Weighted objective of the equivalent MAC-side problem, evaluated with the
/// decoding order taken as the reverse of the encoding order in `ctx`:
///   sum_m (w_{pi_m} - w_{pi_{m-1}}) (log|I + sum_{j>=m} H^H Sigma H| - log|I + sum_{j>=m} Gk^H Sigma Gk|)
/// At equal weights it coincides with the broadcast WSR for matched pairs.
double mac_equivalent_objective(const ChannelSet& ch, const CovarianceSet& sigma,
                                const DualityContext& ctx, const WeightVector& w);

}  // namespace secrecy
