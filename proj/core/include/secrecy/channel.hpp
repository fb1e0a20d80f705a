#pragma once

#include <cstddef>
#include <vector>

#include "secrecy/numerics.hpp"

namespace secrecy {

/// Legitimate channels H_k (n_k x n_t) and the eavesdropper channel G (n_e x n_t).
/// Noise is white with unit variance at every receiver.
class ChannelSet {
 public:
  ChannelSet(std::vector<Matrix> h, Matrix g);

  std::size_t users() const noexcept { return h_.size(); }
  Eigen::Index tx_antennas() const noexcept { return g_.cols(); }
  Eigen::Index rx_antennas(std::size_t user) const { return h_.at(user).rows(); }
  Eigen::Index eve_antennas() const noexcept { return g_.rows(); }

  const Matrix& h(std::size_t user) const { return h_.at(user); }
  const std::vector<Matrix>& h_list() const noexcept { return h_; }
  const Matrix& g() const noexcept { return g_; }

  /// Same legitimate channels with a different eavesdropper.
  ChannelSet with_eavesdropper(Matrix g) const;
  /// Same legitimate channels, G = 0 with the current eavesdropper antenna count.
  ChannelSet without_eavesdropper() const;

 private:
  std::vector<Matrix> h_;
  Matrix g_;
};

enum class Side { kBroadcast, kMultipleAccess };

/// Per-user transmit covariances. Broadcast side: Q_k is n_t x n_t.
/// Multiple-access side: Sigma_k is n_k x n_k. Indexed by user, not by position.
struct CovarianceSet {
  Side side = Side::kBroadcast;
  std::vector<Matrix> q;

  std::size_t size() const noexcept { return q.size(); }
  const Matrix& operator[](std::size_t user) const { return q.at(user); }
  Matrix& operator[](std::size_t user) { return q.at(user); }

  static CovarianceSet zeros_bc(const ChannelSet& ch);
  static CovarianceSet zeros_mac(const ChannelSet& ch);
};

/// DPC encoding order in encode-first orientation: user_at(0) is encoded first.
/// The user at position p sees the users at positions p+1..K-1 as interference;
/// earlier positions are pre-cancelled. Users are 0-based internally, the
/// one-based helpers exist for files and the CLI.
class EncodingOrder {
 public:
  EncodingOrder() = default;
  explicit EncodingOrder(std::vector<std::size_t> perm);

  static EncodingOrder identity(std::size_t users);
  static EncodingOrder from_one_based(const std::vector<std::size_t>& perm);

  std::size_t size() const noexcept { return perm_.size(); }
  std::size_t user_at(std::size_t position) const { return perm_.at(position); }
  std::size_t position_of(std::size_t user) const { return pos_.at(user); }
  const std::vector<std::size_t>& users() const noexcept { return perm_; }
  std::vector<std::size_t> one_based() const;
  EncodingOrder reversed() const;

  friend bool operator==(const EncodingOrder& a, const EncodingOrder& b) {
    return a.perm_ == b.perm_;
  }

 private:
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> pos_;
};

/// Nonnegative weights summing to one.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> w);

  static WeightVector uniform(std::size_t users);
  /// Rescales nonnegative entries to sum to one.
  static WeightVector normalized(std::vector<double> w);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t user) const { return w_.at(user); }
  const std::vector<double>& values() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

/// Per-user rates in nats/s/Hz, indexed by user. Not clamped.
using RateTuple = std::vector<double>;

struct PowerConstraint {
  double p = 1.0;
};

void validate(const ChannelSet& ch, const CovarianceSet& q);
void validate(const ChannelSet& ch, const EncodingOrder& order);

/// Secrecy rate of every user under DPC with stochastic encoding:
/// R at position k is the log-det gain of H from the covariances at positions >= k
/// over positions > k, minus the same ratio measured at the eavesdropper.
RateTuple secrecy_rates(const ChannelSet& ch, const CovarianceSet& q, const EncodingOrder& order);

/// Dual MAC rates: position k is decoded against the users at positions < k,
/// R = log|I + sum_{j<=k} H_j^H S_j H_j| - log|I + sum_{j<k} H_j^H S_j H_j|.
RateTuple mac_rates(const ChannelSet& ch, const CovarianceSet& sigma, const EncodingOrder& order);

/// Sum of real traces.
double total_power(const CovarianceSet& q);

double wsr(const RateTuple& rates, const WeightVector& w);

/// Converts nats to bits for display.
inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

}  // namespace secrecy
