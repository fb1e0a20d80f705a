#include "secrecy/channel.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy {

using numerics::identity;
using numerics::log_det_posdef;

ChannelSet::ChannelSet(std::vector<Matrix> h, Matrix g) : h_(std::move(h)), g_(std::move(g)) {
  if (h_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "channel set needs at least one legitimate receiver");
  }
  const Eigen::Index nt = g_.cols();
  if (nt == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "eavesdropper channel has no transmit columns");
  }
  for (std::size_t k = 0; k < h_.size(); ++k) {
    if (h_[k].cols() != nt || h_[k].rows() == 0) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "H_" + std::to_string(k + 1) + " must have " + std::to_string(nt) + " columns");
    }
    if (!numerics::all_finite(h_[k])) {
      throw Error(ErrorCode::kInvalidArgument, "H_" + std::to_string(k + 1) + " has non-finite entries");
    }
  }
  if (!numerics::all_finite(g_)) {
    throw Error(ErrorCode::kInvalidArgument, "G has non-finite entries");
  }
}

ChannelSet ChannelSet::with_eavesdropper(Matrix g) const {
  return ChannelSet(h_, std::move(g));
}

ChannelSet ChannelSet::without_eavesdropper() const {
  return ChannelSet(h_, numerics::zeros(std::max<Eigen::Index>(g_.rows(), 1), g_.cols()));
}

CovarianceSet CovarianceSet::zeros_bc(const ChannelSet& ch) {
  CovarianceSet out{Side::kBroadcast, {}};
  for (std::size_t k = 0; k < ch.users(); ++k) {
    out.q.push_back(numerics::zeros(ch.tx_antennas(), ch.tx_antennas()));
  }
  return out;
}

CovarianceSet CovarianceSet::zeros_mac(const ChannelSet& ch) {
  CovarianceSet out{Side::kMultipleAccess, {}};
  for (std::size_t k = 0; k < ch.users(); ++k) {
    out.q.push_back(numerics::zeros(ch.rx_antennas(k), ch.rx_antennas(k)));
  }
  return out;
}

EncodingOrder::EncodingOrder(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
  pos_.assign(perm_.size(), perm_.size());
  for (std::size_t p = 0; p < perm_.size(); ++p) {
    const std::size_t u = perm_[p];
    if (u >= perm_.size() || pos_[u] != perm_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "encoding order is not a permutation");
    }
    pos_[u] = p;
  }
}

EncodingOrder EncodingOrder::identity(std::size_t users) {
  std::vector<std::size_t> perm(users);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return EncodingOrder(std::move(perm));
}

EncodingOrder EncodingOrder::from_one_based(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> zero_based;
  zero_based.reserve(perm.size());
  for (std::size_t u : perm) {
    if (u == 0) throw Error(ErrorCode::kInvalidArgument, "one-based order contains 0");
    zero_based.push_back(u - 1);
  }
  return EncodingOrder(std::move(zero_based));
}

std::vector<std::size_t> EncodingOrder::one_based() const {
  std::vector<std::size_t> out(perm_);
  for (auto& u : out) ++u;
  return out;
}

EncodingOrder EncodingOrder::reversed() const {
  return EncodingOrder(std::vector<std::size_t>(perm_.rbegin(), perm_.rend()));
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty weight vector");
  double sum = 0.0;
  for (double x : w_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite and nonnegative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "weights must sum to one");
  }
}

WeightVector WeightVector::uniform(std::size_t users) {
  return WeightVector(std::vector<double>(users, 1.0 / static_cast<double>(users)));
}

WeightVector WeightVector::normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite and nonnegative");
    }
    sum += x;
  }
  if (!(sum > 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights sum to zero");
  for (double& x : w) x /= sum;
  return WeightVector(std::move(w));
}

void validate(const ChannelSet& ch, const EncodingOrder& order) {
  if (order.size() != ch.users()) {
    throw Error(ErrorCode::kDimensionMismatch, "encoding order length " + std::to_string(order.size()) +
                                                   " does not match K = " + std::to_string(ch.users()));
  }
}

void validate(const ChannelSet& ch, const CovarianceSet& q) {
  if (q.size() != ch.users()) {
    throw Error(ErrorCode::kDimensionMismatch, "covariance count " + std::to_string(q.size()) +
                                                   " does not match K = " + std::to_string(ch.users()));
  }
  for (std::size_t k = 0; k < q.size(); ++k) {
    const Eigen::Index n = q.side == Side::kBroadcast ? ch.tx_antennas() : ch.rx_antennas(k);
    if (q[k].rows() != n || q[k].cols() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "covariance " + std::to_string(k + 1) + " must be " +
                                                     std::to_string(n) + "x" + std::to_string(n));
    }
    if (!numerics::all_finite(q[k])) {
      throw Error(ErrorCode::kInvalidArgument, "covariance " + std::to_string(k + 1) + " is not finite");
    }
  }
}

namespace {

double log_det_gain(const Matrix& h, const Matrix& s) {
  return log_det_posdef(identity(h.rows()) + h * s * h.adjoint());
}

}  // namespace

RateTuple secrecy_rates(const ChannelSet& ch, const CovarianceSet& q, const EncodingOrder& order) {
  if (q.side != Side::kBroadcast) {
    throw Error(ErrorCode::kInvalidArgument, "secrecy_rates expects broadcast covariances");
  }
  validate(ch, q);
  validate(ch, order);
  const std::size_t K = ch.users();
  const Eigen::Index nt = ch.tx_antennas();

  RateTuple rates(K, 0.0);
  Matrix tail = numerics::zeros(nt, nt);  // sum of Q at positions > p
  for (std::size_t p = K; p-- > 0;) {
    const std::size_t u = order.user_at(p);
    const Matrix with_self = tail + q[u];
    const Matrix& h = ch.h(u);
    const double legit = log_det_gain(h, with_self) - log_det_gain(h, tail);
    const double leak = log_det_gain(ch.g(), with_self) - log_det_gain(ch.g(), tail);
    rates[u] = legit - leak;
    tail = with_self;
  }
  return rates;
}

RateTuple mac_rates(const ChannelSet& ch, const CovarianceSet& sigma, const EncodingOrder& order) {
  if (sigma.side != Side::kMultipleAccess) {
    throw Error(ErrorCode::kInvalidArgument, "mac_rates expects multiple-access covariances");
  }
  validate(ch, sigma);
  validate(ch, order);
  const std::size_t K = ch.users();
  const Eigen::Index nt = ch.tx_antennas();

  RateTuple rates(K, 0.0);
  Matrix acc = identity(nt);
  double prev = 0.0;
  for (std::size_t p = 0; p < K; ++p) {
    const std::size_t u = order.user_at(p);
    acc += ch.h(u).adjoint() * sigma[u] * ch.h(u);
    const double cur = log_det_posdef(acc);
    rates[u] = cur - prev;
    prev = cur;
  }
  return rates;
}

double total_power(const CovarianceSet& q) {
  double acc = 0.0;
  for (const auto& m : q.q) acc += m.trace().real();
  return acc;
}

double wsr(const RateTuple& rates, const WeightVector& w) {
  if (rates.size() != w.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "rate and weight lengths differ");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) acc += w[k] * rates[k];
  return acc;
}

}  // namespace secrecy
