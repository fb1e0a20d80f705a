#include "secrecy/duality.hpp"

#include <string>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

using numerics::hermitian_part;
using numerics::hermitian_power;
using numerics::identity;

constexpr double kSingularValueFloor = 1e-12;
constexpr double kEigenFloor = 1e-14;

struct Factor {
  Matrix e;
  Matrix f;
};

void require_posdef(const Matrix& m, const char* name) {
  if (!(numerics::min_eigenvalue(m) > kEigenFloor)) {
    throw Error(ErrorCode::kSingularFactor, std::string(name) + " is not positive definite");
  }
}

// Economy SVD of d^{-1/2} H^H c^{-1/2}, keeping only the positive support.
Factor factor(const Matrix& h, const Matrix& c, const Matrix& d) {
  require_posdef(c, "C_k");
  require_posdef(d, "D_k");
  const Matrix m = hermitian_power(d, -0.5, kEigenFloor) * h.adjoint() * hermitian_power(c, -0.5, kEigenFloor);
  const numerics::Svd s = numerics::svd(m);
  Eigen::Index r = 0;
  while (r < s.sigma.size() && s.sigma(r) > kSingularValueFloor) ++r;
  return {s.u.leftCols(r), s.v.leftCols(r)};
}

void check_inputs(const ChannelSet& ch, const CovarianceSet& cov, Side side, const EncodingOrder& order) {
  if (cov.side != side) {
    throw Error(ErrorCode::kInvalidArgument,
                side == Side::kBroadcast ? "expected broadcast covariances" : "expected MAC covariances");
  }
  validate(ch, cov);
  validate(ch, order);
}

}  // namespace

std::pair<CovarianceSet, DualityContext> bc_to_mac(const ChannelSet& ch, const CovarianceSet& q,
                                                   const EncodingOrder& order) {
  check_inputs(ch, q, Side::kBroadcast, order);
  const std::size_t K = ch.users();
  const Eigen::Index nt = ch.tx_antennas();

  DualityContext ctx{order, std::vector<Matrix>(K), std::vector<Matrix>(K), std::vector<Matrix>(K),
                     std::vector<Matrix>(K)};
  CovarianceSet sigma{Side::kMultipleAccess, std::vector<Matrix>(K)};

  // tails[p] = sum of Q at positions > p
  std::vector<Matrix> tails(K, numerics::zeros(nt, nt));
  for (std::size_t p = K - 1; p-- > 0;) tails[p] = tails[p + 1] + q[order.user_at(p + 1)];

  Matrix d = identity(nt);
  for (std::size_t p = 0; p < K; ++p) {
    const std::size_t u = order.user_at(p);
    const Matrix& h = ch.h(u);
    const Matrix c = hermitian_part(identity(h.rows()) + h * tails[p] * h.adjoint());
    const Factor fac = factor(h, c, d);
    const Matrix t = hermitian_power(c, -0.5, kEigenFloor) * fac.f * fac.e.adjoint() *
                     hermitian_power(d, 0.5, kEigenFloor);
    sigma[u] = hermitian_part(t * q[u] * t.adjoint());
    ctx.c[u] = c;
    ctx.d[u] = d;
    ctx.e[u] = fac.e;
    ctx.f[u] = fac.f;
    d = hermitian_part(d + h.adjoint() * sigma[u] * h);
  }
  return {std::move(sigma), std::move(ctx)};
}

std::pair<CovarianceSet, DualityContext> mac_to_bc_with_context(const ChannelSet& ch,
                                                                const CovarianceSet& sigma,
                                                                const EncodingOrder& order) {
  check_inputs(ch, sigma, Side::kMultipleAccess, order);
  const std::size_t K = ch.users();
  const Eigen::Index nt = ch.tx_antennas();

  DualityContext ctx{order, std::vector<Matrix>(K), std::vector<Matrix>(K), std::vector<Matrix>(K),
                     std::vector<Matrix>(K)};
  CovarianceSet q{Side::kBroadcast, std::vector<Matrix>(K)};

  std::vector<Matrix> ds(K);
  Matrix d = identity(nt);
  for (std::size_t p = 0; p < K; ++p) {
    const std::size_t u = order.user_at(p);
    ds[p] = d;
    d = hermitian_part(d + ch.h(u).adjoint() * sigma[u] * ch.h(u));
  }

  Matrix tail = numerics::zeros(nt, nt);
  for (std::size_t p = K; p-- > 0;) {
    const std::size_t u = order.user_at(p);
    const Matrix& h = ch.h(u);
    const Matrix c = hermitian_part(identity(h.rows()) + h * tail * h.adjoint());
    const Factor fac = factor(h, c, ds[p]);
    const Matrix t = hermitian_power(ds[p], -0.5, kEigenFloor) * fac.e * fac.f.adjoint() *
                     hermitian_power(c, 0.5, kEigenFloor);
    q[u] = hermitian_part(t * sigma[u] * t.adjoint());
    ctx.c[u] = c;
    ctx.d[u] = ds[p];
    ctx.e[u] = fac.e;
    ctx.f[u] = fac.f;
    tail += q[u];
  }
  return {std::move(q), std::move(ctx)};
}

CovarianceSet mac_to_bc(const ChannelSet& ch, const CovarianceSet& sigma, const EncodingOrder& order) {
  return mac_to_bc_with_context(ch, sigma, order).first;
}

std::vector<Matrix> effective_eve_channels(const DualityContext& ctx, const Matrix& g) {
  const std::size_t K = ctx.c.size();
  std::vector<Matrix> out(K);
  for (std::size_t u = 0; u < K; ++u) {
    if (ctx.d[u].cols() != g.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "G does not match the transmit dimension of the context");
    }
    out[u] = hermitian_power(ctx.c[u], 0.5, kEigenFloor) * ctx.f[u] * ctx.e[u].adjoint() *
             hermitian_power(ctx.d[u], -0.5, kEigenFloor) * g.adjoint();
  }
  return out;
}

double mac_equivalent_objective(const ChannelSet& ch, const CovarianceSet& sigma,
                                const DualityContext& ctx, const WeightVector& w) {
  check_inputs(ch, sigma, Side::kMultipleAccess, ctx.order);
  const std::size_t K = ch.users();
  const std::vector<Matrix> geff = effective_eve_channels(ctx, ch.g());
  const EncodingOrder decode = ctx.order.reversed();

  // Accumulate the suffix sums from the last decoding position backwards.
  Matrix legit = identity(ch.tx_antennas());
  Matrix leak = identity(ch.eve_antennas());
  std::vector<double> legit_ld(K), leak_ld(K);
  for (std::size_t m = K; m-- > 0;) {
    const std::size_t u = decode.user_at(m);
    legit += ch.h(u).adjoint() * sigma[u] * ch.h(u);
    leak += geff[u].adjoint() * sigma[u] * geff[u];
    legit_ld[m] = numerics::log_det_posdef(legit);
    leak_ld[m] = numerics::log_det_posdef(leak);
  }
  double acc = 0.0;
  double prev_w = 0.0;
  for (std::size_t m = 0; m < K; ++m) {
    const double wm = w[decode.user_at(m)];
    acc += (wm - prev_w) * (legit_ld[m] - leak_ld[m]);
    prev_w = wm;
  }
  return acc;
}

}  // namespace secrecy
