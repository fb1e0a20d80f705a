#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "secrecy/duality.hpp"
#include "secrecy/ordering.hpp"
#include "secrecy/solver.hpp"

using namespace secrecy;

namespace {

Matrix scalar(double x) { return Matrix::Constant(1, 1, x); }

double max_diff(const CovarianceSet& a, const CovarianceSet& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, (a[k] - b[k]).norm());
  return m;
}

}  // namespace

TEST(Duality, ScalarSingleUserIsIdentity) {
  const ChannelSet ch({scalar(1.7)}, scalar(0.0));
  CovarianceSet q{Side::kBroadcast, {scalar(0.6)}};
  const auto [sigma, ctx] = bc_to_mac(ch, q, EncodingOrder::identity(1));
  EXPECT_NEAR(sigma[0](0, 0).real(), 0.6, 1e-14);
  EXPECT_NEAR(mac_to_bc(ch, sigma, EncodingOrder::identity(1))[0](0, 0).real(), 0.6, 1e-14);
}

TEST(Duality, ZeroMapsToZero) {
  const ChannelSet ch = oracle::example2(0.0);
  const auto [sigma, ctx] = bc_to_mac(ch, CovarianceSet::zeros_bc(ch), EncodingOrder::identity(2));
  EXPECT_EQ(sigma.side, Side::kMultipleAccess);
  for (const Matrix& m : sigma.q) EXPECT_LT(m.norm(), 1e-15);
  const CovarianceSet back = mac_to_bc(ch, CovarianceSet::zeros_mac(ch), EncodingOrder::identity(2));
  for (const Matrix& m : back.q) EXPECT_LT(m.norm(), 1e-15);
}

TEST(Duality, PreservesRatesOnExampleTwoChannels) {
  oracle::reseed(31);
  const ChannelSet ch = oracle::example2(0.0);
  for (int i = 0; i < 20; ++i) {
    const double t = oracle::uniform(0.0, 1.0);
    CovarianceSet q{Side::kBroadcast, {oracle::random_psd(2, t * oracle::uniform(0, 1)),
                                       oracle::random_psd(2, (1 - t) * oracle::uniform(0, 1))}};
    for (const EncodingOrder& o : all_orders(2)) {
      const auto [sigma, ctx] = bc_to_mac(ch, q, o);
      const RateTuple bc = secrecy_rates(ch, q, o);
      const RateTuple mac = mac_rates(ch, sigma, o);
      EXPECT_NEAR(bc[0], mac[0], 1e-8);
      EXPECT_NEAR(bc[1], mac[1], 1e-8);
      EXPECT_NEAR(total_power(q), total_power(sigma), 1e-8);
    }
  }
}

TEST(Duality, RoundTripOnSquareChannels) {
  oracle::reseed(32);
  for (int i = 0; i < 20; ++i) {
    const ChannelSet ch = oracle::random_channels(2, 2, {2, 2}, 1).without_eavesdropper();
    CovarianceSet q{Side::kBroadcast, {oracle::random_psd(2, 0.5), oracle::random_psd(2, 0.5, 1)}};
    const EncodingOrder o = EncodingOrder::from_one_based({2, 1});
    const auto [sigma, ctx] = bc_to_mac(ch, q, o);
    EXPECT_LT(max_diff(mac_to_bc(ch, sigma, o), q), 1e-8);
  }
}

TEST(Duality, MacToBcPreservesRatesAndPower) {
  oracle::reseed(33);
  for (int i = 0; i < 20; ++i) {
    const ChannelSet ch = oracle::random_channels(3, 3, {1, 2, 3}, 1).without_eavesdropper();
    CovarianceSet s{Side::kMultipleAccess,
                    {oracle::random_psd(1, 0.3), oracle::random_psd(2, 0.3), oracle::random_psd(3, 0.4)}};
    const EncodingOrder o = EncodingOrder::from_one_based({3, 1, 2});
    const CovarianceSet q = mac_to_bc(ch, s, o);
    EXPECT_NEAR(total_power(q), total_power(s), 1e-8);
    const RateTuple bc = secrecy_rates(ch, q, o);
    const RateTuple mac = mac_rates(ch, s, o);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(bc[k], mac[k], 1e-8);
  }
}

TEST(Duality, PowerOutsideChannelDirectionsIsDropped) {
  // A user radiating into its channel's null space gains nothing and the dual
  // MAC covariance carries none of that power.
  Matrix h(1, 2);
  h << 1.0, 0.0;
  const ChannelSet ch({h}, Matrix::Zero(1, 2));
  CovarianceSet q{Side::kBroadcast, {Matrix::Zero(2, 2)}};
  q[0](1, 1) = 1.0;
  const auto [sigma, ctx] = bc_to_mac(ch, q, EncodingOrder::identity(1));
  EXPECT_LT(total_power(sigma), 1e-14);
  EXPECT_NEAR(secrecy_rates(ch, q, EncodingOrder::identity(1))[0], 0.0, 1e-14);
}

TEST(Duality, ContextFactors) {
  oracle::reseed(34);
  const ChannelSet ch = oracle::random_channels(3, 2, {2, 1, 2}, 1);
  CovarianceSet q{Side::kBroadcast, {oracle::random_psd(2, 0.4), oracle::random_psd(2, 0.3), oracle::random_psd(2, 0.3)}};
  const auto [sigma, ctx] = bc_to_mac(ch, q, EncodingOrder::from_one_based({1, 3, 2}));
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_GE(oracle::min_eig(ctx.c[k]), 1.0 - 1e-12);
    EXPECT_GE(oracle::min_eig(ctx.d[k]), 1.0 - 1e-12);
    const Eigen::Index r = ctx.e[k].cols();
    EXPECT_LT((ctx.e[k].adjoint() * ctx.e[k] - Matrix::Identity(r, r)).norm(), 1e-10);
    EXPECT_LT((ctx.f[k].adjoint() * ctx.f[k] - Matrix::Identity(r, r)).norm(), 1e-10);
  }
}

TEST(EffectiveEve, ZeroEavesdropper) {
  oracle::reseed(35);
  const ChannelSet ch = oracle::random_channels(2, 2, {2, 2}, 1);
  CovarianceSet q{Side::kBroadcast, {oracle::random_psd(2, 0.5), oracle::random_psd(2, 0.5)}};
  const auto [sigma, ctx] = bc_to_mac(ch, q, EncodingOrder::identity(2));
  for (const Matrix& g : effective_eve_channels(ctx, Matrix::Zero(1, 2))) EXPECT_LT(g.norm(), 1e-15);
}

TEST(EffectiveEve, ScalarIsConjugateTranspose) {
  const ChannelSet ch({scalar(1.0)}, scalar(0.5));
  CovarianceSet q{Side::kBroadcast, {scalar(0.0)}};
  const auto [sigma, ctx] = bc_to_mac(ch, q, EncodingOrder::identity(1));
  const std::vector<Matrix> g = effective_eve_channels(ctx, ch.g());
  EXPECT_NEAR(std::abs(g[0](0, 0) - 0.5), 0.0, 1e-14);
}

TEST(EffectiveEve, MatchesLeakageOfMatchedPairs) {
  oracle::reseed(36);
  const ChannelSet ch = oracle::random_channels(2, 2, {2, 2}, 2);
  CovarianceSet q{Side::kBroadcast, {oracle::random_psd(2, 0.5), oracle::random_psd(2, 0.5)}};
  const auto [sigma, ctx] = bc_to_mac(ch, q, EncodingOrder::identity(2));
  const std::vector<Matrix> g = effective_eve_channels(ctx, ch.g());
  for (std::size_t k = 0; k < 2; ++k) {
    const Matrix lhs = g[k].adjoint() * sigma[k] * g[k];
    const Matrix rhs = ch.g() * q[k] * ch.g().adjoint();
    EXPECT_LT((lhs - rhs).norm(), 1e-10);
  }
}

TEST(EquivalentObjective, MatchesWsrAtSolverFixedPoint) {
  const ChannelSet ch = oracle::example1();
  const WeightVector w({0.5, 0.5});
  for (const EncodingOrder& o : all_orders(2)) {
    const SolverResult r = solve_wsr(ch, w, o, PowerConstraint{1.0});
    const auto [sigma, ctx] = bc_to_mac(ch, r.covariances, o);
    EXPECT_NEAR(mac_equivalent_objective(ch, sigma, ctx, w), r.wsr, 1e-6);
  }
}
