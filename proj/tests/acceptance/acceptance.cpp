// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "secrecy/secrecy.hpp"

using namespace secrecy;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::string failed;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failed += failed.empty() ? what : ", " + what;
    }
  }
};

// Every solver result from the regression criteria, audited by criterion 8.
std::vector<std::pair<std::string, SolverResult>>& regression_runs() {
  static std::vector<std::pair<std::string, SolverResult>> runs;
  return runs;
}

SolverResult record(const std::string& name, SolverResult r) {
  regression_runs().emplace_back(name, r);
  return r;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt_e(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double share(const CovarianceSet& q, std::size_t user) {
  const double total = total_power(q);
  return total > 0.0 ? q[user].trace().real() / total : 0.0;
}

void example1(Outcome& out) {
  const ChannelSet ch = oracle::example1();
  const WeightVector w({0.5, 0.5});
  const PowerConstraint p{1.0};
  double slowest = 0.0;
  auto timed = [&](const EncodingOrder& order, const std::string& name) {
    const auto t0 = std::chrono::steady_clock::now();
    SolverResult r = record(name, solve_wsr(ch, w, order, p));
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return r;
  };
  const SolverResult a = timed(EncodingOrder::from_one_based({1, 2}), "example1 [1,2]");
  const SolverResult b = timed(EncodingOrder::from_one_based({2, 1}), "example1 [2,1]");
  out.require(a.converged && b.converged, "converged");
  out.require(near(a.rates[0], 0.8334, 0.01) && near(a.rates[1], 0.7643, 0.01), "rates [1,2]");
  out.require(near(b.rates[0], 0.5324, 0.01) && near(b.rates[1], 1.065, 0.01), "rates [2,1]");
  const double sa = a.rates[0] + a.rates[1];
  const double sb = b.rates[0] + b.rates[1];
  out.require(near(sa, 1.5977, 0.01) && near(sb, 1.5977, 0.01), "sum rates");
  out.require(slowest < 60.0, "runtime");
  out.detail << "(" << fmt(a.rates[0]) << ", " << fmt(a.rates[1]) << ") and (" << fmt(b.rates[0]) << ", "
             << fmt(b.rates[1]) << "), sums " << fmt(sa) << " / " << fmt(sb) << ", slowest solve "
             << fmt(slowest) << " s";
}

void example2(Outcome& out) {
  const PowerConstraint p{1.0};
  const WeightVector half({0.5, 0.5});
  const SolverResult bc = record("example2 delta=0", solve_wsr(oracle::example2(0.0), half, optimal_order(half), p));
  const double sum = bc.rates[0] + bc.rates[1];
  out.require(bc.converged && near(sum, 2.2615, 0.01), "delta=0 sum-rate");
  out.detail << "delta=0 sum " << fmt(sum);

  const std::vector<double> deltas{0.0, 0.5, 1.0};
  double worst = -1e9;
  for (double w1 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const WeightVector w({w1, 1.0 - w1});
    std::vector<double> v;
    for (double d : deltas) {
      v.push_back(record("example2 delta=" + fmt(d), solve_wsr(oracle::example2(d), w, optimal_order(w), p)).wsr);
    }
    for (std::size_t i = 1; i < v.size(); ++i) worst = std::max(worst, v[i] - v[i - 1]);
  }
  out.require(worst <= 1e-3, "WSR nonincreasing in delta");
  out.detail << ", largest WSR increase along delta " << fmt_e(worst);

  double low_share = 1.0;
  double high_share = 1.0;
  const ChannelSet ch1 = oracle::example2(1.0);
  for (double w1 : {0.0, 0.02, 0.05, 0.08, 0.10}) {
    const WeightVector w({w1, 1.0 - w1});
    const SolverResult r = record("example2 delta=1 w1=" + fmt(w1), solve_wsr(ch1, w, optimal_order(w), p));
    low_share = std::min(low_share, share(r.covariances, 1));
  }
  for (double w1 : {0.87, 0.9, 0.95, 1.0}) {
    const WeightVector w({w1, 1.0 - w1});
    const SolverResult r = record("example2 delta=1 w1=" + fmt(w1), solve_wsr(ch1, w, optimal_order(w), p));
    high_share = std::min(high_share, share(r.covariances, 0));
  }
  out.require(low_share >= 0.99, "w1 <= 0.10 gives user 2 all power");
  out.require(high_share >= 0.99, "w1 >= 0.87 gives user 1 all power");
  out.detail << ", min power share user 2 (w1<=0.10) " << fmt(low_share) << ", user 1 (w1>=0.87) "
             << fmt(high_share);
}

void example3(Outcome& out) {
  const ChannelSet ch = oracle::example3();
  const PowerConstraint p{1.0};
  const WeightVector eq({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  double lo = 1e9;
  double hi = -1e9;
  for (const EncodingOrder& o : all_orders(3)) {
    const SolverResult r = record("example3 equal", solve_wsr(ch, eq, o, p));
    out.require(r.converged, "converged");
    lo = std::min(lo, r.wsr);
    hi = std::max(hi, r.wsr);
  }
  out.require(near(lo, 0.77, 0.02) && near(hi, 0.77, 0.02), "equal-weight WSR 0.77 for all orders");
  out.detail << "equal weights WSR in [" << fmt(lo) << ", " << fmt(hi) << "]";

  struct Case {
    std::vector<double> w;
    std::vector<std::size_t> best;
  };
  const std::vector<Case> cases{{{0.15, 0.2, 0.65}, {3, 2, 1}}, {{0.2, 0.1, 0.7}, {3, 1, 2}}};
  for (const Case& c : cases) {
    const WeightVector w(c.w);
    const OrderReport rep = enumerate_orders(ch, w, p);
    for (const OrderEntry& e : rep.entries) record("example3 enumerate", solve_wsr(ch, w, e.order, p));
    const auto best = rep.entries[rep.best].order.one_based();
    out.require(best == c.best, "best permutation");
    out.require(optimal_order(w).one_based() == c.best, "weight-sorted order");
    out.detail << "; best for (" << c.w[0] << "," << c.w[1] << "," << c.w[2] << ") = [" << best[0] << best[1]
               << best[2] << "]";
  }
  for (const std::vector<double>& wv : {std::vector<double>{0.15, 0.2, 0.65}, std::vector<double>{0.2, 0.1, 0.7},
                                         std::vector<double>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}) {
    const WeightVector w(wv);
    const EncodingOrder o = optimal_order(w);
    const SolverResult zf = zf_wsr(ch, w, o, p);
    const SolverResult full = solve_wsr(ch, w, o, p);
    out.require(zf.wsr < full.wsr, "ZF strictly below");
    out.detail << "; ZF " << fmt(zf.wsr) << " < " << fmt(full.wsr);
  }
}

void order_optimality(Outcome& out) {
  oracle::reseed(4004);
  double worst = -1.0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index nt = oracle::uniform_int(1, 2);
    const std::vector<Eigen::Index> nk{oracle::uniform_int(1, 2), oracle::uniform_int(1, 2), oracle::uniform_int(1, 2)};
    const ChannelSet ch = oracle::random_channels(3, nt, nk, 1);
    const WeightVector w(oracle::distinct_weights(3));
    const OrderReport rep = enumerate_orders(ch, w, PowerConstraint{1.0});
    worst = std::max(worst, rep.optimal_gap);
    out.require(rep.optimal_gap <= 1e-3, "instance " + std::to_string(i) + " gap " + fmt_e(rep.optimal_gap));
  }
  out.detail << "20 instances, largest gap " << fmt_e(worst);
}

double max_abs_diff(const CovarianceSet& a, const CovarianceSet& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return m;
}

void duality(Outcome& out) {
  oracle::reseed(5005);
  double rate_err = 0.0;
  double trace_err = 0.0;
  double trip_err = 0.0;
  double eff_trace_err = 0.0;
  double wide_trace_err = 0.0;  // sets where every user has n_k >= n_t
  int violations = 0;
  int wide = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t K = static_cast<std::size_t>(oracle::uniform_int(1, 3));
    const Eigen::Index nt = oracle::uniform_int(1, 3);
    std::vector<Eigen::Index> nk;
    for (std::size_t k = 0; k < K; ++k) nk.push_back(oracle::uniform_int(1, 3));
    const ChannelSet ch = oracle::random_channels(K, nt, nk, 1).without_eavesdropper();
    std::vector<std::size_t> perm(K);
    for (std::size_t k = 0; k < K; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), oracle::rng());
    const EncodingOrder order(perm);

    CovarianceSet q;
    for (std::size_t k = 0; k < K; ++k) q.q.push_back(oracle::random_psd(nt, oracle::uniform(0.0, 1.0)));

    const auto [sigma, ctx] = bc_to_mac(ch, q, order);
    const RateTuple bc = secrecy_rates(ch, q, order);
    const RateTuple mac = mac_rates(ch, sigma, order);
    for (std::size_t k = 0; k < K; ++k) rate_err = std::max(rate_err, std::abs(bc[k] - mac[k]));
    const double gap = std::abs(total_power(q) - total_power(sigma));
    trace_err = std::max(trace_err, gap);
    if (gap > 1e-8) ++violations;
    if (std::all_of(nk.begin(), nk.end(), [nt](Eigen::Index n) { return n >= nt; })) {
      ++wide;
      wide_trace_err = std::max(wide_trace_err, gap);
    }

    // bc_to_mac after mac_to_bc is the identity on MAC sets.
    const CovarianceSet back = mac_to_bc(ch, sigma, order);
    const auto [sigma2, ctx2] = bc_to_mac(ch, back, order);
    trip_err = std::max(trip_err, max_abs_diff(sigma2, sigma));
    eff_trace_err = std::max(eff_trace_err, std::abs(total_power(back) - total_power(sigma)));
    eff_trace_err = std::max(eff_trace_err, std::abs(total_power(back) - total_power(sigma2)));
  }
  out.require(rate_err <= 1e-8, "rate preservation");
  out.require(trace_err <= 1e-8, "trace preservation");
  out.require(trip_err <= 1e-8, "round trip");
  out.detail << "50 sets, max rate error " << fmt_e(rate_err) << ", trace error " << fmt_e(trace_err) << " ("
             << violations << " sets above 1e-8), round-trip error " << fmt_e(trip_err)
             << "; informational: trace error " << fmt_e(wide_trace_err) << " on the " << wide
             << " sets with n_k >= n_t for all k, " << fmt_e(eff_trace_err) << " on sets in the image of mac_to_bc";
}

void gradient(Outcome& out) {
  oracle::reseed(6006);
  double worst_rel = 0.0;
  double worst_eig = -1e9;
  for (int i = 0; i < 30; ++i) {
    const std::size_t K = static_cast<std::size_t>(oracle::uniform_int(1, 3));
    const Eigen::Index nt = oracle::uniform_int(1, 3);
    std::vector<Eigen::Index> nk;
    for (std::size_t k = 0; k < K; ++k) nk.push_back(oracle::uniform_int(1, 3));
    const ChannelSet ch = oracle::random_channels(K, nt, nk, oracle::uniform_int(1, 2));
    CovarianceSet q;
    for (std::size_t k = 0; k < K; ++k) q.q.push_back(oracle::random_psd(nt, oracle::uniform(0.1, 1.0)));
    std::vector<std::size_t> perm(K);
    for (std::size_t k = 0; k < K; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), oracle::rng());
    const EncodingOrder order(perm);
    const WeightVector w = WeightVector::normalized(oracle::distinct_weights(K));
    const std::size_t pos = static_cast<std::size_t>(oracle::uniform_int(0, static_cast<int>(K) - 1));
    const std::size_t user = order.user_at(pos);

    const Matrix a = gradient_a_k(ch, q, w, order, pos);
    const auto f = [&](const Matrix& x) {
      CovarianceSet qq = q;
      qq[user] = x;
      return split_objective(ch, qq, w, order, 1.0, 1.0, pos).convex;
    };
    const Matrix fd = oracle::fd_gradient(f, q[user]);
    const double rel = (fd - a).norm() / std::max(a.norm(), 1e-12);
    worst_rel = std::max(worst_rel, a.norm() < 1e-12 ? fd.norm() : rel);
    worst_eig = std::max(worst_eig, oracle::max_eig(a));
  }
  out.require(worst_rel <= 1e-4, "finite-difference match");
  out.require(worst_eig <= 1e-9, "negative semidefinite");
  out.detail << "30 configurations, worst relative error " << fmt_e(worst_rel) << ", largest eigenvalue "
             << fmt_e(worst_eig);
}

void scalar_oracle(Outcome& out) {
  oracle::reseed(7007);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t K = i % 4 == 0 ? 1 : 2;
    std::vector<double> h;
    for (std::size_t k = 0; k < K; ++k) h.push_back(oracle::uniform(0.2, 2.5));
    const double g = oracle::uniform(0.0, 1.5);
    const double power = oracle::uniform(0.5, 2.0);
    const std::vector<double> wv = K == 1 ? std::vector<double>{1.0} : oracle::distinct_weights(2);
    const WeightVector w(wv);

    std::vector<Matrix> hm;
    for (double x : h) hm.push_back(Matrix::Constant(1, 1, x));
    const ChannelSet ch(hm, Matrix::Constant(1, 1, g));
    const EncodingOrder order = optimal_order(w);
    const SolverResult r = solve_wsr(ch, w, order, PowerConstraint{power});
    const double grid = oracle::scalar_grid_search(h, g, wv, order.users(), power);
    worst = std::max(worst, std::abs(r.wsr - grid));
    out.require(std::abs(r.wsr - grid) <= 1e-3, "instance " + std::to_string(i));
  }
  out.detail << "20 scalar instances, largest |solver - grid| " << fmt_e(worst);
}

void monotone(Outcome& out) {
  double worst_step = 0.0;
  double worst_wsr_step = 0.0;
  double worst_kkt = 0.0;
  std::size_t runs = 0;
  for (const auto& [name, r] : regression_runs()) {
    ++runs;
    for (std::size_t i = 1; i < r.lagrangian_history.size(); ++i) {
      worst_step = std::min(worst_step, r.lagrangian_history[i] - r.lagrangian_history[i - 1]);
    }
    for (std::size_t i = 1; i < r.wsr_history.size(); ++i) {
      worst_wsr_step = std::min(worst_wsr_step, r.wsr_history[i] - r.wsr_history[i - 1]);
    }
    if (r.converged) {
      worst_kkt = std::max(worst_kkt, r.kkt_residual);
      out.require(r.kkt_residual <= 1e-4, "KKT residual of " + name);
    }
  }
  out.require(worst_step >= -1e-9, "BSMM objective nondecreasing");
  out.detail << runs << " regression solves, most negative BSMM objective step " << fmt_e(worst_step)
             << ", largest KKT residual " << fmt_e(worst_kkt) << " (plain WSR, informational: "
             << fmt_e(worst_wsr_step) << ")";
}

void concavity(Outcome& out) {
  oracle::reseed(9009);
  double worst = 1e9;
  for (int i = 0; i < 10; ++i) {
    const ChannelSet ch = oracle::random_channels(2, 2, {2, 2}, 1);
    const WeightVector w(oracle::distinct_weights(2));
    const EncodingOrder o = optimal_order(w);
    const double a = solve_wsr(ch, w, o, PowerConstraint{0.5}).wsr;
    const double b = solve_wsr(ch, w, o, PowerConstraint{1.0}).wsr;
    const double c = solve_wsr(ch, w, o, PowerConstraint{1.5}).wsr;
    const double margin = b - 0.5 * (a + c);
    worst = std::min(worst, margin);
    out.require(margin >= -1e-3, "instance " + std::to_string(i));
  }
  out.detail << "10 instances, smallest phi(1) - (phi(0.5)+phi(1.5))/2 = " << fmt_e(worst);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Example 1 regression", example1},
      {2, "Example 2 regression", example2},
      {3, "Example 3 regression", example3},
      {4, "Order optimality on random instances", order_optimality},
      {5, "Duality properties", duality},
      {6, "Gradient property", gradient},
      {7, "Scalar grid-search oracle", scalar_oracle},
      {8, "Monotone inner loop and KKT stationarity", monotone},
      {9, "Concavity of the WSR in the power budget", concavity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " -- "
              << out.detail.str() << (out.failed.empty() ? "" : " [failed: " + out.failed + "]") << " (" << fmt(secs) << " s)" << std::endl;
    failures += out.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
