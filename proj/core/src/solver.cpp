#include "secrecy/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

using numerics::hermitian_part;
using numerics::identity;
using numerics::inverse_posdef;
using numerics::log_det_posdef;
using numerics::psd_project;

constexpr double kArmijo = 1e-4;
constexpr double kBacktrack = 0.5;
constexpr double kMinStep = 1e-10;
constexpr double kMaxStep = 1e10;
constexpr double kPowerSlack = 1e-6;

// suffix[p] = sum of the covariances at positions >= p; suffix[K] = 0.
std::vector<Matrix> suffix_sums(const CovarianceSet& q, const EncodingOrder& order, Eigen::Index nt) {
  const std::size_t K = order.size();
  std::vector<Matrix> s(K + 1, numerics::zeros(nt, nt));
  for (std::size_t p = K; p-- > 0;) s[p] = s[p + 1] + q[order.user_at(p)];
  return s;
}

double ld_gain(const Matrix& x, const Matrix& s) {
  return log_det_posdef(identity(x.rows()) + x * s * x.adjoint());
}

// X^H (I + X S X^H)^{-1} X, the gradient of log|I + X S X^H| in S.
Matrix grad_term(const Matrix& x, const Matrix& s) {
  return hermitian_part(x.adjoint() * inverse_posdef(identity(x.rows()) + x * s * x.adjoint()) * x);
}

void check_common(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                  const EncodingOrder& order, std::size_t position) {
  if (q.side != Side::kBroadcast) {
    throw Error(ErrorCode::kInvalidArgument, "solver works on broadcast covariances");
  }
  validate(ch, q);
  validate(ch, order);
  if (w.size() != ch.users()) throw Error(ErrorCode::kDimensionMismatch, "weight length does not match K");
  if (position >= ch.users()) throw Error(ErrorCode::kInvalidArgument, "block position out of range");
}

// The concave block objective and its gradient, with everything except the
// block at `position` frozen.
class BlockProblem {
 public:
  BlockProblem(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w, const EncodingOrder& order,
               double lambda, const Matrix& a_k, std::size_t position)
      : ch_(ch), w_(w), order_(order), position_(position), user_(order.user_at(position)) {
    const Eigen::Index nt = ch.tx_antennas();
    const std::vector<Matrix> s = suffix_sums(q, order, nt);
    tail_ = s[position + 1];
    for (std::size_t j = 0; j < position; ++j) others_.push_back(s[j + 1] - q[user_]);
    price_ = hermitian_part(lambda * identity(nt) - a_k.adjoint());
  }

  double value(const Matrix& x) const {
    double v = w_[user_] * ld_gain(ch_.h(user_), tail_ + x);
    for (std::size_t j = 0; j < position_; ++j) {
      v += w_[order_.user_at(j)] * ld_gain(ch_.g(), others_[j] + x);
    }
    return v - numerics::inner(price_, x);
  }

  Matrix gradient(const Matrix& x) const {
    Matrix g = w_[user_] * grad_term(ch_.h(user_), tail_ + x);
    for (std::size_t j = 0; j < position_; ++j) {
      g += w_[order_.user_at(j)] * grad_term(ch_.g(), others_[j] + x);
    }
    return hermitian_part(g - price_);
  }

 private:
  const ChannelSet& ch_;
  const WeightVector& w_;
  const EncodingOrder& order_;
  std::size_t position_;
  std::size_t user_;
  Matrix tail_;
  std::vector<Matrix> others_;
  Matrix price_;
};

}  // namespace

void validate(const SolverConfig& cfg) {
  if (!(cfg.lambda_min > 0.0) || !(cfg.lambda_min < cfg.lambda_max)) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < lambda_min < lambda_max");
  }
  if (!(cfg.eps1 > 0.0) || !(cfg.eps2 > 0.0) || !(cfg.subproblem_tol > 0.0) || cfg.stationarity_tol < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "tolerances must be positive");
  }
  if (cfg.max_outer <= 0 || cfg.max_inner <= 0 || cfg.max_subproblem_iters <= 0 || cfg.bound_expansions < 0) {
    throw Error(ErrorCode::kInvalidArgument, "iteration caps must be positive");
  }
}

SplitValue split_objective(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                           const EncodingOrder& order, double lambda, double power, std::size_t position) {
  check_common(ch, q, w, order, position);
  const std::size_t K = ch.users();
  const std::vector<Matrix> s = suffix_sums(q, order, ch.tx_antennas());
  const std::size_t k = position;
  const std::size_t u = order.user_at(k);
  const Matrix& g = ch.g();

  SplitValue out;
  out.concave = w[u] * (ld_gain(ch.h(u), s[k]) - ld_gain(ch.h(u), s[k + 1]));
  for (std::size_t j = 0; j < k; ++j) out.concave += w[order.user_at(j)] * ld_gain(g, s[j + 1]);
  out.concave -= lambda * q[u].trace().real();

  out.convex = -w[u] * (ld_gain(g, s[k]) - ld_gain(g, s[k + 1]));
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t uj = order.user_at(j);
    out.convex += w[uj] * (ld_gain(ch.h(uj), s[j]) - ld_gain(ch.h(uj), s[j + 1]));
    out.convex -= w[uj] * ld_gain(g, s[j]);
  }
  const RateTuple rates = secrecy_rates(ch, q, order);
  for (std::size_t j = k + 1; j < K; ++j) out.convex += w[order.user_at(j)] * rates[order.user_at(j)];
  out.convex -= lambda * (total_power(q) - q[u].trace().real() - power);
  return out;
}

Matrix gradient_a_k(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                    const EncodingOrder& order, std::size_t position) {
  check_common(ch, q, w, order, position);
  const std::vector<Matrix> s = suffix_sums(q, order, ch.tx_antennas());
  const std::size_t k = position;
  const Matrix& g = ch.g();

  Matrix a = -w[order.user_at(k)] * grad_term(g, s[k]);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t uj = order.user_at(j);
    const Matrix& h = ch.h(uj);
    a += w[uj] * (grad_term(h, s[j]) - grad_term(h, s[j + 1]) - grad_term(g, s[j]));
  }
  return hermitian_part(a);
}

Matrix lagrangian_gradient(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                           const EncodingOrder& order, double lambda, std::size_t position) {
  check_common(ch, q, w, order, position);
  const Eigen::Index nt = ch.tx_antennas();
  const std::vector<Matrix> s = suffix_sums(q, order, nt);
  const Matrix& g = ch.g();

  // Q at `position` enters suffix[p] for every p <= position.
  Matrix grad = -lambda * identity(nt);
  for (std::size_t p = 0; p <= position; ++p) {
    const std::size_t u = order.user_at(p);
    grad += w[u] * (grad_term(ch.h(u), s[p]) - grad_term(g, s[p]));
    if (p < position) grad -= w[u] * (grad_term(ch.h(u), s[p + 1]) - grad_term(g, s[p + 1]));
  }
  return hermitian_part(grad);
}

double kkt_residual(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                    const EncodingOrder& order, double lambda) {
  double acc = 0.0;
  for (std::size_t p = 0; p < ch.users(); ++p) {
    const Matrix& x = q[order.user_at(p)];
    const Matrix step = psd_project(x + lagrangian_gradient(ch, q, w, order, lambda, p));
    acc += (x - step).squaredNorm();
  }
  return std::sqrt(acc);
}

Matrix solve_subproblem(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                        const EncodingOrder& order, double lambda, const Matrix& a_k, std::size_t position,
                        const SolverConfig& cfg) {
  check_common(ch, q, w, order, position);
  if (!(lambda > 0.0)) throw Error(ErrorCode::kInvalidArgument, "power price must be positive");
  const BlockProblem problem(ch, q, w, order, lambda, a_k, position);

  Matrix x = psd_project(q[order.user_at(position)]);
  double fx = problem.value(x);
  Matrix grad = problem.gradient(x);
  // Trial step: 1 on the first iteration, then the Barzilai-Borwein length
  // from the last accepted move.
  double step = 1.0;
  for (int it = 0; it < cfg.max_subproblem_iters; ++it) {
    if ((psd_project(x + grad) - x).norm() <= cfg.subproblem_tol) return x;

    double t = step;
    Matrix y;
    Matrix gy;
    double fy = fx;
    bool moved = false;
    while (t > 1e-20) {
      y = psd_project(x + t * grad);
      fy = problem.value(y);
      gy = problem.gradient(y);
      const double predicted = numerics::inner(grad, y - x);
      // Near the optimum the value test drowns in rounding; for a concave
      // objective <grad(y), y - x> >= 0 already certifies f(y) >= f(x).
      if (fy >= fx + kArmijo * predicted || numerics::inner(gy, y - x) >= 0.0) {
        moved = true;
        break;
      }
      t *= kBacktrack;
    }
    if (!moved) break;

    const Matrix s_step = y - x;
    const double curvature = -numerics::inner(s_step, gy - grad);
    step = curvature > 0.0 ? std::clamp(s_step.squaredNorm() / curvature, kMinStep, kMaxStep) : 1.0;
    x = std::move(y);
    fx = fy;
    grad = std::move(gy);
  }
  const double residual = (psd_project(x + problem.gradient(x)) - x).norm();
  if (residual <= cfg.subproblem_tol) return x;
  throw Error(ErrorCode::kSubproblemDivergence,
              "block subproblem residual " + std::to_string(residual) + " above tolerance");
}

Matrix closed_form_q1(const Matrix& r, const Matrix& s, const Matrix& h, double w) {
  if (r.rows() != h.rows() || s.rows() != h.cols() || r.cols() != r.rows() || s.cols() != s.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "closed_form_q1 dimensions");
  }
  if (!(numerics::min_eigenvalue(r) > 0.0) || !(numerics::min_eigenvalue(s) > 0.0)) {
    throw Error(ErrorCode::kNotPositiveDefinite, "closed_form_q1 needs r and s positive definite");
  }
  const Eigen::Index nt = s.rows();
  const Matrix s_isqrt = numerics::hermitian_power(s, -0.5);
  const Matrix m = numerics::hermitian_power(r, -0.5) * h * s_isqrt;
  const numerics::Svd dec = numerics::svd(m, /*full=*/true);
  RealVector levels = RealVector::Zero(nt);
  for (Eigen::Index i = 0; i < dec.sigma.size(); ++i) {
    const double sigma = dec.sigma(i);
    if (sigma > 0.0) levels(i) = std::max(w - 1.0 / (sigma * sigma), 0.0);
  }
  return hermitian_part(s_isqrt * dec.v * levels.asDiagonal() * dec.v.adjoint() * s_isqrt);
}

namespace {

double lagrangian_value(double weighted, const CovarianceSet& q, double lambda, double power) {
  return weighted - lambda * (total_power(q) - power);
}

CovarianceSet initial_point(const ChannelSet& ch, double power, InitMode mode) {
  CovarianceSet q = CovarianceSet::zeros_bc(ch);
  if (mode == InitMode::kUniform) {
    const double level = power / (static_cast<double>(ch.users()) * static_cast<double>(ch.tx_antennas()));
    for (auto& m : q.q) m = level * identity(ch.tx_antennas());
  }
  return q;
}

}  // namespace

InnerResult bsmm_inner(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order, double lambda,
                       double power, const SolverConfig& cfg) {
  validate(cfg);
  validate(ch, order);
  if (w.size() != ch.users()) throw Error(ErrorCode::kDimensionMismatch, "weight length does not match K");
  const std::size_t K = ch.users();
  const Eigen::Index nt = ch.tx_antennas();

  InnerResult res;
  res.q = initial_point(ch, power, cfg.init);
  res.rates = secrecy_rates(ch, res.q, order);
  res.lagrangian_history.push_back(lagrangian_value(wsr(res.rates, w), res.q, lambda, power));

  double previous = 0.0;
  for (int sweep = 1; sweep <= cfg.max_inner; ++sweep) {
    for (std::size_t p = 0; p < K; ++p) {
      const std::size_t u = order.user_at(p);
      const Matrix a = gradient_a_k(ch, res.q, w, order, p);
      if (p == 0 && K == 2 && cfg.closed_form_first) {
        const std::vector<Matrix> s = suffix_sums(res.q, order, nt);
        const Matrix& h = ch.h(u);
        const Matrix r = identity(h.rows()) + h * s[1] * h.adjoint();
        const Matrix price = hermitian_part(lambda * identity(nt) - a.adjoint());
        res.q[u] = closed_form_q1(r, price, h, w[u]);
      } else {
        res.q[u] = solve_subproblem(ch, res.q, w, order, lambda, a, p, cfg);
      }
    }
    res.rates = secrecy_rates(ch, res.q, order);
    res.wsr = wsr(res.rates, w);
    res.lagrangian = lagrangian_value(res.wsr, res.q, lambda, power);
    res.wsr_history.push_back(res.wsr);
    res.lagrangian_history.push_back(res.lagrangian);
    res.sweeps = sweep;
    if (std::abs(res.wsr - previous) < cfg.eps2 &&
        (cfg.stationarity_tol <= 0.0 || kkt_residual(ch, res.q, w, order, lambda) <= cfg.stationarity_tol)) {
      res.converged = true;
      break;
    }
    previous = res.wsr;
  }
  return res;
}

SolverResult solve_wsr(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                       const PowerConstraint& p, const SolverConfig& cfg) {
  validate(cfg);
  validate(ch, order);
  if (w.size() != ch.users()) throw Error(ErrorCode::kDimensionMismatch, "weight length does not match K");
  if (!(p.p > 0.0) || !std::isfinite(p.p)) throw Error(ErrorCode::kInvalidArgument, "power must be positive");
  const double budget = p.p;

  int outer = 0;
  int sweeps_total = 0;
  auto run = [&](double lambda) {
    InnerResult r = bsmm_inner(ch, w, order, lambda, budget, cfg);
    ++outer;
    sweeps_total += r.sweeps;
    return r;
  };
  auto power_of = [](const InnerResult& r) { return total_power(r.q); };

  double hi = cfg.lambda_max;
  InnerResult at_hi = run(hi);
  for (int n = 0; n < cfg.bound_expansions && power_of(at_hi) >= budget; ++n) {
    hi *= 2.0;
    at_hi = run(hi);
  }
  if (power_of(at_hi) >= budget * (1.0 + kPowerSlack)) {
    throw Error(ErrorCode::kBoundsExhausted,
                "power " + std::to_string(power_of(at_hi)) + " still exceeds P at lambda = " + std::to_string(hi));
  }

  double lo = cfg.lambda_min;
  InnerResult at_lo = run(lo);
  for (int n = 0; n < cfg.bound_expansions && power_of(at_lo) < budget; ++n) {
    lo *= 0.5;
    at_lo = run(lo);
  }

  bool active = true;
  double lambda_star = hi;
  const InnerResult* chosen = &at_hi;
  if (power_of(at_lo) < budget) {
    // Even the cheapest price leaves power unused: the budget is slack.
    active = false;
    lambda_star = lo;
    chosen = &at_lo;
  } else {
    while (hi - lo > cfg.eps1 && outer < cfg.max_outer) {
      const double mid = 0.5 * (hi + lo);
      InnerResult r = run(mid);
      if (power_of(r) < budget) {
        hi = mid;
        at_hi = std::move(r);
      } else {
        lo = mid;
        at_lo = std::move(r);
      }
    }
    if (power_of(at_lo) <= budget * (1.0 + kPowerSlack)) {
      lambda_star = lo;
      chosen = &at_lo;
    } else {
      lambda_star = hi;
      chosen = &at_hi;
    }
  }

  SolverResult out;
  out.covariances = chosen->q;
  out.rates = chosen->rates;
  out.wsr = wsr(out.rates, w);
  out.lambda_star = lambda_star;
  out.power_used = total_power(out.covariances);
  out.power_constraint_active = active;
  out.inner_cap_hit = !chosen->converged;
  out.outer_iterations = outer;
  out.inner_sweeps_total = sweeps_total;
  out.inner_sweeps_final = chosen->sweeps;
  out.init = cfg.init;
  out.lagrangian_history = chosen->lagrangian_history;
  out.wsr_history = chosen->wsr_history;
  out.kkt_residual = kkt_residual(ch, out.covariances, w, order, lambda_star);

  bool negative_rate = false;
  for (std::size_t k = 0; k < out.rates.size(); ++k) {
    if (w[k] > 0.0 && out.rates[k] < -1e-9) negative_rate = true;
  }
  out.converged = chosen->converged && !negative_rate;
  return out;
}

}  // namespace secrecy
