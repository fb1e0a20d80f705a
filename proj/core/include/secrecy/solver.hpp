#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "secrecy/channel.hpp"

namespace secrecy {

enum class InitMode { kUniform, kZero };

struct SolverConfig {
  double lambda_max = 10.0;
  double lambda_min = 0.01;
  double eps1 = 1e-5;  // bisection accuracy on the power price
  double eps2 = 1e-5;  // BSMM stop: |WSR change| between sweeps
  /// BSMM also waits for the Lagrangian stationarity residual to drop below
  /// this; 0 stops on eps2 alone.
  double stationarity_tol = 1e-5;
  int max_outer = 200;
  int max_inner = 2000;
  int max_subproblem_iters = 20000;
  double subproblem_tol = 1e-7;  // projected-gradient norm
  int bound_expansions = 4;
  InitMode init = InitMode::kUniform;
  /// Use the closed-form block update for the first encoded user when K = 2.
  bool closed_form_first = true;
};

void validate(const SolverConfig& cfg);

/// Lagrangian WSR - lambda (sum tr Q - P) split, for the block at `position`,
/// into a part concave in that block and a part that is linearised by BSMM.
struct SplitValue {
  double concave = 0.0;
  double convex = 0.0;
};

SplitValue split_objective(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                           const EncodingOrder& order, double lambda, double power,
                           std::size_t position);

/// Gradient A_k of the linearised part with respect to the covariance at
/// `position`. Always negative semidefinite.
Matrix gradient_a_k(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                    const EncodingOrder& order, std::size_t position);

/// Gradient of the full Lagrangian with respect to the covariance at `position`.
Matrix lagrangian_gradient(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                           const EncodingOrder& order, double lambda, std::size_t position);

/// sqrt(sum_k ||Q_k - Proj_psd(Q_k + grad_k L)||_F^2): zero exactly at KKT points
/// of the Lagrangian at fixed lambda.
double kkt_residual(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                    const EncodingOrder& order, double lambda);

/// Concave block problem solved at each BSMM step for the covariance at `position`:
///   max_{X >= 0}  w_k log|I + (I + H_k S_{>k} H_k^H)^{-1} H_k X H_k^H|
///               + sum_{j<k} w_j log|I + G S_{>j} G^H|  -  tr[(lambda I - A^H) X]
/// with the other covariances fixed. Projected gradient ascent, Armijo backtracking.
Matrix solve_subproblem(const ChannelSet& ch, const CovarianceSet& q, const WeightVector& w,
                        const EncodingOrder& order, double lambda, const Matrix& a_k,
                        std::size_t position, const SolverConfig& cfg);

/// Maximiser of w log|I + r^{-1} H X H^H| - tr(s X) over PSD X, for r, s positive definite.
Matrix closed_form_q1(const Matrix& r, const Matrix& s, const Matrix& h, double w);

struct InnerResult {
  CovarianceSet q;
  RateTuple rates;
  double wsr = 0.0;
  double lagrangian = 0.0;
  int sweeps = 0;
  bool converged = false;
  std::vector<double> wsr_history;        // after each sweep
  std::vector<double> lagrangian_history; // after each sweep, starting with the initial point
};

/// Cyclic block updates at a fixed power price until the WSR change drops below eps2
/// and the stationarity residual below stationarity_tol.
InnerResult bsmm_inner(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                       double lambda, double power, const SolverConfig& cfg);

struct SolverResult {
  CovarianceSet covariances;
  RateTuple rates;
  double wsr = 0.0;
  double lambda_star = 0.0;
  double power_used = 0.0;
  bool converged = false;
  bool power_constraint_active = true;
  bool inner_cap_hit = false;
  int outer_iterations = 0;
  int inner_sweeps_total = 0;
  int inner_sweeps_final = 0;
  double kkt_residual = 0.0;
  InitMode init = InitMode::kUniform;
  std::vector<double> lagrangian_history;  // inner sweeps at the returned price
  std::vector<double> wsr_history;
};

/// Bisection on the power price around bsmm_inner until the price bracket is
/// narrower than eps1. The returned covariances use at most P(1 + 1e-6) power.
SolverResult solve_wsr(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                       const PowerConstraint& p, const SolverConfig& cfg = {});

}  // namespace secrecy
