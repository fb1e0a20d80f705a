#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "secrecy/channel.hpp"
#include "secrecy/solver.hpp"

namespace secrecy {

enum class Scheme { kSecrecy, kZeroForcing, kBroadcastBound };

struct RegionSample {
  WeightVector weights;
  EncodingOrder order;
  RateTuple rates;  // signed, as returned by the solver
  double wsr = 0.0;
  double power = 0.0;
  bool converged = false;
  CovarianceSet covariances;
  std::string error;  // set when the solve threw
};

/// Hull of the clamped rates projected onto users (a, b).
struct RegionProjection {
  std::size_t a = 0;
  std::size_t b = 1;
  std::vector<std::array<double, 2>> hull;
};

struct RegionSweep {
  std::string label;
  std::size_t users = 0;
  std::vector<RegionSample> samples;      // ordered by weight index, then order
  std::vector<std::vector<double>> hull;  // see convex_closure
  std::vector<RegionProjection> projections;  // K = 3 only
};

/// Weight grid: K = 1 gives {1}; K = 2 gives w1 = 0, step, ..., 1;
/// K = 3 gives the simplex lattice with spacing `step` (step >= 0.05).
/// 1/step must be an integer.
std::vector<WeightVector> weight_grid(std::size_t users, double step);

/// Solves every grid weight with every weight-sorted order (ties run all
/// candidates). A failed solve is kept as an unconverged sample; with no
/// converged sample the hull and projections stay empty.
/// `threads` = 0 uses the hardware concurrency.
RegionSweep sweep_weights(const ChannelSet& ch, const PowerConstraint& p, const SolverConfig& cfg,
                          double grid_step, Scheme scheme = Scheme::kSecrecy, unsigned threads = 0);

/// Boundary of the convex closure of the converged samples, rates clamped at 0.
/// K = 1: the single largest rate.
/// K = 2: Pareto-optimal hull vertices, ascending in R_1.
/// K = 3: nondominated points, sorted lexicographically.
/// Throws Error(kNoConvergedSamples).
std::vector<std::vector<double>> convex_closure(const std::vector<RegionSample>& samples);

/// Upper-right concave hull of 2D points (already clamped), ascending in x.
std::vector<std::array<double, 2>> upper_hull_2d(std::vector<std::array<double, 2>> pts);

/// One secrecy sweep per delta with G = delta * g0.
std::vector<RegionSweep> delta_family_sweep(const std::vector<Matrix>& h, const Matrix& g0,
                                            const std::vector<double>& deltas,
                                            const PowerConstraint& p, const SolverConfig& cfg,
                                            double grid_step, unsigned threads = 0);

}  // namespace secrecy
