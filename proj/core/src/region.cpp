#include "secrecy/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "secrecy/baselines.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/ordering.hpp"
#include "secrecy/parallel.hpp"

namespace secrecy {

namespace {

constexpr double kHullTol = 1e-12;

std::size_t grid_count(double step) {
  if (!(step > 0.0) || step > 1.0) throw Error(ErrorCode::kInvalidArgument, "grid step must be in (0, 1]");
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "1/grid step must be an integer");
  }
  return static_cast<std::size_t>(n);
}

SolverResult run_scheme(Scheme scheme, const ChannelSet& ch, const WeightVector& w,
                        const EncodingOrder& order, const PowerConstraint& p, const SolverConfig& cfg) {
  switch (scheme) {
    case Scheme::kZeroForcing:
      return zf_wsr(ch, w, order, p, cfg);
    case Scheme::kBroadcastBound:
      return bc_upper_bound(ch, w, order, p, cfg);
    case Scheme::kSecrecy:
      break;
  }
  return solve_wsr(ch, w, order, p, cfg);
}

std::vector<double> clamped(const RateTuple& r) {
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = std::max(0.0, r[i]);
  return out;
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - kHullTol) return false;
    if (a[i] > b[i] + kHullTol) strict = true;
  }
  return strict;
}

bool same_point(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kHullTol) return false;
  }
  return true;
}

}  // namespace

std::vector<WeightVector> weight_grid(std::size_t users, double step) {
  std::vector<WeightVector> out;
  if (users == 1) {
    out.emplace_back(std::vector<double>{1.0});
    return out;
  }
  const std::size_t n = grid_count(step);
  if (users == 2) {
    for (std::size_t i = 0; i <= n; ++i) {
      const double w1 = static_cast<double>(i) / static_cast<double>(n);
      out.emplace_back(std::vector<double>{w1, 1.0 - w1});
    }
    return out;
  }
  if (users == 3) {
    if (step < 0.05 - 1e-12) {
      throw Error(ErrorCode::kInvalidArgument, "K = 3 sweeps need a grid step of at least 0.05");
    }
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; i + j <= n; ++j) {
        const std::size_t l = n - i - j;
        out.push_back(WeightVector::normalized(
            {static_cast<double>(i) / dn, static_cast<double>(j) / dn, static_cast<double>(l) / dn}));
      }
    }
    return out;
  }
  throw Error(ErrorCode::kInvalidArgument, "region sweeps support K in {1, 2, 3}");
}

RegionSweep sweep_weights(const ChannelSet& ch, const PowerConstraint& p, const SolverConfig& cfg,
                          double grid_step, Scheme scheme, unsigned threads) {
  const std::vector<WeightVector> grid = weight_grid(ch.users(), grid_step);

  struct Job {
    std::size_t weight_index;
    EncodingOrder order;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (EncodingOrder& o : weight_sorted_orders(grid[i])) jobs.push_back({i, std::move(o)});
  }

  RegionSweep sweep;
  sweep.users = ch.users();
  sweep.samples.resize(jobs.size());
  detail::parallel_for(jobs.size(), threads, [&](std::size_t j) {
    RegionSample& s = sweep.samples[j];
    s.weights = grid[jobs[j].weight_index];
    s.order = jobs[j].order;
    try {
      SolverResult r = run_scheme(scheme, ch, s.weights, s.order, p, cfg);
      s.rates = std::move(r.rates);
      s.wsr = r.wsr;
      s.power = r.power_used;
      s.converged = r.converged;
      s.covariances = std::move(r.covariances);
    } catch (const Error& e) {
      s.rates.assign(ch.users(), 0.0);
      s.covariances = CovarianceSet::zeros_bc(ch);
      s.error = e.what();
    }
  });

  const bool any_converged =
      std::any_of(sweep.samples.begin(), sweep.samples.end(), [](const RegionSample& s) { return s.converged; });
  if (!any_converged) return sweep;
  sweep.hull = convex_closure(sweep.samples);
  if (ch.users() == 3) {
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        RegionProjection proj{a, b, {}};
        std::vector<std::array<double, 2>> pts;
        for (const RegionSample& s : sweep.samples) {
          if (s.converged) pts.push_back({std::max(0.0, s.rates[a]), std::max(0.0, s.rates[b])});
        }
        proj.hull = upper_hull_2d(std::move(pts));
        sweep.projections.push_back(std::move(proj));
      }
    }
  }
  return sweep;
}

std::vector<std::array<double, 2>> upper_hull_2d(std::vector<std::array<double, 2>> pts) {
  // Pareto filter: scan by descending x, keep points that raise the best y.
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a[0] != b[0] ? a[0] > b[0] : a[1] > b[1];
  });
  std::vector<std::array<double, 2>> front;
  double best_y = -1.0;
  for (const auto& q : pts) {
    if (q[1] > best_y + kHullTol) {
      front.push_back(q);
      best_y = q[1];
    }
  }
  std::reverse(front.begin(), front.end());

  // Concave chain, ascending x: every kept vertex is a strict right turn.
  std::vector<std::array<double, 2>> hull;
  for (const auto& q : front) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
      const double scale = std::max({1.0, std::abs(q[0] - a[0]), std::abs(q[1] - a[1])});
      if (cross >= -kHullTol * scale) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(q);
  }
  return hull;
}

std::vector<std::vector<double>> convex_closure(const std::vector<RegionSample>& samples) {
  std::vector<std::vector<double>> pts;
  for (const RegionSample& s : samples) {
    if (s.converged) pts.push_back(clamped(s.rates));
  }
  if (pts.empty()) throw Error(ErrorCode::kNoConvergedSamples, "no converged samples to close");

  const std::size_t K = pts.front().size();
  if (K == 1) {
    double best = 0.0;
    for (const auto& q : pts) best = std::max(best, q[0]);
    return {{best}};
  }
  if (K == 2) {
    std::vector<std::array<double, 2>> flat;
    flat.reserve(pts.size());
    for (const auto& q : pts) flat.push_back({q[0], q[1]});
    std::vector<std::vector<double>> out;
    for (const auto& q : upper_hull_2d(std::move(flat))) out.push_back({q[0], q[1]});
    return out;
  }

  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < pts.size() && keep; ++j) {
      if (j != i && dominates(pts[j], pts[i])) keep = false;
    }
    for (const auto& q : out) {
      if (keep && same_point(q, pts[i])) keep = false;
    }
    if (keep) out.push_back(pts[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RegionSweep> delta_family_sweep(const std::vector<Matrix>& h, const Matrix& g0,
                                            const std::vector<double>& deltas,
                                            const PowerConstraint& p, const SolverConfig& cfg,
                                            double grid_step, unsigned threads) {
  std::vector<RegionSweep> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    if (!std::isfinite(delta) || delta < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "delta must be finite and nonnegative");
    }
    const ChannelSet ch(h, delta * g0);
    RegionSweep s = sweep_weights(ch, p, cfg, grid_step, Scheme::kSecrecy, threads);
    std::ostringstream label;
    label << "delta=" << delta;
    s.label = label.str();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace secrecy
