#include "secrecy/baselines.hpp"

#include "secrecy/errors.hpp"

namespace secrecy {

ProjectedChannelSet zf_project(const ChannelSet& ch) {
  ProjectedChannelSet out;
  out.basis = numerics::null_space(ch.g());
  if (out.basis.cols() == 0) {
    throw Error(ErrorCode::kEmptyNullSpace, "eavesdropper channel has a trivial null space");
  }
  out.h_proj.reserve(ch.users());
  for (const Matrix& h : ch.h_list()) out.h_proj.push_back(h * out.basis);
  return out;
}

SolverResult zf_wsr(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                    const PowerConstraint& p, const SolverConfig& cfg) {
  const ProjectedChannelSet proj = zf_project(ch);
  const ChannelSet reduced(proj.h_proj, numerics::zeros(1, proj.basis.cols()));
  SolverResult r = solve_wsr(reduced, w, order, p, cfg);

  const Matrix& b = proj.basis;
  for (Matrix& q : r.covariances.q) q = numerics::hermitian_part(b * q * b.adjoint());
  r.rates = secrecy_rates(ch, r.covariances, order);
  r.wsr = wsr(r.rates, w);
  r.power_used = total_power(r.covariances);
  return r;
}

SolverResult bc_upper_bound(const ChannelSet& ch, const WeightVector& w, const EncodingOrder& order,
                            const PowerConstraint& p, const SolverConfig& cfg) {
  return solve_wsr(ch.without_eavesdropper(), w, order, p, cfg);
}

}  // namespace secrecy
