#include "secrecy/ordering.hpp"

#include <algorithm>
#include <numeric>

#include "secrecy/errors.hpp"
#include "secrecy/parallel.hpp"

namespace secrecy {

EncodingOrder optimal_order(const WeightVector& w) {
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  return EncodingOrder(std::move(perm));
}

std::vector<EncodingOrder> weight_sorted_orders(const WeightVector& w) {
  std::vector<std::size_t> perm = optimal_order(w).users();
  std::vector<EncodingOrder> out;
  // Permute within each run of equal weights; runs are contiguous in perm.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < perm.size();) {
    std::size_t j = i + 1;
    while (j < perm.size() && w[perm[j]] == w[perm[i]]) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  // Odometer over the runs' permutations, each run starting sorted ascending.
  while (true) {
    out.emplace_back(perm);
    std::size_t r = runs.size();
    while (r-- > 0) {
      auto first = perm.begin() + static_cast<std::ptrdiff_t>(runs[r].first);
      auto last = perm.begin() + static_cast<std::ptrdiff_t>(runs[r].second);
      if (std::next_permutation(first, last)) break;
    }
    if (r == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<EncodingOrder> all_orders(std::size_t users) {
  std::vector<std::size_t> perm(users);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<EncodingOrder> out;
  do {
    out.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

OrderReport enumerate_orders(const ChannelSet& ch, const WeightVector& w, const PowerConstraint& p,
                             const SolverConfig& cfg, unsigned threads) {
  const std::size_t K = ch.users();
  if (K > kMaxEnumeratedUsers) {
    throw Error(ErrorCode::kTooManyUsers, "order enumeration supports K <= 5");
  }
  if (w.size() != K) throw Error(ErrorCode::kDimensionMismatch, "weight length does not match K");

  OrderReport report;
  const std::vector<EncodingOrder> orders = all_orders(K);
  report.entries.resize(orders.size());
  detail::parallel_for(orders.size(), threads, [&](std::size_t i) {
    const SolverResult r = solve_wsr(ch, w, orders[i], p, cfg);
    report.entries[i] = OrderEntry{orders[i], r.rates, r.wsr, r.converged};
  });

  report.optimal = optimal_order(w);
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    if (report.entries[i].wsr > report.entries[report.best].wsr) report.best = i;
    if (report.entries[i].order == report.optimal) report.optimal_index = i;
  }
  report.optimal_gap = report.entries[report.best].wsr - report.entries[report.optimal_index].wsr;
  const std::vector<double>& v = w.values();
  for (std::size_t a = 0; a < K && !report.tie; ++a) {
    for (std::size_t b = a + 1; b < K; ++b) {
      if (v[a] == v[b]) {
        report.tie = true;
        break;
      }
    }
  }
  return report;
}

}  // namespace secrecy
