#pragma once

#include <cstddef>
#include <vector>

#include "secrecy/channel.hpp"
#include "secrecy/solver.hpp"

namespace secrecy {

/// WSR-optimal DPC encoding order: users by descending weight, encoded first to
/// last. Equal weights keep ascending user index.
EncodingOrder optimal_order(const WeightVector& w);

/// Every encoding order that lists the users by nonincreasing weight, i.e. the
/// optimal order with tied groups permuted in all ways. The first entry is
/// optimal_order(w).
std::vector<EncodingOrder> weight_sorted_orders(const WeightVector& w);

/// All K! permutations in lexicographic order.
std::vector<EncodingOrder> all_orders(std::size_t users);

struct OrderEntry {
  EncodingOrder order;
  RateTuple rates;
  double wsr = 0.0;
  bool converged = false;
};

struct OrderReport {
  std::vector<OrderEntry> entries;  // lexicographic permutation order
  std::size_t best = 0;             // index of the largest WSR
  EncodingOrder optimal;            // optimal_order(w)
  std::size_t optimal_index = 0;
  double optimal_gap = 0.0;  // best WSR minus the WSR of `optimal`
  bool tie = false;          // some weights are equal
};

inline constexpr std::size_t kMaxEnumeratedUsers = 5;

/// Runs solve_wsr for every permutation. Throws Error(kTooManyUsers) for K > 5.
/// `threads` = 0 uses the hardware concurrency.
OrderReport enumerate_orders(const ChannelSet& ch, const WeightVector& w, const PowerConstraint& p,
                             const SolverConfig& cfg = {}, unsigned threads = 0);

}  // namespace secrecy
