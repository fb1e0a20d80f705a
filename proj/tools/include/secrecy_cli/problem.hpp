#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "secrecy/channel.hpp"
#include "secrecy/solver.hpp"

namespace secrecy::cli {

inline constexpr int kSchemaVersion = 1;

/// Parsed problem file. The eavesdropper channel used by solves is delta * g0.
struct Problem {
  std::vector<Matrix> h;
  Matrix g0;
  double delta = 1.0;
  std::vector<double> deltas;
  PowerConstraint power;
  std::optional<WeightVector> weights;
  std::optional<EncodingOrder> order;
  SolverConfig solver;

  ChannelSet channels() const;
};

Problem parse_problem(const nlohmann::json& j);
Problem load_problem(const std::string& path);
nlohmann::json load_json(const std::string& path);

/// "0.25" or "1/4".
double parse_fraction(const std::string& s);
/// Parsed entries must already sum to one within 1e-12.
WeightVector parse_weights(const std::vector<std::string>& items);
/// "1,2,3" or "1-2-3" (one-based), or "auto" which yields nullopt.
std::optional<EncodingOrder> parse_order(const std::string& s);

}  // namespace secrecy::cli
