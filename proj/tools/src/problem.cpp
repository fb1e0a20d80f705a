#include "secrecy_cli/problem.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "secrecy/errors.hpp"
#include "secrecy/serialize.hpp"

namespace secrecy::cli {

namespace {

using nlohmann::json;

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::kParseError, "not a number: '" + s + "'");
  return v;
}

double weight_entry(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_fraction(j.get<std::string>());
  throw Error(ErrorCode::kParseError, "weights must be numbers or fraction strings");
}

void apply_solver_overrides(const json& j, SolverConfig& cfg) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "'solver' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "eps1") cfg.eps1 = value.get<double>();
    else if (key == "eps2") cfg.eps2 = value.get<double>();
    else if (key == "lambda_max") cfg.lambda_max = value.get<double>();
    else if (key == "lambda_min") cfg.lambda_min = value.get<double>();
    else if (key == "max_outer") cfg.max_outer = value.get<int>();
    else if (key == "max_inner") cfg.max_inner = value.get<int>();
    else if (key == "init") {
      const auto mode = value.get<std::string>();
      if (mode == "uniform") cfg.init = InitMode::kUniform;
      else if (mode == "zero") cfg.init = InitMode::kZero;
      else throw Error(ErrorCode::kParseError, "solver.init must be 'uniform' or 'zero'");
    } else {
      throw Error(ErrorCode::kParseError, "unknown solver option '" + key + "'");
    }
  }
}

}  // namespace

ChannelSet Problem::channels() const { return ChannelSet(h, delta * g0); }

double parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_number(s);
  const double num = parse_number(s.substr(0, slash));
  const double den = parse_number(s.substr(slash + 1));
  if (den == 0.0) throw Error(ErrorCode::kParseError, "zero denominator in '" + s + "'");
  return num / den;
}

WeightVector parse_weights(const std::vector<std::string>& items) {
  std::vector<double> w;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) w.push_back(parse_fraction(part));
    }
  }
  if (w.empty()) throw Error(ErrorCode::kParseError, "no weights given");
  return WeightVector(std::move(w));
}

std::optional<EncodingOrder> parse_order(const std::string& s) {
  if (s == "auto") return std::nullopt;
  std::vector<std::size_t> perm;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw Error(ErrorCode::kParseError, "malformed order '" + s + "'");
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::kParseError, "malformed order '" + s + "'");
    }
    perm.push_back(v);
    token.clear();
  };
  for (char c : s) {
    if (c == ',' || c == '-') flush();
    else if (c != ' ') token += c;
  }
  flush();
  return EncodingOrder::from_one_based(perm);
}

Problem parse_problem(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "problem file must be a JSON object");
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion) {
    throw Error(ErrorCode::kParseError, "unsupported or missing schema_version");
  }
  if (!j.contains("channels")) throw Error(ErrorCode::kParseError, "missing 'channels'");
  const json& ch = j.at("channels");
  if (!ch.contains("h") || !ch.at("h").is_array() || !ch.contains("g")) {
    throw Error(ErrorCode::kParseError, "'channels' needs 'h' (list) and 'g'");
  }

  Problem p;
  for (const json& m : ch.at("h")) p.h.push_back(io::matrix_from_json(m));
  p.g0 = io::matrix_from_json(ch.at("g"));
  p.power.p = j.value("power", 1.0);
  if (!(p.power.p > 0.0) || !std::isfinite(p.power.p)) {
    throw Error(ErrorCode::kInvalidArgument, "power must be positive and finite");
  }
  p.delta = j.value("delta", 1.0);
  if (j.contains("deltas")) p.deltas = j.at("deltas").get<std::vector<double>>();
  if (j.contains("weights")) {
    std::vector<double> w;
    for (const json& x : j.at("weights")) w.push_back(weight_entry(x));
    p.weights = WeightVector(std::move(w));
  }
  if (j.contains("order")) {
    p.order = EncodingOrder::from_one_based(j.at("order").get<std::vector<std::size_t>>());
  }
  if (j.contains("solver")) apply_solver_overrides(j.at("solver"), p.solver);

  const ChannelSet probe = p.channels();  // validates dimensions
  if (p.weights && p.weights->size() != probe.users()) {
    throw Error(ErrorCode::kDimensionMismatch, "weight count does not match the number of users");
  }
  if (p.order) validate(probe, *p.order);
  return p;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

Problem load_problem(const std::string& path) {
  try {
    return parse_problem(load_json(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

}  // namespace secrecy::cli
