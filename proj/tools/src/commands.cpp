#include "secrecy_cli/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "secrecy/baselines.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/ordering.hpp"
#include "secrecy/region.hpp"
#include "secrecy/serialize.hpp"
#include "secrecy/solver.hpp"
#include "secrecy_cli/problem.hpp"

namespace secrecy::cli {

namespace {

using io::Json;

struct Options {
  std::string problem;
  std::string covariances;
  std::vector<std::string> weights;
  std::string order;
  double power = 0.0;
  double grid_step = 0.0;
  std::vector<std::string> baselines;
  std::vector<double> deltas;
  bool bits = false;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::string init;
  std::string out;
  std::string csv;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
      return kExitParse;
    case ErrorCode::kBoundsExhausted:
    case ErrorCode::kTooManyUsers:
    case ErrorCode::kEmptyNullSpace:
      return kExitInfeasible;
    default:
      return kExitNoConvergence;
  }
}

unsigned sweep_threads() {
  const char* env = std::getenv("SECRECY_REGION_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw Error(ErrorCode::kParseError, "SECRECY_REGION_THREADS must be a nonnegative integer");
  return static_cast<unsigned>(v);
}

// Writes to a sibling temporary and renames, so readers never see a partial file.
void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
    f << content;
    if (!f) throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
  }
}

Problem prepare(const Options& o) {
  Problem p = load_problem(o.problem);
  if (o.power > 0.0) p.power.p = o.power;
  if (o.eps1 > 0.0) p.solver.eps1 = o.eps1;
  if (o.eps2 > 0.0) p.solver.eps2 = o.eps2;
  if (o.init == "zero") p.solver.init = InitMode::kZero;
  else if (o.init == "uniform") p.solver.init = InitMode::kUniform;
  else if (!o.init.empty()) throw Error(ErrorCode::kParseError, "--init must be 'uniform' or 'zero'");
  if (!o.weights.empty()) p.weights = parse_weights(o.weights);
  if (!o.deltas.empty()) p.deltas = o.deltas;
  validate(p.solver);
  return p;
}

std::string fmt(double v, bool bits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << (bits ? nats_to_bits(v) : v);
  return s.str();
}

std::string order_text(const EncodingOrder& o) {
  std::string s = "[";
  for (std::size_t u : o.one_based()) s += (s.size() > 1 ? "," : "") + std::to_string(u);
  return s + "]";
}

void print_rates(std::ostream& out, const RateTuple& r, bool bits) {
  const char* unit = bits ? "bits/s/Hz" : "nats/s/Hz";
  for (std::size_t k = 0; k < r.size(); ++k) {
    out << "R_" << (k + 1) << " = " << fmt(r[k], bits) << ' ' << unit << '\n';
  }
}

int cmd_rates(const Options& o, std::ostream& out) {
  const Problem p = prepare(o);
  const ChannelSet ch = p.channels();
  const Json j = load_json(o.covariances);

  CovarianceSet q;
  std::optional<EncodingOrder> order = p.order;
  try {
    if (j.is_object() && j.contains("covariances")) {
      q = io::covariances_from_json(j.at("covariances"));
      if (j.contains("order")) order = EncodingOrder::from_one_based(j.at("order").get<std::vector<std::size_t>>());
    } else {
      q = io::covariances_from_json(j);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, o.covariances + ": " + e.what());
  }
  if (!o.order.empty()) order = parse_order(o.order);
  if (!order) order = EncodingOrder::identity(ch.users());
  if (q.side != Side::kBroadcast) throw Error(ErrorCode::kInvalidArgument, "rates expects broadcast covariances");

  const RateTuple r = secrecy_rates(ch, q, *order);
  out << "order " << order_text(*order) << '\n';
  print_rates(out, r, o.bits);
  if (p.weights) out << "wsr = " << fmt(wsr(r, *p.weights), o.bits) << '\n';
  return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Problem p = prepare(o);
  if (!p.weights) throw Error(ErrorCode::kParseError, "weights are required (--weights or problem file)");
  const ChannelSet ch = p.channels();

  std::optional<EncodingOrder> order = p.order;
  if (!o.order.empty()) order = parse_order(o.order);
  const EncodingOrder used = order ? *order : optimal_order(*p.weights);
  validate(ch, used);

  const SolverResult r = solve_wsr(ch, *p.weights, used, p.power, p.solver);
  Json doc = io::result_to_json(r, *p.weights, used);
  doc["schema_version"] = kSchemaVersion;
  doc["units"] = "nats";
  if (!o.out.empty()) write_file(o.out, doc.dump(2) + "\n");

  out << "order " << order_text(used) << (order ? "" : " (auto)") << '\n';
  print_rates(out, r.rates, o.bits);
  out << "wsr = " << fmt(r.wsr, o.bits) << '\n'
      << "lambda* = " << r.lambda_star << ", power = " << r.power_used
      << (r.power_constraint_active ? "" : " (constraint inactive)") << '\n'
      << "kkt residual = " << r.kkt_residual << ", outer = " << r.outer_iterations
      << ", sweeps = " << r.inner_sweeps_total << (r.inner_cap_hit ? " (inner cap hit)" : "") << '\n';
  if (!r.converged) {
    out << "solver did not converge\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

Scheme scheme_from(const std::string& name) {
  if (name == "zf") return Scheme::kZeroForcing;
  if (name == "bc") return Scheme::kBroadcastBound;
  throw Error(ErrorCode::kParseError, "unknown baseline '" + name + "' (expected zf or bc)");
}

int cmd_region(const Options& o, std::ostream& out) {
  const Problem p = prepare(o);
  const ChannelSet ch = p.channels();
  if (ch.users() != 2 && ch.users() != 3) {
    throw Error(ErrorCode::kTooManyUsers, "region sweeps need K = 2 or K = 3");
  }
  const double step = o.grid_step > 0.0 ? o.grid_step : (ch.users() == 2 ? 0.01 : 0.05);
  const unsigned threads = sweep_threads();

  std::vector<std::pair<std::string, RegionSweep>> sweeps;
  if (!p.deltas.empty()) {
    for (RegionSweep& s : delta_family_sweep(p.h, p.g0, p.deltas, p.power, p.solver, step, threads)) {
      sweeps.emplace_back("secrecy", std::move(s));
    }
  } else {
    RegionSweep s = sweep_weights(ch, p.power, p.solver, step, Scheme::kSecrecy, threads);
    s.label = "secrecy";
    sweeps.emplace_back("secrecy", std::move(s));
  }
  for (const std::string& b : o.baselines) {
    const Scheme scheme = scheme_from(b);
    RegionSweep s = sweep_weights(ch, p.power, p.solver, step, scheme, threads);
    s.label = b;
    sweeps.emplace_back(b, std::move(s));
  }

  Json doc{{"schema_version", kSchemaVersion}, {"units", "nats"}, {"power", p.power.p}, {"grid_step", step}};
  Json arr = Json::array();
  std::ostringstream csv;
  io::write_csv_header(csv, ch.users());
  for (const auto& [scheme, s] : sweeps) {
    Json js = io::sweep_to_json(s);
    js["scheme"] = scheme;
    arr.push_back(std::move(js));
    io::write_csv_rows(csv, s);
  }
  doc["sweeps"] = std::move(arr);
  if (!o.out.empty()) write_file(o.out, doc.dump(2) + "\n");
  if (!o.csv.empty()) write_file(o.csv, csv.str());

  for (const auto& [scheme, s] : sweeps) {
    std::size_t ok = 0;
    for (const RegionSample& x : s.samples) ok += x.converged ? 1 : 0;
    out << s.label << ": " << s.samples.size() << " samples, " << ok << " converged, hull:";
    for (const auto& pt : s.hull) {
      out << " (";
      for (std::size_t k = 0; k < pt.size(); ++k) out << (k ? ", " : "") << fmt(pt[k], o.bits);
      out << ')';
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_order_check(const Options& o, std::ostream& out) {
  const Problem p = prepare(o);
  if (!p.weights) throw Error(ErrorCode::kParseError, "weights are required (--weights or problem file)");
  const ChannelSet ch = p.channels();
  const OrderReport rep = enumerate_orders(ch, *p.weights, p.power, p.solver, sweep_threads());

  if (!o.out.empty()) write_file(o.out, io::order_report_to_json(rep).dump(2) + "\n");
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const OrderEntry& e = rep.entries[i];
    out << std::setw(12) << std::left << order_text(e.order) << " wsr " << fmt(e.wsr, o.bits);
    if (!e.converged) out << " (not converged)";
    if (i == rep.best) out << "  best";
    if (i == rep.optimal_index) out << "  weight-sorted";
    out << '\n';
  }
  out << "weight-sorted order " << order_text(rep.optimal) << " is "
      << (rep.optimal_gap <= 1e-3 ? "maximal" : "NOT maximal") << " (gap " << rep.optimal_gap << ")\n";
  if (rep.tie) out << "tie: some weights are equal, tied orders give equal WSR\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secrecy rate regions of the Gaussian MIMO wiretap broadcast channel", "wiretap"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("problem", o.problem, "Problem JSON file")->required();
    sub->add_option("--power", o.power, "Override the total power budget");
    sub->add_option("--eps1", o.eps1, "Bisection accuracy");
    sub->add_option("--eps2", o.eps2, "Inner-loop WSR accuracy");
    sub->add_option("--init", o.init, "Initial covariances: uniform or zero");
    sub->add_flag("--bits", o.bits, "Print rates in bits instead of nats");
  };

  CLI::App* rates = app.add_subcommand("rates", "Evaluate secrecy rates of given covariances");
  common(rates);
  rates->add_option("covariances", o.covariances, "Covariance JSON (solve output or matrix list)")->required();
  rates->add_option("--order", o.order, "Encoding order, e.g. 2,1");
  rates->add_option("--weights", o.weights, "Weights for the WSR")->expected(1, -1);

  CLI::App* solve = app.add_subcommand("solve", "Maximise the weighted secrecy sum rate");
  common(solve);
  solve->add_option("--weights", o.weights, "Weights, e.g. 0.5 0.5 or 1/3,1/3,1/3")->expected(1, -1);
  solve->add_option("--order", o.order, "auto or an encoding order such as 1,2");
  solve->add_option("--out", o.out, "Write the JSON result here");

  CLI::App* region = app.add_subcommand("region", "Sweep weights to trace the secrecy rate region");
  common(region);
  region->add_option("--grid-step", o.grid_step, "Weight grid spacing");
  region->add_option("--baselines", o.baselines, "Extra sweeps: zf, bc")->delimiter(',')->expected(1, -1);
  region->add_option("--deltas", o.deltas, "Eavesdropper scalings for a delta family")->delimiter(',')->expected(1, -1);
  region->add_option("--out", o.out, "Write the JSON bundle here");
  region->add_option("--csv", o.csv, "Write one CSV row per sample here");

  CLI::App* check = app.add_subcommand("order-check", "Compare every encoding order");
  common(check);
  check->add_option("--weights", o.weights, "Weights")->expected(1, -1);
  check->add_option("--out", o.out, "Write the JSON report here");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? kExitOk : kExitParse;
  }

  try {
    if (rates->parsed()) return cmd_rates(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (region->parsed()) return cmd_region(o, out);
    return cmd_order_check(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const Json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace secrecy::cli
