#include "secrecy/serialize.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy::io {

namespace {

Json complex_to_json(const std::complex<double>& z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorCode::kParseError, "matrix entry must be a number or an [re, im] pair");
}

std::string join_order(const EncodingOrder& o) {
  std::string s;
  for (std::size_t u : o.one_based()) {
    if (!s.empty()) s += '-';
    s += std::to_string(u);
  }
  return s;
}

Json rates_json(const RateTuple& r) { return Json(r); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::kParseError, "matrix must be a nonempty list of rows");
  if (!j[0].is_array()) throw Error(ErrorCode::kParseError, "matrix rows must be lists");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  if (cols == 0) throw Error(ErrorCode::kParseError, "matrix rows must be nonempty");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::kParseError, "matrix rows have unequal lengths");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

double hermitian_violation(const CovarianceSet& q) {
  double worst = 0.0;
  for (const Matrix& m : q.q) worst = std::max(worst, (m - m.adjoint()).norm());
  return worst;
}

Json covariances_to_json(const CovarianceSet& q) {
  Json mats = Json::array();
  for (const Matrix& m : q.q) mats.push_back(matrix_to_json(m));
  return Json{{"side", q.side == Side::kBroadcast ? "bc" : "mac"},
              {"matrices", std::move(mats)},
              {"hermitian_violation", hermitian_violation(q)}};
}

CovarianceSet covariances_from_json(const Json& j) {
  CovarianceSet out;
  const Json* mats = &j;
  if (j.is_object()) {
    if (!j.contains("matrices")) throw Error(ErrorCode::kParseError, "covariances need a 'matrices' list");
    mats = &j.at("matrices");
    const std::string side = j.value("side", std::string("bc"));
    if (side == "mac") {
      out.side = Side::kMultipleAccess;
    } else if (side != "bc") {
      throw Error(ErrorCode::kParseError, "covariance side must be 'bc' or 'mac'");
    }
  }
  if (!mats->is_array()) throw Error(ErrorCode::kParseError, "covariances must be a list of matrices");
  for (const Json& m : *mats) out.q.push_back(matrix_from_json(m));
  return out;
}

Json result_to_json(const SolverResult& r, const WeightVector& w, const EncodingOrder& order) {
  return Json{
      {"weights", w.values()},
      {"order", order.one_based()},
      {"rates", rates_json(r.rates)},
      {"wsr", r.wsr},
      {"lambda_star", r.lambda_star},
      {"power_used", r.power_used},
      {"covariances", covariances_to_json(r.covariances)},
      {"diagnostics",
       {{"converged", r.converged},
        {"power_constraint_active", r.power_constraint_active},
        {"inner_cap_hit", r.inner_cap_hit},
        {"outer_iterations", r.outer_iterations},
        {"inner_sweeps_total", r.inner_sweeps_total},
        {"inner_sweeps_final", r.inner_sweeps_final},
        {"kkt_residual", r.kkt_residual},
        {"init", r.init == InitMode::kZero ? "zero" : "uniform"}}},
  };
}

Json order_report_to_json(const OrderReport& r) {
  Json entries = Json::array();
  for (const OrderEntry& e : r.entries) {
    entries.push_back({{"order", e.order.one_based()}, {"rates", e.rates}, {"wsr", e.wsr}, {"converged", e.converged}});
  }
  return Json{{"entries", std::move(entries)},
              {"best", r.entries.at(r.best).order.one_based()},
              {"optimal_order", r.optimal.one_based()},
              {"optimal_gap", r.optimal_gap},
              {"tie", r.tie}};
}

Json sweep_to_json(const RegionSweep& s) {
  Json samples = Json::array();
  for (const RegionSample& x : s.samples) {
    Json js{{"weights", x.weights.values()},
            {"order", x.order.one_based()},
            {"rates", x.rates},
            {"wsr", x.wsr},
            {"power", x.power},
            {"converged", x.converged},
            {"covariances", covariances_to_json(x.covariances)}};
    if (!x.error.empty()) js["error"] = x.error;
    samples.push_back(std::move(js));
  }
  Json projections = Json::array();
  for (const RegionProjection& p : s.projections) {
    projections.push_back({{"users", {p.a + 1, p.b + 1}}, {"hull", p.hull}});
  }
  return Json{{"label", s.label},
              {"users", s.users},
              {"samples", std::move(samples)},
              {"hull", s.hull},
              {"projections", std::move(projections)}};
}

void write_csv_header(std::ostream& os, std::size_t users) {
  os << "label";
  for (std::size_t k = 1; k <= users; ++k) os << ",w_" << k;
  os << ",order";
  for (std::size_t k = 1; k <= users; ++k) os << ",R_" << k;
  os << ",wsr,power,converged\n";
}

void write_csv_rows(std::ostream& os, const RegionSweep& s) {
  std::ostringstream buf;
  buf << std::setprecision(10);
  for (const RegionSample& x : s.samples) {
    buf << s.label;
    for (double v : x.weights.values()) buf << ',' << v;
    buf << ',' << join_order(x.order);
    for (double v : x.rates) buf << ',' << v;
    buf << ',' << x.wsr << ',' << x.power << ',' << (x.converged ? 1 : 0) << '\n';
  }
  os << buf.str();
}

}  // namespace secrecy::io
