#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "secrecy/channel.hpp"
#include "secrecy/ordering.hpp"
#include "secrecy/region.hpp"
#include "secrecy/solver.hpp"

namespace secrecy::io {

using Json = nlohmann::json;

/// Matrices are row lists; each entry is a number (real) or an [re, im] pair.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"side": "bc"|"mac", "matrices": [...], "hermitian_violation": max ||Q - Q^H||_F}
Json covariances_to_json(const CovarianceSet& q);
/// Accepts the object form above or a bare list of matrices (broadcast side).
CovarianceSet covariances_from_json(const Json& j);

double hermitian_violation(const CovarianceSet& q);

Json result_to_json(const SolverResult& r, const WeightVector& w, const EncodingOrder& order);
Json order_report_to_json(const OrderReport& r);
Json sweep_to_json(const RegionSweep& s);

/// CSV columns, fixed:
///   label, w_1..w_K, order, R_1..R_K, wsr, power, converged
/// `order` is the one-based encoding order joined by '-', e.g. "2-1".
void write_csv_header(std::ostream& os, std::size_t users);
void write_csv_rows(std::ostream& os, const RegionSweep& s);

}  // namespace secrecy::io
