#include "secrecy/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "secrecy/errors.hpp"

namespace secrecy {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kSingularFactor: return "SingularFactor";
    case ErrorCode::kSubproblemDivergence: return "SubproblemDivergence";
    case ErrorCode::kBoundsExhausted: return "BoundsExhausted";
    case ErrorCode::kTooManyUsers: return "TooManyUsers";
    case ErrorCode::kEmptyNullSpace: return "EmptyNullSpace";
    case ErrorCode::kNoConvergedSamples: return "NoConvergedSamples";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

namespace numerics {

Matrix hermitian_part(const Matrix& m) {
  return (m + m.adjoint()) * 0.5;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

double log_det_posdef(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "log_det_posdef needs a square matrix");
  }
  Eigen::LLT<Matrix> llt(hermitian_part(m));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "Cholesky pivot is not positive");
  }
  const Matrix& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0)) {
      throw Error(ErrorCode::kNotPositiveDefinite, "Cholesky pivot is not positive");
    }
    acc += std::log(d);
  }
  return 2.0 * acc;
}

Matrix inverse_posdef(const Matrix& m) {
  Eigen::LLT<Matrix> llt(hermitian_part(m));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "Cholesky pivot is not positive");
  }
  return hermitian_part(llt.solve(identity(m.rows())));
}

Matrix psd_project(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  const RealVector clamped = es.eigenvalues().cwiseMax(0.0);
  const Matrix& v = es.eigenvectors();
  return hermitian_part(v * clamped.asDiagonal() * v.adjoint());
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Matrix hermitian_power(const Matrix& m, double power, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    ev(i) = std::pow(std::max(ev(i), floor), power);
  }
  const Matrix& v = es.eigenvectors();
  return hermitian_part(v * ev.asDiagonal() * v.adjoint());
}

Svd svd(const Matrix& m, bool full) {
  if (!all_finite(m)) {
    throw Error(ErrorCode::kInvalidArgument, "svd input has non-finite entries");
  }
  const unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                             : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<Matrix> solver(m, opts);
  Svd out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  if (!all_finite(out.u) || !all_finite(out.v) || !out.sigma.allFinite()) {
    throw Error(ErrorCode::kConvergenceFailure, "svd did not converge");
  }
  return out;
}

Matrix null_space(const Matrix& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return identity(n);
  const Svd s = svd(m, /*full=*/true);
  const double smax = s.sigma.size() > 0 ? s.sigma(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.sigma.size(); ++i) {
    if (s.sigma(i) > rel_tol * smax && s.sigma(i) > 0.0) ++rank;
  }
  return s.v.rightCols(n - rank);
}

Matrix identity(Eigen::Index n) {
  return Matrix::Identity(n, n);
}

Matrix zeros(Eigen::Index rows, Eigen::Index cols) {
  return Matrix::Zero(rows, cols);
}

double inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace().real();
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

}  // namespace numerics
}  // namespace secrecy
