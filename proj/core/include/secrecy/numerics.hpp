#pragma once

#include <complex>

#include <Eigen/Dense>

namespace secrecy {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace numerics {

/// Hermitian part (m + m^H) / 2.
Matrix hermitian_part(const Matrix& m);

/// True when m equals its conjugate transpose within `tol` relative to its largest entry.
bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// Natural log of det(m) for Hermitian positive definite m, via Cholesky.
/// Throws Error(kNotPositiveDefinite) when a pivot is not positive.
double log_det_posdef(const Matrix& m);

/// Inverse of a Hermitian positive definite matrix via Cholesky.
Matrix inverse_posdef(const Matrix& m);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to zero.
Matrix psd_project(const Matrix& m);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

/// m^power for Hermitian PSD m through its eigendecomposition. Eigenvalues are
/// floored at `floor` first, which keeps negative powers finite.
Matrix hermitian_power(const Matrix& m, double power, double floor = 1e-14);

struct Svd {
  Matrix u;          // rows x r
  RealVector sigma;  // r, nonincreasing
  Matrix v;          // cols x r
};

/// Thin SVD, m = u * diag(sigma) * v^H with r = min(rows, cols).
/// With `full` set, u and v are square and sigma still has min(rows, cols) entries.
Svd svd(const Matrix& m, bool full = false);

/// Orthonormal basis of the null space of m (columns). Singular values at or below
/// rel_tol * sigma_max count as zero.
Matrix null_space(const Matrix& m, double rel_tol = 1e-10);

Matrix identity(Eigen::Index n);
Matrix zeros(Eigen::Index rows, Eigen::Index cols);

/// Real part of tr(a^H b).
double inner(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);

}  // namespace numerics
}  // namespace secrecy
