#pragma once

#include <complex>

#include <Eigen/Dense>

#include "npick/errors.hpp"

namespace npick {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Largest singular value; 0 for empty matrices.
double operator_norm(const ComplexMatrix& M);

// Max |eigenvalue| of a square matrix; 0 for the 0x0 matrix.
double spectral_radius(const ComplexMatrix& M);

// Smallest eigenvalue of a Hermitian matrix. The input is accepted when
// ||M - M*|| <= 1e-8 * max(1, ||M||) and symmetrized before the solve.
double min_hermitian_eigenvalue(const ComplexMatrix& M);

// Non-negative square root of a (numerically) PSD Hermitian matrix via a
// full Hermitian eigendecomposition. Eigenvalues in [-tol*||M||, 0) are
// clamped to 0; anything below that window raises NotPSD. The result S
// satisfies ||S*S - M|| <= c * tol' * ||M|| with c ~ dimension and tol'
// the eigensolver backward error, comfortably inside 1e-10 * max(1, ||M||)
// for double precision.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& M, double tol = 1e-10);

// Inverse of the square root for strictly positive Hermitian M. Raises
// NotPSD when the smallest eigenvalue does not clear tol * ||M||.
ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& M, double tol = 1e-12);

// Orthonormal basis of the numerical null space of a k x m matrix, returned
// as an m x d isometry (phi* phi = I_d, M phi ~ 0). d = m - rank, where the
// rank is counted against rank_tol; rank_tol < 0 selects the default
// max(rows, cols) * eps * sigma_max.
ComplexMatrix null_space_isometry(const ComplexMatrix& M, double rank_tol = -1.0);

// Numerical rank under the same threshold convention as null_space_isometry.
Eigen::Index numerical_rank(const ComplexMatrix& M, double rank_tol = -1.0);

}  // namespace npick
