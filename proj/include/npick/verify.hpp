#pragma once

#include <utility>
#include <vector>

#include "npick/solver.hpp"

namespace npick {

std::vector<Complex> circle_grid(int count);

// Interior sample points on the radii {0.3, 0.7, 0.95}, per_radius angles on
// each circle.
std::vector<Complex> disc_grid(int per_radius = 64);

// || B delta_F + Z Omega beta_F - Btilde || with Omega the Stein solution of
// Omega - Z Omega alpha_F = B gamma_F. This equals the norm of
// sum_k Z^k B F_k - Btilde with no series truncation.
double interpolation_residual(const ProblemData& prob, const RationalSystem& F);

// max over the grid of ||F(lambda)|| - 1.
double schur_margin(const RationalSystem& F, const std::vector<Complex>& grid);

// max over circle samples of ||(I - F0* F0) - (U22^-1)* (U22^-1)|| for the
// central solution F0.
double spectral_factorization_residual(const ProblemData& prob, const PickData& pick,
                                       const CoefficientSystem& coeffs,
                                       int circle_points);

// Entropy matrix of the central solution, (I + Btilde* Lambda^-1 Btilde)^-1.
// Coincides with R0^2 and with U22(0)^-* U22(0)^-1.
ComplexMatrix entropy_central(const PickData& pick, const ProblemData& prob);

// Entropy matrix of an arbitrary Schur function from its N-block lower
// triangular Toeplitz section T_N: (E*(I - T_N* T_N)^{-1} E)^{-1} when T_N is
// a strict contraction, otherwise the ridge-regularized normal equations of
// the underlying quadratic program. N starts at `truncation` and doubles
// until the result moves by less than tol.
ComplexMatrix entropy_of_solution(const RationalSystem& F, int truncation, double tol);

// Determinant identity for the central solution: returns
//   lhs = det(entropy_central),
//   rhs = exp of the trapezoid quadrature of log det(I - F0* F0) on the
//         unit circle with quad_points nodes.
std::pair<double, double> szego_check(const ProblemData& prob, const PickData& pick,
                                      const RationalSystem& F_central, int quad_points);

// max residual of Upsilon(l)* J1 Upsilon(l) = J2 - (1-|l|^2) M(l)* Lambda M(l)
// over the given points (all |l| <= 1), with J1 = diag(I_p, -I_q),
// J2 = diag(I_e, -I_q), M(l) = (I - l Z*)^{-1} Bhat diag(Q0, R0).
double j_identity_residual(const CoefficientSystem& coeffs, const ProblemData& prob,
                           const PickData& pick, const ComplementaryPair& pair,
                           const std::vector<Complex>& lambdas);

struct VerifyOptions {
    int circle_points = 128;
    int interior_per_radius = 64;
    int szego_points = 2048;
    int entropy_start = 8;
    double entropy_tol = 1e-10;
};

struct VerificationReport {
    double interpolation_residual = 0.0;
    double schur_margin = 0.0;
    double j_identity_residual = 0.0;
    double spectral_factorization_residual = 0.0;
    ComplexMatrix entropy_matrix;
    double szego_lhs = 0.0;
    double szego_rhs = 0.0;
    std::vector<std::string> notes;

    // Margin is a signed slack (<= 0 when the Schur bound holds); everything
    // else is a residual compared against tol directly.
    bool passes(double tol) const;
};

// Full pipeline on one instance: gramians, pair, coefficients, the solution
// for the given parameter (central when param is null), then every check.
VerificationReport verify_instance(const ProblemData& prob, const SchurParameter* param,
                                   const VerifyOptions& opts = {});

}  // namespace npick
