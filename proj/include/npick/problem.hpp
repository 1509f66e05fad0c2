#pragma once

#include <string>

#include "npick/kernel.hpp"

namespace npick {

// One finite interpolation instance. Z is the n x n state operator, B the
// n x p output-side data, Btilde the n x q input-side data. Construction
// rejects spectral_radius(Z) >= 1: a finite Z with a unimodular eigenvalue
// cannot have a pointwise stable adjoint, so no such instance is admissible.
struct ProblemData {
    ComplexMatrix Z;
    ComplexMatrix B;
    ComplexMatrix Btilde;

    ProblemData(ComplexMatrix Z_, ComplexMatrix B_, ComplexMatrix Btilde_);

    Eigen::Index n() const { return Z.rows(); }
    Eigen::Index p() const { return B.cols(); }
    Eigen::Index q() const { return Btilde.cols(); }
};

enum class PickClass { StrictlyPositive, NonnegativeSingular, Indefinite };

const char* to_string(PickClass c);

// Gramians of the data and their difference Lambda = P - Ptilde, classified
// against posdef_tol = 1e-10 * max(1, ||Lambda||).
struct PickData {
    ComplexMatrix P;
    ComplexMatrix Ptilde;
    ComplexMatrix Lambda;
    PickClass classification;
    double lambda_min_eig = 0.0;
    double posdef_tol = 0.0;
    bool P_strictly_positive = false;
    double P_min_eig = 0.0;
};

// Unique solution of Omega - Z * Omega * alpha = Xi for rho(Z)*rho(alpha) < 1.
//
// Strategy: exact finite sum when Z is nilpotent (rho numerically zero), a
// dense solve over the vectorized unknown when rho(Z)*rho(alpha) > 0.95, and
// otherwise the doubling iteration
//     Omega_{k+1} = Omega_k + Z^(2^k) * Omega_k * alpha^(2^k),
// stopped when the residual bound ||Z^(2^k)||*||alpha^(2^k)||*||Xi|| drops
// below tol * max(1, ||Xi||).
ComplexMatrix stein_solve(const ComplexMatrix& Z, const ComplexMatrix& alpha,
                          const ComplexMatrix& Xi, double tol = 1e-14);

PickData gramians(const ProblemData& prob, double tol = 1e-12);

enum class Side { B, Btilde };

// Decay estimate for the columns of [X, ZX, Z^2 X, ...]: the K-block tail is
// bounded by ||Z^K|| * ||X|| / (1 - rho_hat). rho_hat < 1 is the effective
// geometric rate derived from the first power m with ||Z^m|| < 1:
// 1 - rho_hat = (1 - ||Z^m||) / (m * max_{r<m} ||Z^r||), which makes the
// displayed bound dominate sum_{j>=K} ||Z^j X||. For ||Z|| < 1 this reduces
// to the textbook rho_hat = ||Z||.
struct TailBound {
    double bound = 0.0;
    double rho_hat = 0.0;
    int first_contractive_power = 1;
};

// K-block finite section [X, ZX, ..., Z^{K-1} X] with its tail bound.
ComplexMatrix truncated_controllability(const ProblemData& prob, Side which, int K,
                                        TailBound* tail = nullptr);

// Smallest K whose tail bound (taken with max(||B||, ||Btilde||) so the same
// order serves both data sides) is below eps. Capped at 100000.
int auto_truncation_order(const ProblemData& prob, double eps);

}  // namespace npick
