#pragma once

#include <string>
#include <vector>

#include "npick/problem.hpp"
#include "npick/rational.hpp"

namespace npick {

// Polynomial data for G F = K: G(l) = sum_k G_coeffs[k] l^k (v x p) and
// K(l) = sum_k K_coeffs[k] l^k (v x q). Solved modulo l^N; the exact problem
// is the N -> infinity limit and only the mod-l^N residual is guaranteed.
struct LeechInstance {
    std::vector<ComplexMatrix> G_coeffs;
    std::vector<ComplexMatrix> K_coeffs;
    int N = 1;
};

// Finite section: Z is the N*v-dimensional block lower shift (nilpotent),
// B stacks G_0..G_{N-1} zero-padded, Btilde stacks K_0..K_{N-1}. Matching the
// interpolation condition of the section is exactly matching the first N
// Taylor coefficients of G F = K.
ProblemData leech_truncate(const LeechInstance& leech);

struct LeechSolvability {
    PickClass classification = PickClass::Indefinite;
    double lambda_min_eig = 0.0;
    std::string note;
};

// Classification of the Pick matrix of the truncated instance. This is the
// order-N necessary condition for the infinite problem.
LeechSolvability leech_solvability(const LeechInstance& leech);

// max over k < orders of || sum_{j<=k} G_j F_{k-j} - K_k || from exact Taylor
// coefficients of F.
double leech_residual(const LeechInstance& leech, const RationalSystem& F, int orders);

// Lifting data with co-isometric [Z B]: Z Z* + B B* = I_n, so the state
// Gramian of the reduced problem is the identity.
struct CommutantLiftingInstance {
    ComplexMatrix Z;
    ComplexMatrix B;
    ComplexMatrix Btilde;
};

ProblemData commutant_lifting_instance(const CommutantLiftingInstance& cl,
                                       double tol = 1e-10);

// Difference between the general Q0 of the coefficient system and the
// shortcut available when the state Gramian is the identity,
// (I + C (Lambda^{-1} - I) C*)^{-1/2}.
double commutant_lifting_q0_residual(const ProblemData& prob);

// Leech instance with K identically the v x v identity.
ProblemData toeplitz_corona_instance(const std::vector<ComplexMatrix>& G_coeffs, int N);

}  // namespace npick
