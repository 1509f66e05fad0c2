#pragma once

#include "npick/problem.hpp"
#include "npick/rational.hpp"

namespace npick {

// Operators C (e x n) and D (e x p) completing {Z, B, P} so that
//   [D C; B Z] diag(I_p, P) [D C; B Z]*  = diag(I_e, P)        (row identity)
//   [D C; B Z]* diag(I_e, P^-1) [D C; B Z] = diag(I_p, P^-1)   (column identity)
// The pair is unique up to a unitary acting from the left on C and D, so
// nothing here (or downstream) may depend on the particular basis of the
// e-dimensional space.
struct ComplementaryPair {
    ComplexMatrix C;
    ComplexMatrix D;
    Eigen::Index e = 0;
    double semiunit1_residual = 0.0;
    double semiunit2_residual = 0.0;
};

// Builds the pair from an isometry phi onto the null space of [B, Z*P^(1/2)]:
// C = phi_2^* P^(-1/2), D = phi_1^*. Requires P strictly positive. The two
// identity residuals are checked against tol before returning.
ComplementaryPair complementary_pair(const ProblemData& prob, const PickData& pick,
                                     double tol = 1e-10);

// Theta(lambda) = D* + lambda B* (I - lambda Z*)^{-1} C*, realized as
// {alpha = Z*, beta = C*, gamma = B*, delta = D*}. Takes contractive values
// on the closed disc and isometric values E -> Y on the unit circle.
RationalSystem inner_theta(const ComplementaryPair& pair, const ProblemData& prob);

// Residuals of the two block identities plus the five scalar identities they
// encode, each reported individually. Purely diagnostic.
struct PairReport {
    double semiunit1 = 0.0;  // row identity
    double semiunit2 = 0.0;  // column identity
    double dd_cpc = 0.0;     // DD* + C P C*  - I_e
    double bd_zpc = 0.0;     // BD* + Z P C*
    double dd_bpb = 0.0;     // D*D + B* P^-1 B - I_p
    double dc_bpz = 0.0;     // D*C + B* P^-1 Z
    double cc_zpz = 0.0;     // C*C + Z* P^-1 Z - P^-1
    double max_residual() const;
};

PairReport verify_pair(const ComplementaryPair& pair, const ProblemData& prob,
                       const PickData& pick);

}  // namespace npick
