#pragma once

#include <string>

#include "npick/complementary.hpp"
#include "npick/problem.hpp"
#include "npick/rational.hpp"

namespace npick {

// Q0, R0 and the ingredients of the 2x2 coefficient function
//   Upsilon(lambda) = (Dhat + lambda Chat (I - lambda Z*)^{-1} Bhat) diag(Q0, R0)
// with
//   Bhat = [La^-1 P C*, Z* La^-1 Bt],  Chat = [B*; Bt*],
//   Dhat = [D*, B* La^-1 Bt; 0, I + Bt* La^-1 Bt],
//   Q0 = (I_e + C P (La^-1 - P^-1) P C*)^{-1/2},
//   R0 = (I_q + Bt* La^-1 Bt)^{-1/2},
//   K = (Bt Bt* + La)^{-1},
// writing La for the Pick operator and Bt for Btilde.
struct CoefficientSystem {
    ComplexMatrix Q0;
    ComplexMatrix R0;
    ComplexMatrix Bhat;
    ComplexMatrix Chat;
    ComplexMatrix Dhat;
    ComplexMatrix K;
    ComplexMatrix lambda_inv_PCstar;  // La^-1 P C*, n x e
    ComplexMatrix lambda_inv_Btilde;  // La^-1 Bt,   n x q
    double q0_alt_residual = 0.0;     // gap between the two closed forms of Q0^-2
    double lambda_cond = 0.0;
    std::string note;                 // set when the Pick operator is near-singular
    Eigen::Index n = 0, p = 0, q = 0, e = 0;
};

CoefficientSystem coefficient_system(const ProblemData& prob, const PickData& pick,
                                     const ComplementaryPair& pair);

struct UpsilonBlocks {
    ComplexMatrix U11;  // p x e
    ComplexMatrix U12;  // p x q
    ComplexMatrix U21;  // q x e
    ComplexMatrix U22;  // q x q
    ComplexMatrix full() const;
};

// All four blocks from one resolvent solve (I - lambda Z*) x = rhs.
UpsilonBlocks upsilon_eval(const CoefficientSystem& coeffs, const ProblemData& prob,
                           const PickData& pick, const ComplementaryPair& pair,
                           Complex lambda);

// A Schur-class free parameter: either a constant contraction or a rational
// function with a contractive system matrix (which certifies the Schur
// property). Anything else is rejected with ParameterNotContractive.
class SchurParameter {
  public:
    static SchurParameter constant(const ComplexMatrix& X0, double tol = 1e-12);
    static SchurParameter dynamic(RationalSystem sys, double tol = 1e-12);

    bool is_constant() const { return system_.states() == 0; }
    const RationalSystem& system() const { return system_; }
    Eigen::Index outputs() const { return system_.outputs(); }
    Eigen::Index inputs() const { return system_.inputs(); }
    ComplexMatrix eval(Complex lambda) const { return system_.eval(lambda); }

  private:
    explicit SchurParameter(RationalSystem sys) : system_(std::move(sys)) {}
    RationalSystem system_;
};

// Central solution F(lambda) = B* K (I - lambda T)^{-1} Btilde with
// T = Lambda Z* K, realized as {alpha = T, beta = Btilde, gamma = B* K T,
// delta = B* K Btilde}.
RationalSystem central_solution(const ProblemData& prob, const PickData& pick);

// Upsilon22(lambda)^{-1} = R0 - lambda R0 Bt* (I - lambda Z* K Lambda)^{-1}
//                          Z* La^{-1} Bt R0^2,
// a Schur class function with exponentially stable state matrix Z* K Lambda.
RationalSystem upsilon22_inverse(const CoefficientSystem& coeffs, const ProblemData& prob,
                                 const PickData& pick);

// F = (U11 X + U12)(U21 X + U22)^{-1} carried as one exact realization:
// the cascade N = Upsilon * col(X, I) is formed on the joint state
// (X-state + Z*-state), and its second block row is inverted in place by
// output feedback (N2(0) = Upsilon22(0) is invertible because U21(0) = 0).
// No minimality reduction is applied.
RationalSystem lft_solution(const CoefficientSystem& coeffs, const ProblemData& prob,
                            const PickData& pick, const ComplementaryPair& pair,
                            const SchurParameter& X);

// The (p+n) x (q+n) matrix [B*; La^(1/2) Z*] K [Bt, La^(1/2)]; it maps
// [Bt*; La^(1/2)] onto [B*; La^(1/2) Z*] and acts as a partial isometry.
ComplexMatrix omega_pf(const ProblemData& prob, const PickData& pick);

struct TauPair {
    ComplexMatrix tau1;  // (q+n) x q
    ComplexMatrix tau2;  // (p+n) x e
};

// tau1 = [I; -La^{-1/2} Bt] R0 and tau2 = [D*; La^{-1/2} P C*] Q0. Both are
// isometries; tau1 spans the kernel of [Bt, La^{1/2}] and tau2 the kernel of
// [B, Z La^{1/2}].
TauPair tau_isometries(const CoefficientSystem& coeffs, const ProblemData& prob,
                       const PickData& pick, const ComplementaryPair& pair);

// Pointwise evaluation through the feedback form
//   F(lambda) = G11 + lambda G12 (I - lambda G22)^{-1} G21,
//   G(lambda) = omega_pf + tau2 X(lambda) tau1*,
// used to cross-validate lft_solution through an independent route.
ComplexMatrix redheffer_solution(const ProblemData& prob, const PickData& pick,
                                 const ComplementaryPair& pair,
                                 const CoefficientSystem& coeffs,
                                 const SchurParameter& X, Complex lambda);

// Consistency of the closed forms against their low-rank counterparts built
// from the K-block sections W_K, Wt_K with A_K = W_K* P^{-1} Wt_K:
//   R0  vs  (E* (I - A_K* A_K)^{-1} E)^{-1/2}
//   Q0  vs  (I + C W_K A_K (I - A_K* A_K)^{-1} A_K* W_K* C*)^{-1/2}
//   (I - A_K* A_K)^{-1}  vs  I + Wt_K* Lambda^{-1} Wt_K.
struct TruncatedCrossCheck {
    int K = 0;
    double r0_residual = 0.0;
    double q0_residual = 0.0;
    double inversion_residual = 0.0;
};

TruncatedCrossCheck truncated_gram_cross_check(const ProblemData& prob,
                                               const PickData& pick,
                                               const ComplementaryPair& pair,
                                               const CoefficientSystem& coeffs,
                                               double eps);

}  // namespace npick
