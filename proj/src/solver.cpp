#include "npick/solver.hpp"

#include <cmath>
#include <sstream>

namespace npick {

namespace {

void require_strictly_positive(const PickData& pick) {
    if (pick.classification == PickClass::StrictlyPositive) return;
    std::ostringstream os;
    os << "Pick operator is " << to_string(pick.classification) << " (min eigenvalue "
       << pick.lambda_min_eig << "); the parametrization needs it strictly positive";
    throw LambdaNotStrictlyPositive(os.str());
}

ComplexMatrix hermitize(const ComplexMatrix& M) { return 0.5 * (M + M.adjoint()); }

}  // namespace

CoefficientSystem coefficient_system(const ProblemData& prob, const PickData& pick,
                                     const ComplementaryPair& pair) {
    require_strictly_positive(pick);
    CoefficientSystem cs;
    cs.n = prob.n();
    cs.p = prob.p();
    cs.q = prob.q();
    cs.e = pair.e;

    const ComplexMatrix I_n = ComplexMatrix::Identity(cs.n, cs.n);
    const auto lambda_ldlt = pick.Lambda.ldlt();
    const ComplexMatrix PCstar = pick.P * pair.C.adjoint();

    cs.lambda_inv_PCstar = lambda_ldlt.solve(PCstar);
    cs.lambda_inv_Btilde = lambda_ldlt.solve(prob.Btilde);
    cs.K = hermitize(ComplexMatrix(prob.Btilde * prob.Btilde.adjoint() + pick.Lambda)
                         .ldlt()
                         .solve(I_n));

    // Two equivalent closed forms of Q0^-2; their gap is recorded as a
    // construction diagnostic.
    const ComplexMatrix q0_form1 =
        ComplexMatrix::Identity(cs.e, cs.e) +
        PCstar.adjoint() * (cs.lambda_inv_PCstar - pair.C.adjoint());
    const ComplexMatrix q0_form2 = pair.D * pair.D.adjoint() +
                                   PCstar.adjoint() * cs.lambda_inv_PCstar;
    cs.q0_alt_residual = operator_norm(q0_form1 - q0_form2);
    cs.Q0 = hermitian_inverse_sqrt(hermitize(q0_form1));

    const ComplexMatrix r0_arg = ComplexMatrix::Identity(cs.q, cs.q) +
                                 prob.Btilde.adjoint() * cs.lambda_inv_Btilde;
    cs.R0 = hermitian_inverse_sqrt(hermitize(r0_arg));

    cs.Bhat.resize(cs.n, cs.e + cs.q);
    cs.Bhat << cs.lambda_inv_PCstar, prob.Z.adjoint() * cs.lambda_inv_Btilde;
    cs.Chat.resize(cs.p + cs.q, cs.n);
    cs.Chat << prob.B.adjoint(), prob.Btilde.adjoint();
    cs.Dhat = ComplexMatrix::Zero(cs.p + cs.q, cs.e + cs.q);
    cs.Dhat.topLeftCorner(cs.p, cs.e) = pair.D.adjoint();
    cs.Dhat.topRightCorner(cs.p, cs.q) = prob.B.adjoint() * cs.lambda_inv_Btilde;
    cs.Dhat.bottomRightCorner(cs.q, cs.q) = hermitize(r0_arg);

    cs.lambda_cond =
        operator_norm(pick.Lambda) / std::max(pick.lambda_min_eig, 1e-300);
    if (pick.lambda_min_eig < 100.0 * pick.posdef_tol) {
        std::ostringstream os;
        os << "ill-conditioned Pick operator (cond = " << cs.lambda_cond << ")";
        cs.note = os.str();
    }
    return cs;
}

ComplexMatrix UpsilonBlocks::full() const {
    ComplexMatrix M(U11.rows() + U21.rows(), U11.cols() + U12.cols());
    M << U11, U12, U21, U22;
    return M;
}

UpsilonBlocks upsilon_eval(const CoefficientSystem& coeffs, const ProblemData& prob,
                           const PickData&, const ComplementaryPair& pair,
                           Complex lambda) {
    const Eigen::Index n = coeffs.n;
    ComplexMatrix rhs(n, coeffs.e + coeffs.q);
    rhs << coeffs.lambda_inv_PCstar * coeffs.Q0, coeffs.lambda_inv_Btilde * coeffs.R0;

    ComplexMatrix R = ComplexMatrix::Identity(n, n) - lambda * prob.Z.adjoint();
    Eigen::FullPivLU<ComplexMatrix> lu(R);
    if (!lu.isInvertible())
        throw ResolventSingular("I - lambda Z* is singular at the requested point");
    const ComplexMatrix S = lu.solve(rhs);
    const ComplexMatrix S1 = S.leftCols(coeffs.e);
    const ComplexMatrix S2 = S.rightCols(coeffs.q);

    UpsilonBlocks out;
    out.U11 = pair.D.adjoint() * coeffs.Q0 + lambda * prob.B.adjoint() * S1;
    out.U12 = prob.B.adjoint() * S2;
    out.U21 = lambda * prob.Btilde.adjoint() * S1;
    out.U22 = coeffs.R0 + prob.Btilde.adjoint() * S2;
    return out;
}

SchurParameter SchurParameter::constant(const ComplexMatrix& X0, double tol) {
    const double norm = operator_norm(X0);
    if (norm > 1.0 + tol) {
        std::ostringstream os;
        os << "constant parameter has norm " << norm << " > 1";
        throw ParameterNotContractive(os.str());
    }
    return SchurParameter(RationalSystem::constant(X0));
}

SchurParameter SchurParameter::dynamic(RationalSystem sys, double tol) {
    const double norm = operator_norm(sys.system_matrix());
    if (norm > 1.0 + tol) {
        std::ostringstream os;
        os << "parameter system matrix has norm " << norm
           << " > 1; a contractive realization is required";
        throw ParameterNotContractive(os.str());
    }
    return SchurParameter(std::move(sys));
}

RationalSystem central_solution(const ProblemData& prob, const PickData& pick) {
    require_strictly_positive(pick);
    const Eigen::Index n = prob.n();
    const ComplexMatrix K =
        ComplexMatrix(prob.Btilde * prob.Btilde.adjoint() + pick.Lambda)
            .ldlt()
            .solve(ComplexMatrix::Identity(n, n));
    const ComplexMatrix T = pick.Lambda * prob.Z.adjoint() * K;
    return RationalSystem::from_blocks(T, prob.Btilde,
                                       prob.B.adjoint() * K * T,
                                       prob.B.adjoint() * K * prob.Btilde);
}

RationalSystem upsilon22_inverse(const CoefficientSystem& coeffs, const ProblemData& prob,
                                 const PickData& pick) {
    require_strictly_positive(pick);
    const ComplexMatrix state = prob.Z.adjoint() * coeffs.K * pick.Lambda;
    const ComplexMatrix beta =
        prob.Z.adjoint() * coeffs.lambda_inv_Btilde * coeffs.R0 * coeffs.R0;
    return RationalSystem::from_blocks(state, beta,
                                       ComplexMatrix(-coeffs.R0 * prob.Btilde.adjoint()),
                                       coeffs.R0);
}

namespace {

// Realization of Upsilon itself (output dim p+q, input dim e+q, state Z*).
RationalSystem upsilon_realization(const CoefficientSystem& cs, const ProblemData& prob) {
    ComplexMatrix QR = ComplexMatrix::Zero(cs.e + cs.q, cs.e + cs.q);
    QR.topLeftCorner(cs.e, cs.e) = cs.Q0;
    QR.bottomRightCorner(cs.q, cs.q) = cs.R0;
    return RationalSystem::from_blocks(prob.Z.adjoint(), cs.Bhat * QR, cs.Chat,
                                       cs.Dhat * QR);
}

}  // namespace

RationalSystem lft_solution(const CoefficientSystem& coeffs, const ProblemData& prob,
                            const PickData& pick, const ComplementaryPair& pair,
                            const SchurParameter& X) {
    require_strictly_positive(pick);
    if (coeffs.e == 0) return central_solution(prob, pick);
    if (X.outputs() != coeffs.e || X.inputs() != coeffs.q)
        throw DimensionMismatch("parameter must map the q-dimensional input space "
                                "into the e-dimensional defect space");

    const RationalSystem U = upsilon_realization(coeffs, prob);
    const RationalSystem& Xs = X.system();
    const Eigen::Index s = Xs.states();
    const Eigen::Index n = coeffs.n, p = coeffs.p, q = coeffs.q, e = coeffs.e;

    // Cascade N = Upsilon * col(X, I_q) on the joint state (X-state, Z*-state).
    // col(X, I_q) has gamma = [c_x; 0], delta = [d_x; I_q]; only the first e
    // input columns of Upsilon see the X blocks.
    ComplexMatrix aN = ComplexMatrix::Zero(s + n, s + n);
    aN.topLeftCorner(s, s) = Xs.alpha;
    aN.bottomLeftCorner(n, s) = U.beta.leftCols(e) * Xs.gamma;
    aN.bottomRightCorner(n, n) = U.alpha;

    ComplexMatrix bN(s + n, q);
    bN.topRows(s) = Xs.beta;
    bN.bottomRows(n) = U.beta.leftCols(e) * Xs.delta + U.beta.rightCols(q);

    ComplexMatrix cN(p + q, s + n);
    cN.leftCols(s) = U.delta.leftCols(e) * Xs.gamma;
    cN.rightCols(n) = U.gamma;

    ComplexMatrix dN = U.delta.leftCols(e) * Xs.delta + U.delta.rightCols(q);

    // Invert the second block row in place: with v = N2 u the joint state
    // equations become x = lambda((aN - bN d2^-1 c2) x + bN d2^-1 v) and the
    // first block row turns into F = N1 N2^{-1}. d2 equals R0^{-1} because
    // Upsilon21(0) = 0, so the feedback is always well posed.
    const ComplexMatrix c2 = cN.bottomRows(q);
    const ComplexMatrix d2 = dN.bottomRows(q);
    Eigen::FullPivLU<ComplexMatrix> lu(d2);
    if (!lu.isInvertible())
        throw FeedbackSingular("constant term of the denominator row is singular");
    const ComplexMatrix d2inv = lu.solve(ComplexMatrix::Identity(q, q));

    return RationalSystem::from_blocks(
        ComplexMatrix(aN - bN * d2inv * c2), ComplexMatrix(bN * d2inv),
        ComplexMatrix(cN.topRows(p) - dN.topRows(p) * d2inv * c2),
        ComplexMatrix(dN.topRows(p) * d2inv));
}

ComplexMatrix omega_pf(const ProblemData& prob, const PickData& pick) {
    require_strictly_positive(pick);
    const Eigen::Index n = prob.n(), p = prob.p(), q = prob.q();
    const ComplexMatrix Lsqrt = hermitian_sqrt(pick.Lambda);
    ComplexMatrix K1(n, q + n);
    K1 << prob.Btilde, Lsqrt;
    ComplexMatrix K2(n, p + n);
    K2 << prob.B, prob.Z * Lsqrt;
    const ComplexMatrix N = hermitize(K1 * K1.adjoint());
    return K2.adjoint() * N.ldlt().solve(K1);
}

TauPair tau_isometries(const CoefficientSystem& coeffs, const ProblemData& prob,
                       const PickData& pick, const ComplementaryPair& pair) {
    require_strictly_positive(pick);
    const Eigen::Index n = prob.n(), p = prob.p(), q = prob.q();
    const ComplexMatrix Linvsqrt = hermitian_inverse_sqrt(pick.Lambda);
    TauPair out;
    out.tau1.resize(q + n, q);
    out.tau1 << ComplexMatrix::Identity(q, q), -Linvsqrt * prob.Btilde;
    out.tau1 = out.tau1 * coeffs.R0;
    out.tau2.resize(p + n, coeffs.e);
    out.tau2 << pair.D.adjoint(), Linvsqrt * pick.P * pair.C.adjoint();
    out.tau2 = out.tau2 * coeffs.Q0;
    return out;
}

ComplexMatrix redheffer_solution(const ProblemData& prob, const PickData& pick,
                                 const ComplementaryPair& pair,
                                 const CoefficientSystem& coeffs,
                                 const SchurParameter& X, Complex lambda) {
    const Eigen::Index n = prob.n(), p = prob.p(), q = prob.q();
    const ComplexMatrix omega = omega_pf(prob, pick);
    const TauPair tau = tau_isometries(coeffs, prob, pick, pair);
    const ComplexMatrix G = omega + tau.tau2 * X.eval(lambda) * tau.tau1.adjoint();

    const ComplexMatrix G11 = G.topLeftCorner(p, q);
    const ComplexMatrix G12 = G.topRightCorner(p, n);
    const ComplexMatrix G21 = G.bottomLeftCorner(n, q);
    const ComplexMatrix G22 = G.bottomRightCorner(n, n);

    ComplexMatrix R = ComplexMatrix::Identity(n, n) - lambda * G22;
    Eigen::FullPivLU<ComplexMatrix> lu(R);
    if (!lu.isInvertible())
        throw FeedbackSingular("I - lambda G22 is singular at the requested point");
    return G11 + lambda * G12 * lu.solve(G21);
}

TruncatedCrossCheck truncated_gram_cross_check(const ProblemData& prob,
                                               const PickData& pick,
                                               const ComplementaryPair& pair,
                                               const CoefficientSystem& coeffs,
                                               double eps) {
    TruncatedCrossCheck out;
    out.K = auto_truncation_order(prob, eps);
    const Eigen::Index n = prob.n();
    const Eigen::Index q = prob.q();

    // Everything below works with A_K = W_K* P^{-1} Wt_K only through the
    // section Gramians P_K = W_K W_K*, Pt_K = Wt_K Wt_K*: push-through
    // identities pull the (K q)-dimensional inverses back to n x n ones, so
    // the cost does not grow with the truncation order K. With
    // G = P^{-1} P_K P^{-1} and S = I - G^{1/2} Pt_K G^{1/2},
    //   E* (I - A*A)^{-1} E       = I_q + (G^{1/2} Bt)* S^{-1} (G^{1/2} Bt),
    //   C W A (I - A*A)^{-1} A* W* C*
    //                             = C P_K P^{-1} Pt_K (I - G Pt_K)^{-1} P^{-1} P_K C*,
    //   (I - A*A)^{-1} - (I + Wt* La^{-1} Wt)
    //                             = Wt* (G^{1/2} S^{-1} G^{1/2} - La^{-1}) Wt,
    // and the norm of the last line equals the norm of the same middle factor
    // squeezed between Pt_K^{1/2}.
    ComplexMatrix PK = ComplexMatrix::Zero(n, n);
    ComplexMatrix PtK = ComplexMatrix::Zero(n, n);
    ComplexMatrix colB = prob.B;
    ComplexMatrix colBt = prob.Btilde;
    for (int k = 0; k < out.K; ++k) {
        PK += colB * colB.adjoint();
        PtK += colBt * colBt.adjoint();
        colB = (prob.Z * colB).eval();
        colBt = (prob.Z * colBt).eval();
    }
    PK = hermitize(PK);
    PtK = hermitize(PtK);

    const auto p_ldlt = pick.P.ldlt();
    const ComplexMatrix PinvPK = p_ldlt.solve(PK);
    const ComplexMatrix G = hermitize(p_ldlt.solve(PinvPK.adjoint()));
    const ComplexMatrix Gh = hermitian_sqrt(G);
    const ComplexMatrix S =
        hermitize(ComplexMatrix::Identity(n, n) - Gh * PtK * Gh);
    const auto s_ldlt = S.ldlt();

    const ComplexMatrix GhBt = Gh * prob.Btilde;
    const ComplexMatrix r0_arg = ComplexMatrix::Identity(q, q) +
                                 GhBt.adjoint() * s_ldlt.solve(GhBt);
    out.r0_residual = operator_norm(hermitian_inverse_sqrt(hermitize(r0_arg)) - coeffs.R0);

    const ComplexMatrix T = ComplexMatrix::Identity(n, n) - G * PtK;
    const ComplexMatrix TinvPinv =
        T.partialPivLu().solve(p_ldlt.solve(ComplexMatrix::Identity(n, n)));
    const ComplexMatrix Y = p_ldlt.solve(ComplexMatrix(PtK * TinvPinv));
    const ComplexMatrix CPK = pair.C * PK;
    const ComplexMatrix q0_arg = ComplexMatrix::Identity(pair.e, pair.e) +
                                 CPK * Y * CPK.adjoint();
    out.q0_residual = operator_norm(hermitian_inverse_sqrt(hermitize(q0_arg)) - coeffs.Q0);

    const ComplexMatrix middle =
        hermitize(Gh * s_ldlt.solve(Gh) -
                  pick.Lambda.ldlt().solve(ComplexMatrix::Identity(n, n)));
    const ComplexMatrix Pth = hermitian_sqrt(PtK);
    out.inversion_residual = operator_norm(Pth * middle * Pth);
    return out;
}

}  // namespace npick
