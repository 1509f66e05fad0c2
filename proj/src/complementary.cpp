#include "npick/complementary.hpp"

#include <algorithm>
#include <sstream>

namespace npick {

namespace {

ComplexMatrix row_block(const ComplexMatrix& D, const ComplexMatrix& C,
                        const ComplexMatrix& B, const ComplexMatrix& Z) {
    const Eigen::Index e = D.rows(), n = Z.rows(), p = D.cols();
    ComplexMatrix M(e + n, p + n);
    M << D, C, B, Z;
    return M;
}

}  // namespace

ComplementaryPair complementary_pair(const ProblemData& prob, const PickData& pick,
                                     double tol) {
    if (!pick.P_strictly_positive) {
        std::ostringstream os;
        os << "P is not strictly positive (min eigenvalue " << pick.P_min_eig << ")";
        throw PNotStrictlyPositive(os.str());
    }
    const ComplexMatrix Psqrt = hermitian_sqrt(pick.P);
    const ComplexMatrix Pinvsqrt = hermitian_inverse_sqrt(pick.P);

    ComplexMatrix M(prob.n(), prob.p() + prob.n());
    M << prob.B, prob.Z * Psqrt;
    const ComplexMatrix phi = null_space_isometry(M);

    ComplementaryPair pair;
    pair.e = phi.cols();
    pair.D = phi.topRows(prob.p()).adjoint();
    pair.C = phi.bottomRows(prob.n()).adjoint() * Pinvsqrt;

    const PairReport report = verify_pair(pair, prob, pick);
    pair.semiunit1_residual = report.semiunit1;
    pair.semiunit2_residual = report.semiunit2;
    if (report.semiunit1 > tol || report.semiunit2 > tol) {
        std::ostringstream os;
        os << "complementary pair identities violated: " << report.semiunit1 << " / "
           << report.semiunit2 << " exceed " << tol
           << " (P may be too ill-conditioned)";
        throw NumericError(os.str());
    }
    return pair;
}

RationalSystem inner_theta(const ComplementaryPair& pair, const ProblemData& prob) {
    return RationalSystem::from_blocks(prob.Z.adjoint(), pair.C.adjoint(),
                                       prob.B.adjoint(), pair.D.adjoint());
}

double PairReport::max_residual() const {
    return std::max({semiunit1, semiunit2, dd_cpc, bd_zpc, dd_bpb, dc_bpz, cc_zpz});
}

PairReport verify_pair(const ComplementaryPair& pair, const ProblemData& prob,
                       const PickData& pick) {
    const Eigen::Index n = prob.n(), p = prob.p(), e = pair.e;
    const ComplexMatrix& P = pick.P;
    const ComplexMatrix Pinv = P.ldlt().solve(ComplexMatrix::Identity(n, n));

    const ComplexMatrix M = row_block(pair.D, pair.C, prob.B, prob.Z);

    ComplexMatrix weight1 = ComplexMatrix::Zero(p + n, p + n);
    weight1.topLeftCorner(p, p).setIdentity();
    weight1.bottomRightCorner(n, n) = P;
    ComplexMatrix target1 = ComplexMatrix::Zero(e + n, e + n);
    target1.topLeftCorner(e, e).setIdentity();
    target1.bottomRightCorner(n, n) = P;

    ComplexMatrix weight2 = ComplexMatrix::Zero(e + n, e + n);
    weight2.topLeftCorner(e, e).setIdentity();
    weight2.bottomRightCorner(n, n) = Pinv;
    ComplexMatrix target2 = ComplexMatrix::Zero(p + n, p + n);
    target2.topLeftCorner(p, p).setIdentity();
    target2.bottomRightCorner(n, n) = Pinv;

    PairReport r;
    r.semiunit1 = operator_norm(M * weight1 * M.adjoint() - target1);
    r.semiunit2 = operator_norm(M.adjoint() * weight2 * M - target2);

    const ComplexMatrix& C = pair.C;
    const ComplexMatrix& D = pair.D;
    const ComplexMatrix& B = prob.B;
    const ComplexMatrix& Z = prob.Z;
    r.dd_cpc = operator_norm(D * D.adjoint() + C * P * C.adjoint() -
                             ComplexMatrix::Identity(e, e));
    r.bd_zpc = operator_norm(B * D.adjoint() + Z * P * C.adjoint());
    r.dd_bpb = operator_norm(D.adjoint() * D + B.adjoint() * Pinv * B -
                             ComplexMatrix::Identity(p, p));
    r.dc_bpz = operator_norm(D.adjoint() * C + B.adjoint() * Pinv * Z);
    r.cc_zpz = operator_norm(C.adjoint() * C + Z.adjoint() * Pinv * Z - Pinv);
    return r;
}

}  // namespace npick
