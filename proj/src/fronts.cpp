#include "npick/fronts.hpp"

#include <algorithm>
#include <sstream>

#include "npick/complementary.hpp"
#include "npick/errors.hpp"
#include "npick/kernel.hpp"
#include "npick/solver.hpp"

namespace npick {

namespace {

void check_coefficients(const std::vector<ComplexMatrix>& coeffs, const char* name,
                        Eigen::Index& rows, Eigen::Index& cols) {
    if (coeffs.empty()) {
        throw DimensionMismatch(std::string(name) + ": need at least one coefficient");
    }
    rows = coeffs.front().rows();
    cols = coeffs.front().cols();
    for (const ComplexMatrix& c : coeffs) {
        if (c.rows() != rows || c.cols() != cols) {
            throw DimensionMismatch(std::string(name) + ": coefficients differ in shape");
        }
    }
}

ComplexMatrix stack_padded(const std::vector<ComplexMatrix>& coeffs, int N,
                           Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix M = ComplexMatrix::Zero(N * rows, cols);
    const int have = std::min<int>(N, static_cast<int>(coeffs.size()));
    for (int k = 0; k < have; ++k) {
        M.block(k * rows, 0, rows, cols) = coeffs[static_cast<std::size_t>(k)];
    }
    return M;
}

}  // namespace

ProblemData leech_truncate(const LeechInstance& leech) {
    if (leech.N < 1) throw DimensionMismatch("leech_truncate: N must be at least 1");
    Eigen::Index v = 0, p = 0, vk = 0, q = 0;
    check_coefficients(leech.G_coeffs, "leech_truncate G", v, p);
    check_coefficients(leech.K_coeffs, "leech_truncate K", vk, q);
    if (v != vk) {
        throw DimensionMismatch("leech_truncate: G and K must have the same row count");
    }
    const Eigen::Index n = leech.N * v;
    ComplexMatrix Z = ComplexMatrix::Zero(n, n);
    for (int k = 0; k + 1 < leech.N; ++k) {
        Z.block((k + 1) * v, k * v, v, v) = ComplexMatrix::Identity(v, v);
    }
    return ProblemData(Z, stack_padded(leech.G_coeffs, leech.N, v, p),
                       stack_padded(leech.K_coeffs, leech.N, v, q));
}

LeechSolvability leech_solvability(const LeechInstance& leech) {
    ProblemData prob = leech_truncate(leech);
    PickData pick = gramians(prob);
    LeechSolvability out;
    out.classification = pick.classification;
    out.lambda_min_eig = pick.lambda_min_eig;
    std::ostringstream note;
    note << "order-" << leech.N << " necessary condition for the full problem";
    out.note = note.str();
    return out;
}

double leech_residual(const LeechInstance& leech, const RationalSystem& F, int orders) {
    if (orders < 1) throw DimensionMismatch("leech_residual: orders must be at least 1");
    Eigen::Index v = 0, p = 0, vk = 0, q = 0;
    check_coefficients(leech.G_coeffs, "leech_residual G", v, p);
    check_coefficients(leech.K_coeffs, "leech_residual K", vk, q);
    if (v != vk) {
        throw DimensionMismatch("leech_residual: G and K must have the same row count");
    }
    if (F.outputs() != p || F.inputs() != q) {
        throw DimensionMismatch("leech_residual: F must map C^q to C^p");
    }
    std::vector<ComplexMatrix> Fk = F.taylor(orders);
    double worst = 0.0;
    for (int k = 0; k < orders; ++k) {
        ComplexMatrix acc = ComplexMatrix::Zero(v, q);
        for (int j = 0; j <= k; ++j) {
            if (j < static_cast<int>(leech.G_coeffs.size())) {
                acc += leech.G_coeffs[static_cast<std::size_t>(j)] *
                       Fk[static_cast<std::size_t>(k - j)];
            }
        }
        if (k < static_cast<int>(leech.K_coeffs.size())) {
            acc -= leech.K_coeffs[static_cast<std::size_t>(k)];
        }
        worst = std::max(worst, operator_norm(acc));
    }
    return worst;
}

ProblemData commutant_lifting_instance(const CommutantLiftingInstance& cl, double tol) {
    if (cl.Z.rows() != cl.Z.cols() || cl.B.rows() != cl.Z.rows() ||
        cl.Btilde.rows() != cl.Z.rows()) {
        throw DimensionMismatch("commutant_lifting_instance: Z, B, Btilde row counts differ");
    }
    const Eigen::Index n = cl.Z.rows();
    ComplexMatrix S = cl.Z * cl.Z.adjoint() + cl.B * cl.B.adjoint();
    double defect = operator_norm(S - ComplexMatrix::Identity(n, n));
    if (defect > tol * std::max(1.0, operator_norm(S))) {
        std::ostringstream msg;
        msg << "commutant_lifting_instance: ||Z Z* + B B* - I|| = " << defect
            << " exceeds tolerance " << tol;
        throw NotCoisometricPair(msg.str());
    }
    return ProblemData(cl.Z, cl.B, cl.Btilde);
}

double commutant_lifting_q0_residual(const ProblemData& prob) {
    PickData pick = gramians(prob);
    ComplementaryPair pair = complementary_pair(prob, pick);
    CoefficientSystem coeffs = coefficient_system(prob, pick, pair);
    const Eigen::Index e = pair.e;
    ComplexMatrix Cstar = pair.C.adjoint();
    ComplexMatrix inner = ComplexMatrix::Identity(e, e) +
                          pair.C * (pick.Lambda.ldlt().solve(Cstar) - Cstar);
    ComplexMatrix Q0_identity_gramian =
        hermitian_inverse_sqrt(0.5 * (inner + inner.adjoint()));
    return operator_norm(coeffs.Q0 - Q0_identity_gramian);
}

ProblemData toeplitz_corona_instance(const std::vector<ComplexMatrix>& G_coeffs, int N) {
    Eigen::Index v = 0, p = 0;
    check_coefficients(G_coeffs, "toeplitz_corona_instance G", v, p);
    LeechInstance leech;
    leech.G_coeffs = G_coeffs;
    leech.K_coeffs = {ComplexMatrix::Identity(v, v)};
    leech.N = N;
    return leech_truncate(leech);
}

}  // namespace npick
