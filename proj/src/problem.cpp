#include "npick/problem.hpp"

#include <cmath>
#include <sstream>

namespace npick {

namespace {

void require_finite(const ComplexMatrix& M, const char* name) {
    if (!M.allFinite()) {
        std::ostringstream os;
        os << name << " contains NaN or Inf entries";
        throw NumericError(os.str());
    }
}

// True when some power Z^(2^j) vanishes exactly; such Z admits the Stein sum
// as a finite sum regardless of alpha, and the spectral gate must be skipped
// (eigenvalues of larger nilpotent blocks are not computed as zeros).
bool is_nilpotent(const ComplexMatrix& Z) {
    if (Z.norm() == 0.0) return true;
    ComplexMatrix Zp = Z;
    Eigen::Index power = 1;
    while (power < Z.rows()) {
        Zp = (Zp * Zp).eval();
        power *= 2;
        if (Zp.norm() == 0.0) return true;
    }
    return false;
}

ComplexMatrix stein_nilpotent_sum(const ComplexMatrix& Z, const ComplexMatrix& alpha,
                                  const ComplexMatrix& Xi) {
    ComplexMatrix Omega = Xi;
    ComplexMatrix term = Xi;
    for (Eigen::Index k = 1; k <= Z.rows(); ++k) {
        term = (Z * term * alpha).eval();
        if (term.norm() == 0.0) break;
        Omega += term;
    }
    return Omega;
}

ComplexMatrix stein_dense_solve(const ComplexMatrix& Z, const ComplexMatrix& alpha,
                                const ComplexMatrix& Xi) {
    const Eigen::Index n = Z.rows();
    const Eigen::Index m = alpha.rows();
    // vec(Omega) - (alpha^T kron Z) vec(Omega) = vec(Xi), column-major vec.
    ComplexMatrix M = ComplexMatrix::Identity(n * m, n * m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            M.block(i * n, j * n, n, n) -= alpha(j, i) * Z;
    Eigen::Map<const Eigen::VectorXcd> rhs(Xi.data(), n * m);
    Eigen::VectorXcd x = M.partialPivLu().solve(rhs);
    return Eigen::Map<const ComplexMatrix>(x.data(), n, m);
}

}  // namespace

ProblemData::ProblemData(ComplexMatrix Z_, ComplexMatrix B_, ComplexMatrix Btilde_)
    : Z(std::move(Z_)), B(std::move(B_)), Btilde(std::move(Btilde_)) {
    if (Z.rows() != Z.cols()) throw DimensionMismatch("Z must be square");
    if (Z.rows() < 1) throw DimensionMismatch("state dimension must be at least 1");
    if (B.rows() != Z.rows() || Btilde.rows() != Z.rows())
        throw DimensionMismatch("B and Btilde must have as many rows as Z");
    if (B.cols() < 1 || Btilde.cols() < 1)
        throw DimensionMismatch("B and Btilde need at least one column");
    require_finite(Z, "Z");
    require_finite(B, "B");
    require_finite(Btilde, "Btilde");
    const double rho = spectral_radius(Z);
    if (!is_nilpotent(Z) && rho >= 1.0) {
        std::ostringstream os;
        os << "spectral radius of Z is " << rho << "; instances need rho(Z) < 1";
        throw NotStable(os.str());
    }
}

const char* to_string(PickClass c) {
    switch (c) {
        case PickClass::StrictlyPositive: return "StrictlyPositive";
        case PickClass::NonnegativeSingular: return "NonnegativeSingular";
        case PickClass::Indefinite: return "Indefinite";
    }
    return "?";
}

ComplexMatrix stein_solve(const ComplexMatrix& Z, const ComplexMatrix& alpha,
                          const ComplexMatrix& Xi, double tol) {
    if (Z.rows() != Z.cols() || alpha.rows() != alpha.cols())
        throw DimensionMismatch("stein_solve: Z and alpha must be square");
    if (Xi.rows() != Z.rows() || Xi.cols() != alpha.rows())
        throw DimensionMismatch("stein_solve: Xi has incompatible shape");
    if (Xi.size() == 0) return Xi;

    if (is_nilpotent(Z)) return stein_nilpotent_sum(Z, alpha, Xi);

    const double rZ = spectral_radius(Z);
    const double ra = alpha.size() == 0 ? 0.0 : spectral_radius(alpha);
    constexpr double margin = 1e-9;
    if (rZ * ra >= 1.0 - margin) {
        std::ostringstream os;
        os << "stein_solve: rho(Z)*rho(alpha) = " << rZ * ra << " is not below 1";
        throw NotConvergent(os.str());
    }
    if (rZ * ra > 0.95) return stein_dense_solve(Z, alpha, Xi);

    // Doubling accumulation; after k rounds Omega carries sum_{j < 2^k} Z^j Xi alpha^j
    // and the dropped tail is bounded by ||Zp||*||ap||*||Xi|| in Frobenius norm.
    const double target = tol * std::max(1.0, Xi.norm());
    ComplexMatrix Omega = Xi;
    ComplexMatrix Zp = Z;
    ComplexMatrix ap = alpha;
    for (int k = 0; k < 64; ++k) {
        if (Zp.norm() * ap.norm() * Xi.norm() <= target) return Omega;
        Omega = (Omega + Zp * Omega * ap).eval();
        Zp = (Zp * Zp).eval();
        ap = (ap * ap).eval();
    }
    if (Zp.norm() * ap.norm() * Xi.norm() <= target) return Omega;
    throw IterationLimit("stein_solve: doubling iteration stalled");
}

PickData gramians(const ProblemData& prob, double tol) {
    PickData out;
    ComplexMatrix P = stein_solve(prob.Z, prob.Z.adjoint(),
                                  ComplexMatrix(prob.B * prob.B.adjoint()), tol);
    ComplexMatrix Pt = stein_solve(prob.Z, prob.Z.adjoint(),
                                   ComplexMatrix(prob.Btilde * prob.Btilde.adjoint()), tol);
    out.P = 0.5 * (P + P.adjoint());
    out.Ptilde = 0.5 * (Pt + Pt.adjoint());
    out.Lambda = out.P - out.Ptilde;

    out.posdef_tol = 1e-10 * std::max(1.0, operator_norm(out.Lambda));
    out.lambda_min_eig = min_hermitian_eigenvalue(out.Lambda);
    if (out.lambda_min_eig >= out.posdef_tol)
        out.classification = PickClass::StrictlyPositive;
    else if (out.lambda_min_eig > -out.posdef_tol)
        out.classification = PickClass::NonnegativeSingular;
    else
        out.classification = PickClass::Indefinite;

    out.P_min_eig = min_hermitian_eigenvalue(out.P);
    out.P_strictly_positive = out.P_min_eig >= 1e-10 * std::max(1.0, operator_norm(out.P));
    return out;
}

namespace {

struct DecayData {
    double rho_hat;
    int m;
};

DecayData power_decay(const ComplexMatrix& Z) {
    const int cap = static_cast<int>(10 * Z.rows()) + 64;
    ComplexMatrix Zp = ComplexMatrix::Identity(Z.rows(), Z.cols());
    double c = 1.0;
    for (int m = 1; m <= cap; ++m) {
        Zp = (Zp * Z).eval();
        const double tm = operator_norm(Zp);
        if (tm < 1.0) {
            // sum_j ||Z^j|| <= m*c/(1-t_m), folded into a single rate so the
            // tail bound reads ||Z^K||*||X||/(1-rho_hat).
            const double one_minus = (1.0 - tm) / (static_cast<double>(m) * c);
            return DecayData{1.0 - one_minus, m};
        }
        c = std::max(c, tm);
    }
    throw NotConvergent("no power of Z is a strict contraction; rho(Z) too close to 1");
}

}  // namespace

ComplexMatrix truncated_controllability(const ProblemData& prob, Side which, int K,
                                        TailBound* tail) {
    if (K < 1) throw DimensionMismatch("truncation order must be at least 1");
    const ComplexMatrix& X = which == Side::B ? prob.B : prob.Btilde;
    const Eigen::Index n = prob.n();
    const Eigen::Index w = X.cols();
    ComplexMatrix W(n, K * w);
    ComplexMatrix col = X;
    for (int k = 0; k < K; ++k) {
        W.middleCols(k * w, w) = col;
        col = (prob.Z * col).eval();
    }
    if (tail) {
        const DecayData d = power_decay(prob.Z);
        ComplexMatrix ZK = ComplexMatrix::Identity(n, n);
        for (int k = 0; k < K; ++k) ZK = (ZK * prob.Z).eval();
        tail->rho_hat = d.rho_hat;
        tail->first_contractive_power = d.m;
        tail->bound = operator_norm(ZK) * operator_norm(X) / (1.0 - d.rho_hat);
    }
    return W;
}

int auto_truncation_order(const ProblemData& prob, double eps) {
    if (!(eps > 0.0)) throw NumericError("truncation target must be positive");
    const double xnorm = std::max(operator_norm(prob.B), operator_norm(prob.Btilde));
    const DecayData d = power_decay(prob.Z);
    constexpr int cap = 100000;
    ComplexMatrix ZK = prob.Z;
    for (int K = 1; K <= cap; ++K) {
        const double bound = operator_norm(ZK) * xnorm / (1.0 - d.rho_hat);
        if (bound < eps) return K;
        ZK = (ZK * prob.Z).eval();
    }
    throw OrderOverflow("truncation order exceeds 100000; data too close to the stability boundary");
}

}  // namespace npick
