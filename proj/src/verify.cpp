#include "npick/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "npick/complementary.hpp"
#include "npick/errors.hpp"
#include "npick/kernel.hpp"

namespace npick {

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix hermitize(const ComplexMatrix& M) {
    return 0.5 * (M + M.adjoint());
}

// log det of a Hermitian positive definite matrix via LU pivots. The phases
// of the pivots multiply out to the sign of the determinant, which must be
// positive here.
double logdet_positive(const ComplexMatrix& M, const char* what) {
    if (M.rows() == 0) return 0.0;
    Eigen::PartialPivLU<ComplexMatrix> lu(M);
    const ComplexMatrix& U = lu.matrixLU();
    double s = 0.0;
    Complex phase = Complex(static_cast<double>(lu.permutationP().determinant()), 0.0);
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        Complex d = U(i, i);
        double a = std::abs(d);
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw QuadratureDegenerate(std::string(what) + ": singular pivot in log-determinant");
        }
        s += std::log(a);
        phase *= d / a;
    }
    if (phase.real() <= 0.5) {
        throw QuadratureDegenerate(std::string(what) + ": determinant is not positive");
    }
    return s + std::log(phase.real());
}

// N-block lower triangular Toeplitz section of the Taylor series of F.
ComplexMatrix toeplitz_section(const std::vector<ComplexMatrix>& taylor, int N,
                               Eigen::Index y, Eigen::Index u) {
    ComplexMatrix T = ComplexMatrix::Zero(N * y, N * u);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j <= i; ++j) {
            T.block(i * y, j * u, y, u) = taylor[static_cast<std::size_t>(i - j)];
        }
    }
    return T;
}

ComplexMatrix entropy_from_section(const ComplexMatrix& T, Eigen::Index u) {
    const Eigen::Index cols = T.cols();
    ComplexMatrix E = ComplexMatrix::Zero(cols, u);
    E.topRows(u) = ComplexMatrix::Identity(u, u);
    const double norm = operator_norm(T);
    if (norm <= 1.0 - 1e-6) {
        ComplexMatrix G = hermitize(ComplexMatrix::Identity(cols, cols) - T.adjoint() * T);
        ComplexMatrix Ginv_E = G.ldlt().solve(E);
        ComplexMatrix core = hermitize(E.adjoint() * Ginv_E);
        return hermitize(core.partialPivLu().solve(ComplexMatrix::Identity(u, u)));
    }
    // Near or past the contraction boundary the direct inverse is useless, so
    // fall back to the normal equations of min ||h||^2 + ||T h - T E a||^2
    // style least squares with a tiny ridge for conditioning.
    const Eigen::Index rows = T.rows();
    ComplexMatrix TE = T * E;
    ComplexMatrix G = hermitize(TE * TE.adjoint() +
                                ComplexMatrix::Identity(rows, rows) - T * T.adjoint());
    double ridge = 1e-14 * std::max(1.0, G.trace().real());
    G += ridge * ComplexMatrix::Identity(rows, rows);
    ComplexMatrix H = G.ldlt().solve(TE);
    return hermitize(ComplexMatrix::Identity(u, u) - TE.adjoint() * H);
}

}  // namespace

std::vector<Complex> circle_grid(int count) {
    if (count < 1) throw DimensionMismatch("circle_grid: count must be positive");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double t = 2.0 * kPi * j / count;
        pts.emplace_back(std::cos(t), std::sin(t));
    }
    return pts;
}

std::vector<Complex> disc_grid(int per_radius) {
    if (per_radius < 1) throw DimensionMismatch("disc_grid: per_radius must be positive");
    const double radii[] = {0.3, 0.7, 0.95};
    std::vector<Complex> pts;
    pts.reserve(3 * static_cast<std::size_t>(per_radius));
    int shift = 0;
    for (double r : radii) {
        for (int j = 0; j < per_radius; ++j) {
            double t = 2.0 * kPi * (j + 0.25 * shift) / per_radius;
            pts.emplace_back(r * std::cos(t), r * std::sin(t));
        }
        ++shift;
    }
    return pts;
}

double interpolation_residual(const ProblemData& prob, const RationalSystem& F) {
    if (F.outputs() != prob.p() || F.inputs() != prob.q()) {
        throw DimensionMismatch("interpolation_residual: F must map C^q to C^p");
    }
    ComplexMatrix acc = prob.B * F.delta;
    if (F.states() > 0) {
        ComplexMatrix Omega = stein_solve(prob.Z, F.alpha, prob.B * F.gamma);
        acc += prob.Z * Omega * F.beta;
    }
    return operator_norm(acc - prob.Btilde);
}

double schur_margin(const RationalSystem& F, const std::vector<Complex>& grid) {
    double worst = -1.0;
    for (Complex l : grid) {
        worst = std::max(worst, operator_norm(F.eval(l)) - 1.0);
    }
    return worst;
}

double spectral_factorization_residual(const ProblemData& prob, const PickData& pick,
                                       const CoefficientSystem& coeffs,
                                       int circle_points) {
    RationalSystem F0 = central_solution(prob, pick);
    RationalSystem V = upsilon22_inverse(coeffs, prob, pick);
    const Eigen::Index q = prob.q();
    double worst = 0.0;
    for (Complex l : circle_grid(circle_points)) {
        ComplexMatrix Fv = F0.eval(l);
        ComplexMatrix Vv = V.eval(l);
        ComplexMatrix lhs = ComplexMatrix::Identity(q, q) - Fv.adjoint() * Fv;
        ComplexMatrix rhs = Vv.adjoint() * Vv;
        worst = std::max(worst, operator_norm(lhs - rhs));
    }
    return worst;
}

ComplexMatrix entropy_central(const PickData& pick, const ProblemData& prob) {
    const Eigen::Index q = prob.q();
    ComplexMatrix core = ComplexMatrix::Identity(q, q) +
                         prob.Btilde.adjoint() * pick.Lambda.ldlt().solve(prob.Btilde);
    return hermitize(hermitize(core).partialPivLu().solve(ComplexMatrix::Identity(q, q)));
}

ComplexMatrix entropy_of_solution(const RationalSystem& F, int truncation, double tol) {
    const Eigen::Index y = F.outputs();
    const Eigen::Index u = F.inputs();
    constexpr int cap = 1024;
    int N = std::max(truncation, 1);
    std::vector<ComplexMatrix> taylor = F.taylor(N);
    ComplexMatrix prev = entropy_from_section(toeplitz_section(taylor, N, y, u), u);
    while (N < cap) {
        N = std::min(2 * N, cap);
        taylor = F.taylor(N);
        ComplexMatrix next = entropy_from_section(toeplitz_section(taylor, N, y, u), u);
        if (operator_norm(next - prev) < tol) return next;
        prev = next;
    }
    throw NoConvergence("entropy_of_solution: Toeplitz sections did not stabilize");
}

std::pair<double, double> szego_check(const ProblemData& prob, const PickData& pick,
                                      const RationalSystem& F_central, int quad_points) {
    if (quad_points < 1) throw DimensionMismatch("szego_check: quad_points must be positive");
    const Eigen::Index q = prob.q();
    double lhs = std::exp(logdet_positive(entropy_central(pick, prob), "szego lhs"));
    double acc = 0.0;
    for (Complex l : circle_grid(quad_points)) {
        ComplexMatrix Fv = F_central.eval(l);
        ComplexMatrix G = hermitize(ComplexMatrix::Identity(q, q) - Fv.adjoint() * Fv);
        acc += logdet_positive(G, "szego quadrature");
    }
    return {lhs, std::exp(acc / quad_points)};
}

double j_identity_residual(const CoefficientSystem& coeffs, const ProblemData& prob,
                           const PickData& pick, const ComplementaryPair& pair,
                           const std::vector<Complex>& lambdas) {
    const Eigen::Index n = prob.n();
    const Eigen::Index p = prob.p();
    const Eigen::Index q = prob.q();
    const Eigen::Index e = coeffs.e;

    ComplexMatrix J1 = ComplexMatrix::Identity(p + q, p + q);
    J1.bottomRightCorner(q, q) *= -1.0;
    ComplexMatrix J2 = ComplexMatrix::Identity(e + q, e + q);
    J2.bottomRightCorner(q, q) *= -1.0;

    ComplexMatrix QR = ComplexMatrix::Zero(e + q, e + q);
    QR.topLeftCorner(e, e) = coeffs.Q0;
    QR.bottomRightCorner(q, q) = coeffs.R0;
    ComplexMatrix BhatQR = coeffs.Bhat * QR;

    double worst = 0.0;
    for (Complex l : lambdas) {
        if (std::abs(l) > 1.0 + 1e-12) {
            throw DimensionMismatch("j_identity_residual: points must lie in the closed disc");
        }
        UpsilonBlocks blocks = upsilon_eval(coeffs, prob, pick, pair, l);
        ComplexMatrix U = blocks.full();
        ComplexMatrix res = ComplexMatrix::Identity(n, n) - l * prob.Z.adjoint();
        ComplexMatrix M = res.fullPivLu().solve(BhatQR);
        double defect = 1.0 - std::norm(l);
        ComplexMatrix rhs = J2 - defect * (M.adjoint() * pick.Lambda * M);
        worst = std::max(worst, operator_norm(U.adjoint() * J1 * U - rhs));
    }
    return worst;
}

bool VerificationReport::passes(double tol) const {
    return interpolation_residual < tol && schur_margin <= tol &&
           j_identity_residual < tol && spectral_factorization_residual < tol;
}

VerificationReport verify_instance(const ProblemData& prob, const SchurParameter* param,
                                   const VerifyOptions& opts) {
    PickData pick = gramians(prob);
    if (pick.classification != PickClass::StrictlyPositive) {
        std::ostringstream msg;
        msg << "verify_instance: Pick matrix is " << to_string(pick.classification)
            << " (min eigenvalue " << pick.lambda_min_eig
            << "), the solution formulas require a strictly positive one";
        throw LambdaNotStrictlyPositive(msg.str());
    }
    ComplementaryPair pair = complementary_pair(prob, pick);
    CoefficientSystem coeffs = coefficient_system(prob, pick, pair);

    RationalSystem F = param == nullptr ? central_solution(prob, pick)
                                        : lft_solution(coeffs, prob, pick, pair, *param);

    VerificationReport report;
    report.interpolation_residual = interpolation_residual(prob, F);

    std::vector<Complex> grid = disc_grid(opts.interior_per_radius);
    std::vector<Complex> circle = circle_grid(opts.circle_points);
    grid.insert(grid.end(), circle.begin(), circle.end());
    report.schur_margin = schur_margin(F, grid);
    report.j_identity_residual = j_identity_residual(coeffs, prob, pick, pair, grid);
    report.spectral_factorization_residual =
        spectral_factorization_residual(prob, pick, coeffs, opts.circle_points);
    report.entropy_matrix = entropy_of_solution(F, opts.entropy_start, opts.entropy_tol);

    RationalSystem F0 = central_solution(prob, pick);
    auto [lhs, rhs] = szego_check(prob, pick, F0, opts.szego_points);
    report.szego_lhs = lhs;
    report.szego_rhs = rhs;

    std::ostringstream note;
    note << "pick min eigenvalue " << pick.lambda_min_eig << ", pair residuals "
         << pair.semiunit1_residual << " / " << pair.semiunit2_residual;
    report.notes.push_back(note.str());
    if (!coeffs.note.empty()) report.notes.push_back(coeffs.note);

    return report;
}

}  // namespace npick
