#include "npick/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace npick {

namespace {

std::string fmt_residual(const char* what, double value, double bound) {
    std::ostringstream os;
    os << what << ": " << value << " exceeds " << bound;
    return os.str();
}

// Eigenvalues of the symmetrized matrix together with its unitary. Shared by
// the Hermitian entry points so the acceptance window is applied uniformly.
Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_eigs(const ComplexMatrix& M,
                                                            double herm_tol) {
    if (M.rows() != M.cols())
        throw DimensionMismatch("hermitian operation on a non-square matrix");
    const double scale = std::max(1.0, operator_norm(M));
    const double asym = operator_norm(ComplexMatrix(M - M.adjoint()));
    if (asym > herm_tol * scale)
        throw NotHermitian(fmt_residual("symmetry residual", asym, herm_tol * scale));
    ComplexMatrix H = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
    if (es.info() != Eigen::Success)
        throw EigenFailure("Hermitian eigendecomposition did not converge");
    return es;
}

}  // namespace

double operator_norm(const ComplexMatrix& M) {
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(M);
    return svd.singularValues()(0);
}

double spectral_radius(const ComplexMatrix& M) {
    if (M.rows() != M.cols())
        throw DimensionMismatch("spectral_radius needs a square matrix");
    if (M.rows() == 0) return 0.0;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw EigenFailure("eigenvalue iteration did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double min_hermitian_eigenvalue(const ComplexMatrix& M) {
    if (M.rows() == 0) return std::numeric_limits<double>::infinity();
    return hermitian_eigs(M, 1e-8).eigenvalues().minCoeff();
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& M, double tol) {
    if (M.rows() == 0) return M;
    auto es = hermitian_eigs(M, tol);
    const double scale = operator_norm(M);
    Eigen::VectorXd d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) < -tol * scale)
            throw NotPSD(fmt_residual("negative eigenvalue", d(i), -tol * scale));
        d(i) = std::sqrt(std::max(d(i), 0.0));
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& M, double tol) {
    if (M.rows() == 0) return M;
    auto es = hermitian_eigs(M, 1e-8);
    const double scale = operator_norm(M);
    Eigen::VectorXd d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) <= tol * scale)
            throw NotPSD(fmt_residual("eigenvalue too small for inverse sqrt", d(i), tol * scale));
        d(i) = 1.0 / std::sqrt(d(i));
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

Eigen::Index rank_from_svd(const Eigen::JacobiSVD<ComplexMatrix>& svd,
                           Eigen::Index rows, Eigen::Index cols, double rank_tol) {
    if (svd.singularValues().size() == 0) return 0;
    const double smax = svd.singularValues()(0);
    if (rank_tol < 0.0)
        rank_tol = static_cast<double>(std::max(rows, cols)) *
                   std::numeric_limits<double>::epsilon() * smax;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > rank_tol) ++r;
    return r;
}

}  // namespace

ComplexMatrix null_space_isometry(const ComplexMatrix& M, double rank_tol) {
    const Eigen::Index m = M.cols();
    if (M.rows() == 0 || M.size() == 0 || M.norm() == 0.0)
        return ComplexMatrix::Identity(m, m);
    Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeFullV);
    const Eigen::Index r = rank_from_svd(svd, M.rows(), m, rank_tol);
    ComplexMatrix basis = svd.matrixV().rightCols(m - r);
    // Phase-normalize every column (largest entry made real positive) so the
    // returned basis is a deterministic representative of the subspace.
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        Eigen::Index imax = 0;
        basis.col(j).cwiseAbs().maxCoeff(&imax);
        const Complex v = basis(imax, j);
        if (std::abs(v) > 0.0) basis.col(j) *= std::conj(v) / std::abs(v);
    }
    return basis;
}

Eigen::Index numerical_rank(const ComplexMatrix& M, double rank_tol) {
    if (M.size() == 0 || M.norm() == 0.0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(M);
    return rank_from_svd(svd, M.rows(), M.cols(), rank_tol);
}

}  // namespace npick
