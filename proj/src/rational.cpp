#include "npick/rational.hpp"

namespace npick {

RationalSystem RationalSystem::from_blocks(ComplexMatrix alpha, ComplexMatrix beta,
                                           ComplexMatrix gamma, ComplexMatrix delta) {
    RationalSystem sys;
    sys.alpha = std::move(alpha);
    sys.beta = std::move(beta);
    sys.gamma = std::move(gamma);
    sys.delta = std::move(delta);
    const Eigen::Index s = sys.alpha.rows();
    if (sys.alpha.cols() != s || sys.beta.rows() != s || sys.gamma.cols() != s ||
        sys.delta.rows() != sys.gamma.rows() || sys.delta.cols() != sys.beta.cols())
        throw DimensionMismatch("realization blocks have incompatible shapes");
    sys.spectral_radius_alpha = spectral_radius(sys.alpha);
    sys.contractive_system_matrix = operator_norm(sys.system_matrix()) <= 1.0 + 1e-12;
    return sys;
}

RationalSystem RationalSystem::constant(const ComplexMatrix& value) {
    return from_blocks(ComplexMatrix(0, 0), ComplexMatrix(0, value.cols()),
                       ComplexMatrix(value.rows(), 0), value);
}

ComplexMatrix RationalSystem::system_matrix() const {
    ComplexMatrix M(outputs() + states(), inputs() + states());
    M << delta, gamma, beta, alpha;
    return M;
}

ComplexMatrix RationalSystem::eval(Complex lambda) const {
    if (states() == 0) return delta;
    ComplexMatrix R = ComplexMatrix::Identity(states(), states()) - lambda * alpha;
    Eigen::FullPivLU<ComplexMatrix> lu(R);
    if (!lu.isInvertible())
        throw ResolventSingular("I - lambda*alpha is singular at the requested point");
    return delta + lambda * gamma * lu.solve(beta);
}

std::vector<ComplexMatrix> RationalSystem::taylor(int count) const {
    std::vector<ComplexMatrix> coeffs;
    coeffs.reserve(static_cast<std::size_t>(std::max(count, 0)));
    if (count <= 0) return coeffs;
    coeffs.push_back(delta);
    ComplexMatrix term = beta;
    for (int k = 1; k < count; ++k) {
        coeffs.emplace_back(gamma * term);
        term = (alpha * term).eval();
    }
    return coeffs;
}

}  // namespace npick
