#pragma once

#include <vector>

#include "npick/kernel.hpp"

namespace npick {

// State-space quadruple for a rational matrix function
//     G(lambda) = delta + lambda * gamma * (I - lambda * alpha)^{-1} * beta,
// defined for |lambda| * rho(alpha) < 1. Taylor coefficients are G_0 = delta
// and G_k = gamma * alpha^(k-1) * beta. A contractive system matrix
// [delta gamma; beta alpha] certifies that G is a Schur class function.
struct RationalSystem {
    ComplexMatrix alpha;
    ComplexMatrix beta;
    ComplexMatrix gamma;
    ComplexMatrix delta;
    bool contractive_system_matrix = false;
    double spectral_radius_alpha = 0.0;

    static RationalSystem from_blocks(ComplexMatrix alpha, ComplexMatrix beta,
                                      ComplexMatrix gamma, ComplexMatrix delta);
    static RationalSystem constant(const ComplexMatrix& value);

    Eigen::Index states() const { return alpha.rows(); }
    Eigen::Index outputs() const { return delta.rows(); }
    Eigen::Index inputs() const { return delta.cols(); }

    ComplexMatrix system_matrix() const;
    ComplexMatrix eval(Complex lambda) const;
    std::vector<ComplexMatrix> taylor(int count) const;
};

}  // namespace npick
