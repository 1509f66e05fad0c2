#include "npick/sampling.hpp"

#include <cmath>

#include "npick/errors.hpp"
#include "npick/kernel.hpp"

namespace npick {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double Rng::uniform() {
    return std::ldexp(static_cast<double>(engine_() >> 11), -53);
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
}

Complex Rng::complex_gaussian() {
    const double s = std::sqrt(0.5);
    double re = s * gaussian();
    double im = s * gaussian();
    return Complex(re, im);
}

ComplexMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            M(i, j) = rng.complex_gaussian();
        }
    }
    return M;
}

ProblemData sample_instance(Rng& rng, const SampleOptions& opts) {
    // Rejection sampling over the whole draw. A thin B (p < n) together with
    // a small spectral radius makes the state Gramian nearly rank deficient
    // (the columns of [B, ZB, Z^2 B, ...] decay before they span), so such
    // draws are discarded rather than patched, and the radius target stays
    // in the upper half of the allowed range.
    for (int attempt = 0; attempt < 200; ++attempt) {
        const int n = rng.uniform_int(1, opts.max_n);
        const int p = rng.uniform_int(1, opts.max_pq);
        const int q = rng.uniform_int(1, opts.max_pq);

        ComplexMatrix Z = random_matrix(rng, n, n);
        const double rho = spectral_radius(Z);
        const double target = opts.rho_cap * rng.uniform(0.5, 1.0);
        if (rho > 1e-12) Z *= target / rho;

        ComplexMatrix B = random_matrix(rng, n, p);
        ComplexMatrix P = stein_solve(Z, Z.adjoint(), B * B.adjoint());
        const double lo = min_hermitian_eigenvalue(P);
        if (lo <= 1e-4 * operator_norm(P)) continue;

        // Scale the smallest Gramian eigenvalue onto an absolute floor above
        // lambda_floor so the Btilde shrink loop below must terminate.
        const double pfloor = 2.0 * opts.lambda_floor;
        if (lo < pfloor) B *= std::sqrt(pfloor / lo);

        ComplexMatrix Btilde = random_matrix(rng, n, q) * rng.uniform(0.3, 1.0);
        for (int shrink = 0; shrink < 200; ++shrink) {
            ProblemData candidate(Z, B, Btilde);
            PickData pick = gramians(candidate);
            if (pick.classification == PickClass::StrictlyPositive &&
                pick.lambda_min_eig >= opts.lambda_floor) {
                return candidate;
            }
            Btilde *= 0.7;
        }
    }
    throw NoConvergence("sample_instance: no well conditioned draw in 200 attempts");
}

SchurParameter sample_constant_parameter(Rng& rng, Eigen::Index e, Eigen::Index q,
                                         double max_norm) {
    ComplexMatrix X = random_matrix(rng, e, q);
    const double target = max_norm * rng.uniform(0.05, 1.0);
    const double norm = operator_norm(X);
    if (norm > 1e-12) X *= target / norm;
    return SchurParameter::constant(X);
}

SchurParameter sample_dynamic_parameter(Rng& rng, Eigen::Index e, Eigen::Index q,
                                        double max_norm) {
    const int s = rng.uniform_int(1, 3);
    ComplexMatrix M = random_matrix(rng, s + e, s + q);
    const double norm = operator_norm(M);
    const double target = max_norm * rng.uniform(0.3, 1.0);
    if (norm > 1e-12) M *= target / norm;
    RationalSystem sys = RationalSystem::from_blocks(
        M.topLeftCorner(s, s), M.topRightCorner(s, q),
        M.bottomLeftCorner(e, s), M.bottomRightCorner(e, q));
    return SchurParameter::dynamic(sys);
}

}  // namespace npick
