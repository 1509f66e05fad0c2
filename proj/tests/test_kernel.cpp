#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "npick/errors.hpp"
#include "npick/kernel.hpp"
#include "npick/sampling.hpp"

using namespace npick;

TEST_CASE("operator norm matches the Gram eigenvalue") {
    Rng rng(11);
    ComplexMatrix M = random_matrix(rng, 3, 2);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(M.adjoint() * M));
    const double expected = std::sqrt(es.eigenvalues().maxCoeff());
    CHECK(operator_norm(M) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(operator_norm(M) == doctest::Approx(operator_norm(M.adjoint())).epsilon(1e-12));
}

TEST_CASE("operator norm of a diagonal matrix is the largest magnitude") {
    ComplexMatrix M = ComplexMatrix::Zero(2, 2);
    M(0, 0) = 3.0;
    M(1, 1) = -4.0;
    CHECK(operator_norm(M) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(operator_norm(ComplexMatrix(0, 0)) == 0.0);
}

TEST_CASE("spectral radius") {
    ComplexMatrix N = ComplexMatrix::Zero(2, 2);
    N(0, 1) = 1.0;
    CHECK(spectral_radius(N) == doctest::Approx(0.0).epsilon(1e-10));

    ComplexMatrix T = ComplexMatrix::Zero(2, 2);
    T(0, 0) = 0.5;
    T(0, 1) = 1.0;
    T(1, 1) = 0.25;
    CHECK(spectral_radius(T) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(spectral_radius(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("min hermitian eigenvalue") {
    ComplexMatrix M = ComplexMatrix::Zero(2, 2);
    M(0, 0) = 5.0;
    M(1, 1) = -2.0;
    CHECK(min_hermitian_eigenvalue(M) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK_THROWS_AS(min_hermitian_eigenvalue(ComplexMatrix::Ones(2, 2) * Complex(0, 1)),
                    NotHermitian);
}

TEST_CASE("hermitian square root") {
    ComplexMatrix M(2, 2);
    M << 2.0, 1.0, 1.0, 2.0;
    ComplexMatrix S = hermitian_sqrt(M);
    CHECK(operator_norm(S * S - M) < 1e-12);
    CHECK(operator_norm(S - S.adjoint()) < 1e-12);

    ComplexMatrix neg = -ComplexMatrix::Identity(1, 1);
    CHECK_THROWS_AS(hermitian_sqrt(neg), NotPSD);
}

TEST_CASE("hermitian inverse square root") {
    Rng rng(5);
    ComplexMatrix A = random_matrix(rng, 3, 3);
    ComplexMatrix M = A * A.adjoint() + ComplexMatrix::Identity(3, 3);
    ComplexMatrix S = hermitian_inverse_sqrt(M);
    CHECK(operator_norm(S * M * S - ComplexMatrix::Identity(3, 3)) < 1e-12);

    ComplexMatrix sing = ComplexMatrix::Zero(2, 2);
    sing(0, 0) = 1.0;
    CHECK_THROWS_AS(hermitian_inverse_sqrt(sing), NotPSD);
}

TEST_CASE("null space isometry spans the kernel") {
    ComplexMatrix M(2, 3);
    M << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
    ComplexMatrix phi = null_space_isometry(M);
    REQUIRE(phi.rows() == 3);
    REQUIRE(phi.cols() == 1);
    CHECK(operator_norm(M * phi) < 1e-14);
    CHECK(operator_norm(phi.adjoint() * phi - ComplexMatrix::Identity(1, 1)) < 1e-14);
    CHECK(std::abs(phi(2, 0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("null space isometry of a low-rank product") {
    Rng rng(17);
    ComplexMatrix M = random_matrix(rng, 4, 2) * random_matrix(rng, 2, 5);
    CHECK(numerical_rank(M) == 2);
    ComplexMatrix phi = null_space_isometry(M);
    REQUIRE(phi.cols() == 3);
    CHECK(operator_norm(M * phi) < 1e-12);
    CHECK(operator_norm(phi.adjoint() * phi - ComplexMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("null space of the zero matrix is everything") {
    ComplexMatrix phi = null_space_isometry(ComplexMatrix::Zero(2, 3));
    CHECK(phi.rows() == 3);
    CHECK(phi.cols() == 3);
    CHECK(operator_norm(phi.adjoint() * phi - ComplexMatrix::Identity(3, 3)) < 1e-14);
}
