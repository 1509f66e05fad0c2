#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "npick/errors.hpp"
#include "npick/problem.hpp"
#include "npick/sampling.hpp"

using namespace npick;

namespace {

ComplexMatrix scalar(double x) {
    ComplexMatrix M(1, 1);
    M(0, 0) = x;
    return M;
}

double stein_residual(const ComplexMatrix& Omega, const ComplexMatrix& Z,
                      const ComplexMatrix& alpha, const ComplexMatrix& Xi) {
    return operator_norm(Omega - Z * Omega * alpha - Xi) /
           std::max(1.0, operator_norm(Xi));
}

}  // namespace

TEST_CASE("stein solution for scalar geometric data") {
    ComplexMatrix Omega = stein_solve(scalar(0.5), scalar(0.5), scalar(1.0));
    CHECK(std::abs(Omega(0, 0) - Complex(4.0 / 3.0, 0.0)) < 1e-13);
}

TEST_CASE("stein solution is the right-hand side when Z vanishes") {
    Rng rng(3);
    ComplexMatrix Xi = random_matrix(rng, 2, 3);
    ComplexMatrix Omega = stein_solve(ComplexMatrix::Zero(2, 2), random_matrix(rng, 3, 3), Xi);
    CHECK(operator_norm(Omega - Xi) < 1e-14);
}

TEST_CASE("stein solution for the nilpotent shift is an exact finite sum") {
    ComplexMatrix Z = ComplexMatrix::Zero(2, 2);
    Z(0, 1) = 1.0;
    ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);

    // Sum Z^k Xi (Z*)^k has exactly two terms here.
    ComplexMatrix Omega = stein_solve(Z, Z.adjoint(), I2);
    CHECK(operator_norm(Omega - (I2 + Z * Z.adjoint())) < 1e-15);

    // With alpha = Z the series collapses to Xi itself (Z Xi Z = Z^2 = 0).
    CHECK(operator_norm(stein_solve(Z, Z, I2) - I2) < 1e-15);
}

TEST_CASE("stein refuses a jointly unstable pencil") {
    CHECK_THROWS_AS(stein_solve(scalar(0.9), scalar(1.2), scalar(1.0)), NotConvergent);
}

TEST_CASE("stein residual stays at solver tolerance") {
    Rng rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        ProblemData prob = sample_instance(rng);
        ComplexMatrix Xi = prob.B * prob.B.adjoint();
        ComplexMatrix P = stein_solve(prob.Z, prob.Z.adjoint(), Xi);
        CHECK(stein_residual(P, prob.Z, prob.Z.adjoint(), Xi) < 1e-12);
    }
}

TEST_CASE("gramians of the scalar one-point problem") {
    ProblemData prob(scalar(0.0), scalar(1.0), scalar(0.5));
    PickData pick = gramians(prob);
    CHECK(std::abs(pick.P(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(pick.Ptilde(0, 0) - Complex(0.25, 0.0)) < 1e-14);
    CHECK(std::abs(pick.Lambda(0, 0) - Complex(0.75, 0.0)) < 1e-14);
    CHECK(pick.classification == PickClass::StrictlyPositive);
    CHECK(pick.lambda_min_eig == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(pick.P_strictly_positive);
}

TEST_CASE("gramian classifications at and past the boundary") {
    ProblemData boundary(scalar(0.0), scalar(1.0), scalar(1.0));
    CHECK(gramians(boundary).classification == PickClass::NonnegativeSingular);

    ProblemData indefinite(scalar(0.0), scalar(1.0), scalar(2.0));
    PickData pick = gramians(indefinite);
    CHECK(pick.classification == PickClass::Indefinite);
    CHECK(pick.lambda_min_eig == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("zero Btilde turns the Pick matrix into the Gramian itself") {
    Rng rng(31);
    ProblemData base = sample_instance(rng);
    ProblemData prob(base.Z, base.B, ComplexMatrix::Zero(base.n(), 1));
    PickData pick = gramians(prob);
    CHECK(operator_norm(pick.Lambda - pick.P) < 1e-14);
    CHECK(pick.classification == PickClass::StrictlyPositive);
}

TEST_CASE("pick matrix satisfies its own Stein identity") {
    Rng rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        ProblemData prob = sample_instance(rng);
        PickData pick = gramians(prob);
        ComplexMatrix gap = prob.B * prob.B.adjoint() - prob.Btilde * prob.Btilde.adjoint();
        CHECK(stein_residual(pick.Lambda, prob.Z, prob.Z.adjoint(), gap) < 1e-12);
        CHECK(operator_norm(pick.Lambda - (pick.P - pick.Ptilde)) == 0.0);

        // Lambda^-1 - P^-1 is PSD whenever Lambda is strictly positive.
        ComplexMatrix diff = pick.Lambda.inverse() - pick.P.inverse();
        CHECK(min_hermitian_eigenvalue(0.5 * (diff + diff.adjoint())) >
              -1e-10 * operator_norm(pick.Lambda.inverse()));
    }
}

TEST_CASE("construction rejects an unstable state operator") {
    CHECK_THROWS_AS(ProblemData(scalar(1.0), scalar(1.0), scalar(0.5)), NotStable);
    CHECK_THROWS_AS(ProblemData(scalar(1.5), scalar(1.0), scalar(0.5)), NotStable);
}

TEST_CASE("truncated controllability sections") {
    ProblemData zero(scalar(0.0), scalar(1.0), scalar(0.5));
    ComplexMatrix W = truncated_controllability(zero, Side::B, 3);
    REQUIRE(W.cols() == 3);
    CHECK(std::abs(W(0, 0) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(W(0, 1)) < 1e-15);
    CHECK(std::abs(W(0, 2)) < 1e-15);

    ProblemData half(scalar(0.5), scalar(1.0), scalar(0.5));
    ComplexMatrix Wh = truncated_controllability(half, Side::B, 3);
    CHECK(std::abs(Wh(0, 0) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(Wh(0, 1) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(Wh(0, 2) - Complex(0.25, 0.0)) < 1e-15);
}

TEST_CASE("gramian finite sections converge within the tail bound") {
    Rng rng(41);
    ComplexMatrix Zr = random_matrix(rng, 4, 4);
    Zr *= 0.7 / operator_norm(Zr);
    ComplexMatrix Br = random_matrix(rng, 4, 2);
    Br /= operator_norm(Br);
    ProblemData prob(Zr, Br, 0.1 * random_matrix(rng, 4, 1));
    PickData pick = gramians(prob);
    for (int K = 1; K <= 8; ++K) {
        TailBound tail;
        ComplexMatrix W = truncated_controllability(prob, Side::B, K, &tail);
        CHECK(operator_norm(W * W.adjoint() - pick.P) <= tail.bound + 1e-14);
        CHECK(tail.rho_hat < 1.0);
    }
    int K = auto_truncation_order(prob, 1e-10);
    ComplexMatrix W = truncated_controllability(prob, Side::B, K);
    CHECK(operator_norm(W * W.adjoint() - pick.P) < 1e-10);
}

TEST_CASE("automatic truncation order") {
    ProblemData zero(scalar(0.0), scalar(1.0), scalar(0.5));
    CHECK(auto_truncation_order(zero, 1e-10) == 1);

    // bound(K) = 2 * 0.5^K here, so the order is the first K with
    // 0.5^K below eps/2.
    ProblemData half(scalar(0.5), scalar(1.0), scalar(0.5));
    CHECK(auto_truncation_order(half, 1e-10) == 35);
    CHECK(auto_truncation_order(half, 1e-12) == 41);

    ProblemData slow(scalar(0.99), scalar(1.0), scalar(0.5));
    int K = auto_truncation_order(slow, 1e-12);
    CHECK(K > 1000);
    CHECK(K < 100000);

    ProblemData glacial(scalar(0.999999), scalar(1.0), scalar(0.5));
    CHECK_THROWS_AS(auto_truncation_order(glacial, 1e-12), OrderOverflow);
}
