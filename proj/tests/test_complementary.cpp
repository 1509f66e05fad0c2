#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "npick/complementary.hpp"
#include "npick/errors.hpp"
#include "npick/sampling.hpp"

using namespace npick;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix scalar(double x) {
    ComplexMatrix M(1, 1);
    M(0, 0) = x;
    return M;
}

}  // namespace

TEST_CASE("scalar pair collapses to |D| = 0, |C| = 1") {
    ProblemData prob(scalar(0.0), scalar(1.0), scalar(0.5));
    PickData pick = gramians(prob);
    ComplementaryPair pair = complementary_pair(prob, pick);
    REQUIRE(pair.e == 1);
    CHECK(std::abs(pair.D(0, 0)) < 1e-13);
    CHECK(std::abs(pair.C(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.semiunit1_residual < 1e-13);
    CHECK(pair.semiunit2_residual < 1e-13);
}

TEST_CASE("both block identities hold on random instances") {
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        ProblemData prob = sample_instance(rng);
        PickData pick = gramians(prob);
        ComplementaryPair pair = complementary_pair(prob, pick);
        CHECK(pair.e == prob.p());
        PairReport rep = verify_pair(pair, prob, pick);
        CHECK(rep.semiunit1 < 1e-10);
        CHECK(rep.semiunit2 < 1e-10);
        CHECK(rep.dd_cpc < 1e-10);
        CHECK(rep.bd_zpc < 1e-10);
        CHECK(rep.dd_bpb < 1e-10);
        CHECK(rep.dc_bpz < 1e-10);
        CHECK(rep.cc_zpz < 1e-10);
    }
}

TEST_CASE("pair survives any left unitary") {
    Rng rng(103);
    ProblemData prob = sample_instance(rng);
    PickData pick = gramians(prob);
    ComplementaryPair pair = complementary_pair(prob, pick);

    Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, pair.e, pair.e));
    ComplexMatrix U = qr.householderQ();
    ComplementaryPair rotated;
    rotated.C = U * pair.C;
    rotated.D = U * pair.D;
    rotated.e = pair.e;
    CHECK(verify_pair(rotated, prob, pick).max_residual() < 1e-10);
}

TEST_CASE("theta takes isometric values on the circle and contractive inside") {
    Rng rng(107);
    ProblemData prob = sample_instance(rng);
    PickData pick = gramians(prob);
    ComplementaryPair pair = complementary_pair(prob, pick);
    RationalSystem theta = inner_theta(pair, prob);
    REQUIRE(theta.outputs() == prob.p());
    REQUIRE(theta.inputs() == pair.e);

    for (int j = 0; j < 64; ++j) {
        double t = 2.0 * kPi * j / 64;
        ComplexMatrix Tv = theta.eval(Complex(std::cos(t), std::sin(t)));
        CHECK(operator_norm(ComplexMatrix(Tv.adjoint() * Tv) -
                            ComplexMatrix::Identity(pair.e, pair.e)) < 1e-9);
    }
    CHECK(operator_norm(theta.eval(Complex(0.5, 0.2))) <= 1.0 + 1e-10);
}

TEST_CASE("a singular state Gramian is refused") {
    ComplexMatrix Z = 0.5 * ComplexMatrix::Identity(2, 2);
    ComplexMatrix B(2, 1);
    B << 1.0, 0.0;
    ProblemData prob(Z, B, 0.1 * B);
    PickData pick = gramians(prob);
    CHECK_FALSE(pick.P_strictly_positive);
    CHECK_THROWS_AS(complementary_pair(prob, pick), PNotStrictlyPositive);
}

TEST_CASE("an injected perturbation shows up at its own magnitude") {
    ProblemData prob(scalar(0.0), scalar(1.0), scalar(0.5));
    PickData pick = gramians(prob);
    ComplementaryPair pair = complementary_pair(prob, pick);
    pair.C(0, 0) += 1e-6;
    double flagged = verify_pair(pair, prob, pick).max_residual();
    CHECK(flagged > 1e-7);
    CHECK(flagged < 1e-5);
}
