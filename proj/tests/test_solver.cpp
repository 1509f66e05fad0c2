#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "npick/errors.hpp"
#include "npick/sampling.hpp"
#include "npick/solver.hpp"

using namespace npick;

namespace {

ComplexMatrix scalar(Complex x) {
    ComplexMatrix M(1, 1);
    M(0, 0) = x;
    return M;
}

struct Pipeline {
    ProblemData prob;
    PickData pick;
    ComplementaryPair pair;
    CoefficientSystem coeffs;

    explicit Pipeline(const ProblemData& data)
        : prob(data),
          pick(gramians(prob)),
          pair(complementary_pair(prob, pick)),
          coeffs(coefficient_system(prob, pick, pair)) {}
};

Pipeline scalar_pipeline(double b) {
    return Pipeline(ProblemData(scalar(0.0), scalar(1.0), scalar(b)));
}

std::vector<Complex> disc_points(Rng& rng, int count, double radius = 0.95) {
    std::vector<Complex> pts;
    for (int j = 0; j < count; ++j) {
        double r = radius * std::sqrt(rng.uniform());
        double t = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return pts;
}

}  // namespace

TEST_CASE("scalar coefficient system") {
    Pipeline pl = scalar_pipeline(0.5);
    const double root = std::sqrt(0.75);
    CHECK(std::abs(pl.coeffs.Q0(0, 0) - Complex(root, 0)) < 1e-13);
    CHECK(std::abs(pl.coeffs.R0(0, 0) - Complex(root, 0)) < 1e-13);
    CHECK(std::abs(pl.coeffs.K(0, 0) - Complex(1.0, 0)) < 1e-13);
    CHECK(pl.coeffs.q0_alt_residual < 1e-12);

    Complex l(0.3, 0.2);
    UpsilonBlocks U = upsilon_eval(pl.coeffs, pl.prob, pl.pick, pl.pair, l);
    CHECK(std::abs(std::abs(U.U11(0, 0)) - std::abs(l) / root) < 1e-12);
    CHECK(std::abs(U.U12(0, 0) - Complex(0.5 / root, 0)) < 1e-12);
    CHECK(std::abs(std::abs(U.U21(0, 0)) - 0.5 * std::abs(l) / root) < 1e-12);
    CHECK(std::abs(U.U22(0, 0) - Complex(1.0 / root, 0)) < 1e-12);
}

TEST_CASE("the central solution of the scalar problem is the constant b") {
    Pipeline pl = scalar_pipeline(0.5);
    RationalSystem F = central_solution(pl.prob, pl.pick);
    Rng rng(7);
    for (Complex l : disc_points(rng, 10)) {
        CHECK(std::abs(F.eval(l)(0, 0) - Complex(0.5, 0)) < 1e-13);
    }
}

TEST_CASE("scalar parametrization reproduces the Moebius formula") {
    Pipeline pl = scalar_pipeline(0.5);
    Rng rng(13);
    for (Complex x : {Complex(0.3, 0.0), Complex(0.2, -0.5), Complex(-0.85, 0.1)}) {
        RationalSystem F =
            lft_solution(pl.coeffs, pl.prob, pl.pick, pl.pair, SchurParameter::constant(scalar(x)));
        for (Complex l : disc_points(rng, 20)) {
            Complex expected = (l * x + 0.5) / (1.0 + 0.5 * l * x);
            CHECK(std::abs(F.eval(l)(0, 0) - expected) < 1e-10);
        }
    }
}

TEST_CASE("quotient formula for the central solution") {
    Rng rng(211);
    Pipeline pl(sample_instance(rng));
    RationalSystem F0 = central_solution(pl.prob, pl.pick);
    for (Complex l : disc_points(rng, 20)) {
        UpsilonBlocks U = upsilon_eval(pl.coeffs, pl.prob, pl.pick, pl.pair, l);
        ComplexMatrix quotient = U.U12 * U.U22.inverse();
        CHECK(operator_norm(F0.eval(l) - quotient) < 1e-9);
    }
}

TEST_CASE("inverse of the lower right block") {
    Rng rng(223);
    Pipeline pl(sample_instance(rng));
    RationalSystem V = upsilon22_inverse(pl.coeffs, pl.prob, pl.pick);
    CHECK(V.spectral_radius_alpha < 1.0);
    const Eigen::Index q = pl.prob.q();
    for (Complex l : disc_points(rng, 20)) {
        UpsilonBlocks U = upsilon_eval(pl.coeffs, pl.prob, pl.pick, pl.pair, l);
        CHECK(operator_norm(U.U22 * V.eval(l) - ComplexMatrix::Identity(q, q)) < 1e-10);
        CHECK(operator_norm(V.eval(l)) <= 1.0 + 1e-9);
    }
}

TEST_CASE("zero parameter gives back the central solution") {
    Rng rng(227);
    Pipeline pl(sample_instance(rng));
    SchurParameter X0 =
        SchurParameter::constant(ComplexMatrix::Zero(pl.coeffs.e, pl.prob.q()));
    RationalSystem F = lft_solution(pl.coeffs, pl.prob, pl.pick, pl.pair, X0);
    RationalSystem F0 = central_solution(pl.prob, pl.pick);
    for (Complex l : disc_points(rng, 15)) {
        CHECK(operator_norm(F.eval(l) - F0.eval(l)) < 1e-9);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SchurParameter::constant(scalar(Complex(1.2, 0.0))),
                    ParameterNotContractive);
    Rng rng(229);
    Pipeline pl(sample_instance(rng));
    SchurParameter wrong =
        SchurParameter::constant(ComplexMatrix::Zero(pl.coeffs.e + 1, pl.prob.q()));
    CHECK_THROWS_AS(lft_solution(pl.coeffs, pl.prob, pl.pick, pl.pair, wrong),
                    DimensionMismatch);
}

TEST_CASE("solver refuses an indefinite Pick matrix") {
    ProblemData prob(scalar(0.0), scalar(1.0), scalar(2.0));
    PickData pick = gramians(prob);
    try {
        central_solution(prob, pick);
        FAIL("expected a refusal");
    } catch (const LambdaNotStrictlyPositive& err) {
        CHECK(std::string(err.what()).find("Indefinite") != std::string::npos);
    }
}

TEST_CASE("the feedback coupling matrix maps the data columns correctly") {
    Rng rng(233);
    Pipeline pl(sample_instance(rng));
    ComplexMatrix W = omega_pf(pl.prob, pl.pick);
    ComplexMatrix sqrtL = hermitian_sqrt(pl.pick.Lambda);

    const Eigen::Index n = pl.prob.n();
    ComplexMatrix K1star(pl.prob.q() + n, n);
    K1star.topRows(pl.prob.q()) = pl.prob.Btilde.adjoint();
    K1star.bottomRows(n) = sqrtL;
    ComplexMatrix K2star(pl.prob.p() + n, n);
    K2star.topRows(pl.prob.p()) = pl.prob.B.adjoint();
    K2star.bottomRows(n) = sqrtL * pl.prob.Z.adjoint();

    CHECK(operator_norm(W * K1star - K2star) < 1e-10);
    CHECK(operator_norm(W) <= 1.0 + 1e-10);
}

TEST_CASE("tau columns are isometric and annihilate the data rows") {
    Rng rng(239);
    Pipeline pl(sample_instance(rng));
    TauPair tau = tau_isometries(pl.coeffs, pl.prob, pl.pick, pl.pair);
    ComplexMatrix sqrtL = hermitian_sqrt(pl.pick.Lambda);

    const Eigen::Index n = pl.prob.n();
    CHECK(operator_norm(ComplexMatrix(tau.tau1.adjoint() * tau.tau1) -
                        ComplexMatrix::Identity(pl.prob.q(), pl.prob.q())) < 1e-10);
    CHECK(operator_norm(ComplexMatrix(tau.tau2.adjoint() * tau.tau2) -
                        ComplexMatrix::Identity(pl.coeffs.e, pl.coeffs.e)) < 1e-10);

    ComplexMatrix K1(n, pl.prob.q() + n);
    K1.leftCols(pl.prob.q()) = pl.prob.Btilde;
    K1.rightCols(n) = sqrtL;
    ComplexMatrix K2(n, pl.prob.p() + n);
    K2.leftCols(pl.prob.p()) = pl.prob.B;
    K2.rightCols(n) = pl.prob.Z * sqrtL;
    CHECK(operator_norm(K1 * tau.tau1) < 1e-10);
    CHECK(operator_norm(K2 * tau.tau2) < 1e-10);
}

TEST_CASE("feedback evaluation agrees with the cascade realization") {
    Rng rng(241);
    Pipeline pl(sample_instance(rng));
    for (int trial = 0; trial < 5; ++trial) {
        SchurParameter X = sample_constant_parameter(rng, pl.coeffs.e, pl.prob.q());
        RationalSystem F = lft_solution(pl.coeffs, pl.prob, pl.pick, pl.pair, X);
        for (Complex l : disc_points(rng, 4)) {
            ComplexMatrix direct =
                redheffer_solution(pl.prob, pl.pick, pl.pair, pl.coeffs, X, l);
            CHECK(operator_norm(F.eval(l) - direct) < 1e-8);
        }
    }
    SchurParameter Xd = sample_dynamic_parameter(rng, pl.coeffs.e, pl.prob.q());
    RationalSystem F = lft_solution(pl.coeffs, pl.prob, pl.pick, pl.pair, Xd);
    for (Complex l : disc_points(rng, 5)) {
        ComplexMatrix direct =
            redheffer_solution(pl.prob, pl.pick, pl.pair, pl.coeffs, Xd, l);
        CHECK(operator_norm(F.eval(l) - direct) < 1e-8);
    }
}

TEST_CASE("closed forms match their truncated-section counterparts") {
    Rng rng(251);
    Pipeline pl(sample_instance(rng));
    TruncatedCrossCheck cc =
        truncated_gram_cross_check(pl.prob, pl.pick, pl.pair, pl.coeffs, 1e-12);
    CHECK(cc.K >= 1);
    CHECK(cc.r0_residual < 1e-7);
    CHECK(cc.q0_residual < 1e-7);
    CHECK(cc.inversion_residual < 1e-6);
}
