#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "minta/power_iteration.hpp"
#include "minta/rng.hpp"

using namespace minta;
using doctest::Approx;

namespace {

Eigen::MatrixXd random_psd(Rng& rng, int n) {
    Eigen::MatrixXd r(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) r(i, j) = rng.next_normal();
    }
    return r * r.transpose();
}

}  // namespace

TEST_CASE("diagonal matrix picks the dominant axis") {
    Eigen::MatrixXd m = Eigen::Vector2d(1.0, 3.0).asDiagonal();
    auto result = principal_eigenvector(m);
    CHECK(result.value == Approx(3.0));
    CHECK(std::abs(result.vector[1]) == Approx(1.0));
    CHECK(std::abs(result.vector[0]) == Approx(0.0).scale(1.0));
    CHECK(result.vector[1] > 0.0);  // sign canonicalization
}

TEST_CASE("identity matrix converges deterministically despite the flat spectrum") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
    auto a = principal_eigenvector(m);
    auto b = principal_eigenvector(m);
    CHECK(a.value == Approx(1.0));
    CHECK(a.vector == b.vector);
    CHECK(a.vector.norm() == Approx(1.0));
    int arg_max = 0;
    a.vector.cwiseAbs().maxCoeff(&arg_max);
    CHECK(a.vector[arg_max] > 0.0);
}

TEST_CASE("zero matrix returns a zero eigenvalue") {
    auto result = principal_eigenvector(Eigen::MatrixXd::Zero(3, 3));
    CHECK(result.value == Approx(0.0));
    CHECK(result.vector.norm() == Approx(1.0));
}

TEST_CASE("matches a dense eigendecomposition oracle on random PSD matrices") {
    Rng rng(1001);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.next_int(2, 12);
        Eigen::MatrixXd m = random_psd(rng, n);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(m);
        const double lambda_oracle = oracle.eigenvalues().maxCoeff();
        Eigen::VectorXd v_oracle = oracle.eigenvectors().col(n - 1);

        PowerIterationOptions options;
        options.max_iterations = 200000;
        auto result = principal_eigenvector(m, options);
        CHECK(std::abs(result.vector.dot(v_oracle)) >= 1.0 - 1e-8);
        CHECK(std::abs(result.value - lambda_oracle) / lambda_oracle <= 1e-8);
    }
}

TEST_CASE("unit residual contract holds at the returned pair") {
    Rng rng(77);
    Eigen::MatrixXd m = random_psd(rng, 8);
    PowerIterationOptions options;
    options.tolerance = 1e-11;
    options.max_iterations = 500000;
    auto result = principal_eigenvector(m, options);
    CHECK((m * result.vector - result.value * result.vector).norm() <= 1e-11 * result.value);
}

TEST_CASE("non-convergence carries the residual") {
    // Zero tolerance is unreachable within a tight iteration budget.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = 2.0;
    m(2, 2) = 1.0;
    Eigen::MatrixXd rot(3, 3);
    rot << 0.6, -0.8, 0.0, 0.8, 0.6, 0.0, 0.0, 0.0, 1.0;
    m = rot * m * rot.transpose();

    PowerIterationOptions options;
    options.tolerance = 0.0;  // unreachable
    options.max_iterations = 50;
    try {
        principal_eigenvector(m, options);
        FAIL("expected EigenConvergenceError");
    } catch (const EigenConvergenceError& e) {
        CHECK(e.iterations() == 50);
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("rejects bad input") {
    CHECK_THROWS_AS(principal_eigenvector(Eigen::MatrixXd::Zero(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(principal_eigenvector(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
    Eigen::MatrixXd nan_matrix = Eigen::MatrixXd::Zero(2, 2);
    nan_matrix(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(principal_eigenvector(nan_matrix), std::invalid_argument);
}
