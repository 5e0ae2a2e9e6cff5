#include "doctest.h"
#include "oracles.hpp"

#include "dmca/errors.hpp"
#include "dmca/lasso.hpp"

#include <cmath>

using namespace dmca;

TEST_CASE("identity dictionary is coordinate-wise soft thresholding") {
    Vector x(2);
    x << 5.0, 0.1;
    const SparseSolution s = lasso(Matrix::Identity(2, 2), x, 1.0);
    REQUIRE(s.converged);
    CHECK(std::abs(s.coefficients(0) - 4.0) <= 1e-7);
    CHECK(std::abs(s.coefficients(1)) == 0.0);
}

TEST_CASE("gamma_max") {
    Vector x(2);
    x << 3.0, -4.0;
    CHECK(gamma_max(Matrix::Identity(2, 2), x) == 4.0);
    CHECK(gamma_max(Matrix::Identity(2, 2), Vector::Zero(2)) == 0.0);

    oracle::Rand rand(1);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix d = rand.complex_matrix(8, 12);
        const Vector y = rand.complex_matrix(8, 1);
        const SparseSolution s = lasso(d, y, 1.001 * gamma_max(d, y));
        CHECK(s.coefficients.cwiseAbs().sum() <= 1e-10);
    }
}

TEST_CASE("orthonormal dictionary with full shrinkage") {
    oracle::Rand rand(2);
    const Eigen::HouseholderQR<RealMatrix> qr(rand.real_matrix(6, 6));
    const Matrix q = RealMatrix(qr.householderQ()).cast<Scalar>();
    const Vector x = rand.complex_matrix(6, 1);
    const SparseSolution s = lasso(q, x, (q.adjoint() * x).cwiseAbs().maxCoeff());
    CHECK(s.coefficients.isZero(0.0));
}

TEST_CASE("parameter checks") {
    CHECK_THROWS_AS(lasso(Matrix::Identity(2, 2), Vector::Ones(2), 0.0), ParameterError);
    CHECK_THROWS_AS(lasso(Matrix::Identity(2, 2), Vector::Ones(2), -1.0), ParameterError);
    CHECK_THROWS_AS(lasso(Matrix(2, 0), Vector::Ones(2), 1.0), ParameterError);
    CHECK_THROWS_AS(lasso(Matrix::Identity(2, 2), Vector::Ones(3), 1.0), DimensionError);
    SolverOptions bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(lasso(Matrix::Identity(2, 2), Vector::Ones(2), 1.0, bad), ParameterError);
}

TEST_CASE("non-convergence is reported, not thrown") {
    oracle::Rand rand(3);
    const Matrix d = rand.complex_matrix(20, 40);
    const Vector x = rand.complex_matrix(20, 1);
    SolverOptions opts;
    opts.max_iters = 2;
    const SparseSolution s = lasso(d, x, 1e-6 * gamma_max(d, x), opts);
    CHECK_FALSE(s.converged);
    CHECK(s.iterations == 2);
}

TEST_CASE("oracle equivalence and certificate on random complex instances") {
    oracle::Rand rand(4);
    int checked = 0;
    for (int trial = 0; checked < 40; ++trial) {
        const Index cols = rand.integer(4, 12);
        const Matrix d = rand.complex_matrix(8, cols);
        const Vector x = rand.complex_matrix(8, 1);
        const double gamma = rand.uniform(0.1, 0.6) * gamma_max(d, x);
        const auto ref = oracle::lasso_by_support_enumeration(d, x, gamma, 4);
        if (!ref.certified) continue;
        ++checked;
        const SparseSolution s = lasso(d, x, gamma);
        REQUIRE(s.converged);
        CHECK(std::abs(s.objective - ref.objective) <= 1e-6);
        CHECK(optimality_violation(d, x, s.coefficients, gamma) <= 1e-6);
    }
}

TEST_CASE("invariants") {
    oracle::Rand rand(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix d = rand.complex_matrix(10, 15);
        const Vector x = rand.complex_matrix(10, 1);
        const double gamma = 0.05 * gamma_max(d, x);
        const SparseSolution s = lasso(d, x, gamma);
        REQUIRE(s.converged);
        CHECK(std::abs(s.objective - lasso_objective(d, x, s.coefficients, gamma)) <= 1e-10);
        CHECK(s.coefficients.cwiseAbs().sum() <= 0.5 * x.squaredNorm() / gamma);
        CHECK(s.iterations <= SolverOptions{}.max_iters);
        CHECK(optimality_violation(d, x, s.coefficients, gamma) <= 1e-6);
    }
}

TEST_CASE("plain proximal iteration never increases the objective") {
    oracle::Rand rand(6);
    const Matrix d = rand.complex_matrix(12, 20);
    const Vector x = rand.complex_matrix(12, 1);
    const double gamma = 0.05 * gamma_max(d, x);
    SolverOptions opts;
    opts.acceleration = false;
    double previous = 0.5 * x.squaredNorm();
    for (int iters = 1; iters <= 60; ++iters) {
        opts.max_iters = iters;
        const SparseSolution s = lasso(d, x, gamma, opts);
        CHECK(s.objective <= previous + 1e-12);
        previous = s.objective;
    }
}

TEST_CASE("real inputs give real coefficients") {
    oracle::Rand rand(7);
    const Matrix d = rand.real_matrix(10, 14).cast<Scalar>();
    const Vector x = rand.real_matrix(10, 1).cast<Scalar>();
    const SparseSolution s = lasso(d, x, 0.02 * gamma_max(d, x));
    CHECK(s.coefficients.imag().cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("complex soft threshold keeps the phase") {
    Vector z(3);
    z << Scalar(3.0, 4.0), Scalar(0.3, 0.4), Scalar(0.0, -2.0);
    const Vector p = complex_soft_threshold(z, 1.0);
    CHECK(std::abs(p(0) - Scalar(2.4, 3.2)) <= 1e-15);
    CHECK(p(1) == Scalar(0.0, 0.0));
    CHECK(std::abs(p(2) - Scalar(0.0, -1.0)) <= 1e-15);
}

TEST_CASE("decompose_column") {
    oracle::Rand rand(8);
    ColumnDictionary dict;
    dict.atoms = rand.complex_matrix(16, 6);
    for (Index c = 0; c < 6; ++c) dict.atoms.col(c).normalize();
    dict.atom_labels = {1, 2, 1, 2, 1, 2};
    dict.atom_scales = {1.0, 2.0, 1.0, 1.0, 3.0, 1.0};
    dict.atom_windows = {1, 1, 1, 2, 2, 2};

    SUBCASE("components sum to the merged reconstruction") {
        const Vector x = rand.complex_matrix(16, 1);
        const ColumnDecomposition dec = decompose_column(dict, x, 0.01 * gamma_max(dict.atoms, x), 2);
        const Vector merged = dict.atoms * dec.solution.coefficients;
        CHECK((dec.components[0] + dec.components[1] - merged).norm() <= 1e-12 * std::max(1.0, merged.norm()));
        CHECK(dec.atoms_per_label == std::vector<std::size_t>{3, 3});
        CHECK(std::abs(dec.mode_coefficients(1) * 2.0 - dec.solution.coefficients(1)) <= 1e-15);
    }
    SUBCASE("one-sparse instance lands in its own label") {
        const Vector x = 3.0 * dict.atoms.col(1);
        const ColumnDecomposition dec = decompose_column(dict, x, 1e-6 * gamma_max(dict.atoms, x), 2);
        CHECK((dec.components[1] - x).norm() <= 1e-4 * x.norm());
        CHECK(dec.components[0].norm() <= 1e-4 * x.norm());
    }
    SUBCASE("single label") {
        dict.atom_labels.assign(6, 1);
        const Vector x = rand.complex_matrix(16, 1);
        const ColumnDecomposition dec = decompose_column(dict, x, 0.1 * gamma_max(dict.atoms, x), 2);
        CHECK((dec.components[0] - dict.atoms * dec.solution.coefficients).norm() == 0.0);
        CHECK(dec.components[1].isZero(0.0));
    }
    SUBCASE("vanishing penalty on a covered column") {
        const Vector x = dict.atoms * rand.complex_matrix(6, 1);
        const ColumnDecomposition dec = decompose_column(dict, x, 1e-7 * gamma_max(dict.atoms, x), 2);
        CHECK((x - dec.components[0] - dec.components[1]).norm() <= 1e-4 * x.norm());
    }
    SUBCASE("empty dictionary") {
        ColumnDictionary empty;
        CHECK_THROWS_AS(decompose_column(empty, Vector::Ones(2), 1.0, 2), ParameterError);
    }
}
