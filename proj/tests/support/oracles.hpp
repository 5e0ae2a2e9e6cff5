#pragma once

// Independent reference implementations used only by the tests. They share
// nothing with the library beyond the Eigen type aliases.

#include "dmca/data_matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using dmca::Index;
using dmca::Matrix;
using dmca::Scalar;
using dmca::Vector;

struct LassoResult {
    Vector coefficients;
    double objective = 0.0;
    /// True when the best candidate also satisfies the optimality conditions
    /// of the unrestricted problem (i.e. the true optimum has small support).
    bool certified = false;
};

/// Minimises 0.5||x - D a||^2 + gamma ||a||_1 over every support of size
/// <= max_support (coordinate descent on each restricted problem), keeping
/// the best objective.
LassoResult lasso_by_support_enumeration(const Matrix& dict, const Vector& x, double gamma, int max_support);

struct PartitionResult {
    double cost = 0.0;
    std::vector<double> centers;  // descending
};

/// Optimal 1-D clustering by enumerating every split of the sorted values
/// into k contiguous groups. `l1` selects median/absolute cost, otherwise
/// mean/squared cost.
PartitionResult best_interval_partition(std::vector<double> values, int k, bool l1);

/// Test-side random source (std::mt19937_64, independent of the library RNG).
class Rand {
public:
    explicit Rand(std::uint64_t seed) : gen_(seed) {}
    double normal() { return normal_(gen_); }
    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    Scalar complex_normal() { return {normal(), normal()}; }
    Matrix complex_matrix(Index rows, Index cols);
    dmca::RealMatrix real_matrix(Index rows, Index cols);
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Snapshots x_t = sum_i phi_i lambda_i^(t-1) b_i, t = 1..n, built by direct
/// powers. With `real_data` the eigenvalues must come in conjugate pairs
/// (given as the upper-half representative list `eigenvalues`, real ones
/// included once) and the modes are conjugated accordingly.
struct LinearSnapshots {
    Matrix data;
    std::vector<Scalar> eigenvalues;
};
LinearSnapshots linear_snapshots(Index m, Index n, const std::vector<Scalar>& eigenvalues, bool real_data,
                                 Rand& rand);

/// Eigenvalues sorted by descending modulus, then descending imaginary part.
std::vector<Scalar> sorted_eigenvalues(std::vector<Scalar> values);

}  // namespace oracle
