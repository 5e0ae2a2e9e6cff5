#pragma once

#include "dmca/data_matrix.hpp"
#include "dmca/dictionary.hpp"

#include <vector>

namespace dmca {

struct SolverOptions {
    int max_iters = 5000;
    /// The iteration ends once the relative objective change and the relative
    /// fixed-point residual of the shrinkage map are both at most this value.
    double tolerance = 1e-8;
    bool acceleration = true;

    void validate() const;
};

/// Minimiser of 0.5 * ||x - D a||_2^2 + gamma * ||a||_1 over complex a.
struct SparseSolution {
    Vector coefficients;
    double objective = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    double gamma = 0.0;
    /// ||T(a) - a|| / ||a|| with T the shrinkage step, at the last convergence check.
    double fixed_point_residual = 0.0;
    /// Step-size constant used (largest eigenvalue of D^H D, padded).
    double lipschitz = 0.0;
};

/// Proximal-gradient solver with complex soft-thresholding and optional
/// momentum (restarted whenever the objective increases). Never throws on
/// non-convergence; check `converged`.
SparseSolution lasso(const Matrix& dict, const Eigen::Ref<const Vector>& x, double gamma,
                     const SolverOptions& options = {});

/// max_c |D_c^H x|: the smallest gamma whose solution is exactly zero.
double gamma_max(const Matrix& dict, const Eigen::Ref<const Vector>& x);

double lasso_objective(const Matrix& dict, const Eigen::Ref<const Vector>& x,
                       const Eigen::Ref<const Vector>& coefficients, double gamma);

/// prox of tau * ||.||_1: z_c * max(0, 1 - tau / |z_c|).
Vector complex_soft_threshold(const Eigen::Ref<const Vector>& z, double tau);

/// Largest violation of the subgradient optimality conditions:
/// |g_c| <= gamma where a_c = 0, and g_c = gamma * a_c / |a_c| otherwise,
/// with g = D^H (x - D a).
double optimality_violation(const Matrix& dict, const Eigen::Ref<const Vector>& x,
                            const Eigen::Ref<const Vector>& coefficients, double gamma);

/// Largest eigenvalue of D^H D by power iteration.
double spectral_norm_squared(const Matrix& dict, int max_iters = 500, double tolerance = 1e-10);

struct ColumnDecomposition {
    /// components[p - 1] = sum of atoms labeled p weighted by their coefficients.
    std::vector<Vector> components;
    SparseSolution solution;
    /// Coefficients with respect to the raw (unnormalised) modes.
    Vector mode_coefficients;
    std::vector<std::size_t> atoms_per_label;
};

/// Solves the merged problem on the column dictionary and splits the
/// reconstruction by atom label into `k` components.
ColumnDecomposition decompose_column(const ColumnDictionary& dict, const Eigen::Ref<const Vector>& x,
                                     double gamma, int k, const SolverOptions& options = {});

}  // namespace dmca
