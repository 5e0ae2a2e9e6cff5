#pragma once

#include "dmca/data_matrix.hpp"

#include <optional>

namespace dmca {

/// Singular values below this fraction of the largest are treated as zero,
/// including for "full" rank requests.
inline constexpr double kRankTolerance = 1e-12;

/// Modes, eigenvalues and amplitudes of the best-fit linear operator
/// mapping each snapshot to its successor.
///
/// Columns of `modes` pair with `eigenvalues(i)` and `amplitudes(i)` and are
/// ordered by descending |lambda|, ties broken by descending Im(lambda).
struct DmdResult {
    Matrix modes;
    Vector eigenvalues;
    Vector amplitudes;
    Index rank = 0;
    /// 1-based index of the window this result came from; 0 when standalone.
    Index window_origin = 0;
    /// Least-squares residual of `modes * amplitudes` against the first snapshot.
    double amplitude_residual = 0.0;
};

/// Exact DMD of the snapshot matrix `x` (m x n, n >= 2).
///
/// `rank` caps the number of retained singular values; std::nullopt means full
/// numerical rank. Throws InsufficientDataError for n < 2, ParameterError for a
/// rank outside [1, n-1], DegenerateError when the first n-1 snapshots are all zero.
DmdResult exact_dmd(const Matrix& x, std::optional<Index> rank = std::nullopt);
DmdResult exact_dmd(const DataMatrix& x, std::optional<Index> rank = std::nullopt);

struct AmplitudeFit {
    Vector amplitudes;
    double residual = 0.0;
};

/// Minimum-norm least-squares solution of modes * b = x1.
AmplitudeFit compute_amplitudes(const Matrix& modes, const Eigen::Ref<const Vector>& x1);

/// sum_i phi_i * lambda_i^(t-1) * b_i for a 1-based snapshot index t.
Vector reconstruct_snapshot(const DmdResult& result, Index t);

/// Indices that put eigenvalues in canonical order (descending modulus,
/// near-equal moduli ordered by descending imaginary part).
std::vector<Index> canonical_eigen_order(const Vector& eigenvalues);

}  // namespace dmca
