#include "dmca/dmd.hpp"

#include "dmca/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dmca {

std::vector<Index> canonical_eigen_order(const Vector& eigenvalues) {
    const Index r = eigenvalues.size();
    std::vector<Index> order(static_cast<std::size_t>(r));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return std::abs(eigenvalues(a)) > std::abs(eigenvalues(b));
    });
    // Conjugate pairs rarely have bit-identical moduli; group runs whose
    // moduli agree to rounding and order each run by imaginary part.
    const double scale = r > 0 ? std::max(1.0, std::abs(eigenvalues(order.front()))) : 1.0;
    const double tie = 1e-12 * scale;
    std::size_t begin = 0;
    while (begin < order.size()) {
        std::size_t end = begin + 1;
        while (end < order.size() &&
               std::abs(eigenvalues(order[end - 1])) - std::abs(eigenvalues(order[end])) <= tie) {
            ++end;
        }
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                         order.begin() + static_cast<std::ptrdiff_t>(end), [&](Index a, Index b) {
                             return eigenvalues(a).imag() > eigenvalues(b).imag();
                         });
        begin = end;
    }
    return order;
}

AmplitudeFit compute_amplitudes(const Matrix& modes, const Eigen::Ref<const Vector>& x1) {
    if (modes.rows() != x1.size()) {
        throw DimensionError("modes have " + std::to_string(modes.rows()) +
                             " rows but the snapshot has length " + std::to_string(x1.size()));
    }
    AmplitudeFit fit;
    if (modes.cols() == 0) {
        fit.amplitudes = Vector(0);
        fit.residual = x1.norm();
        return fit;
    }
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(modes);
    fit.amplitudes = cod.solve(x1);
    fit.residual = (modes * fit.amplitudes - x1).norm();
    return fit;
}

DmdResult exact_dmd(const Matrix& x, std::optional<Index> rank) {
    const Index n = x.cols();
    if (n < 2) {
        throw InsufficientDataError("DMD needs at least two snapshots, got " + std::to_string(n));
    }
    if (rank && (*rank < 1 || *rank > n - 1)) {
        throw ParameterError("requested DMD rank " + std::to_string(*rank) +
                             " outside [1, " + std::to_string(n - 1) + "]");
    }
    const auto x1 = x.leftCols(n - 1);
    const auto x2 = x.rightCols(n - 1);

    Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(
        x1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    if (sigma.size() == 0 || !(sigma(0) > 0.0)) {
        throw DegenerateError("DMD input snapshots are all zero");
    }
    Index r = 0;
    while (r < sigma.size() && sigma(r) >= kRankTolerance * sigma(0)) ++r;
    if (rank) r = std::min(r, *rank);

    const Matrix u = svd.matrixU().leftCols(r);
    const Matrix v = svd.matrixV().leftCols(r);
    const Eigen::VectorXd inv_sigma = sigma.head(r).cwiseInverse();

    // X2 V Sigma^-1, shared by the reduced operator and the modes.
    const Matrix projected = (x2 * v) * inv_sigma.cast<Scalar>().asDiagonal();
    const Matrix reduced = u.adjoint() * projected;

    Eigen::ComplexEigenSolver<Matrix> eig(reduced, true);
    if (eig.info() != Eigen::Success) throw DegenerateError("eigendecomposition did not converge");
    Matrix w = eig.eigenvectors();
    for (Index i = 0; i < w.cols(); ++i) {
        const double nrm = w.col(i).norm();
        if (nrm > 0.0) w.col(i) /= nrm;
    }
    const Matrix modes = projected * w;

    const std::vector<Index> order = canonical_eigen_order(eig.eigenvalues());
    DmdResult result;
    result.rank = r;
    result.modes.resize(x.rows(), r);
    result.eigenvalues.resize(r);
    for (Index i = 0; i < r; ++i) {
        const Index src = order[static_cast<std::size_t>(i)];
        result.modes.col(i) = modes.col(src);
        result.eigenvalues(i) = eig.eigenvalues()(src);
    }
    AmplitudeFit fit = compute_amplitudes(result.modes, x.col(0));
    result.amplitudes = std::move(fit.amplitudes);
    result.amplitude_residual = fit.residual;
    return result;
}

DmdResult exact_dmd(const DataMatrix& x, std::optional<Index> rank) {
    return exact_dmd(x.values(), rank);
}

namespace {

Scalar integer_power(Scalar base, Index exponent) {
    Scalar acc(1.0, 0.0);
    while (exponent > 0) {
        if (exponent & 1) acc *= base;
        base *= base;
        exponent >>= 1;
    }
    return acc;
}

}  // namespace

Vector reconstruct_snapshot(const DmdResult& result, Index t) {
    if (t < 1) throw ParameterError("snapshot index must be >= 1");
    Vector coeff(result.rank);
    for (Index i = 0; i < result.rank; ++i) {
        coeff(i) = integer_power(result.eigenvalues(i), t - 1) * result.amplitudes(i);
    }
    return result.modes * coeff;
}

}  // namespace dmca
