#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dmca {

using Index = Eigen::Index;
using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A single video frame; rows are image rows.
using Frame = Eigen::MatrixXcd;
using RealFrame = Eigen::MatrixXd;

struct FrameGeometry {
    std::uint32_t height = 0;
    std::uint32_t width = 0;

    std::uint64_t pixels() const { return std::uint64_t{height} * width; }
    friend bool operator==(const FrameGeometry&, const FrameGeometry&) = default;
};

/// Snapshot matrix: one flattened frame per column, chronological left to right.
///
/// Values are always stored as complex doubles. Real inputs carry `is_real`
/// and the constructor rejects any nonzero imaginary part for them.
/// Immutable after construction.
class DataMatrix {
public:
    DataMatrix(Matrix values, std::optional<FrameGeometry> geometry, bool is_real);

    static DataMatrix from_real(const RealMatrix& values,
                                std::optional<FrameGeometry> geometry = std::nullopt);

    Index rows() const { return values_.rows(); }
    Index cols() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    const std::optional<FrameGeometry>& geometry() const { return geometry_; }
    bool is_real() const { return is_real_; }

    /// Column `j` (0-based).
    auto column(Index j) const { return values_.col(j); }

    RealMatrix real_values() const { return values_.real(); }

    /// Same values, different (compatible) geometry.
    DataMatrix with_geometry(std::optional<FrameGeometry> geometry) const;

private:
    Matrix values_;
    std::optional<FrameGeometry> geometry_;
    bool is_real_ = true;
};

/// Global affine map `y = scale * x + offset`.
struct AffineRescale {
    double scale = 1.0;
    double offset = 0.0;

    double apply(double x) const { return scale * x + offset; }
    double invert(double y) const { return (y - offset) / scale; }

    RealMatrix apply(const RealMatrix& x) const;
    RealMatrix invert(const RealMatrix& y) const;
};

DataMatrix frames_to_matrix(std::span<const RealFrame> frames);
DataMatrix frames_to_matrix(std::span<const Frame> frames);

/// Complex frames; for real matrices the imaginary parts are exactly zero.
std::vector<Frame> matrix_to_frames(const DataMatrix& x);
std::vector<RealFrame> matrix_to_real_frames(const DataMatrix& x);

/// Reshape one flattened column back to a height x width grid (row-major raster).
Frame column_to_frame(const Eigen::Ref<const Vector>& column, FrameGeometry geometry);
RealFrame column_to_real_frame(const Eigen::Ref<const RealVector>& column, FrameGeometry geometry);
Vector frame_to_column(const Frame& frame);
RealVector frame_to_column(const RealFrame& frame);

/// Map the global [min, max] of a real matrix onto [lo, hi].
/// The returned rescale maps input values to output values.
std::pair<DataMatrix, AffineRescale> rescale_to_range(const DataMatrix& x, double lo, double hi);
std::pair<RealMatrix, AffineRescale> rescale_to_range(const RealMatrix& x, double lo, double hi);

}  // namespace dmca
