#include "dmca/data_matrix.hpp"

#include "dmca/errors.hpp"

#include <algorithm>
#include <string>

namespace dmca {

namespace {

void check_geometry(const Matrix& values, const std::optional<FrameGeometry>& geometry) {
    if (!geometry) return;
    if (geometry->pixels() != static_cast<std::uint64_t>(values.rows())) {
        throw DimensionError("frame geometry " + std::to_string(geometry->height) + "x" +
                             std::to_string(geometry->width) + " does not match " +
                             std::to_string(values.rows()) + " rows");
    }
}

template <typename FrameT>
FrameGeometry common_geometry(std::span<const FrameT> frames) {
    if (frames.size() < 2) {
        throw InsufficientDataError("at least two frames are required, got " +
                                    std::to_string(frames.size()));
    }
    const auto h = frames.front().rows();
    const auto w = frames.front().cols();
    for (std::size_t t = 1; t < frames.size(); ++t) {
        if (frames[t].rows() != h || frames[t].cols() != w) {
            throw DimensionError("frame " + std::to_string(t) + " is " +
                                 std::to_string(frames[t].rows()) + "x" +
                                 std::to_string(frames[t].cols()) + ", expected " +
                                 std::to_string(h) + "x" + std::to_string(w));
        }
    }
    return {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(w)};
}

const FrameGeometry& require_geometry(const DataMatrix& x) {
    if (!x.geometry()) throw DimensionError("data matrix has no frame geometry attached");
    return *x.geometry();
}

}  // namespace

DataMatrix::DataMatrix(Matrix values, std::optional<FrameGeometry> geometry, bool is_real)
    : values_(std::move(values)), geometry_(geometry), is_real_(is_real) {
    if (values_.cols() < 2) {
        throw InsufficientDataError("a data matrix needs at least two columns, got " +
                                    std::to_string(values_.cols()));
    }
    check_geometry(values_, geometry_);
    if (is_real_) {
        for (Index j = 0; j < values_.cols(); ++j) {
            for (Index i = 0; i < values_.rows(); ++i) {
                if (values_(i, j).imag() != 0.0) {
                    throw InvariantError("real-flagged matrix has a nonzero imaginary part at (" +
                                         std::to_string(i) + ", " + std::to_string(j) + ")");
                }
            }
        }
    }
}

DataMatrix DataMatrix::from_real(const RealMatrix& values, std::optional<FrameGeometry> geometry) {
    return DataMatrix(values.cast<Scalar>(), geometry, true);
}

DataMatrix DataMatrix::with_geometry(std::optional<FrameGeometry> geometry) const {
    return DataMatrix(values_, geometry, is_real_);
}

RealMatrix AffineRescale::apply(const RealMatrix& x) const {
    return (scale * x.array() + offset).matrix();
}

RealMatrix AffineRescale::invert(const RealMatrix& y) const {
    return ((y.array() - offset) / scale).matrix();
}

Vector frame_to_column(const Frame& frame) {
    Vector out(frame.size());
    const Index w = frame.cols();
    for (Index r = 0; r < frame.rows(); ++r) {
        for (Index c = 0; c < w; ++c) out(r * w + c) = frame(r, c);
    }
    return out;
}

RealVector frame_to_column(const RealFrame& frame) {
    RealVector out(frame.size());
    const Index w = frame.cols();
    for (Index r = 0; r < frame.rows(); ++r) {
        for (Index c = 0; c < w; ++c) out(r * w + c) = frame(r, c);
    }
    return out;
}

Frame column_to_frame(const Eigen::Ref<const Vector>& column, FrameGeometry geometry) {
    if (geometry.pixels() != static_cast<std::uint64_t>(column.size())) {
        throw DimensionError("column of length " + std::to_string(column.size()) +
                             " cannot be reshaped to " + std::to_string(geometry.height) + "x" +
                             std::to_string(geometry.width));
    }
    Frame out(geometry.height, geometry.width);
    for (Index r = 0; r < out.rows(); ++r) {
        for (Index c = 0; c < out.cols(); ++c) out(r, c) = column(r * out.cols() + c);
    }
    return out;
}

RealFrame column_to_real_frame(const Eigen::Ref<const RealVector>& column, FrameGeometry geometry) {
    if (geometry.pixels() != static_cast<std::uint64_t>(column.size())) {
        throw DimensionError("column of length " + std::to_string(column.size()) +
                             " cannot be reshaped to " + std::to_string(geometry.height) + "x" +
                             std::to_string(geometry.width));
    }
    RealFrame out(geometry.height, geometry.width);
    for (Index r = 0; r < out.rows(); ++r) {
        for (Index c = 0; c < out.cols(); ++c) out(r, c) = column(r * out.cols() + c);
    }
    return out;
}

DataMatrix frames_to_matrix(std::span<const RealFrame> frames) {
    const FrameGeometry g = common_geometry(frames);
    RealMatrix values(static_cast<Index>(g.pixels()), static_cast<Index>(frames.size()));
    for (std::size_t t = 0; t < frames.size(); ++t) {
        values.col(static_cast<Index>(t)) = frame_to_column(frames[t]);
    }
    return DataMatrix::from_real(values, g);
}

DataMatrix frames_to_matrix(std::span<const Frame> frames) {
    const FrameGeometry g = common_geometry(frames);
    Matrix values(static_cast<Index>(g.pixels()), static_cast<Index>(frames.size()));
    for (std::size_t t = 0; t < frames.size(); ++t) {
        values.col(static_cast<Index>(t)) = frame_to_column(frames[t]);
    }
    return DataMatrix(std::move(values), g, false);
}

std::vector<Frame> matrix_to_frames(const DataMatrix& x) {
    const FrameGeometry& g = require_geometry(x);
    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(x.cols()));
    for (Index j = 0; j < x.cols(); ++j) frames.push_back(column_to_frame(x.column(j), g));
    return frames;
}

std::vector<RealFrame> matrix_to_real_frames(const DataMatrix& x) {
    const FrameGeometry& g = require_geometry(x);
    const RealMatrix re = x.real_values();
    std::vector<RealFrame> frames;
    frames.reserve(static_cast<std::size_t>(x.cols()));
    for (Index j = 0; j < x.cols(); ++j) frames.push_back(column_to_real_frame(re.col(j), g));
    return frames;
}

std::pair<RealMatrix, AffineRescale> rescale_to_range(const RealMatrix& x, double lo, double hi) {
    if (!(lo < hi)) throw ParameterError("rescale range requires lo < hi");
    if (x.size() == 0) throw DegenerateError("cannot rescale an empty matrix");
    const double mn = x.minCoeff();
    const double mx = x.maxCoeff();
    if (!(mx > mn)) throw DegenerateError("cannot rescale a constant matrix");
    AffineRescale map;
    map.scale = (hi - lo) / (mx - mn);
    map.offset = lo - map.scale * mn;
    RealMatrix out = map.apply(x);
    // Pin the extremes; rounding in scale*x + offset can miss them by an ulp.
    for (Index i = 0; i < out.size(); ++i) {
        if (x.data()[i] == mn) out.data()[i] = lo;
        else if (x.data()[i] == mx) out.data()[i] = hi;
        else out.data()[i] = std::clamp(out.data()[i], lo, hi);
    }
    return {std::move(out), map};
}

std::pair<DataMatrix, AffineRescale> rescale_to_range(const DataMatrix& x, double lo, double hi) {
    if (!x.is_real()) throw ParameterError("rescale_to_range requires a real-valued matrix");
    auto [values, map] = rescale_to_range(x.real_values(), lo, hi);
    return {DataMatrix::from_real(values, x.geometry()), map};
}

}  // namespace dmca
