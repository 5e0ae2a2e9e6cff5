#include "dmca/clustering.hpp"
#include "dmca/errors.hpp"

#include <Eigen/QR>

namespace dmca {

void SmootherConfig::validate() const {
    if (window < 3 || window % 2 == 0) {
        throw ParameterError("Savitzky-Golay window must be odd and >= 3");
    }
    if (poly_order < 0 || poly_order >= window) {
        throw ParameterError("Savitzky-Golay polynomial order must lie in [0, window)");
    }
}

std::vector<double> savgol_coefficients(int window, int poly_order) {
    SmootherConfig{window, poly_order, true}.validate();
    const int half = window / 2;
    Eigen::MatrixXd vander(window, poly_order + 1);
    for (int i = 0; i < window; ++i) {
        double p = 1.0;
        for (int j = 0; j <= poly_order; ++j) {
            vander(i, j) = p;
            p *= static_cast<double>(i - half);
        }
    }
    // The smoothed center value is the constant term of the local
    // least-squares polynomial: row 0 of pinv(vander).
    const Eigen::MatrixXd pinv = vander.completeOrthogonalDecomposition().pseudoInverse();
    std::vector<double> out(static_cast<std::size_t>(window));
    for (int i = 0; i < window; ++i) out[static_cast<std::size_t>(i)] = pinv(0, i);
    return out;
}

namespace {

Index mirror(Index i, Index n) {
    if (i < 0) return -i;
    if (i >= n) return 2 * (n - 1) - i;
    return i;
}

}  // namespace

Frame savgol_filter_2d(const Frame& frame, const SmootherConfig& config) {
    config.validate();
    if (config.window > frame.rows() || config.window > frame.cols()) {
        throw ParameterError("Savitzky-Golay window " + std::to_string(config.window) +
                             " exceeds the " + std::to_string(frame.rows()) + "x" +
                             std::to_string(frame.cols()) + " frame");
    }
    const std::vector<double> w = savgol_coefficients(config.window, config.poly_order);
    const Index half = config.window / 2;

    Frame along_rows(frame.rows(), frame.cols());
    for (Index r = 0; r < frame.rows(); ++r) {
        for (Index c = 0; c < frame.cols(); ++c) {
            Scalar acc(0.0, 0.0);
            for (Index o = -half; o <= half; ++o) {
                acc += w[static_cast<std::size_t>(o + half)] * frame(r, mirror(c + o, frame.cols()));
            }
            along_rows(r, c) = acc;
        }
    }
    Frame out(frame.rows(), frame.cols());
    for (Index r = 0; r < frame.rows(); ++r) {
        for (Index c = 0; c < frame.cols(); ++c) {
            Scalar acc(0.0, 0.0);
            for (Index o = -half; o <= half; ++o) {
                acc += w[static_cast<std::size_t>(o + half)] *
                       along_rows(mirror(r + o, frame.rows()), c);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

void smooth_target_modes(ModeLibrary& library, int target_label, const SmootherConfig& config) {
    if (!config.enabled) return;
    config.validate();
    if (!library.geometry) throw DimensionError("smoothing modes needs frame geometry");
    const FrameGeometry g = *library.geometry;
    if (config.window > static_cast<int>(g.height) || config.window > static_cast<int>(g.width)) {
        throw ParameterError("Savitzky-Golay window " + std::to_string(config.window) +
                             " exceeds the " + std::to_string(g.height) + "x" +
                             std::to_string(g.width) + " frame");
    }
    for (auto& e : library.entries) {
        if (e.label != target_label) continue;
        e.vector = frame_to_column(savgol_filter_2d(column_to_frame(e.vector, g), config));
    }
}

}  // namespace dmca
