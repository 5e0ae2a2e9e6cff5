#include "dmca/metrics.hpp"

#include "dmca/errors.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace dmca {

namespace {

void require_same_shape(Index r1, Index c1, Index r2, Index c2, const char* what) {
    if (r1 != r2 || c1 != c2) {
        throw DimensionError(std::string(what) + ": shapes " + std::to_string(r1) + "x" +
                             std::to_string(c1) + " and " + std::to_string(r2) + "x" +
                             std::to_string(c2) + " differ");
    }
}

// Normalised 1-D Gaussian taps of length 11, sigma 1.5.
Eigen::VectorXd gaussian_taps() {
    constexpr int radius = 5;
    constexpr double sigma = 1.5;
    Eigen::VectorXd w(2 * radius + 1);
    for (int i = -radius; i <= radius; ++i) w(i + radius) = std::exp(-0.5 * i * i / (sigma * sigma));
    return w / w.sum();
}

// Separable correlation keeping only positions where the window fits.
Eigen::MatrixXd filter_valid(const Eigen::MatrixXd& img, const Eigen::VectorXd& w) {
    const Index k = w.size();
    const Index rows = img.rows() - k + 1;
    const Index cols = img.cols() - k + 1;
    Eigen::MatrixXd tmp = Eigen::MatrixXd::Zero(rows, img.cols());
    for (Index i = 0; i < k; ++i) tmp += w(i) * img.middleRows(i, rows);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
    for (Index i = 0; i < k; ++i) out += w(i) * tmp.middleCols(i, cols);
    return out;
}

template <typename FrameT>
double snr_impl(const FrameT& frame, const TargetMask& mask) {
    require_same_shape(frame.rows(), frame.cols(), mask.rows(), mask.cols(), "snr_db");
    const auto mean = frame.mean();
    double target = 0.0;
    double rest = 0.0;
    for (Index c = 0; c < frame.cols(); ++c) {
        for (Index r = 0; r < frame.rows(); ++r) {
            const double p = std::norm(frame(r, c) - mean);
            (mask.cells()(r, c) ? target : rest) += p;
        }
    }
    const double n_target = static_cast<double>(mask.target_count());
    const double n_rest = static_cast<double>(mask.cells().size()) - n_target;
    target /= n_target;
    rest /= n_rest;
    if (rest == 0.0) return target == 0.0 ? 0.0 : kInfinityDb;
    if (target == 0.0) return -kInfinityDb;
    return 10.0 * std::log10(target / rest);
}

template <typename FrameT>
double scr_impl(const FrameT& frame, const TargetMask& mask) {
    require_same_shape(frame.rows(), frame.cols(), mask.rows(), mask.cols(), "scr_db");
    double target = 0.0;
    double clutter = 0.0;
    for (Index c = 0; c < frame.cols(); ++c) {
        for (Index r = 0; r < frame.rows(); ++r) {
            (mask.cells()(r, c) ? target : clutter) += std::abs(frame(r, c));
        }
    }
    const double n_target = static_cast<double>(mask.target_count());
    const double n_clutter = static_cast<double>(mask.cells().size()) - n_target;
    target /= n_target;
    clutter /= n_clutter;
    if (clutter == 0.0) return target == 0.0 ? 0.0 : kInfinityDb;
    if (target == 0.0) return -kInfinityDb;
    // Written as a difference of logs so inverting the mask negates exactly.
    return 20.0 * (std::log10(target) - std::log10(clutter));
}

}  // namespace

TargetMask::TargetMask(BoolGrid cells) : cells_(std::move(cells)) {
    const Index n = cells_.count();
    if (n == 0 || n == cells_.size()) {
        throw ParameterError("target mask needs at least one target and one non-target cell");
    }
}

TargetMask TargetMask::inverted() const { return TargetMask(BoolGrid(!cells_)); }

double psnr(const RealFrame& reference, const RealFrame& test, double peak) {
    require_same_shape(reference.rows(), reference.cols(), test.rows(), test.cols(), "psnr");
    if (reference.size() == 0) throw DimensionError("psnr: empty image");
    if (!(peak > 0.0)) throw ParameterError("psnr: peak must be > 0");
    const double mse = (reference - test).squaredNorm() / static_cast<double>(reference.size());
    if (mse == 0.0) return kInfinityDb;
    return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const RealFrame& reference, const RealFrame& test) {
    require_same_shape(reference.rows(), reference.cols(), test.rows(), test.cols(), "ssim");
    if (reference.rows() < 11 || reference.cols() < 11) {
        throw ParameterError("ssim: images must be at least 11x11");
    }
    constexpr double range = 255.0;
    constexpr double c1 = (0.01 * range) * (0.01 * range);
    constexpr double c2 = (0.03 * range) * (0.03 * range);
    const Eigen::VectorXd w = gaussian_taps();
    const Eigen::MatrixXd& x = reference;
    const Eigen::MatrixXd& y = test;

    const Eigen::ArrayXXd mx = filter_valid(x, w).array();
    const Eigen::ArrayXXd my = filter_valid(y, w).array();
    const Eigen::ArrayXXd sxx = filter_valid(x.cwiseProduct(x), w).array() - mx * mx;
    const Eigen::ArrayXXd syy = filter_valid(y.cwiseProduct(y), w).array() - my * my;
    const Eigen::ArrayXXd sxy = filter_valid(x.cwiseProduct(y), w).array() - mx * my;

    const Eigen::ArrayXXd num = (2.0 * mx * my + c1) * (2.0 * sxy + c2);
    const Eigen::ArrayXXd den = (mx * mx + my * my + c1) * (sxx + syy + c2);
    return (num / den).mean();
}

double snr_db(const RealFrame& frame, const TargetMask& mask) { return snr_impl(frame, mask); }
double snr_db(const Frame& frame, const TargetMask& mask) { return snr_impl(frame, mask); }
double scr_db(const RealFrame& frame, const TargetMask& mask) { return scr_impl(frame, mask); }
double scr_db(const Frame& frame, const TargetMask& mask) { return scr_impl(frame, mask); }

void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
    out << "frame,metric,value\n";
    out << std::setprecision(17);
    for (const auto& row : rows) {
        out << row.frame << ',' << row.metric << ',';
        if (std::isinf(row.value)) {
            out << (row.value > 0 ? "inf" : "-inf");
        } else {
            out << row.value;
        }
        out << '\n';
    }
}

}  // namespace dmca
