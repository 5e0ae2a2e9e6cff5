#pragma once

#include "dmca/data_matrix.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace dmca {

using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Boolean target grid (true = target cell) with at least one cell of each kind.
class TargetMask {
public:
    explicit TargetMask(BoolGrid cells);

    const BoolGrid& cells() const { return cells_; }
    Index rows() const { return cells_.rows(); }
    Index cols() const { return cells_.cols(); }
    Index target_count() const { return cells_.count(); }
    TargetMask inverted() const;

private:
    BoolGrid cells_;
};

inline constexpr double kInfinityDb = std::numeric_limits<double>::infinity();

/// 10 log10(peak^2 / MSE); +infinity when the images are identical.
double psnr(const RealFrame& reference, const RealFrame& test, double peak = 255.0);

/// Mean local SSIM, 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03,
/// dynamic range 255, averaged over positions where the window fits.
double ssim(const RealFrame& reference, const RealFrame& test);

/// 10 log10(mean |f|^2 over target / mean |f|^2 over the rest) of the
/// mean-removed frame.
double snr_db(const RealFrame& frame, const TargetMask& mask);
double snr_db(const Frame& frame, const TargetMask& mask);

/// 20 log10(mean |target| / mean |clutter|); +infinity for zero clutter.
double scr_db(const RealFrame& frame, const TargetMask& mask);
double scr_db(const Frame& frame, const TargetMask& mask);

struct MetricRow {
    Index frame = 0;  // 1-based
    std::string metric;
    double value = 0.0;
};

/// CSV "frame,metric,value"; infinities print as inf / -inf.
void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows);

}  // namespace dmca
