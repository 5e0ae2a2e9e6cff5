#pragma once

#include "dmca/data_matrix.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace dmca {

/// One harvested triplet. Window and mode indexes are 1-based.
struct ModeEntry {
    Index window = 0;
    Index mode = 0;
    Vector vector;
    Scalar eigenvalue;
    Scalar amplitude;
    std::optional<int> label;
};

/// Every (mode, eigenvalue, amplitude) triplet from the sliding DMD windows,
/// ordered by window then mode index.
struct ModeLibrary {
    std::vector<ModeEntry> entries;
    Index window_length = 0;
    Index stride = 1;
    Index source_rows = 0;
    Index source_cols = 0;
    std::optional<FrameGeometry> geometry;

    /// Number of windows, n - w_L + 1 for stride 1.
    Index window_count() const;
    bool fully_labeled() const;
};

struct HarvestOptions {
    Index stride = 1;
    /// 0 = hardware concurrency.
    unsigned threads = 1;
};

/// n - w_L + 1; throws ParameterError unless 2 <= w_L <= n.
Index window_count(Index n, Index window_length);

/// Full-rank exact DMD on every length-`window_length` window of `x`.
/// Windows whose content is numerically zero contribute no entries.
ModeLibrary harvest(const DataMatrix& x, Index window_length, const HarvestOptions& options = {});

struct EigenRow {
    Index window = 0;
    double re = 0.0;
    double im = 0.0;
    double mag2 = 0.0;
    double arg = 0.0;
    int label = 0;  // 0 when unlabeled
};

std::vector<EigenRow> eigen_table(const ModeLibrary& library);

/// CSV with header "window,re,im,mag2,arg,label", 17 significant digits.
void write_eigen_csv(std::ostream& out, const std::vector<EigenRow>& rows);

}  // namespace dmca
