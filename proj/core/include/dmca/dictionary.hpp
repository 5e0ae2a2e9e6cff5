#pragma once

#include "dmca/data_matrix.hpp"
#include "dmca/harvest.hpp"

#include <vector>

namespace dmca {

/// Local dictionary for one data column: unit-norm modes from every window
/// within `neighborhood` of the column, with their labels and original norms.
struct ColumnDictionary {
    Index column = 0;  // 1-based
    Index neighborhood = 0;
    Matrix atoms;
    std::vector<int> atom_labels;
    std::vector<double> atom_scales;
    std::vector<Index> atom_windows;

    Index size() const { return atoms.cols(); }
};

/// Windows contributing to column `j` (1-based): [c - w_N, c + w_N] intersected
/// with the existing windows, where c is j clamped to the window index range.
std::vector<Index> neighborhood_windows(const ModeLibrary& library, Index j, Index neighborhood);

/// Collects modes of the windows returned by neighborhood_windows(), ordered
/// by window then mode index. Zero-norm modes are skipped.
ColumnDictionary build_column_dictionary(const ModeLibrary& library, Index j, Index neighborhood);

/// Per-label sub-dictionaries for labels 1..k (empty labels give 0-column
/// matrices); relative atom order is preserved.
std::vector<Matrix> split_by_label(const ColumnDictionary& dict, int k);

}  // namespace dmca
