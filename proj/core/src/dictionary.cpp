#include "dmca/dictionary.hpp"

#include "dmca/errors.hpp"

#include <algorithm>
#include <string>

namespace dmca {

std::vector<Index> neighborhood_windows(const ModeLibrary& library, Index j, Index neighborhood) {
    if (j < 1 || j > library.source_cols) {
        throw ParameterError("column index " + std::to_string(j) + " outside [1, " +
                             std::to_string(library.source_cols) + "]");
    }
    if (neighborhood < 0) throw ParameterError("neighborhood must be >= 0");
    const Index last = library.source_cols - library.window_length + 1;
    const Index c = std::clamp<Index>(j, 1, last);
    std::vector<Index> windows;
    for (Index q = std::max<Index>(1, c - neighborhood); q <= std::min(last, c + neighborhood); ++q) {
        windows.push_back(q);
    }
    return windows;
}

ColumnDictionary build_column_dictionary(const ModeLibrary& library, Index j, Index neighborhood) {
    if (!library.fully_labeled()) throw ParameterError("mode library is not fully labeled");
    const std::vector<Index> windows = neighborhood_windows(library, j, neighborhood);
    const Index lo = windows.empty() ? 1 : windows.front();
    const Index hi = windows.empty() ? 0 : windows.back();

    // Entries are sorted by window, so the selection is one contiguous run.
    const auto first = std::lower_bound(library.entries.begin(), library.entries.end(), lo,
                                        [](const ModeEntry& e, Index q) { return e.window < q; });
    std::vector<const ModeEntry*> chosen;
    for (auto it = first; it != library.entries.end() && it->window <= hi; ++it) {
        if (it->vector.norm() > 0.0) chosen.push_back(&*it);
    }
    if (chosen.empty()) {
        throw InsufficientDataError("no atoms available for column " + std::to_string(j));
    }

    ColumnDictionary dict;
    dict.column = j;
    dict.neighborhood = neighborhood;
    dict.atoms.resize(library.source_rows, static_cast<Index>(chosen.size()));
    dict.atom_labels.reserve(chosen.size());
    dict.atom_scales.reserve(chosen.size());
    dict.atom_windows.reserve(chosen.size());
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        const double scale = chosen[a]->vector.norm();
        dict.atoms.col(static_cast<Index>(a)) = chosen[a]->vector / scale;
        dict.atom_labels.push_back(*chosen[a]->label);
        dict.atom_scales.push_back(scale);
        dict.atom_windows.push_back(chosen[a]->window);
    }
    return dict;
}

std::vector<Matrix> split_by_label(const ColumnDictionary& dict, int k) {
    std::vector<std::vector<Index>> members(static_cast<std::size_t>(std::max(k, 0)));
    for (std::size_t a = 0; a < dict.atom_labels.size(); ++a) {
        const int label = dict.atom_labels[a];
        if (label < 1 || label > k) {
            throw ParameterError("atom label " + std::to_string(label) + " outside [1, " +
                                 std::to_string(k) + "]");
        }
        members[static_cast<std::size_t>(label - 1)].push_back(static_cast<Index>(a));
    }
    std::vector<Matrix> out;
    out.reserve(members.size());
    for (const auto& idx : members) {
        Matrix sub(dict.atoms.rows(), static_cast<Index>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Index>(c)) = dict.atoms.col(idx[c]);
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace dmca
