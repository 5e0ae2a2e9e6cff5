#include "dmca/harvest.hpp"

#include "dmca/dmd.hpp"
#include "dmca/errors.hpp"
#include "dmca/parallel.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace dmca {

Index window_count(Index n, Index window_length) {
    if (window_length < 2 || window_length > n) {
        throw ParameterError("window length " + std::to_string(window_length) +
                             " must lie in [2, " + std::to_string(n) + "]");
    }
    return n - window_length + 1;
}

Index ModeLibrary::window_count() const {
    if (window_length == 0) return 0;
    return (dmca::window_count(source_cols, window_length) - 1) / stride + 1;
}

bool ModeLibrary::fully_labeled() const {
    for (const auto& e : entries) {
        if (!e.label) return false;
    }
    return true;
}

ModeLibrary harvest(const DataMatrix& x, Index window_length, const HarvestOptions& options) {
    const Index windows = window_count(x.cols(), window_length);
    if (options.stride < 1) throw ParameterError("harvest stride must be >= 1");

    ModeLibrary library;
    library.window_length = window_length;
    library.stride = options.stride;
    library.source_rows = x.rows();
    library.source_cols = x.cols();
    library.geometry = x.geometry();

    const Index processed = (windows - 1) / options.stride + 1;
    std::vector<std::optional<DmdResult>> results(static_cast<std::size_t>(processed));
    parallel_for(results.size(), options.threads, [&](std::size_t w) {
        const Index start = static_cast<Index>(w) * options.stride;
        try {
            results[w] = exact_dmd(x.values().middleCols(start, window_length));
            results[w]->window_origin = start + 1;
        } catch (const DegenerateError&) {
            // Rank-zero window: contributes nothing.
        }
    });

    for (auto& r : results) {
        if (!r) continue;
        for (Index i = 0; i < r->rank; ++i) {
            ModeEntry e;
            e.window = r->window_origin;
            e.mode = i + 1;
            e.vector = r->modes.col(i);
            e.eigenvalue = r->eigenvalues(i);
            e.amplitude = r->amplitudes(i);
            library.entries.push_back(std::move(e));
        }
        r.reset();
    }
    return library;
}

std::vector<EigenRow> eigen_table(const ModeLibrary& library) {
    std::vector<EigenRow> rows;
    rows.reserve(library.entries.size());
    for (const auto& e : library.entries) {
        EigenRow row;
        row.window = e.window;
        row.re = e.eigenvalue.real();
        row.im = e.eigenvalue.imag();
        row.mag2 = std::norm(e.eigenvalue);
        row.arg = std::arg(e.eigenvalue);
        row.label = e.label.value_or(0);
        rows.push_back(row);
    }
    return rows;
}

void write_eigen_csv(std::ostream& out, const std::vector<EigenRow>& rows) {
    const auto old_flags = out.flags();
    const auto old_precision = out.precision();
    out << "window,re,im,mag2,arg,label\n";
    out << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.window << ',' << r.re << ',' << r.im << ',' << r.mag2 << ',' << r.arg << ','
            << r.label << '\n';
    }
    out.flags(old_flags);
    out.precision(old_precision);
}

}  // namespace dmca
