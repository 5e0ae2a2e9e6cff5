#pragma once

#include "dmca/clustering.hpp"
#include "dmca/data_matrix.hpp"
#include "dmca/lasso.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dmca {

/// Per-column penalty: `value * gamma_max(dictionary, column)` when relative,
/// `value` itself when absolute.
struct GammaSpec {
    enum class Mode { relative, absolute } mode = Mode::relative;
    double value = 0.01;

    static GammaSpec relative(double factor) { return {Mode::relative, factor}; }
    static GammaSpec absolute(double gamma) { return {Mode::absolute, gamma}; }
};

struct DmcaConfig {
    Index window_length = 12;
    Index neighborhood = 2;
    Labeler labeler;
    GammaSpec gamma;
    SmootherConfig smoother;
    /// Label whose modes the smoother acts on.
    int target_label = 1;
    /// Defaults to the input's is_real flag.
    std::optional<bool> take_real_part;
    SolverOptions solver;
    Index stride = 1;
    /// 0 = hardware concurrency.
    unsigned threads = 1;

    void validate() const;
};

struct ColumnDiagnostics {
    Index column = 0;  // 1-based
    double gamma = 0.0;
    double objective = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = true;
    double optimality_violation = 0.0;
    std::vector<std::size_t> atoms_per_label;
    std::vector<std::size_t> active_per_label;
};

struct LayerSet {
    /// layers[p - 1] is the output for label p.
    std::vector<DataMatrix> layers;
    std::vector<ColumnDiagnostics> diagnostics;
    /// The configuration used, with a fitted labeler when clustering.
    DmcaConfig config;
    LabelSummary labels;
    /// Largest |imaginary part| dropped by the real projection (0 otherwise).
    double max_imag_residue = 0.0;
    std::vector<std::string> warnings;

    int k() const { return static_cast<int>(layers.size()); }
    bool all_converged() const;
};

/// Sliding-window DMD harvest, eigenvalue labeling (fitting clustering
/// labelers on |lambda|^2), optional target-mode smoothing, then one sparse
/// decomposition per column; k is the largest label assigned.
LayerSet dmca(const DataMatrix& x, const DmcaConfig& config);

/// ||X - sum_p X_p||_F / ||X||_F.
double layer_sum_residual(const DataMatrix& input, const LayerSet& layers);
/// Same, restricted to columns [first, last] (1-based, inclusive).
double layer_sum_residual(const DataMatrix& input, const LayerSet& layers, Index first, Index last);

/// One JSON object per line, one line per column.
void write_diagnostics_jsonl(std::ostream& out, const std::vector<ColumnDiagnostics>& diagnostics);

}  // namespace dmca
