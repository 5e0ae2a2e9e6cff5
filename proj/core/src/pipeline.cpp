#include "dmca/pipeline.hpp"

#include "dmca/dictionary.hpp"
#include "dmca/errors.hpp"
#include "dmca/harvest.hpp"
#include "dmca/parallel.hpp"
#include "dmca/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace dmca {

void DmcaConfig::validate() const {
    if (window_length < 2) throw ParameterError("window_length must be >= 2");
    if (neighborhood < 0) throw ParameterError("neighborhood must be >= 0");
    if (stride < 1) throw ParameterError("stride must be >= 1");
    if (!(gamma.value > 0.0)) throw ParameterError("gamma must be > 0");
    if (target_label < 1) throw ParameterError("target_label must be >= 1");
    labeler.validate();
    smoother.validate();
    solver.validate();
}

bool LayerSet::all_converged() const {
    return std::all_of(diagnostics.begin(), diagnostics.end(), [](const auto& d) { return d.converged; });
}

LayerSet dmca(const DataMatrix& x, const DmcaConfig& config) {
    config.validate();
    window_count(x.cols(), config.window_length);

    LayerSet out;
    out.config = config;

    ModeLibrary library = harvest(x, config.window_length, {config.stride, config.threads});
    if (library.entries.empty()) throw DegenerateError("every DMD window has rank zero");

    if (config.labeler.needs_fit()) {
        const auto mags = eigenvalue_magnitudes(library);
        const auto& l = config.labeler;
        out.config.labeler = l.kind == LabelerKind::kmedians ? fit_kmedians(mags, l.k, l.seed)
                                                              : fit_kmeans(mags, l.k, l.seed);
    }
    out.labels = label_library(library, out.config.labeler);
    const int k = out.labels.max_label;
    for (int p : out.labels.empty_labels) {
        out.warnings.push_back("label " + std::to_string(p) + " received no modes; layer " +
                               std::to_string(p) + " is zero");
    }
    smooth_target_modes(library, config.target_label, config.smoother);

    const Index m = x.rows();
    const Index n = x.cols();
    std::vector<Matrix> values(static_cast<std::size_t>(k), Matrix::Zero(m, n));
    out.diagnostics.resize(static_cast<std::size_t>(n));

    parallel_for(static_cast<std::size_t>(n), config.threads, [&](std::size_t idx) {
        const Index j = static_cast<Index>(idx) + 1;
        const auto column = x.values().col(j - 1);
        ColumnDiagnostics& diag = out.diagnostics[idx];
        diag.column = j;
        diag.atoms_per_label.assign(static_cast<std::size_t>(k), 0);
        diag.active_per_label.assign(static_cast<std::size_t>(k), 0);

        const ColumnDictionary dict = build_column_dictionary(library, j, config.neighborhood);
        for (int label : dict.atom_labels) ++diag.atoms_per_label[static_cast<std::size_t>(label - 1)];

        double gamma = config.gamma.value;
        if (config.gamma.mode == GammaSpec::Mode::relative) gamma *= gamma_max(dict.atoms, column);
        diag.gamma = gamma;
        if (!(gamma > 0.0)) {
            // Column orthogonal to every atom: the zero solution is exact.
            diag.objective = 0.5 * column.squaredNorm();
            diag.residual_norm = column.norm();
            return;
        }

        const ColumnDecomposition dec = decompose_column(dict, column, gamma, k, config.solver);
        diag.objective = dec.solution.objective;
        diag.residual_norm = dec.solution.residual_norm;
        diag.iterations = dec.solution.iterations;
        diag.converged = dec.solution.converged;
        diag.optimality_violation = optimality_violation(dict.atoms, column, dec.solution.coefficients, gamma);
        for (Index a = 0; a < dict.size(); ++a) {
            if (dec.solution.coefficients(a) != Scalar(0.0, 0.0)) {
                ++diag.active_per_label[static_cast<std::size_t>(dict.atom_labels[static_cast<std::size_t>(a)] - 1)];
            }
        }
        for (int p = 0; p < k; ++p) values[static_cast<std::size_t>(p)].col(j - 1) = dec.components[static_cast<std::size_t>(p)];
    });

    for (const auto& d : out.diagnostics) {
        if (!d.converged) {
            out.warnings.push_back("column " + std::to_string(d.column) + " did not converge");
        }
    }

    const bool take_real = config.take_real_part.value_or(x.is_real());
    out.layers.reserve(static_cast<std::size_t>(k));
    if (take_real) {
        for (const auto& v : values) out.max_imag_residue = std::max(out.max_imag_residue, v.imag().cwiseAbs().maxCoeff());
        const RealMatrix re = x.real_values();
        const double range = re.maxCoeff() - re.minCoeff();
        if (out.max_imag_residue > 1e-3 * range) {
            out.warnings.push_back("imaginary residue " + std::to_string(out.max_imag_residue) +
                                   " exceeds 1e-3 of the input range");
        }
        for (auto& v : values) {
            out.layers.push_back(DataMatrix::from_real(v.real(), x.geometry()));
            v.resize(0, 0);
        }
    } else {
        for (auto& v : values) out.layers.emplace_back(std::move(v), x.geometry(), false);
    }
    out.config.take_real_part = take_real;
    return out;
}

double layer_sum_residual(const DataMatrix& input, const LayerSet& layers, Index first, Index last) {
    if (first < 1 || last > input.cols() || first > last) {
        throw ParameterError("column range [" + std::to_string(first) + ", " + std::to_string(last) +
                             "] is outside [1, " + std::to_string(input.cols()) + "]");
    }
    const Index count = last - first + 1;
    Matrix sum = Matrix::Zero(input.rows(), count);
    for (const auto& layer : layers.layers) {
        if (layer.rows() != input.rows() || layer.cols() != input.cols()) {
            throw DimensionError("layer shape differs from the input");
        }
        sum += layer.values().middleCols(first - 1, count);
    }
    const auto block = input.values().middleCols(first - 1, count);
    const double denom = block.norm();
    const double num = (block - sum).norm();
    if (denom == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / denom;
}

double layer_sum_residual(const DataMatrix& input, const LayerSet& layers) {
    return layer_sum_residual(input, layers, 1, input.cols());
}

void write_diagnostics_jsonl(std::ostream& out, const std::vector<ColumnDiagnostics>& diagnostics) {
    for (const auto& d : diagnostics) out << nlohmann::json(d).dump() << '\n';
}

}  // namespace dmca
