#pragma once

#include "dmca/data_matrix.hpp"
#include "dmca/harvest.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dmca {

enum class LabelerKind { magnitude_threshold, radial, kmedians, kmeans };

std::string to_string(LabelerKind kind);
LabelerKind labeler_kind_from_string(const std::string& name);

/// Maps an eigenvalue to a morphology label in {1, ..., codomain()}.
///
/// magnitude_threshold: label = max p with thresholds[p-1] > |lambda - center|^2,
///   or 1 when no threshold exceeds it. thresholds must be strictly decreasing;
///   +infinity is allowed as the first entry (see two_way()).
/// radial: ceil((k + 1) * arg(a + |b| i) / pi), with arg = 0 mapped to 1.
/// kmedians / kmeans: nearest of `centers` in |lambda|^2, centers sorted
///   descending so label 1 is the largest-magnitude cluster. An unfitted
///   labeler (empty centers) must be fitted before use.
struct Labeler {
    LabelerKind kind = LabelerKind::magnitude_threshold;
    int k = 1;
    std::vector<double> thresholds;
    Scalar center{0.0, 0.0};
    std::vector<double> centers;
    std::uint64_t seed = 0;

    static Labeler magnitude(std::vector<double> thresholds, Scalar center = {0.0, 0.0});
    /// Two clusters: label 1 when |lambda - center|^2 >= cut, label 2 below it.
    static Labeler two_way(double cut, Scalar center = {0.0, 0.0});
    static Labeler radial(int k);
    /// Unfitted clustering labeler; the pipeline fits it on harvested |lambda|^2.
    static Labeler clustering(LabelerKind kind, int k, std::uint64_t seed);

    bool needs_fit() const;
    /// Largest label this labeler can produce (k + 1 for radial).
    int codomain() const;
    int operator()(Scalar lambda) const;

    /// Throws ParameterError if the fields break the kind's invariants.
    void validate() const;
};

int label_magnitude_threshold(Scalar lambda, std::span<const double> thresholds,
                              Scalar center = {0.0, 0.0});
int label_radial(Scalar lambda, int k);

struct ClusterOptions {
    int max_iterations = 100;
    double cost_tolerance = 1e-10;
    /// Independent seeded initialisations; the lowest-cost fit wins.
    int restarts = 10;
    /// Seeds tried (seed, seed + 1, ...) when a fit ends with an empty cluster.
    int max_attempts = 10;
    /// Up to this many values the exact optimal partition is also computed
    /// (O(k n^2)) and kept when it beats the restarts. 0 disables it.
    int exact_limit = 2048;
};

/// 1-D k-medians (l1 cost, median centers) on `values`.
Labeler fit_kmedians(std::span<const double> values, int k, std::uint64_t seed,
                     const ClusterOptions& options = {});
/// 1-D k-means (squared l2 cost, mean centers).
Labeler fit_kmeans(std::span<const double> values, int k, std::uint64_t seed,
                   const ClusterOptions& options = {});

/// Sum over values of the distance (l1 for kmedians, squared for kmeans) to
/// the nearest center.
double clustering_cost(std::span<const double> values, const Labeler& fitted);

struct LabelSummary {
    /// counts[p - 1] = entries with label p, for p in [1, max label used].
    std::vector<std::size_t> counts;
    /// Labels in [1, max label used] that no entry received.
    std::vector<int> empty_labels;
    int max_label = 0;
};

/// Writes a label into every entry. Fitted kinds must already be fitted.
LabelSummary label_library(ModeLibrary& library, const Labeler& labeler);

/// |lambda|^2 of every entry, in library order.
std::vector<double> eigenvalue_magnitudes(const ModeLibrary& library);

struct SmootherConfig {
    int window = 5;
    int poly_order = 2;
    bool enabled = false;

    void validate() const;
};

/// Central-point Savitzky-Golay smoothing weights for an odd window.
std::vector<double> savgol_coefficients(int window, int poly_order);

/// Separable Savitzky-Golay filter (rows, then columns) with mirror padding
/// that does not repeat the edge sample.
Frame savgol_filter_2d(const Frame& frame, const SmootherConfig& config);

/// Smooths every mode labeled `target_label`, reshaped to the frame geometry.
/// No-op when the config is disabled.
void smooth_target_modes(ModeLibrary& library, int target_label, const SmootherConfig& config);

}  // namespace dmca
