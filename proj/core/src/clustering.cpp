#include "dmca/clustering.hpp"

#include "dmca/errors.hpp"
#include "dmca/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dmca {

std::string to_string(LabelerKind kind) {
    switch (kind) {
        case LabelerKind::magnitude_threshold: return "magnitude_threshold";
        case LabelerKind::radial: return "radial";
        case LabelerKind::kmedians: return "kmedians";
        case LabelerKind::kmeans: return "kmeans";
    }
    return "unknown";
}

LabelerKind labeler_kind_from_string(const std::string& name) {
    if (name == "magnitude_threshold") return LabelerKind::magnitude_threshold;
    if (name == "radial") return LabelerKind::radial;
    if (name == "kmedians") return LabelerKind::kmedians;
    if (name == "kmeans") return LabelerKind::kmeans;
    throw ParameterError("unknown labeler kind '" + name + "'");
}

int label_magnitude_threshold(Scalar lambda, std::span<const double> thresholds, Scalar center) {
    if (thresholds.empty()) throw ParameterError("magnitude labeling needs at least one threshold");
    for (std::size_t p = 1; p < thresholds.size(); ++p) {
        if (!(thresholds[p - 1] > thresholds[p])) {
            throw ParameterError("magnitude thresholds must be strictly decreasing");
        }
    }
    const double v = std::norm(lambda - center);
    int label = 0;
    for (std::size_t p = 0; p < thresholds.size(); ++p) {
        if (thresholds[p] > v) label = static_cast<int>(p) + 1;
    }
    return std::max(label, 1);
}

int label_radial(Scalar lambda, int k) {
    if (k < 1) throw ParameterError("radial labeling needs k >= 1");
    if (lambda == Scalar(0.0, 0.0)) throw ParameterError("radial label undefined for lambda = 0");
    const double angle = std::atan2(std::abs(lambda.imag()), lambda.real());
    const int label = static_cast<int>(std::ceil((k + 1) * angle / std::numbers::pi));
    return std::clamp(label, 1, k + 1);
}

Labeler Labeler::magnitude(std::vector<double> thresholds, Scalar center) {
    Labeler l;
    l.kind = LabelerKind::magnitude_threshold;
    l.k = static_cast<int>(thresholds.size());
    l.thresholds = std::move(thresholds);
    l.center = center;
    l.validate();
    return l;
}

Labeler Labeler::two_way(double cut, Scalar center) {
    return magnitude({std::numeric_limits<double>::infinity(), cut}, center);
}

Labeler Labeler::radial(int k) {
    Labeler l;
    l.kind = LabelerKind::radial;
    l.k = k;
    l.validate();
    return l;
}

Labeler Labeler::clustering(LabelerKind kind, int k, std::uint64_t seed) {
    if (kind != LabelerKind::kmedians && kind != LabelerKind::kmeans) {
        throw ParameterError("clustering labeler must be kmedians or kmeans");
    }
    Labeler l;
    l.kind = kind;
    l.k = k;
    l.seed = seed;
    l.validate();
    return l;
}

bool Labeler::needs_fit() const {
    return (kind == LabelerKind::kmedians || kind == LabelerKind::kmeans) && centers.empty();
}

int Labeler::codomain() const { return kind == LabelerKind::radial ? k + 1 : k; }

void Labeler::validate() const {
    if (k < 1) throw ParameterError("labeler needs k >= 1");
    switch (kind) {
        case LabelerKind::magnitude_threshold:
            if (static_cast<int>(thresholds.size()) != k) {
                throw ParameterError("magnitude labeler needs exactly k thresholds");
            }
            for (std::size_t p = 1; p < thresholds.size(); ++p) {
                if (!(thresholds[p - 1] > thresholds[p])) {
                    throw ParameterError("magnitude thresholds must be strictly decreasing");
                }
            }
            break;
        case LabelerKind::radial:
            break;
        case LabelerKind::kmedians:
        case LabelerKind::kmeans:
            if (!centers.empty()) {
                if (static_cast<int>(centers.size()) != k) {
                    throw ParameterError("fitted labeler needs exactly k centers");
                }
                for (std::size_t p = 1; p < centers.size(); ++p) {
                    if (!(centers[p - 1] > centers[p])) {
                        throw ParameterError("cluster centers must be strictly decreasing");
                    }
                }
            }
            break;
    }
}

namespace {

int nearest_center(double v, std::span<const double> centers) {
    int best = 0;
    double best_d = std::abs(v - centers[0]);
    for (std::size_t c = 1; c < centers.size(); ++c) {
        const double d = std::abs(v - centers[c]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

double distance(double a, double b, bool medians) {
    const double d = std::abs(a - b);
    return medians ? d : d * d;
}

double median_of(std::vector<double>& v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Cost of one run sorted[lo, hi) about its own median (or mean), from prefix sums.
class RunCost {
public:
    RunCost(std::span<const double> sorted, bool medians) : sorted_(sorted), medians_(medians) {
        sum_.assign(sorted.size() + 1, 0.0);
        sq_.assign(sorted.size() + 1, 0.0);
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            sum_[i + 1] = sum_[i] + sorted[i];
            sq_[i + 1] = sq_[i] + sorted[i] * sorted[i];
        }
    }

    double operator()(std::size_t lo, std::size_t hi) const {
        const double n = static_cast<double>(hi - lo);
        if (medians_) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const double below = sorted_[mid] * static_cast<double>(mid - lo) - (sum_[mid] - sum_[lo]);
            const double above = (sum_[hi] - sum_[mid]) - sorted_[mid] * static_cast<double>(hi - mid);
            return below + above;
        }
        const double s = sum_[hi] - sum_[lo];
        return std::max(0.0, (sq_[hi] - sq_[lo]) - s * s / n);
    }

private:
    std::span<const double> sorted_;
    bool medians_;
    std::vector<double> sum_;
    std::vector<double> sq_;
};

std::vector<double> centers_from_cuts(std::span<const double> sorted, std::span<const std::size_t> cut,
                                      bool medians) {
    std::vector<double> centers;
    for (std::size_t c = 0; c + 1 < cut.size(); ++c) {
        std::vector<double> m(sorted.begin() + static_cast<std::ptrdiff_t>(cut[c]),
                              sorted.begin() + static_cast<std::ptrdiff_t>(cut[c + 1]));
        if (medians) {
            centers.push_back(median_of(m));
        } else {
            double sum = 0.0;
            for (double v : m) sum += v;
            centers.push_back(sum / static_cast<double>(m.size()));
        }
    }
    return centers;
}

// Lloyd stops at partitions where no center move helps but relocating a
// cluster boundary still does. In 1-D the clusters are runs of the sorted
// values, so place each boundary optimally between its neighbours in turn
// until a full sweep changes nothing.
void refine_boundaries(std::span<const double> values, std::vector<double>& centers, bool medians) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> asc(centers);
    std::sort(asc.begin(), asc.end());
    const std::size_t k = asc.size();
    const std::size_t n = sorted.size();
    // cut[c] is the first index of cluster c; cut[k] = n.
    std::vector<std::size_t> cut(k + 1, 0);
    cut[k] = n;
    for (std::size_t c = 1; c < k; ++c) {
        const double mid = 0.5 * (asc[c - 1] + asc[c]);
        cut[c] = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), mid) - sorted.begin());
    }
    for (std::size_t c = 1; c <= k; ++c) {
        if (cut[c] <= cut[c - 1]) return;
    }
    const RunCost run(sorted, medians);
    bool moved = true;
    for (std::size_t sweep = 0; moved && sweep < n * k; ++sweep) {
        moved = false;
        for (std::size_t c = 1; c < k; ++c) {
            std::size_t best = cut[c];
            double best_cost = run(cut[c - 1], cut[c]) + run(cut[c], cut[c + 1]);
            for (std::size_t b = cut[c - 1] + 1; b < cut[c + 1]; ++b) {
                const double cost = run(cut[c - 1], b) + run(b, cut[c + 1]);
                if (cost < best_cost - 1e-15 * std::max(1.0, best_cost)) {
                    best_cost = cost;
                    best = b;
                }
            }
            if (best != cut[c]) {
                cut[c] = best;
                moved = true;
            }
        }
    }
    centers = centers_from_cuts(sorted, cut, medians);
}

struct Fit {
    std::vector<double> centers;
    double cost = std::numeric_limits<double>::infinity();
    bool has_empty = true;
};

Fit evaluate(std::span<const double> values, std::vector<double> centers, bool medians) {
    Fit fit;
    std::sort(centers.begin(), centers.end(), std::greater<>());
    fit.cost = 0.0;
    std::vector<std::size_t> counts(centers.size(), 0);
    for (double v : values) {
        const int c = nearest_center(v, centers);
        ++counts[static_cast<std::size_t>(c)];
        fit.cost += distance(v, centers[static_cast<std::size_t>(c)], medians);
    }
    fit.has_empty = std::any_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; });
    for (std::size_t c = 1; c < centers.size(); ++c) {
        if (!(centers[c - 1] > centers[c])) fit.has_empty = true;
    }
    fit.centers = std::move(centers);
    return fit;
}

// Optimal partition of the sorted values into k runs by dynamic programming.
Fit exact_partition(std::span<const double> values, int k, bool medians) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const auto kk = static_cast<std::size_t>(k);
    const RunCost run(sorted, medians);
    const double inf = std::numeric_limits<double>::infinity();
    // best[c][j]: cheapest split of the first j values into c runs; from[c][j] is the last run start.
    std::vector<std::vector<double>> best(kk + 1, std::vector<double>(n + 1, inf));
    std::vector<std::vector<std::size_t>> from(kk + 1, std::vector<std::size_t>(n + 1, 0));
    best[0][0] = 0.0;
    for (std::size_t c = 1; c <= kk; ++c) {
        for (std::size_t j = c; j <= n; ++j) {
            for (std::size_t i = c - 1; i < j; ++i) {
                const double cost = best[c - 1][i] + run(i, j);
                if (cost < best[c][j]) {
                    best[c][j] = cost;
                    from[c][j] = i;
                }
            }
        }
    }
    std::vector<std::size_t> cut(kk + 1, n);
    for (std::size_t c = kk; c >= 1; --c) cut[c - 1] = from[c][cut[c]];
    return evaluate(values, centers_from_cuts(sorted, cut, medians), medians);
}

Fit lloyd(std::span<const double> values, int k, bool medians, SequentialRng& rng,
          const ClusterOptions& options) {
    const std::size_t n = values.size();
    std::vector<double> centers;
    centers.reserve(static_cast<std::size_t>(k));
    // Seeding: first center uniform, the rest with probability proportional to
    // the distance (l1 for medians, squared for means) to the nearest chosen center.
    centers.push_back(values[std::min(n - 1, static_cast<std::size_t>(rng.next_uniform() * n))]);
    std::vector<double> weight(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            weight[i] = distance(values[i], centers[static_cast<std::size_t>(nearest_center(values[i], centers))],
                                 medians);
            total += weight[i];
        }
        if (!(total > 0.0)) break;
        const double target = rng.next_uniform() * total;
        double acc = 0.0;
        std::size_t pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            acc += weight[i];
            if (acc > target && weight[i] > 0.0) {
                pick = i;
                break;
            }
        }
        centers.push_back(values[pick]);
    }
    Fit fit;
    if (static_cast<int>(centers.size()) < k) return fit;

    std::vector<int> assign(n, 0);
    std::vector<std::vector<double>> members(static_cast<std::size_t>(k));
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 0; it < options.max_iterations; ++it) {
        for (auto& m : members) m.clear();
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            assign[i] = nearest_center(values[i], centers);
            members[static_cast<std::size_t>(assign[i])].push_back(values[i]);
            cost += distance(values[i], centers[static_cast<std::size_t>(assign[i])], medians);
        }
        for (int c = 0; c < k; ++c) {
            auto& m = members[static_cast<std::size_t>(c)];
            if (m.empty()) continue;
            if (medians) {
                centers[static_cast<std::size_t>(c)] = median_of(m);
            } else {
                double s = 0.0;
                for (double v : m) s += v;
                centers[static_cast<std::size_t>(c)] = s / static_cast<double>(m.size());
            }
        }
        if (std::abs(previous - cost) < options.cost_tolerance) break;
        previous = cost;
    }
    refine_boundaries(values, centers, medians);
    return evaluate(values, std::move(centers), medians);
}

Labeler fit_clusters(std::span<const double> values, int k, std::uint64_t seed, bool medians,
                     const ClusterOptions& options) {
    if (k < 1) throw ParameterError("clustering needs k >= 1");
    for (double v : values) {
        if (!std::isfinite(v)) throw ParameterError("clustering values must be finite");
    }
    std::vector<double> distinct(values.begin(), values.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (static_cast<int>(distinct.size()) < k) {
        throw ParameterError("clustering needs at least k = " + std::to_string(k) +
                             " distinct values, got " + std::to_string(distinct.size()));
    }

    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        const std::uint64_t attempt_seed = seed + static_cast<std::uint64_t>(attempt);
        Fit best;
        for (int r = 0; r < std::max(1, options.restarts); ++r) {
            SequentialRng rng(attempt_seed, static_cast<std::uint32_t>(r));
            Fit fit = lloyd(values, k, medians, rng, options);
            if (!fit.has_empty && fit.cost < best.cost) best = std::move(fit);
        }
        if (values.size() <= static_cast<std::size_t>(std::max(0, options.exact_limit))) {
            Fit fit = exact_partition(values, k, medians);
            if (!fit.has_empty && fit.cost < best.cost) best = std::move(fit);
        }
        if (!best.has_empty) {
            Labeler l;
            l.kind = medians ? LabelerKind::kmedians : LabelerKind::kmeans;
            l.k = k;
            l.seed = seed;
            l.centers = std::move(best.centers);
            return l;
        }
    }
    throw ParameterError("clustering produced an empty cluster after " +
                         std::to_string(options.max_attempts) + " seeds");
}

}  // namespace

int Labeler::operator()(Scalar lambda) const {
    switch (kind) {
        case LabelerKind::magnitude_threshold:
            return label_magnitude_threshold(lambda, thresholds, center);
        case LabelerKind::radial:
            return label_radial(lambda, k);
        case LabelerKind::kmedians:
        case LabelerKind::kmeans:
            if (centers.empty()) throw ParameterError("clustering labeler has not been fitted");
            return nearest_center(std::norm(lambda), centers) + 1;
    }
    throw ParameterError("unknown labeler kind");
}

Labeler fit_kmedians(std::span<const double> values, int k, std::uint64_t seed,
                     const ClusterOptions& options) {
    return fit_clusters(values, k, seed, true, options);
}

Labeler fit_kmeans(std::span<const double> values, int k, std::uint64_t seed,
                   const ClusterOptions& options) {
    return fit_clusters(values, k, seed, false, options);
}

double clustering_cost(std::span<const double> values, const Labeler& fitted) {
    if (fitted.centers.empty()) throw ParameterError("clustering labeler has not been fitted");
    const bool medians = fitted.kind == LabelerKind::kmedians;
    double cost = 0.0;
    for (double v : values) {
        cost += distance(v, fitted.centers[static_cast<std::size_t>(nearest_center(v, fitted.centers))],
                         medians);
    }
    return cost;
}

std::vector<double> eigenvalue_magnitudes(const ModeLibrary& library) {
    std::vector<double> out;
    out.reserve(library.entries.size());
    for (const auto& e : library.entries) out.push_back(std::norm(e.eigenvalue));
    return out;
}

LabelSummary label_library(ModeLibrary& library, const Labeler& labeler) {
    labeler.validate();
    if (labeler.needs_fit()) throw ParameterError("clustering labeler has not been fitted");
    LabelSummary summary;
    summary.counts.assign(static_cast<std::size_t>(labeler.codomain()), 0);
    for (auto& e : library.entries) {
        const int label = labeler(e.eigenvalue);
        e.label = label;
        summary.max_label = std::max(summary.max_label, label);
        ++summary.counts[static_cast<std::size_t>(label - 1)];
    }
    for (std::size_t p = 0; p < summary.counts.size(); ++p) {
        if (summary.counts[p] == 0) summary.empty_labels.push_back(static_cast<int>(p) + 1);
    }
    return summary;
}

}  // namespace dmca
