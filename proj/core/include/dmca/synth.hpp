#pragma once

#include "dmca/data_matrix.hpp"
#include "dmca/metrics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dmca {

struct CheckerboardImage {
    RealFrame input;  // (clean + checkerboard) rescaled to [0, 255]
    RealFrame clean;
    RealFrame checkerboard;
    AffineRescale rescale;
};

/// Adds a one-pixel checkerboard of +/-amplitude (+ where row + col is even)
/// and rescales the sum to [0, 255].
CheckerboardImage gen_checkerboard_image(const RealFrame& base, double amplitude = 3500.0);

struct NoiseParams {
    double rho = 0.5;
    std::uint64_t seed = 0;

    void validate() const;
};

inline constexpr int kNoiseComponents = 6;

/// Distribution of one noise component at time t: location plus the
/// second parameter (normal: standard deviation; uniform: the bounds;
/// Laplace: scale b).
struct NoiseComponentLaw {
    enum class Family { normal, uniform, laplace } family;
    double location = 0.0;  // normal/laplace location, uniform lower bound
    double spread = 0.0;    // normal sigma, laplace scale, uniform upper bound

    double mean() const;
    double variance() const;
};

/// Laws of the six time-varying components at time t; throws ParameterError
/// when a uniform component's bounds invert for (t, rho).
std::array<NoiseComponentLaw, kNoiseComponents> noise_laws(double t, double rho);

/// Each component drawn separately for every pixel of a height x width frame.
std::array<RealFrame, kNoiseComponents> sample_noise_components(double t, Index height, Index width,
                                                                const NoiseParams& params);

/// Sum of the six components; a pure function of (seed, t, pixel).
RealFrame sample_noise_frame(double t, Index height, Index width, const NoiseParams& params);

/// clean + noise frames (t = 0, 1, ...) rescaled to [0, 255].
std::pair<DataMatrix, AffineRescale> add_noise_video(const DataMatrix& clean, const NoiseParams& params);

struct WalkTargetParams {
    Index extent = 20;
    double height = 0.8;
    /// Glyph center (row, col); the frame center when unset.
    std::optional<std::array<Index, 2>> start;
    std::uint64_t seed = 0;
};

/// Step codes 0..4 = (+1,0), (-1,0), (0,+1), (0,-1), (0,0) in (row, col).
std::vector<int> random_walk_steps(std::size_t count, std::uint64_t seed);

struct WalkTargetVideo {
    DataMatrix video;
    std::vector<TargetMask> masks;
    std::vector<std::array<Index, 2>> centers;
};

/// "X" glyph (both diagonals of an extent x extent box) moving by a
/// symmetric random walk; moves that would leave the frame are reflected.
WalkTargetVideo gen_walk_target_video(Index n_frames, Index height, Index width,
                                      const WalkTargetParams& params);

struct WaveComponent {
    double amplitude = 1.0;
    double kx = 0.0;  // per column
    double ky = 0.0;  // per row
    double omega = 0.0;
    double phase = 0.0;
};

/// h(x, y, t) = sum a sin(kx x + ky y - omega t + phase) + N(0, noise_sigma^2),
/// x = column, y = row, t = 0-based frame index.
DataMatrix gen_wave_surface(Index n_frames, Index height, Index width,
                            const std::vector<WaveComponent>& waves, double noise_sigma = 0.02,
                            std::uint64_t seed = 0);

}  // namespace dmca
