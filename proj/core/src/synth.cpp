#include "dmca/synth.hpp"

#include "dmca/errors.hpp"
#include "dmca/random.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace dmca {

namespace {

constexpr std::uint32_t kNoiseTag = 0x4E01u;
constexpr std::uint32_t kWalkTag = 0x57A1u;
constexpr std::uint32_t kWaveTag = 0x5EA0u;

double draw(const NoiseComponentLaw& law, const std::array<double, 2>& u) {
    switch (law.family) {
        case NoiseComponentLaw::Family::normal:
            return law.location + law.spread * standard_normal(u[0], u[1]);
        case NoiseComponentLaw::Family::uniform:
            return law.location + (law.spread - law.location) * u[0];
        case NoiseComponentLaw::Family::laplace:
            return laplace_inverse_cdf(u[0], law.location, law.spread);
    }
    return 0.0;
}

}  // namespace

CheckerboardImage gen_checkerboard_image(const RealFrame& base, double amplitude) {
    if (base.size() == 0) throw DimensionError("checkerboard base image is empty");
    CheckerboardImage out;
    out.clean = base;
    out.checkerboard.resize(base.rows(), base.cols());
    for (Index c = 0; c < base.cols(); ++c) {
        for (Index r = 0; r < base.rows(); ++r) {
            out.checkerboard(r, c) = (r + c) % 2 == 0 ? amplitude : -amplitude;
        }
    }
    auto [scaled, map] = rescale_to_range(RealMatrix(base + out.checkerboard), 0.0, 255.0);
    out.input = std::move(scaled);
    out.rescale = map;
    return out;
}

void NoiseParams::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw ParameterError("noise rho must lie in [0, 1], got " + std::to_string(rho));
    }
}

double NoiseComponentLaw::mean() const {
    return family == Family::uniform ? 0.5 * (location + spread) : location;
}

double NoiseComponentLaw::variance() const {
    switch (family) {
        case Family::normal:
            return spread * spread;
        case Family::uniform:
            return (spread - location) * (spread - location) / 12.0;
        case Family::laplace:
            return 2.0 * spread * spread;
    }
    return 0.0;
}

std::array<NoiseComponentLaw, kNoiseComponents> noise_laws(double t, double rho) {
    using F = NoiseComponentLaw::Family;
    constexpr double pi = std::numbers::pi;
    const auto s = [&](double phase) { return rho * (std::sin(2.0 * pi * t / 6.0 + phase) + 1.0); };
    const double s34 = s(4.0 * pi / 3.0);
    std::array<NoiseComponentLaw, kNoiseComponents> laws{{
        {F::normal, 300.0, 100.0 * s(0.0)},
        {F::normal, -400.0, 225.0 * s(pi / 3.0)},
        {F::uniform, -100.0 + 175.0 * s34, 300.0 - 175.0 * s34},
        {F::uniform, 400.0 - 170.0 * s34, 400.0 + 170.0 * s34},
        {F::laplace, -250.0, 225.0 * s(2.0 * pi / 3.0)},
        {F::laplace, -350.0, 125.0 * s(5.0 * pi / 3.0)},
    }};
    for (int m = 0; m < kNoiseComponents; ++m) {
        const auto& law = laws[static_cast<std::size_t>(m)];
        if (law.family == F::uniform && law.location > law.spread) {
            std::ostringstream msg;
            msg << "noise component " << m + 1 << " has inverted uniform bounds (" << law.location << " > "
                << law.spread << ") at t=" << t << ", rho=" << rho << "; rho <= 4/7 is always valid";
            throw ParameterError(msg.str());
        }
    }
    return laws;
}

std::array<RealFrame, kNoiseComponents> sample_noise_components(double t, Index height, Index width,
                                                                const NoiseParams& params) {
    params.validate();
    if (height < 1 || width < 1) throw DimensionError("noise frame shape must be positive");
    const auto laws = noise_laws(t, params.rho);
    const CounterRng rng(params.seed);
    const auto bits = std::bit_cast<std::uint64_t>(t);
    const auto t_lo = static_cast<std::uint32_t>(bits);
    const auto t_hi = static_cast<std::uint32_t>(bits >> 32);

    std::array<RealFrame, kNoiseComponents> out;
    for (int m = 0; m < kNoiseComponents; ++m) {
        auto& frame = out[static_cast<std::size_t>(m)];
        frame.resize(height, width);
        const auto& law = laws[static_cast<std::size_t>(m)];
        for (Index r = 0; r < height; ++r) {
            for (Index c = 0; c < width; ++c) {
                const auto pixel = static_cast<std::uint32_t>(r * width + c);
                const auto u = rng.uniforms(t_lo, t_hi, pixel, kNoiseTag + static_cast<std::uint32_t>(m));
                frame(r, c) = draw(law, u);
            }
        }
    }
    return out;
}

RealFrame sample_noise_frame(double t, Index height, Index width, const NoiseParams& params) {
    const auto parts = sample_noise_components(t, height, width, params);
    RealFrame sum = parts[0];
    for (int m = 1; m < kNoiseComponents; ++m) sum += parts[static_cast<std::size_t>(m)];
    return sum;
}

std::pair<DataMatrix, AffineRescale> add_noise_video(const DataMatrix& clean, const NoiseParams& params) {
    if (!clean.geometry()) throw DimensionError("noise video needs frame geometry");
    if (!clean.is_real()) throw ParameterError("noise video needs a real input");
    const auto g = *clean.geometry();
    RealMatrix noisy = clean.real_values();
    for (Index t = 0; t < clean.cols(); ++t) {
        const RealFrame noise = sample_noise_frame(static_cast<double>(t), g.height, g.width, params);
        noisy.col(t) += frame_to_column(noise);
    }
    auto [scaled, map] = rescale_to_range(noisy, 0.0, 255.0);
    return {DataMatrix::from_real(scaled, g), map};
}

std::vector<int> random_walk_steps(std::size_t count, std::uint64_t seed) {
    const CounterRng rng(seed);
    std::vector<int> steps(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto u = rng.uniforms(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32), 0,
                                    kWalkTag);
        steps[i] = std::min(4, static_cast<int>(u[0] * 5.0));
    }
    return steps;
}

WalkTargetVideo gen_walk_target_video(Index n_frames, Index height, Index width,
                                      const WalkTargetParams& params) {
    const Index e = params.extent;
    if (n_frames < 2) throw InsufficientDataError("walk video needs at least 2 frames");
    if (e < 1 || e > height || e > width) {
        throw ParameterError("target extent " + std::to_string(e) + " does not fit in a " +
                             std::to_string(height) + "x" + std::to_string(width) + " frame");
    }
    // The glyph box spans rows [cy - e/2, cy - e/2 + e - 1].
    const Index half = e / 2;
    const auto fits = [&](Index cy, Index cx) {
        return cy - half >= 0 && cy - half + e <= height && cx - half >= 0 && cx - half + e <= width;
    };
    std::array<Index, 2> center = params.start.value_or(std::array<Index, 2>{height / 2, width / 2});
    if (!fits(center[0], center[1])) throw ParameterError("walk start places the target outside the frame");

    static constexpr std::array<std::array<Index, 2>, 5> moves{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}}};
    const auto steps = random_walk_steps(static_cast<std::size_t>(n_frames - 1), params.seed);

    std::vector<TargetMask> masks;
    std::vector<std::array<Index, 2>> centers;
    RealMatrix values = RealMatrix::Zero(height * width, n_frames);
    for (Index t = 0; t < n_frames; ++t) {
        if (t > 0) {
            const auto& mv = moves[static_cast<std::size_t>(steps[static_cast<std::size_t>(t - 1)])];
            if (fits(center[0] + mv[0], center[1] + mv[1])) {
                center = {center[0] + mv[0], center[1] + mv[1]};
            } else if (fits(center[0] - mv[0], center[1] - mv[1])) {
                center = {center[0] - mv[0], center[1] - mv[1]};
            }
        }
        BoolGrid cells = BoolGrid::Constant(height, width, false);
        const Index r0 = center[0] - half;
        const Index c0 = center[1] - half;
        for (Index i = 0; i < e; ++i) {
            cells(r0 + i, c0 + i) = true;
            cells(r0 + i, c0 + e - 1 - i) = true;
        }
        for (Index r = 0; r < height; ++r) {
            for (Index c = 0; c < width; ++c) {
                if (cells(r, c)) values(r * width + c, t) = params.height;
            }
        }
        masks.emplace_back(std::move(cells));
        centers.push_back(center);
    }
    const FrameGeometry g{static_cast<std::uint32_t>(height), static_cast<std::uint32_t>(width)};
    return {DataMatrix::from_real(values, g), std::move(masks), std::move(centers)};
}

DataMatrix gen_wave_surface(Index n_frames, Index height, Index width, const std::vector<WaveComponent>& waves,
                            double noise_sigma, std::uint64_t seed) {
    if (waves.empty()) throw ParameterError("wave surface needs at least one component");
    if (n_frames < 2) throw InsufficientDataError("wave surface needs at least 2 frames");
    if (height < 1 || width < 1) throw DimensionError("wave surface shape must be positive");
    if (!(noise_sigma >= 0.0)) throw ParameterError("noise sigma must be >= 0");
    const CounterRng rng(seed);
    RealMatrix values(height * width, n_frames);
    for (Index t = 0; t < n_frames; ++t) {
        for (Index r = 0; r < height; ++r) {
            for (Index c = 0; c < width; ++c) {
                double h = 0.0;
                for (const auto& w : waves) {
                    h += w.amplitude * std::sin(w.kx * static_cast<double>(c) + w.ky * static_cast<double>(r) -
                                                w.omega * static_cast<double>(t) + w.phase);
                }
                if (noise_sigma > 0.0) {
                    const auto u = rng.uniforms(static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(r),
                                                static_cast<std::uint32_t>(c), kWaveTag);
                    h += noise_sigma * standard_normal(u[0], u[1]);
                }
                values(r * width + c, t) = h;
            }
        }
    }
    return DataMatrix::from_real(values, FrameGeometry{static_cast<std::uint32_t>(height),
                                                       static_cast<std::uint32_t>(width)});
}

}  // namespace dmca
