#pragma once

#include <array>
#include <cstdint>

namespace dmca {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Every draw is a pure function of (key, counter), so generated data does
/// not depend on evaluation order or thread count. The algorithm and the
/// derived-variate formulas below are frozen: changing them changes every
/// synthetic dataset, so bump kRandomStreamVersion if they ever change.
inline constexpr int kRandomStreamVersion = 1;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Convenience wrapper keyed by a 64-bit seed and addressed by four 32-bit words.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    PhiloxCounter block(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
        return philox4x32_10({a, b, c, d}, key_);
    }

    /// Two independent uniforms in the open interval (0, 1) from one block.
    std::array<double, 2> uniforms(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                                   std::uint32_t d) const;

private:
    PhiloxKey key_;
};

/// Uniform in (0, 1): the top 52 bits of the two 32-bit words, offset by half a step.
double open_unit_interval(std::uint32_t hi, std::uint32_t lo);

/// Standard normal from two uniforms in (0, 1) (Box-Muller, cosine branch).
double standard_normal(double u1, double u2);

/// Laplace(location, scale) by inverse CDF of a uniform in (0, 1).
double laplace_inverse_cdf(double u, double location, double scale);

/// Sequential stream over a fixed (seed, stream id) pair, for places that
/// need an ordinary "next value" interface (clustering initialisation).
class SequentialRng {
public:
    SequentialRng(std::uint64_t seed, std::uint32_t stream) : rng_(seed), stream_(stream) {}

    /// Uniform in (0, 1).
    double next_uniform();

private:
    CounterRng rng_;
    std::uint32_t stream_;
    std::uint64_t position_ = 0;
};

}  // namespace dmca
