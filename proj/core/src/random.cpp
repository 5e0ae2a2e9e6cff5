#include "dmca/random.hpp"

#include <cmath>
#include <numbers>

namespace dmca {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t{a} * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

double open_unit_interval(std::uint32_t hi, std::uint32_t lo) {
    // 52 bits so that the largest value, 1 - 2^-53, is exactly representable.
    const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

std::array<double, 2> CounterRng::uniforms(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                                           std::uint32_t d) const {
    const PhiloxCounter out = block(a, b, c, d);
    return {open_unit_interval(out[0], out[1]), open_unit_interval(out[2], out[3])};
}

double standard_normal(double u1, double u2) {
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double laplace_inverse_cdf(double u, double location, double scale) {
    if (u < 0.5) return location + scale * std::log(2.0 * u);
    return location - scale * std::log(2.0 * (1.0 - u));
}

double SequentialRng::next_uniform() {
    const std::uint64_t p = position_++;
    const PhiloxCounter out = rng_.block(static_cast<std::uint32_t>(p),
                                         static_cast<std::uint32_t>(p >> 32), stream_, 0x5EC0u);
    return open_unit_interval(out[0], out[1]);
}

}  // namespace dmca
