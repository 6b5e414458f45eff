#pragma once

#include <array>
#include <cstdint>

namespace dsi {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Stream of variates addressed by (seed, stream id, draw index). Draw i of a
/// stream depends only on those three values, never on call order.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    /// Uniform in (0, 1): 53 random bits, midpoint-shifted so 0 and 1 never occur.
    double uniform(std::uint64_t draw) const noexcept;

    /// Standard normal by inverse CDF of uniform(draw).
    double normal(std::uint64_t draw) const;

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
};

double standard_normal_quantile(double p);

}  // namespace dsi
