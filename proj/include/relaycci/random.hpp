#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace relaycci {

/// splitmix64 finalizer; used to turn user seeds and stream ids into keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// A stream is fully determined by (seed, substream): the key is derived from
/// the seed and the substream index occupies the upper half of the Philox
/// counter, so distinct substreams never overlap and any substream can be
/// reconstructed without touching the others. Models
/// UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t substream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return next_u64(); }
    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal (Marsaglia polar method, spare value cached).
    double normal() noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t substream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace relaycci
