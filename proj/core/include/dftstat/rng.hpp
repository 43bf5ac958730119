#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace dftstat {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 64-bit master seed is the cipher key; the counter carries the stream id
/// in its upper half and the block index in its lower half. Two streams with
/// the same seed and different ids therefore never share a counter value, and
/// any (seed, stream_id) pair reproduces its sequence bit for bit on every
/// platform. Not thread-safe: one stream per thread.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal via the Box-Muller transform.
    double gaussian() noexcept;

    [[nodiscard]] std::uint64_t master_seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_; }

    /// One Philox4x32-10 block; exposed for known-answer tests.
    static std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> counter,
                                                     std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    std::size_t buffered_ = 0;
    std::optional<double> spare_normal_;
};

/// n standard normal draws from the stream.
std::vector<double> gauss_stream(RngStream& rng, std::size_t n);

}  // namespace dftstat
