#pragma once

#include <array>
#include <cstdint>

namespace resspec {

// Philox4x32-10 counter-based generator. A stream is identified by
// (key, stream); blocks are pure functions of the counter, so replications
// can be assigned disjoint streams and evaluated in any order or thread
// count without changing a single draw.
class Philox4x32 {
public:
    using result_type = std::uint64_t;

    explicit Philox4x32(std::uint64_t key = 0, std::uint64_t stream = 0) noexcept
        : key_(key), stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    std::uint64_t operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept {
        if (have_ == 0) refill();
        return buffer_[--have_];
    }

    // Uniform on (0,1): 53-bit mantissa, never exactly 0 or 1.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via Box-Muller (deterministic across platforms).
    double next_normal() noexcept;

    // One 4x32 block; exposed for the known-answer tests.
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key) noexcept;

private:
    void refill() noexcept;

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int have_ = 0;
    double cached_normal_ = 0.0;
    bool have_normal_ = false;
};

// Stateless 64-bit mix of (key, a, b): one Philox block. Used to derive
// per-replication seeds and stream ids.
std::uint64_t philox_mix(std::uint64_t key, std::uint64_t a, std::uint64_t b = 0) noexcept;

}  // namespace resspec
