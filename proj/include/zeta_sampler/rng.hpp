#pragma once

// Counter-based random streams. Stream j of seed s is a xoshiro256** engine
// whose state is expanded by splitmix64 from a hash of (s, j), so any sample
// can be regenerated on its own and parallel generation is order-free.

#include <cmath>
#include <cstdint>

namespace zs {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t stream_key(std::uint64_t seed,
                                          std::uint64_t index) noexcept
{
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    std::uint64_t mixed = a ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
    return splitmix64(mixed);
}

class Xoshiro256
{
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t key) noexcept
    {
        std::uint64_t s = key;
        for (auto& word : state_)
            word = splitmix64(s);
    }

    static Xoshiro256 for_stream(std::uint64_t seed, std::uint64_t index) noexcept
    {
        return Xoshiro256(stream_key(seed, index));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0, 1); never returns 0, so log(u) is safe.
    double uniform() noexcept
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal by the Marsaglia polar method. Both variates of a pair
    // are kept so the stream consumption is deterministic.
    double normal() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double x, y, r2;
        do {
            x = 2.0 * uniform() - 1.0;
            y = 2.0 * uniform() - 1.0;
            r2 = x * x + y * y;
        } while (r2 >= 1.0 || r2 == 0.0);
        double scale = std::sqrt(-2.0 * std::log(r2) / r2);
        spare_ = y * scale;
        has_spare_ = true;
        return x * scale;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace zs
