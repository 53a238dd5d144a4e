#pragma once

// Counter-based RNG (Philox4x32-10). A stream is addressed by
// (seed, stream_index); identical addresses reproduce identical draws
// bit-for-bit on any platform and with any worker count.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace truncsp {

struct RngStream {
    std::uint64_t seed{0};
    std::uint64_t stream_index{0};
};

namespace detail {

struct PhiloxBlock {
    std::uint32_t v[4];
};

inline PhiloxBlock philox4x32_10(std::uint64_t counter, std::uint64_t stream, std::uint64_t key64) {
    constexpr std::uint32_t mul_a = 0xD2511F53u;
    constexpr std::uint32_t mul_b = 0xCD9E8D57u;
    constexpr std::uint32_t weyl_a = 0x9E3779B9u;
    constexpr std::uint32_t weyl_b = 0xBB67AE85u;

    std::uint32_t c0 = static_cast<std::uint32_t>(counter);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key64);
    std::uint32_t k1 = static_cast<std::uint32_t>(key64 >> 32);

    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(mul_a) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(mul_b) * c2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += weyl_a;
        k1 += weyl_b;
    }
    return {{c0, c1, c2, c3}};
}

}  // namespace detail

class CounterRng {
public:
    explicit CounterRng(RngStream s) : stream_(s) {}

    RngStream stream() const { return stream_; }

    std::uint64_t next_u64() {
        if (word_ == 0) {
            block_ = detail::philox4x32_10(counter_++, stream_.stream_index, stream_.seed);
            word_ = 2;
        }
        --word_;
        const int base = 2 * (1 - word_);
        return (static_cast<std::uint64_t>(block_.v[base + 1]) << 32) | block_.v[base];
    }

    // uniform on (0, 1]
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; second member of the pair is cached
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

private:
    RngStream stream_;
    std::uint64_t counter_{0};
    detail::PhiloxBlock block_{};
    int word_{0};
    bool have_cached_{false};
    double cached_{0.0};
};

}  // namespace truncsp
