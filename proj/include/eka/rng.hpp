#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "eka/bytes.hpp"

namespace eka {

// splitmix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic byte source. Bytes come from raw mt19937_64 output, which the
// standard pins exactly, so transcripts reproduce across platforms. Production
// deployments substitute an OS entropy source behind the same interface.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    std::uint8_t next_byte() {
        if (pending_count_ == 0) {
            pending_ = gen_();
            pending_count_ = 8;
        }
        const auto b = static_cast<std::uint8_t>(pending_ & 0xFF);
        pending_ >>= 8;
        --pending_count_;
        return b;
    }

    void fill(std::span<std::uint8_t> out) {
        for (auto& b : out) {
            b = next_byte();
        }
    }

    Bytes bytes(std::size_t n) {
        Bytes out(n);
        fill(out);
        return out;
    }

    // Value in [0, bound); bound > 0. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    double unit_double() {
        // 53 uniform bits in [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Independent stream identified by (this stream's seed, label).
    Rng fork(std::uint64_t label) const { return Rng(mix64(seed_ ^ mix64(label))); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    std::uint64_t pending_ = 0;
    int pending_count_ = 0;
};

}  // namespace eka
