#pragma once

#include <cstdint>
#include <random>

namespace ate {

// Deterministic RNG wrapper. std::mt19937_64 has a standard-specified output
// sequence, and we avoid std::uniform_int_distribution (whose mapping is
// implementation-defined) so that seeded runs are byte-identical everywhere.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for a given task index; partition-safe for parallel loops.
    SeededRng(std::uint64_t seed, std::uint64_t task) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t word() { return engine_(); }

    /// Uniform in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        for (;;) {
            std::uint64_t w = engine_();
            if (w < limit) return w % bound;
        }
    }

    /// Bernoulli(num/2^16).
    bool chance(std::uint32_t num) { return (engine_() & 0xFFFFu) < num; }

private:
    std::mt19937_64 engine_;
};

} // namespace ate
