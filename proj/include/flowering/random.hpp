#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace flowering {

// Seeded byte source. mt19937_64 has a fully specified output sequence, so
// seeds reproduce across standard libraries. No std distributions are used
// for the same reason.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    void fill(std::span<std::uint8_t> out) {
        std::size_t i = 0;
        while (i < out.size()) {
            std::uint64_t x = engine_();
            for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
                out[i] = static_cast<std::uint8_t>(x >> (8 * b));
            }
        }
    }

    // Uniform integer in [0, range) by rejection.
    std::uint64_t below(std::uint64_t range) {
        if (range <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
        for (;;) {
            std::uint64_t x = engine_();
            if (x < limit) return x % range;
        }
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace flowering
