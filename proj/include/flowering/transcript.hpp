#pragma once

#include <cstdint>
#include <span>

#include "flowering/field.hpp"
#include "flowering/random.hpp"
#include "flowering/sha256.hpp"

namespace flowering {

inline constexpr std::uint8_t tag_challenge = 0x02;
inline constexpr std::uint8_t tag_index = 0x03;

// Running SHA-256 state. A field challenge reduces a 2*byte_len-byte squeeze
// mod p (statistical bias below p / 2^(16*byte_len)); an index draw reduces
// an 8-byte squeeze mod the range (bias below range / 2^64).
class Transcript {
public:
    explicit Transcript(const Digest& params_digest) {
        state_ = Sha256().update(tag_challenge).update("FLWR").update(std::span<const std::uint8_t>(params_digest)).finish();
    }

    void absorb(std::uint8_t label, std::span<const std::uint8_t> data) {
        state_ = Sha256().update(tag_challenge).update(std::span<const std::uint8_t>(state_)).update(label).update(data).finish();
    }

    FieldElement challenge(const PrimeField& F, std::uint8_t label) {
        state_ = Sha256().update(tag_challenge).update(std::span<const std::uint8_t>(state_)).update(label).finish();
        unsigned __int128 x = 0;
        for (std::size_t i = 2 * F.byte_len(); i-- > 0;) x = (x << 8) | state_[i];
        return {static_cast<std::uint64_t>(x % F.modulus())};
    }

    std::uint64_t index(std::uint64_t range, std::uint8_t label) {
        state_ = Sha256().update(tag_index).update(std::span<const std::uint8_t>(state_)).update(label).finish();
        std::uint64_t x = 0;
        for (std::size_t i = 8; i-- > 0;) x = (x << 8) | state_[i];
        return range <= 1 ? 0 : x % range;
    }

    const Digest& state() const { return state_; }

private:
    Digest state_{};
};

// Verifier coins in Fiat-Shamir mode.
struct TranscriptCoins {
    Transcript* transcript;
    FieldElement field(const PrimeField& F, std::uint8_t label) { return transcript->challenge(F, label); }
    std::uint64_t below(std::uint64_t range, std::uint8_t label) { return transcript->index(range, label); }
};

// Verifier coins in interactive mode.
struct RngCoins {
    SeededRng* rng;
    FieldElement field(const PrimeField& F, std::uint8_t) { return sample_uniform(F, *rng); }
    std::uint64_t below(std::uint64_t range, std::uint8_t) { return rng->below(range); }
};

} // namespace flowering
