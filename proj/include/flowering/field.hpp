#pragma once

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flowering/error.hpp"

namespace flowering {

struct FieldElement {
    std::uint64_t value = 0;

    friend bool operator==(FieldElement, FieldElement) = default;
    friend auto operator<=>(FieldElement, FieldElement) = default;
};

template <class S>
concept ByteSource = requires(S& s, std::span<std::uint8_t> out) { s.fill(out); };

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

inline bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

// Miller-Rabin with the first twelve prime bases (already deterministic below
// 3.3e24) topped up with pseudo-random bases to `rounds` total.
inline bool is_probable_prime(std::uint64_t n, int rounds = 64) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    int done = 0;
    for (auto a : small) {
        if (!detail::miller_rabin_round(n, a, d, s)) return false;
        ++done;
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ n;
    for (; done < rounds; ++done) {
        // splitmix64
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        std::uint64_t a = 2 + z % (n - 3);
        if (!detail::miller_rabin_round(n, a, d, s)) return false;
    }
    return true;
}

class PrimeField {
public:
    static constexpr std::uint64_t max_modulus = std::uint64_t{1} << 62;

    explicit PrimeField(std::uint64_t modulus) : p_(modulus) {
        if (modulus < 3) throw Error(Errc::too_small, "modulus must be at least 3");
        if (modulus >= max_modulus) throw Error(Errc::invalid_argument, "modulus must be below 2^62");
        if (!is_probable_prime(modulus)) throw Error(Errc::composite_modulus, std::to_string(modulus));
        std::uint64_t top = modulus - 1;
        byte_len_ = 0;
        bit_len_ = 0;
        while (top >> bit_len_) ++bit_len_;
        byte_len_ = (bit_len_ + 7) / 8;
    }

    std::uint64_t modulus() const { return p_; }
    std::size_t byte_len() const { return byte_len_; }
    unsigned bit_len() const { return bit_len_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }

    FieldElement from_u64(std::uint64_t x) const { return {x % p_}; }
    FieldElement from_i64(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return {static_cast<std::uint64_t>(r)};
    }

    bool contains(FieldElement a) const { return a.value < p_; }

    FieldElement add(FieldElement a, FieldElement b) const {
        std::uint64_t s = a.value + b.value;
        return {s >= p_ ? s - p_ : s};
    }
    FieldElement sub(FieldElement a, FieldElement b) const {
        return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
    }
    FieldElement neg(FieldElement a) const { return {a.value == 0 ? 0 : p_ - a.value}; }
    FieldElement mul(FieldElement a, FieldElement b) const { return {detail::mulmod_u64(a.value, b.value, p_)}; }
    FieldElement pow(FieldElement a, std::uint64_t e) const { return {detail::powmod_u64(a.value, e, p_)}; }

    FieldElement inv(FieldElement a) const {
        if (a.value == 0) throw Error(Errc::division_by_zero, "inverse of zero");
        return pow(a, p_ - 2);
    }
    FieldElement div(FieldElement a, FieldElement b) const {
        if (b.value == 0) throw Error(Errc::division_by_zero, "division by zero");
        return mul(a, inv(b));
    }

    std::vector<std::uint8_t> to_bytes(FieldElement a) const {
        std::vector<std::uint8_t> out(byte_len_);
        write_bytes(a, out.data());
        return out;
    }

    void write_bytes(FieldElement a, std::uint8_t* out) const {
        for (std::size_t i = 0; i < byte_len_; ++i) out[i] = static_cast<std::uint8_t>(a.value >> (8 * i));
    }

    // Rejects non-canonical encodings.
    FieldElement from_bytes(std::span<const std::uint8_t> in) const {
        if (in.size() != byte_len_) throw Error(Errc::length_mismatch, "field element encoding length");
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < byte_len_; ++i) x |= std::uint64_t{in[i]} << (8 * i);
        if (x >= p_) throw Error(Errc::parse_error, "non-canonical field element");
        return {x};
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
    std::size_t byte_len_ = 0;
    unsigned bit_len_ = 0;
};

inline std::vector<std::uint8_t> canonical_bytes(const PrimeField& F, FieldElement a) { return F.to_bytes(a); }

// Rejection sampling over byte_len-byte little-endian draws. Bits above the
// modulus' bit length are masked first, which keeps the distribution exact
// and the acceptance rate above 1/2.
template <ByteSource S>
FieldElement sample_uniform(const PrimeField& F, S& source) {
    std::array<std::uint8_t, 8> buf{};
    std::uint64_t mask = F.bit_len() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << F.bit_len()) - 1;
    for (;;) {
        source.fill(std::span<std::uint8_t>(buf.data(), F.byte_len()));
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < F.byte_len(); ++i) x |= std::uint64_t{buf[i]} << (8 * i);
        x &= mask;
        if (x < F.modulus()) return {x};
    }
}

} // namespace flowering
