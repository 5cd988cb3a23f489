#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include <openssl/evp.h>

namespace flowering {

using Digest = std::array<std::uint8_t, 32>;

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
    }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(std::span<const std::uint8_t> data) {
        EVP_DigestUpdate(ctx_, data.data(), data.size());
        return *this;
    }
    Sha256& update(std::uint8_t byte) { return update(std::span<const std::uint8_t>(&byte, 1)); }
    Sha256& update(std::string_view s) {
        return update(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
    }
    Sha256& update_u32(std::uint32_t x) {
        std::uint8_t b[4] = {std::uint8_t(x), std::uint8_t(x >> 8), std::uint8_t(x >> 16), std::uint8_t(x >> 24)};
        return update(std::span<const std::uint8_t>(b, 4));
    }
    Sha256& update_u64(std::uint64_t x) {
        update_u32(static_cast<std::uint32_t>(x));
        return update_u32(static_cast<std::uint32_t>(x >> 32));
    }

    Digest finish() {
        Digest d{};
        unsigned len = 0;
        EVP_DigestFinal_ex(ctx_, d.data(), &len);
        return d;
    }

private:
    EVP_MD_CTX* ctx_;
};

} // namespace flowering
